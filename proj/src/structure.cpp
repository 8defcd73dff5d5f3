#include "markedgroups/structure.hpp"

#include <algorithm>

#include "markedgroups/parallel.hpp"

namespace mg {

namespace {

std::string join_formatted(const Group& g, std::span<const Element> elems) {
    std::string out;
    for (const auto& e : elems) out += (out.empty() ? "" : ",") + g.format(e);
    return out;
}

std::vector<std::int64_t> tail_of(const std::vector<std::int64_t>& indices, std::size_t tail_length) {
    if (indices.empty()) throw InputError("empty index window");
    std::size_t len = tail_length == 0 ? (indices.size() + 1) / 2 : tail_length;
    len = std::min(len, indices.size());
    return {indices.end() - static_cast<std::ptrdiff_t>(len), indices.end()};
}

std::vector<Word> with_empty(int rank, std::vector<Word> words) {
    words.insert(words.begin(), Word(rank));
    return words;
}

bool in_sorted(std::span<const Element> set, const Element& e) { return std::binary_search(set.begin(), set.end(), e); }

}  // namespace

LiftedIndex lift_index(std::int64_t n, MarkedGroup cover, std::vector<Element> kernel) {
    std::sort(kernel.begin(), kernel.end());
    const Group q = cover.group().central_quotient(kernel);
    std::vector<Element> proj;
    for (const auto& s : cover.marking()) proj.push_back(q.canonical(s));
    std::string text = join_formatted(q, proj);
    MarkedGroup quotient(q, std::move(proj), std::move(text));
    return LiftedIndex{n, std::move(cover), std::move(kernel), std::move(quotient)};
}

SequenceSpec LiftedSequence::covers() const {
    auto mk = make;
    return SequenceSpec{name + ":covers", [mk](std::int64_t n) { return mk(n).cover; }, indices};
}

SequenceSpec LiftedSequence::quotients() const {
    auto mk = make;
    return SequenceSpec{name + ":quotients", [mk](std::int64_t n) { return mk(n).quotient; }, indices};
}

namespace lifts {

LiftedSequence quaternion(std::vector<std::int64_t> indices) {
    LiftedSequence s;
    s.name = "quaternion-lift";
    s.indices = std::move(indices);
    s.make = [](std::int64_t n) {
        if (n < 3) throw InputError("quaternion lift needs n >= 3");
        const Group h = Group::sd4(static_cast<int>(n));
        const std::int64_t half = h.torsion() / 2;
        const Element t{2, {}, half};
        MarkedGroup cover(h, {Element{0, {}, 1}, Element{1, {}, 0}, t}, "x,y," + h.format(t));
        return lift_index(n, std::move(cover), {Element{}, t});
    };
    s.limit_cover = MarkedGroup::parse("limitH(1,1)", "a,y,(2;0;1)");
    s.quotient_limit = MarkedGroup::parse("limitQ(1,1)", "a,y,1");
    return s;
}

LiftedSequence quaternion_full_center(std::vector<std::int64_t> indices) {
    LiftedSequence s;
    s.name = "quaternion-center-lift";
    s.indices = std::move(indices);
    s.make = [](std::int64_t n) {
        if (n < 3) throw InputError("quaternion lift needs n >= 3");
        const Group h = Group::sd4(static_cast<int>(n));
        const std::int64_t half = h.torsion() / 2;
        const Element t{2, {}, half};
        MarkedGroup cover(h, {Element{0, {}, 1}, Element{1, {}, 0}, t}, "x,y," + h.format(t));
        return lift_index(n, std::move(cover), {Element{}, Element{0, {}, half}, Element{2, {}, 0}, t});
    };
    s.limit_cover = MarkedGroup::parse("limitH(1,1)", "a,y,(2;0;1)");
    s.quotient_limit = MarkedGroup::parse("limitD(1,0)", "a,s,1");
    return s;
}

LiftedSequence dihedral(std::vector<std::int64_t> indices) {
    LiftedSequence s;
    s.name = "dihedral-lift";
    s.indices = std::move(indices);
    s.make = [](std::int64_t n) {
        if (n < 2) throw InputError("dihedral lift needs n >= 2");
        const Group h = Group::dihedral(2 * n);
        const Element t{0, {}, n};
        MarkedGroup cover(h, {Element{0, {}, 1}, Element{1, {}, 0}, t}, "r,s," + h.format(t));
        return lift_index(n, std::move(cover), {Element{}, t});
    };
    s.limit_cover = MarkedGroup::parse("limitD(1,1)", "a,s,t");
    s.quotient_limit = MarkedGroup::parse("limitD(1,0)", "a,s,1");
    return s;
}

LiftedSequence constant(const MarkedGroup& cover, std::vector<Element> kernel, std::vector<std::int64_t> indices) {
    LiftedSequence s;
    s.name = "constant-lift";
    s.indices = std::move(indices);
    const LiftedIndex li = lift_index(0, cover, std::move(kernel));
    s.make = [li](std::int64_t n) {
        LiftedIndex copy = li;
        copy.n = n;
        return copy;
    };
    s.limit_cover = cover;
    s.quotient_limit = li.quotient;
    return s;
}

}  // namespace lifts

KernelIdentification kernel_identification(const LiftedSequence& lifted, int lambda, std::size_t tail_length) {
    if (!lifted.limit_cover) throw InputError("kernel_identification: sequence has no limit cover");
    const MarkedGroup& limit = *lifted.limit_cover;
    KernelIdentification out;
    out.lambda = lambda;

    const auto covers_at = converged_at(lifted.covers(), lambda);
    if (!covers_at) throw NotStabilized("covers of " + lifted.name + " do not stabilize at lambda " + std::to_string(lambda));
    const auto quotients_at = converged_at(lifted.quotients(), lambda);
    if (!quotients_at)
        throw NotStabilized("quotients of " + lifted.name + " do not stabilize at lambda " + std::to_string(lambda));
    out.covers_stable_at = *covers_at;
    out.quotients_stable_at = *quotients_at;
    out.tail = tail_of(lifted.indices, tail_length);

    std::vector<std::vector<Word>> per_index(out.tail.size());
    std::vector<char> consistent(out.tail.size(), 0);
    parallel_for(out.tail.size(), [&](std::size_t i) {
        const LiftedIndex li = lifted.make(out.tail[i]);
        per_index[i] = words_into(li.cover, lambda, li.kernel);
        consistent[i] = per_index[i] == rel_ball(li.quotient, lambda).words;
    });
    out.quotient_consistent = std::all_of(consistent.begin(), consistent.end(), [](char c) { return c != 0; });

    std::vector<Word> m = per_index.front();
    for (std::size_t i = 1; i < per_index.size(); ++i) {
        std::vector<Word> next;
        std::set_intersection(m.begin(), m.end(), per_index[i].begin(), per_index[i].end(), std::back_inserter(next),
                              ShortlexLess{});
        m = std::move(next);
    }
    out.m_approx = with_empty(limit.rank(), std::move(m));

    for (const auto& w : out.m_approx) out.k_approx.push_back(limit.eval(w));
    std::sort(out.k_approx.begin(), out.k_approx.end());
    out.k_approx.erase(std::unique(out.k_approx.begin(), out.k_approx.end()), out.k_approx.end());

    const Group& h = limit.group();
    out.preimage_consistent = with_empty(limit.rank(), words_into(limit, lambda, out.k_approx)) == out.m_approx;
    out.inverse_closed = std::all_of(out.k_approx.begin(), out.k_approx.end(),
                                     [&](const Element& e) { return in_sorted(out.k_approx, h.inv(e)); });
    out.subgroup = is_subgroup(h, out.k_approx);
    out.central = is_central(h, out.k_approx);
    return out;
}

bool CentralityReport::central() const {
    return std::all_of(rows.begin(), rows.end(), [](const CentralityRow& r) { return r.relation_on_tail && r.relation_on_limit; });
}

CentralityReport centrality_transfer_check(const LiftedSequence& lifted, const Word& w,
                                           const std::vector<Word>& test_words, int lambda) {
    if (!lifted.limit_cover) throw InputError("centrality_transfer_check: sequence has no limit cover");
    const MarkedGroup& limit = *lifted.limit_cover;
    const auto stable = converged_at(lifted.covers(), lambda);
    if (!stable) throw NotStabilized("covers of " + lifted.name + " do not stabilize at lambda " + std::to_string(lambda));

    CentralityReport rep;
    rep.w = w;
    for (auto n : lifted.indices)
        if (n >= *stable) rep.tail.push_back(n);

    std::vector<LiftedIndex> window;
    for (auto n : lifted.indices) window.push_back(lifted.make(n));

    rep.w_in_kernel = true;
    for (const auto& li : window) {
        if (li.n < *stable) continue;
        if (!in_sorted(li.kernel, li.cover.eval(w))) rep.w_in_kernel = false;
    }

    for (const auto& v : test_words) {
        CentralityRow row;
        row.v = v;
        row.commutator = commutator(w, v);
        row.radius = static_cast<int>(row.commutator.length());
        const Group& lg = limit.group();
        row.relation_on_limit = limit.eval(row.commutator) == lg.identity();
        row.relation_on_tail = true;
        for (const auto& li : window)
            if (li.n >= *stable && li.cover.eval(row.commutator) != li.cover.group().identity()) row.relation_on_tail = false;

        const BallGraph lb = ball_graph(limit, row.radius);
        for (std::size_t i = window.size(); i-- > 0;) {
            if (!ball_isomorphic(ball_graph(window[i].cover, row.radius), lb)) break;
            row.balls_isomorphic_from = window[i].n;
        }
        rep.rows.push_back(std::move(row));
    }
    return rep;
}

CenterCheck center_formula_check(const Group& g, int bound) {
    if (g.family() != Family::sd4 && g.family() != Family::limit_cover)
        throw InputError("center_formula_check expects sd4(n) or limitH(l,k), got " + g.descriptor());
    CenterCheck c;
    c.group = g.descriptor();
    c.bounded = !g.finite();
    c.bound = c.bounded ? bound : 0;
    c.computed = center(g, bound).elements;
    std::sort(c.computed.begin(), c.computed.end());
    const std::int64_t half = g.torsion() / 2;
    c.expected = {Element{}, Element{2, {}, 0}};
    if (half > 0) {
        c.expected.push_back(Element{0, {}, half});
        c.expected.push_back(Element{2, {}, half});
    }
    std::sort(c.expected.begin(), c.expected.end());
    c.expected.erase(std::unique(c.expected.begin(), c.expected.end()), c.expected.end());
    c.match = c.computed == c.expected;
    return c;
}

CaseAnalysis case_analysis(int l, int k) {
    if (k < 1) throw InputError("case_analysis needs k >= 1");
    const Group h = Group::limit_cover(l, k);
    const std::int64_t half = h.torsion() / 2;
    const Element id{}, y2{2, {}, 0}, th{0, {}, half}, both{2, {}, half};

    struct Plan {
        std::vector<Element> kernel;
        std::vector<Element> witnesses;
        std::size_t minimum;
    };
    std::vector<Plan> plans(5);
    plans[0] = {{id}, {y2, th, both}, 3};
    plans[1] = {{id, y2}, {Element{1, {}, 0}, th}, 2};
    plans[2] = {{id, th}, {y2}, 2};
    plans[3] = {{id, both}, {}, 1};
    plans[4] = {{id, y2, th, both}, {Element{1, {}, 0}}, 2};
    if (k >= 2) {
        plans[2].witnesses.push_back(Element{0, {}, half / 2});
        plans[4].witnesses.push_back(Element{0, {}, half / 2});
    }

    CaseAnalysis out;
    out.l = l;
    out.k = k;
    out.cover = h.descriptor();
    for (int i = 0; i < 5; ++i) {
        Plan& p = plans[static_cast<std::size_t>(i)];
        std::sort(p.kernel.begin(), p.kernel.end());
        const Group q = h.central_quotient(p.kernel);
        CaseReport r;
        r.index = i + 1;
        r.kernel = p.kernel;
        r.quotient = q.descriptor();
        r.census = involutions(q);
        r.witnesses = p.witnesses;
        r.claimed_minimum = p.minimum;

        std::vector<Element> images;
        for (const auto& w : p.witnesses) {
            const Element img = q.canonical(w);
            r.witness_ok.push_back(img != q.identity() && q.mul(img, img) == q.identity());
            images.push_back(img);
        }
        std::sort(images.begin(), images.end());
        const bool distinct = std::adjacent_find(images.begin(), images.end()) == images.end();
        const bool all_ok = std::all_of(r.witness_ok.begin(), r.witness_ok.end(), [](bool b) { return b; });
        const auto count = r.census.count();
        r.unique_involution = count && *count == 1;
        if (p.minimum == 1)
            r.claim_holds = r.unique_involution;
        else
            r.claim_holds = all_ok && distinct && (!count || *count >= p.minimum);
        if (k == 1 && (i == 2 || i == 4)) r.note = "k = 1: the (0, 2^{k-2}) witness is undefined and omitted";
        if (r.census.unbounded)
            r.note += std::string(r.note.empty() ? "" : "; ") +
                      "every element with odd Z4 part is an involution (infinitely many)";
        out.cases.push_back(std::move(r));
    }
    int uniques = 0;
    for (const auto& r : out.cases)
        if (r.unique_involution) {
            ++uniques;
            out.unique_case = r.index;
        }
    if (uniques != 1) out.unique_case = 0;
    return out;
}

AbelianLimitCheck abelian_limit_check(int k, std::vector<std::int64_t> window, int lambda) {
    if (k < 0 || k > 30) throw InputError("abelian_limit_check needs 0 <= k <= 30");
    for (auto n : window)
        if (n < k || n > 30) throw InputError("abelian_limit_check: window indices must satisfy k <= n <= 30");
    AbelianLimitCheck out;
    out.k = k;
    out.lambda = lambda;
    SequenceSpec seq;
    seq.indices = std::move(window);
    if (k == 0) {
        seq.name = "(cyclic(2^n), g)";
        seq.make = [](std::int64_t n) {
            return MarkedGroup(Group::cyclic(std::int64_t{1} << n), {Element{0, {}, 1}}, "g");
        };
    } else {
        seq.name = "(cyclic(2^n), g, g^{2^(n-" + std::to_string(k) + ")})";
        seq.make = [k](std::int64_t n) {
            const std::int64_t step = std::int64_t{1} << (n - k);
            return MarkedGroup(Group::cyclic(std::int64_t{1} << n), {Element{0, {}, 1}, Element{0, {}, step}},
                               "g,g^" + std::to_string(step));
        };
    }
    const MarkedGroup limit = MarkedGroup::standard(Group::abelian(1, std::int64_t{1} << k));
    out.sequence = seq.name;
    out.limit = limit.label();
    try {
        out.verdict = limit_compare(seq, limit, lambda);
    } catch (const NotStabilized&) {
    }
    return out;
}

bool Theorem1Report::consistent() const {
    return covers.match && quotient_matches_tail && matches_named_limit.value_or(true);
}

Theorem1Report theorem1_instance(const LiftedSequence& lifted, int lambda, std::size_t tail_length) {
    if (!lifted.limit_cover) throw InputError("theorem1_instance: sequence has no limit cover");
    Theorem1Report rep;
    rep.lambda = lambda;
    rep.covers = limit_compare(lifted.covers(), *lifted.limit_cover, lambda);
    rep.kernel = kernel_identification(lifted, lambda, tail_length);
    rep.quotients_stable_at = rep.kernel.quotients_stable_at;

    const MarkedGroup& limit = *lifted.limit_cover;
    const Group q = limit.group().central_quotient(rep.kernel.k_approx);
    std::vector<Element> marking;
    for (const auto& s : limit.marking()) marking.push_back(q.canonical(s));
    const std::string text = join_formatted(q, marking);
    const MarkedGroup qlim(q, std::move(marking), text);
    rep.quotient_of_limit = qlim.label();

    const RelationBall ours = rel_ball(qlim, lambda);
    const RelationBall tail = rel_ball(lifted.make(lifted.indices.back()).quotient, lambda);
    rep.quotient_matches_tail = ours == tail;
    rep.witness = first_difference(ours, tail);
    if (lifted.quotient_limit) {
        const RelationBall named = rel_ball(*lifted.quotient_limit, lambda);
        rep.matches_named_limit = named == ours;
        if (!rep.witness) rep.witness = first_difference(ours, named);
    }
    return rep;
}

}  // namespace mg
