#include "markedgroups/acceptance.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <sstream>

#include "markedgroups/logic.hpp"
#include "markedgroups/marked.hpp"
#include "markedgroups/residual.hpp"
#include "markedgroups/structure.hpp"
#include "markedgroups/table.hpp"

namespace mg::acceptance {

namespace {

// Every criterion is exact; the only float comparison is the ultrametric
// check on e^{-radius} values.
constexpr double kDistanceTolerance = 1e-12;

struct Check {
    bool ok = true;
    std::ostringstream log;

    void expect(bool cond, const std::string& what) {
        if (!cond) {
            if (ok) log << "first failure: " << what;
            ok = false;
        }
    }
};

Word wpow(int rank, int gen, int e) { return Word::generator(rank, gen, e); }

std::string c1_dual_oracles(Check& c) {
    std::vector<Group> groups;
    for (int n = 3; n <= 6; ++n) groups.push_back(Group::quaternion(n));
    for (int n = 4; n <= 12; ++n) groups.push_back(Group::dihedral(n));
    for (int n = 3; n <= 6; ++n) groups.push_back(Group::sd4(n));
    groups.push_back(Group::limit_quaternion(1, 1));
    groups.push_back(Group::limit_quaternion(0, 2));
    std::size_t compared = 0;
    for (const auto& g : groups) {
        const MarkedGroup mg = MarkedGroup::standard(g);
        for (int lambda : {0, 1, 2, 5, 8}) {
            c.expect(rel_ball(mg, lambda) == rel_ball_bfs(mg, lambda), mg.label() + " lambda " + std::to_string(lambda));
            ++compared;
        }
    }
    return std::to_string(groups.size()) + " groups, " + std::to_string(compared) + " ball pairs equal";
}

std::string c2_quaternion(Check& c) {
    for (int n = 3; n <= 7; ++n) {
        const Group h = Group::sd4(n);
        const Element z{2, {}, std::int64_t{1} << (n - 2)};
        const Group q = h.central_quotient(std::vector<Element>{Element{}, z});
        const std::string tag = "n=" + std::to_string(n);
        c.expect(q.order() == (std::uint64_t{1} << n), tag + " order");
        const MarkedGroup mg = MarkedGroup::parse(q, "x,y");
        const int half = 1 << (n - 2);
        const Word x = wpow(2, 1, 1), y = wpow(2, 2, 1);
        c.expect(mg.eval(wpow(2, 1, 2 * half)) == q.identity(), tag + " x^{2^{n-1}} = 1");
        c.expect(mg.eval(wpow(2, 2, 4)) == q.identity(), tag + " y^4 = 1");
        c.expect(mg.eval(y.concat(x).concat(y.inverse()).concat(x)) == q.identity(), tag + " y x y^-1 = x^-1");
        c.expect(mg.eval(wpow(2, 1, half)) == mg.eval(wpow(2, 2, 2)), tag + " x^{2^{n-2}} = y^2");
        c.expect(involutions(q).count() == std::optional<std::size_t>{1}, tag + " unique involution");
        c.expect(holds(q, sentences::unique_involution()).holds, tag + " unique-involution sentence");
    }
    return "n = 3..7: orders, four relations, one involution";
}

std::string c3_main_instance(Check& c) {
    const MarkedGroup limit = MarkedGroup::parse("limitQ(1,1)", "a,y");
    const int lambda = 10;
    const RelationBall lb = rel_ball(limit, lambda);
    for (int n = 6; n <= 9; ++n)
        c.expect(rel_ball(MarkedGroup::parse(Group::quaternion(n), "x,y"), lambda) == lb,
                 "Rel_10 equality at n=" + std::to_string(n));
    std::ostringstream d;
    d << "equal at n = 6..9;";
    for (int n = 3; n <= 5; ++n) {
        const MarkedGroup q = MarkedGroup::parse(Group::quaternion(n), "x,y");
        const Distance dist = gg_distance(q, limit, lambda);
        const int half = 1 << (n - 2);
        const Word named = wpow(2, 1, half).concat(wpow(2, 2, -2));
        c.expect(dist.exact && dist.agree_radius == half + 1, "agree radius at n=" + std::to_string(n));
        c.expect(std::find(dist.shortest_witnesses.begin(), dist.shortest_witnesses.end(), named) !=
                     dist.shortest_witnesses.end(),
                 "named witness among shortest at n=" + std::to_string(n));
        c.expect(q.eval(named) == q.group().identity() && limit.eval(named) != limit.group().identity(),
                 "named witness separates at n=" + std::to_string(n));
        d << " n=" << n << " witness " << q.word_text(named) << " at length " << named.length();
    }
    return d.str();
}

std::string c4_kernel(Check& c) {
    const LiftedSequence lifted = lifts::quaternion(index_window(5, 9));
    const KernelIdentification k = kernel_identification(lifted, 8);
    const Group& h = lifted.limit_cover->group();
    const Element expected{2, {}, 1};  // (2, 2^{k-1}) with k = 1
    c.expect(k.k_approx.size() == 2, "|K_approx| = 2");
    c.expect(k.k_approx.size() == 2 && k.k_approx[0] == h.identity() && k.k_approx[1] == expected,
             "nonidentity member is (2;0;1)");
    c.expect(k.quotient_consistent, "kernel words equal quotient relations on the tail");
    c.expect(k.preimage_consistent, "kernel words are the full preimage");
    c.expect(k.inverse_closed && k.subgroup && k.central, "K_approx is a central subgroup");
    std::string members;
    for (const auto& e : k.k_approx) members += " " + h.format(e);
    return "K_approx =" + members + ", |M_approx| = " + std::to_string(k.m_approx.size());
}

std::string c5_cases(Check& c) {
    std::ostringstream d;
    for (auto [l, k] : {std::pair{0, 3}, {1, 2}, {1, 3}}) {
        const CaseAnalysis a = case_analysis(l, k);
        const std::string tag = "(l,k)=(" + std::to_string(l) + "," + std::to_string(k) + ")";
        c.expect(a.cases.size() == 5, tag + " five cases");
        for (const auto& r : a.cases) c.expect(r.claim_holds, tag + " case " + std::to_string(r.index));
        const auto one = a.cases[0].census.count();
        c.expect(one && *one >= 3, tag + " case one has >= 3 involutions");
        if (l == 0) c.expect(one == std::optional<std::size_t>{3}, tag + " case one has exactly 3");
        for (int i : {1, 2, 4}) {
            const auto& r = a.cases[static_cast<std::size_t>(i)];
            c.expect(!r.witnesses.empty(), tag + " named witnesses present");
            c.expect(std::all_of(r.witness_ok.begin(), r.witness_ok.end(), [](bool b) { return b; }),
                     tag + " named witnesses are involutions");
        }
        c.expect(a.cases[3].census.count() == std::optional<std::size_t>{1}, tag + " case four has exactly one");
        c.expect(a.unique_case == 4, tag + " case four is the only unique-involution case");
        d << tag << ":";
        for (const auto& r : a.cases) {
            const auto n = r.census.count();
            d << ' ' << (n ? std::to_string(*n) : std::string("inf"));
        }
        d << "; ";
    }
    return d.str() + "unique case 4";
}

std::string c6_center(Check& c) {
    for (int n = 3; n <= 6; ++n) {
        const CenterCheck cc = center_formula_check(Group::sd4(n));
        c.expect(cc.match && cc.computed.size() == 4, "center of sd4(" + std::to_string(n) + ")");
    }
    return "sd4(3..6): center = {(0;;0),(2;;0),(0;;M/2),(2;;M/2)}";
}

std::string c7_residual(Check& c) {
    const MarkedGroup limit = MarkedGroup::parse("limitQ(1,1)", "a,y");
    const auto table = fully_residual_check(limit, {0, 1, 2, 3}, 8);
    std::ostringstream d;
    int prev = 0;
    for (const auto& w : table) {
        const std::string tag = "R=" + std::to_string(w.radius);
        c.expect(w.found && w.n <= 8, tag + " witness found");
        c.expect(w.von_dyck_verified && w.injectivity_verified && w.distance_verified, tag + " re-verification");
        c.expect(w.n >= prev, tag + " n nondecreasing");
        prev = w.n;
        d << tag << "->n=" << w.n << ' ';
    }
    const auto& r2 = table[2];
    c.expect(r2.n == 4, "R=2 minimal n is 4");
    c.expect(!r2.attempts.empty() && r2.attempts[0].n == 3 && !r2.attempts[0].success && r2.attempts[0].collision,
             "R=2 n=3 fails with a collision");
    if (!r2.attempts.empty() && r2.attempts[0].collision) {
        const auto& fiber = r2.attempts[0].collision->fiber;
        c.expect(std::count(fiber.begin(), fiber.end(), "a^2") && std::count(fiber.begin(), fiber.end(), "y^2"),
                 "n=3 collision fiber contains a^2 and y^2");
    }
    // Every hom into Q_8 injective on B_1 identifies a^2 with y^2.
    const Group q8 = Group::quaternion(3);
    const BallGraph b1 = ball_graph(limit, 1);
    const Word a2 = wpow(2, 1, 2), y2 = wpow(2, 2, 2);
    std::size_t injective = 0;
    for (const auto& h : homs(presentation_of_limit(1, 1), q8)) {
        std::vector<Element> imgs;
        for (const auto& e : b1.vertices) imgs.push_back(limit_element_image(limit.group(), q8, h.images, e));
        std::sort(imgs.begin(), imgs.end());
        if (std::adjacent_find(imgs.begin(), imgs.end()) != imgs.end()) continue;
        ++injective;
        auto image = [&](const Word& w) { return limit_element_image(limit.group(), q8, h.images, limit.eval(w)); };
        c.expect(image(a2) == image(y2), "a^2 and y^2 collide under every B_1-injective hom");
    }
    c.expect(injective > 0, "some hom into Q_8 is injective on B_1");
    return d.str() + "; a^2/y^2 collide in all " + std::to_string(injective) + " B_1-injective homs to Q_8";
}

std::string c8_sentences(Check& c) {
    const auto ui = sentences::unique_involution();
    for (int n = 3; n <= 9; ++n)
        c.expect(holds(Group::quaternion(n), ui).holds, "unique involution on Q_{2^" + std::to_string(n) + "}");
    for (int n : {2, 4, 6, 8})
        c.expect(!holds(Group::dihedral(n), ui).holds, "unique involution fails on D_" + std::to_string(2 * n));
    c.expect(involutions(Group::dihedral(4)).count() == std::optional<std::size_t>{5}, "D_8 has 5 involutions");
    for (int p : {3, 5, 7, 11, 13})
        for (int n = 3; n <= 9; ++n)
            c.expect(holds(Group::quaternion(n), sentences::torsion_free(p)).holds,
                     "torsion-free:" + std::to_string(p) + " on Q_{2^" + std::to_string(n) + "}");
    return "unique-involution on Q_8..Q_512, fails on D_4..D_16, D_8 has 5; torsion-free:{3,5,7,11,13}";
}

std::string c9_dihedral(Check& c) {
    const MarkedGroup limit = MarkedGroup::parse("limitD(1,0)", "a,s");
    const RelationBall lb = rel_ball(limit, 8);
    for (int n = 10; n <= 16; ++n)
        c.expect(rel_ball(MarkedGroup::parse(Group::dihedral(n), "r,s"), 8) == lb,
                 "Rel_8 of D_" + std::to_string(2 * n));
    const LimitVerdict v = limit_compare(family_sequence("dihedral(n)", "r,s", index_window(6, 16)), limit, 8);
    c.expect(v.match && v.stabilized_at <= 10, "window 6..16 stabilizes to Z2 x| Z by n = 10");
    return "D_20..D_32 equal to Z2 x| Z at lambda 8; window stabilizes at n=" + std::to_string(v.stabilized_at);
}

std::string c10_metric(Check& c) {
    const std::vector<MarkedGroup> pts{MarkedGroup::parse("quaternion(3)", "x,y"),
                                       MarkedGroup::parse("quaternion(4)", "x,y"),
                                       MarkedGroup::parse("quaternion(5)", "x,y"),
                                       MarkedGroup::parse("dihedral(4)", "r,s"),
                                       MarkedGroup::parse("limitQ(1,1)", "a,y")};
    const int lmax = 8;
    const std::size_t n = pts.size();
    std::vector<std::vector<Distance>> d(n, std::vector<Distance>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (i != j) d[i][j] = gg_distance(pts[i], pts[j], lmax);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            c.expect(d[i][j].agree_radius == d[j][i].agree_radius && d[i][j].exact == d[j][i].exact,
                     "symmetry " + pts[i].label() + " / " + pts[j].label());
    std::size_t triples = 0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t k = 0; k < n; ++k) {
                if (i == j || j == k || i == k) continue;
                if (!d[i][j].exact || !d[j][k].exact || !d[i][k].exact) continue;
                ++triples;
                c.expect(d[i][k].value() <= std::max(d[i][j].value(), d[j][k].value()) + kDistanceTolerance,
                         "ultrametric " + pts[i].label() + ", " + pts[j].label() + ", " + pts[k].label());
            }
    for (const auto& p : pts) {
        const RelationBall top = rel_ball(p, lmax);
        for (int l = 0; l < lmax; ++l) {
            RelationBall cut{top.rank, l, {}};
            for (const auto& w : top.words)
                if (static_cast<int>(w.length()) <= l) cut.words.push_back(w);
            c.expect(rel_ball(p, l) == cut, "monotonicity " + p.label() + " at " + std::to_string(l));
        }
    }
    return std::to_string(triples) + " exact triples ultrametric, symmetric, balls nested";
}

struct Criterion {
    int id;
    const char* title;
    double budget;
    std::function<std::string(Check&)> body;
};

}  // namespace

std::vector<CriterionResult> run(std::ostream& out, const std::set<int>& only) {
    const std::vector<Criterion> all{
        {1, "dual-oracle relation balls", 120, c1_dual_oracles},
        {2, "quaternion construction", 10, c2_quaternion},
        {3, "quaternion limit at lambda 10", 600, c3_main_instance},
        {4, "kernel identification", 300, c4_kernel},
        {5, "five-case involution analysis", 60, c5_cases},
        {6, "center formula", 30, c6_center},
        {7, "residual witnesses", 120, c7_residual},
        {8, "sentence suite", 60, c8_sentences},
        {9, "dihedral limit", 60, c9_dihedral},
        {10, "metric properties", 120, c10_metric},
    };
    std::vector<CriterionResult> results;
    for (const auto& cr : all) {
        if (!only.empty() && !only.count(cr.id)) continue;
        CriterionResult r;
        r.id = cr.id;
        r.title = cr.title;
        r.budget_seconds = cr.budget;
        Check check;
        const auto t0 = std::chrono::steady_clock::now();
        std::string detail;
        try {
            detail = cr.body(check);
        } catch (const std::exception& e) {
            check.expect(false, std::string("exception: ") + e.what());
        }
        r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        check.expect(r.seconds <= r.budget_seconds, "time budget exceeded");
        r.pass = check.ok;
        r.detail = check.ok ? detail : check.log.str();
        std::ostringstream secs;
        secs.precision(2);
        secs << std::fixed << r.seconds;
        out << "criterion " << r.id << ": " << (r.pass ? "PASS" : "FAIL") << "  " << r.title << "  [" << r.detail
            << "] (" << secs.str() << " s, budget " << r.budget_seconds << " s)" << std::endl;
        results.push_back(std::move(r));
    }
    return results;
}

bool all_pass(const std::vector<CriterionResult>& results) {
    return std::all_of(results.begin(), results.end(), [](const CriterionResult& r) { return r.pass; });
}

}  // namespace mg::acceptance
