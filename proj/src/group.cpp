#include "markedgroups/group.hpp"

#include <algorithm>
#include <charconv>
#include <cctype>
#include <map>
#include <numeric>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

namespace mg {

namespace {

std::int64_t mod(std::int64_t a, std::int64_t m) {
    std::int64_t r = a % m;
    return r < 0 ? r + m : r;
}

std::int64_t pow2(int e) {
    if (e < 0 || e > 40) throw InputError("exponent out of range: 2^" + std::to_string(e));
    return std::int64_t{1} << e;
}

std::string join_params(std::string_view name, std::initializer_list<std::int64_t> ps) {
    std::ostringstream os;
    os << name << '(';
    bool first = true;
    for (auto p : ps) {
        if (!first) os << ',';
        first = false;
        os << p;
    }
    os << ')';
    return os.str();
}

void check_free_rank(int l) {
    if (l < 0 || l > kMaxFreeRank)
        throw InputError("free rank must be in 0.." + std::to_string(kMaxFreeRank));
}

Element unit_free(int i) {
    Element e;
    e.v[static_cast<std::size_t>(i)] = 1;
    return e;
}

std::vector<std::string> abelian_names(int l, bool torsion, std::vector<std::string> head) {
    for (int i = 1; i <= l; ++i) head.push_back("a" + std::to_string(i));
    if (torsion) head.push_back("t");
    return head;
}

std::vector<Element> abelian_gens(int l, bool torsion, std::vector<Element> head) {
    for (int i = 0; i < l; ++i) head.push_back(unit_free(i));
    if (torsion) head.push_back(Element{0, {}, 1});
    return head;
}

}  // namespace

const char* family_name(Family f) {
    switch (f) {
        case Family::cyclic: return "cyclic";
        case Family::abelian: return "abelian";
        case Family::sd4: return "sd4";
        case Family::quaternion: return "quaternion";
        case Family::dihedral: return "dihedral";
        case Family::limit_cover: return "limitH";
        case Family::limit_quaternion: return "limitQ";
        case Family::limit_dihedral: return "limitD";
        case Family::direct4: return "direct4";
        case Family::central_quotient: return "central_quotient";
    }
    return "?";
}

void Group::set_standard_generators(std::vector<std::string> names, std::vector<Element> gens) {
    gen_names_ = std::move(names);
    gens_.clear();
    for (auto& g : gens) gens_.push_back(canonical(g));
}

Group Group::cyclic(std::int64_t n) {
    if (n < 1) throw InputError("cyclic(n) needs n >= 1");
    Group g;
    g.descriptor_ = join_params("cyclic", {n});
    g.family_ = Family::cyclic;
    g.params_ = {n};
    g.torsion_ = n;
    g.set_standard_generators({"g"}, {Element{0, {}, 1}});
    return g;
}

Group Group::abelian(int l, std::int64_t m) {
    check_free_rank(l);
    if (m < 1) throw InputError("abelian(l,m) needs m >= 1");
    Group g;
    g.descriptor_ = join_params("abelian", {l, m});
    g.family_ = Family::abelian;
    g.params_ = {l, m};
    g.free_rank_ = l;
    g.torsion_ = m;
    g.set_standard_generators(abelian_names(l, m > 1, {}), abelian_gens(l, m > 1, {}));
    return g;
}

Group Group::sd4(int n) {
    if (n < 2) throw InputError("sd4(n) needs n >= 2");
    Group g;
    g.descriptor_ = join_params("sd4", {n});
    g.family_ = Family::sd4;
    g.params_ = {n};
    g.top_ = 4;
    g.action_ = Action::sign;
    g.torsion_ = pow2(n - 1);
    g.set_standard_generators({"x", "y"}, {Element{0, {}, 1}, Element{1, {}, 0}});
    return g;
}

Group Group::quaternion(int n) {
    if (n < 3) throw InputError("quaternion(n) needs n >= 3");
    Group g = sd4(n);
    g.kernel_ = {Element{}, Element{2, {}, pow2(n - 2)}};
    g.descriptor_ = join_params("quaternion", {n});
    g.family_ = Family::quaternion;
    g.set_standard_generators({"x", "y"}, {Element{0, {}, 1}, Element{1, {}, 0}});
    return g;
}

Group Group::dihedral(std::int64_t n) {
    if (n < 1) throw InputError("dihedral(n) needs n >= 1");
    Group g;
    g.descriptor_ = join_params("dihedral", {n});
    g.family_ = Family::dihedral;
    g.params_ = {n};
    g.top_ = 2;
    g.action_ = Action::sign;
    g.torsion_ = n;
    g.set_standard_generators({"r", "s"}, {Element{0, {}, 1}, Element{1, {}, 0}});
    return g;
}

Group Group::limit_cover(int l, int k) {
    check_free_rank(l);
    if (k < 0) throw InputError("limitH(l,k) needs k >= 0");
    Group g;
    g.descriptor_ = join_params("limitH", {l, k});
    g.family_ = Family::limit_cover;
    g.params_ = {l, k};
    g.top_ = 4;
    g.action_ = Action::sign;
    g.free_rank_ = l;
    g.torsion_ = pow2(k);
    g.set_standard_generators(abelian_names(l, k > 0, {"y"}),
                              abelian_gens(l, k > 0, {Element{1, {}, 0}}));
    return g;
}

Group Group::limit_quaternion(int l, int k) {
    if (k < 1) throw InputError("limitQ(l,k) needs k >= 1");
    Group g = limit_cover(l, k);
    g.kernel_ = {Element{}, Element{2, {}, pow2(k - 1)}};
    g.descriptor_ = join_params("limitQ", {l, k});
    g.family_ = Family::limit_quaternion;
    g.set_standard_generators(abelian_names(l, true, {"y"}),
                              abelian_gens(l, true, {Element{1, {}, 0}}));
    return g;
}

Group Group::limit_dihedral(int l, int k) {
    check_free_rank(l);
    if (k < 0) throw InputError("limitD(l,k) needs k >= 0");
    Group g;
    g.descriptor_ = join_params("limitD", {l, k});
    g.family_ = Family::limit_dihedral;
    g.params_ = {l, k};
    g.top_ = 2;
    g.action_ = Action::sign;
    g.free_rank_ = l;
    g.torsion_ = pow2(k);
    g.set_standard_generators(abelian_names(l, k > 0, {"s"}),
                              abelian_gens(l, k > 0, {Element{1, {}, 0}}));
    return g;
}

Group Group::direct4(int l, std::int64_t m) {
    check_free_rank(l);
    if (m < 1) throw InputError("direct4(l,m) needs m >= 1");
    Group g;
    g.descriptor_ = join_params("direct4", {l, m});
    g.family_ = Family::direct4;
    g.params_ = {l, m};
    g.top_ = 4;
    g.action_ = Action::trivial;
    g.free_rank_ = l;
    g.torsion_ = m;
    g.set_standard_generators(abelian_names(l, m > 1, {"y"}),
                              abelian_gens(l, m > 1, {Element{1, {}, 0}}));
    return g;
}

Group Group::cover() const {
    Group g = *this;
    g.kernel_.clear();
    return g;
}

std::uint64_t Group::order() const {
    if (!finite()) throw InputError(descriptor_ + " is infinite");
    const std::uint64_t k = kernel_.empty() ? 1 : kernel_.size();
    return static_cast<std::uint64_t>(top_) * static_cast<std::uint64_t>(torsion_) / k;
}

void Group::check(const Element& e) const {
    bool ok = e.x >= 0 && e.x < top_ && e.t >= 0 && e.t < torsion_;
    for (int i = free_rank_; i < kMaxFreeRank && ok; ++i) ok = e.v[static_cast<std::size_t>(i)] == 0;
    if (!ok) throw InputError("element " + format(e) + " does not belong to " + descriptor_);
}

Element Group::cover_mul(const Element& a, const Element& b) const {
    const bool flip = action_ == Action::sign && (b.x & 1);
    Element r;
    r.x = static_cast<std::int32_t>((a.x + b.x) % top_);
    for (int i = 0; i < free_rank_; ++i) {
        const auto k = static_cast<std::size_t>(i);
        r.v[k] = (flip ? -a.v[k] : a.v[k]) + b.v[k];
    }
    r.t = mod((flip ? -a.t : a.t) + b.t, torsion_);
    return r;
}

Element Group::canonical(Element raw) const {
    raw.x = static_cast<std::int32_t>(mod(raw.x, top_));
    raw.t = mod(raw.t, torsion_);
    for (int i = free_rank_; i < kMaxFreeRank; ++i) raw.v[static_cast<std::size_t>(i)] = 0;
    Element best = raw;
    for (const Element& k : kernel_) {
        Element c = cover_mul(raw, k);
        if (c < best) best = c;
    }
    return best;
}

bool Group::contains(const Element& e) const {
    try {
        check(e);
    } catch (const InputError&) {
        return false;
    }
    return canonical(e) == e;
}

Element Group::mul(const Element& a, const Element& b) const {
    check(a);
    check(b);
    Element r = cover_mul(a, b);
    return kernel_.empty() ? r : canonical(r);
}

Element Group::inv(const Element& a) const {
    check(a);
    const bool flip = action_ == Action::sign && (a.x & 1);
    Element r;
    r.x = static_cast<std::int32_t>(mod(-a.x, top_));
    for (int i = 0; i < free_rank_; ++i) {
        const auto k = static_cast<std::size_t>(i);
        r.v[k] = flip ? a.v[k] : -a.v[k];
    }
    r.t = mod(flip ? a.t : -a.t, torsion_);
    return kernel_.empty() ? r : canonical(r);
}

Element Group::pow(const Element& a, std::int64_t e) const {
    Element base = e >= 0 ? a : inv(a);
    std::uint64_t n = static_cast<std::uint64_t>(e >= 0 ? e : -e);
    Element acc = identity();
    while (n) {
        if (n & 1) acc = mul(acc, base);
        base = mul(base, base);
        n >>= 1;
    }
    return acc;
}

std::optional<std::uint64_t> Group::element_order(const Element& e) const {
    if (!finite()) {
        // e^p lies in the abelian part; it has finite order iff its free part vanishes.
        if (!pow(e, top_).free_part_zero()) return std::nullopt;
    }
    const std::uint64_t bound = static_cast<std::uint64_t>(top_) * static_cast<std::uint64_t>(torsion_);
    Element acc = e;
    for (std::uint64_t n = 1; n <= bound; ++n) {
        if (acc == identity()) return n;
        acc = mul(acc, e);
    }
    return std::nullopt;
}

std::vector<Element> Group::elements() const {
    if (!finite()) throw InputError("elements(): " + descriptor_ + " is infinite");
    std::vector<Element> out;
    out.reserve(order());
    for (std::int32_t x = 0; x < top_; ++x)
        for (std::int64_t t = 0; t < torsion_; ++t) {
            Element e{x, {}, t};
            if (kernel_.empty() || canonical(e) == e) out.push_back(e);
        }
    return out;
}

std::optional<Element> Group::generator(std::string_view name) const {
    for (std::size_t i = 0; i < gen_names_.size(); ++i)
        if (gen_names_[i] == name) return gens_[i];
    if (name == "a" && free_rank_ == 1) return generator("a1");
    return std::nullopt;
}

Element Group::element_from_text(std::string_view text) const {
    auto trimmed = text;
    while (!trimmed.empty() && std::isspace(static_cast<unsigned char>(trimmed.front()))) trimmed.remove_prefix(1);
    while (!trimmed.empty() && std::isspace(static_cast<unsigned char>(trimmed.back()))) trimmed.remove_suffix(1);
    if (!trimmed.empty() && trimmed.front() == '(') return parse_element(trimmed);
    std::vector<std::string> names = gen_names_;
    std::vector<Element> gens = gens_;
    if (free_rank_ == 1) {
        names.push_back("a");
        gens.push_back(*generator("a1"));
    }
    const Word w = parse_named_word(names, trimmed);
    return evaluate<Group, Element>(w, *this, gens);
}

std::string Group::format(const Element& e) const {
    std::ostringstream os;
    os << '(' << e.x << ';';
    for (int i = 0; i < free_rank_; ++i) {
        if (i) os << ',';
        os << e.v[static_cast<std::size_t>(i)];
    }
    os << ';' << e.t << ')';
    return os.str();
}

Element Group::parse_element(std::string_view text) const {
    // (x;v1,...,vl;t)
    if (text.size() < 2 || text.front() != '(' || text.back() != ')')
        throw InputError("element must look like (x;v...;t): '" + std::string(text) + "'");
    std::string body(text.substr(1, text.size() - 2));
    std::vector<std::string> parts;
    std::stringstream ss(body);
    std::string part;
    while (std::getline(ss, part, ';')) parts.push_back(part);
    if (body.size() && body.back() == ';') parts.push_back("");
    if (parts.size() != 3) throw InputError("element needs three ';'-separated parts: " + std::string(text));
    auto to_int = [&](const std::string& s) {
        std::int64_t v = 0;
        std::string trimmed;
        for (char c : s)
            if (!std::isspace(static_cast<unsigned char>(c))) trimmed.push_back(c);
        auto [p, ec] = std::from_chars(trimmed.data(), trimmed.data() + trimmed.size(), v);
        if (ec != std::errc{} || p != trimmed.data() + trimmed.size())
            throw InputError("bad integer '" + s + "' in element");
        return v;
    };
    Element e;
    e.x = static_cast<std::int32_t>(to_int(parts[0]));
    std::stringstream vs(parts[1]);
    std::string c;
    int i = 0;
    while (std::getline(vs, c, ',')) {
        if (c.find_first_not_of(" \t") == std::string::npos) continue;
        if (i >= free_rank_) throw InputError("too many free coordinates in " + std::string(text));
        e.v[static_cast<std::size_t>(i++)] = static_cast<std::int32_t>(to_int(c));
    }
    e.t = to_int(parts[2]);
    check(e);
    return canonical(e);
}

Group Group::central_quotient(std::span<const Element> subgroup) const {
    if (subgroup.empty()) throw InputError("central_quotient: empty subgroup list");
    const Group base = cover();
    std::vector<Element> lifted;
    // Members may be given as canonical elements of this group; lift them into
    // the cover together with the current kernel.
    std::vector<Element> current = kernel_.empty() ? std::vector<Element>{Element{}} : kernel_;
    for (const auto& s : subgroup) {
        if (!contains(s)) throw InputError("central_quotient: " + format(s) + " not in " + descriptor_);
        for (const auto& k : current) lifted.push_back(base.cover_mul(s, k));
    }
    std::sort(lifted.begin(), lifted.end());
    lifted.erase(std::unique(lifted.begin(), lifted.end()), lifted.end());
    if (!is_subgroup(base, lifted)) throw InputError("central_quotient: subset is not a subgroup");
    if (!is_central(base, lifted)) throw InputError("central_quotient: subgroup is not central");
    for (const auto& k : lifted)
        if (!finite() && !k.free_part_zero())
            throw InputError("central_quotient: kernel elements must have zero free part");

    Group q = *this;
    q.kernel_ = lifted;
    if (q.kernel_.size() == 1) q.kernel_.clear();
    std::ostringstream os;
    os << base.descriptor_ << "/{";
    for (std::size_t i = 0; i < lifted.size(); ++i) os << (i ? "," : "") << base.format(lifted[i]);
    os << '}';
    q.descriptor_ = os.str();
    q.family_ = Family::central_quotient;
    q.params_ = params_;
    q.set_standard_generators(gen_names_, gens_);
    return q;
}

Group Group::parse(std::string_view descriptor) {
    std::string text;
    for (char c : descriptor)
        if (!std::isspace(static_cast<unsigned char>(c))) text.push_back(c);

    if (auto slash = text.find("/{"); slash != std::string::npos) {
        if (text.back() != '}') throw InputError("quotient descriptor must end with '}'");
        Group base = parse(text.substr(0, slash));
        const std::string list = text.substr(slash + 2, text.size() - slash - 3);
        std::vector<Element> ks;
        std::size_t i = 0;
        while (i < list.size()) {
            if (list[i] == ',') {
                ++i;
                continue;
            }
            auto close = list.find(')', i);
            if (list[i] != '(' || close == std::string::npos) throw InputError("bad quotient element list");
            ks.push_back(base.parse_element(list.substr(i, close - i + 1)));
            i = close + 1;
        }
        return base.central_quotient(ks);
    }

    const auto open = text.find('(');
    if (open == std::string::npos || text.back() != ')')
        throw InputError("descriptor must look like name(args): '" + text + "'");
    const std::string name = text.substr(0, open);
    std::vector<std::int64_t> args;
    std::stringstream ss(text.substr(open + 1, text.size() - open - 2));
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        std::int64_t v = 0;
        auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
        if (ec != std::errc{} || p != tok.data() + tok.size())
            throw InputError("bad descriptor argument '" + tok + "'");
        args.push_back(v);
    }
    auto need = [&](std::size_t n) {
        if (args.size() != n)
            throw InputError(name + " takes " + std::to_string(n) + " argument(s)");
    };
    auto as_int = [](std::int64_t v) {
        if (v < -1000000 || v > 1000000) throw InputError("descriptor argument out of range");
        return static_cast<int>(v);
    };
    if (name == "cyclic") { need(1); return cyclic(args[0]); }
    if (name == "abelian") { need(2); return abelian(as_int(args[0]), args[1]); }
    if (name == "sd4") { need(1); return sd4(as_int(args[0])); }
    if (name == "quaternion") { need(1); return quaternion(as_int(args[0])); }
    if (name == "dihedral") { need(1); return dihedral(args[0]); }
    if (name == "limitH") { need(2); return limit_cover(as_int(args[0]), as_int(args[1])); }
    if (name == "limitQ") { need(2); return limit_quaternion(as_int(args[0]), as_int(args[1])); }
    if (name == "limitD") { need(2); return limit_dihedral(as_int(args[0]), as_int(args[1])); }
    if (name == "direct4") { need(2); return direct4(as_int(args[0]), args[1]); }
    throw InputError("unknown group family '" + name + "'");
}

// ---------------------------------------------------------------------------

bool is_subgroup(const Group& g, std::span<const Element> elems) {
    std::unordered_set<Element> set(elems.begin(), elems.end());
    if (!set.count(g.identity())) return false;
    for (const auto& a : elems) {
        if (!set.count(g.inv(a))) return false;
        for (const auto& b : elems)
            if (!set.count(g.mul(a, b))) return false;
    }
    return true;
}

bool is_central(const Group& g, std::span<const Element> elems) {
    for (const auto& a : elems)
        for (const auto& s : g.generators())
            if (g.mul(a, s) != g.mul(s, a)) return false;
    return true;
}

SubgroupWitness generated_subgroup(const Group& g, std::span<const Element> gens, std::size_t limit) {
    std::vector<Element> out{g.identity()};
    std::unordered_set<Element> seen{g.identity()};
    for (std::size_t i = 0; i < out.size(); ++i) {
        for (const auto& s : gens) {
            for (const auto& n : {g.mul(out[i], s), g.mul(out[i], g.inv(s))}) {
                if (seen.insert(n).second) {
                    out.push_back(n);
                    if (out.size() > limit) throw InputError("generated_subgroup: closure exceeds limit");
                }
            }
        }
    }
    std::sort(out.begin(), out.end());
    return {out};
}

std::vector<Element> elements_in_box(const Group& g, int bound) {
    if (g.finite()) return g.elements();
    std::vector<Element> out;
    const int l = g.free_rank();
    std::vector<int> v(static_cast<std::size_t>(l), -bound);
    while (true) {
        for (std::int32_t x = 0; x < g.top_order(); ++x)
            for (std::int64_t t = 0; t < g.torsion(); ++t) {
                Element e{x, {}, t};
                for (int i = 0; i < l; ++i) e.v[static_cast<std::size_t>(i)] = v[static_cast<std::size_t>(i)];
                if (g.canonical(e) == e) out.push_back(e);
            }
        int i = 0;
        while (i < l && v[static_cast<std::size_t>(i)] == bound) v[static_cast<std::size_t>(i++)] = -bound;
        if (i == l) break;
        ++v[static_cast<std::size_t>(i)];
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<Element> involutions_in_box(const Group& g, int bound) {
    std::vector<Element> out;
    for (const auto& e : elements_in_box(g, bound))
        if (e != g.identity() && g.mul(e, e) == g.identity()) out.push_back(e);
    return out;
}

InvolutionCensus involutions(const Group& g) {
    InvolutionCensus census;
    if (g.finite()) {
        census.with_zero_free_part = involutions_in_box(g, 0);
        return census;
    }
    // Squaring (x,v,t) gives (2x, 2v, 2t) for even x or trivial action and
    // (2x, 0, 0) for odd x under the sign action. Kernel elements have zero
    // free part, so the first kind needs v = 0 and the second kind is an
    // involution for every (v,t) as soon as one representative is.
    census.with_zero_free_part = involutions_in_box(g, 0);
    if (g.action() == Action::sign) {
        for (std::int32_t x = 1; x < g.top_order(); x += 2) {
            Element e = g.canonical(Element{x, {}, 0});
            if (e.x % 2 == 1 && g.mul(e, e) == g.identity()) {
                census.unbounded = true;
                Element rep = g.canonical(Element{x, {}, 0});
                if (!census.family_representative || rep < *census.family_representative)
                    census.family_representative = rep;
            }
        }
    }
    return census;
}

SubgroupWitness center(const Group& g, int bound) {
    std::vector<Element> out;
    for (const auto& e : elements_in_box(g, bound)) {
        bool central = true;
        for (const auto& s : g.generators())
            if (g.mul(e, s) != g.mul(s, e)) {
                central = false;
                break;
            }
        if (central) out.push_back(e);
    }
    return {out};
}

// ---------------------------------------------------------------------------
// Isomorphism search between finite groups.

namespace {

std::map<std::uint64_t, std::size_t> order_profile(const Group& g, const std::vector<Element>& elems) {
    std::map<std::uint64_t, std::size_t> prof;
    for (const auto& e : elems) ++prof[*g.element_order(e)];
    return prof;
}

}  // namespace

std::optional<Isomorphism> iso_search(const Group& g, const Group& h) {
    if (!g.finite() || !h.finite()) throw InputError("iso_search needs finite groups");
    if (g.order() != h.order()) return std::nullopt;
    const auto ge = g.elements();
    const auto he = h.elements();
    if (order_profile(g, ge) != order_profile(h, he)) return std::nullopt;

    const auto& gens = g.generators();
    // BFS spanning tree of g: each element reached from a parent by one generator.
    struct Step {
        std::size_t parent;
        std::size_t gen;
    };
    std::unordered_map<Element, std::size_t> index;
    std::vector<Element> order{g.identity()};
    std::vector<Step> tree{{0, 0}};
    index[g.identity()] = 0;
    for (std::size_t i = 0; i < order.size(); ++i)
        for (std::size_t s = 0; s < gens.size(); ++s) {
            Element n = g.mul(order[i], gens[s]);
            if (index.emplace(n, order.size()).second) {
                order.push_back(n);
                tree.push_back({i, s});
            }
        }
    if (order.size() != ge.size()) return std::nullopt;  // marking does not generate

    std::vector<std::vector<Element>> candidates(gens.size());
    for (std::size_t s = 0; s < gens.size(); ++s) {
        const auto o = g.element_order(gens[s]);
        for (const auto& c : he)
            if (h.element_order(c) == o) candidates[s].push_back(c);
    }

    std::vector<Element> images(gens.size());
    auto try_map = [&]() -> bool {
        std::vector<Element> phi(order.size());
        phi[0] = h.identity();
        for (std::size_t i = 1; i < order.size(); ++i) phi[i] = h.mul(phi[tree[i].parent], images[tree[i].gen]);
        // Homomorphism on every Cayley edge, then bijectivity.
        for (std::size_t i = 0; i < order.size(); ++i)
            for (std::size_t s = 0; s < gens.size(); ++s)
                if (phi[index.at(g.mul(order[i], gens[s]))] != h.mul(phi[i], images[s])) return false;
        std::unordered_set<Element> img(phi.begin(), phi.end());
        return img.size() == he.size();
    };
    std::function<bool(std::size_t)> assign = [&](std::size_t s) -> bool {
        if (s == gens.size()) return try_map();
        for (const auto& c : candidates[s]) {
            images[s] = c;
            if (assign(s + 1)) return true;
        }
        return false;
    };
    if (assign(0)) return Isomorphism{images};
    return std::nullopt;
}

}  // namespace mg
