#include "markedgroups/residual.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace mg {

std::string Presentation::to_text() const {
    std::ostringstream os;
    os << "<";
    for (const auto& g : generators) os << ' ' << g;
    os << " |";
    for (std::size_t i = 0; i < relators.size(); ++i) os << (i ? ", " : " ") << relators[i].to_named_text(generators);
    os << " >";
    return os.str();
}

Presentation parse_presentation(std::string_view text) {
    auto open = text.find('<');
    auto bar = text.find('|');
    auto close = text.rfind('>');
    if (open == std::string_view::npos || bar == std::string_view::npos || close == std::string_view::npos ||
        !(open < bar && bar < close))
        throw InputError("presentation must look like < gens | relators >");
    Presentation p;
    std::istringstream gs{std::string(text.substr(open + 1, bar - open - 1))};
    std::string g;
    while (gs >> g) {
        if (g.back() == ',') g.pop_back();
        if (!g.empty()) p.generators.push_back(g);
    }
    if (p.generators.empty()) throw InputError("presentation has no generators");
    std::string rels(text.substr(bar + 1, close - bar - 1));
    std::stringstream rs(rels);
    std::string r;
    while (std::getline(rs, r, ',')) {
        if (r.find_first_not_of(" \t") == std::string::npos) continue;
        Word w = parse_named_word(p.generators, r);
        if (w.empty()) throw InputError("relator '" + r + "' reduces to the empty word");
        p.relators.push_back(std::move(w));
    }
    p.note = "user-supplied";
    return p;
}

Presentation presentation_of_limit(int l, int k) {
    if (l < 0 || l > kMaxFreeRank || k < 1) throw InputError("presentation_of_limit needs 0 <= l <= 4, k >= 1");
    Presentation p;
    p.generators.push_back("y");
    for (int i = 1; i <= l; ++i) p.generators.push_back("a" + std::to_string(i));
    p.generators.push_back("t");
    const int m = p.rank();
    const int y = 1, t = m;
    auto gen = [&](int idx, int e = 1) { return Word::generator(m, idx, e); };
    for (int i = 2; i <= l + 1; ++i)
        for (int j = i + 1; j <= l + 1; ++j) p.relators.push_back(commutator(gen(i), gen(j)));
    for (int i = 2; i <= l + 1; ++i) p.relators.push_back(commutator(gen(i), gen(t)));
    for (int i = 2; i <= l + 1; ++i) p.relators.push_back(gen(y).concat(gen(i)).concat(gen(y, -1)).concat(gen(i)));
    p.relators.push_back(gen(y).concat(gen(t)).concat(gen(y, -1)).concat(gen(t)));
    p.relators.push_back(gen(t, 1 << k));
    p.relators.push_back(gen(y, 2).concat(gen(t, -(1 << (k - 1)))));
    p.note = "reconstructed presentation of limitQ(" + std::to_string(l) + "," + std::to_string(k) + ")";
    return p;
}

bool satisfies_relators(const Presentation& p, const Group& target, std::span<const Element> images) {
    if (static_cast<int>(images.size()) != p.rank()) throw InputError("satisfies_relators: arity mismatch");
    for (const auto& r : p.relators)
        if (evaluate<Group, Element>(r, target, images) != target.identity()) return false;
    return true;
}

std::uint64_t for_each_hom(const Presentation& p, const CayleyTable& target,
                           const std::function<bool(const std::vector<std::uint32_t>&)>& visit) {
    const auto m = static_cast<std::size_t>(p.rank());
    // Relators become checkable once their highest generator is assigned.
    std::vector<std::vector<const Word*>> due(m);
    std::vector<std::uint64_t> power_bound(m, 0);  // 0: unconstrained
    for (const auto& r : p.relators) {
        int hi = 0;
        for (Letter l : r.letters()) hi = std::max(hi, std::abs(l));
        due[static_cast<std::size_t>(hi - 1)].push_back(&r);
        const auto& ls = r.letters();
        if (std::all_of(ls.begin(), ls.end(), [&](Letter l) { return std::abs(l) == std::abs(ls.front()); })) {
            // g^e with e = |r|: the image order divides e.
            auto& b = power_bound[static_cast<std::size_t>(std::abs(ls.front()) - 1)];
            b = b == 0 ? ls.size() : std::gcd(b, static_cast<std::uint64_t>(ls.size()));
        }
    }
    std::vector<std::vector<std::uint32_t>> candidates(m);
    for (std::size_t g = 0; g < m; ++g)
        for (std::uint32_t e = 0; e < target.size(); ++e)
            if (power_bound[g] == 0 || power_bound[g] % target.order_of(e) == 0) candidates[g].push_back(e);

    std::vector<std::uint32_t> images(m, 0);
    std::uint64_t visited = 0;
    bool stop = false;
    auto rec = [&](auto&& self, std::size_t g) -> void {
        if (g == m) {
            ++visited;
            if (!visit(images)) stop = true;
            return;
        }
        for (std::uint32_t c : candidates[g]) {
            images[g] = c;
            bool ok = true;
            for (const Word* r : due[g])
                if (target.eval(*r, images) != target.identity()) {
                    ok = false;
                    break;
                }
            if (ok) self(self, g + 1);
            if (stop) return;
        }
    };
    rec(rec, 0);
    return visited;
}

std::vector<Homomorphism> homs(const Presentation& p, const Group& target) {
    const CayleyTable table(target);
    std::vector<Homomorphism> out;
    for_each_hom(p, table, [&](const std::vector<std::uint32_t>& img) {
        Homomorphism h;
        for (auto i : img) h.images.push_back(table.element(i));
        out.push_back(std::move(h));
        return true;
    });
    return out;
}

Element limit_element_image(const Group& limit, const Group& target, std::span<const Element> images,
                            const Element& e) {
    const int l = limit.free_rank();
    if (static_cast<int>(images.size()) != l + 2) throw InputError("limit_element_image: arity mismatch");
    Element acc = target.pow(images[0], e.x);
    for (int i = 0; i < l; ++i)
        acc = target.mul(acc, target.pow(images[static_cast<std::size_t>(i) + 1], e.v[static_cast<std::size_t>(i)]));
    return target.mul(acc, target.pow(images.back(), e.t));
}

ResidualWitness residual_witness(const MarkedGroup& limit, int radius, int n_max) {
    const Group& lg = limit.group();
    if (lg.family() != Family::limit_quaternion)
        throw InputError("residual_witness needs a limitQ(l,k) marked group, got " + lg.descriptor());
    const int l = static_cast<int>(lg.params()[0]);
    const int k = static_cast<int>(lg.params()[1]);
    const Presentation pres = presentation_of_limit(l, k);
    const BallGraph ball = ball_graph(limit, radius);

    ResidualWitness rw;
    rw.radius = radius;
    rw.ball_size = ball.vertices.size();
    rw.presentation_note = pres.note;

    int max_abs = 0;
    for (const auto& e : ball.vertices)
        for (int i = 0; i < l; ++i) max_abs = std::max(max_abs, std::abs(e.v[static_cast<std::size_t>(i)]));
    const std::int64_t max_t = lg.torsion();

    for (int n = 3; n <= n_max; ++n) {
        const Group q = Group::quaternion(n);
        const CayleyTable table(q);
        WitnessAttempt attempt;
        attempt.n = n;
        std::vector<std::uint32_t> stamp(table.size(), 0);
        std::vector<std::uint32_t> owner(table.size(), 0);
        std::uint32_t epoch = 0;
        std::size_t best_prefix = 0;
        std::vector<std::uint32_t> winner;

        auto pow_idx = [&](std::uint32_t g, std::int64_t e) {
            std::uint32_t base = e >= 0 ? g : table.inv(g);
            std::uint32_t acc = table.identity();
            for (std::int64_t i = 0; i < std::abs(e); ++i) acc = table.mul(acc, base);
            return acc;
        };

        attempt.homs_examined = for_each_hom(pres, table, [&](const std::vector<std::uint32_t>& img) {
            // Power tables for the generator images.
            std::vector<std::vector<std::uint32_t>> a_pow(static_cast<std::size_t>(l));
            for (int i = 0; i < l; ++i) {
                auto& tab = a_pow[static_cast<std::size_t>(i)];
                tab.resize(static_cast<std::size_t>(2 * max_abs + 1));
                for (int e = -max_abs; e <= max_abs; ++e)
                    tab[static_cast<std::size_t>(e + max_abs)] = pow_idx(img[static_cast<std::size_t>(i) + 1], e);
            }
            std::vector<std::uint32_t> t_pow(static_cast<std::size_t>(max_t));
            for (std::int64_t e = 0; e < max_t; ++e) t_pow[static_cast<std::size_t>(e)] = pow_idx(img.back(), e);
            const std::uint32_t y_img = img[0];

            ++epoch;
            std::size_t i = 0;
            for (; i < ball.vertices.size(); ++i) {
                const Element& e = ball.vertices[i];
                std::uint32_t im = e.x ? y_img : table.identity();
                for (int a = 0; a < l; ++a)
                    im = table.mul(im, a_pow[static_cast<std::size_t>(a)][static_cast<std::size_t>(
                                           e.v[static_cast<std::size_t>(a)] + max_abs)]);
                im = table.mul(im, t_pow[static_cast<std::size_t>(e.t)]);
                if (stamp[im] == epoch) break;
                stamp[im] = epoch;
                owner[im] = static_cast<std::uint32_t>(i);
            }
            if (i == ball.vertices.size()) {
                winner = img;
                return false;
            }
            if (i > best_prefix || !attempt.collision) {
                best_prefix = i;
                const Element& e = ball.vertices[i];
                std::vector<Element> imgs;
                for (auto g : img) imgs.push_back(table.element(g));
                const Element im = limit_element_image(lg, q, imgs, e);
                const std::uint32_t other = owner[table.index(im)];
                attempt.collision = CollisionWitness{ball.vertices[other], e, limit.word_text(ball.geodesics[other]),
                                                     limit.word_text(ball.geodesics[i]), im, {}};
                for (std::size_t j = 0; j < ball.vertices.size(); ++j)
                    if (limit_element_image(lg, q, imgs, ball.vertices[j]) == im)
                        attempt.collision->fiber.push_back(limit.word_text(ball.geodesics[j]));
            }
            return true;
        });

        if (!winner.empty()) {
            attempt.success = true;
            attempt.collision.reset();
            rw.attempts.push_back(attempt);
            rw.found = true;
            rw.n = n;
            for (auto g : winner) rw.hom.images.push_back(table.element(g));
            // Independent re-verification of everything the search relied on.
            rw.von_dyck_verified = satisfies_relators(pres, q, rw.hom.images);
            std::vector<Element> imgs;
            for (const auto& e : ball.vertices) imgs.push_back(limit_element_image(lg, q, rw.hom.images, e));
            rw.injectivity_verified = true;
            for (std::size_t a = 0; a < imgs.size() && rw.injectivity_verified; ++a)
                for (std::size_t b = a + 1; b < imgs.size(); ++b)
                    if (imgs[a] == imgs[b]) {
                        rw.injectivity_verified = false;
                        break;
                    }
            std::string text;
            for (const auto& s : limit.marking()) {
                rw.marking_images.push_back(limit_element_image(lg, q, rw.hom.images, s));
                text += (text.empty() ? "" : ",") + q.format(rw.marking_images.back());
            }
            const MarkedGroup image(q, rw.marking_images, text);
            rw.distance_verified = rel_ball(limit, radius) == rel_ball(image, radius);
            return rw;
        }
        rw.attempts.push_back(attempt);
    }
    return rw;
}

std::vector<ResidualWitness> fully_residual_check(const MarkedGroup& limit, const std::vector<int>& radii,
                                                  int n_max) {
    std::vector<ResidualWitness> out;
    for (int r : radii) out.push_back(residual_witness(limit, r, n_max));
    return out;
}

std::string witness_table_csv(const MarkedGroup& limit, const std::vector<ResidualWitness>& table) {
    std::ostringstream os;
    os << "R,n,generator_images,ball_size,distance_bound,distance_verified,presentation\n";
    const auto& names = presentation_of_limit(static_cast<int>(limit.group().params()[0]),
                                              static_cast<int>(limit.group().params()[1]))
                            .generators;
    for (const auto& w : table) {
        os << w.radius << ',';
        if (w.found) {
            os << w.n << ",\"";
            const Group q = Group::quaternion(w.n);
            for (std::size_t i = 0; i < w.hom.images.size(); ++i)
                os << (i ? " " : "") << names[i] << '=' << q.format(w.hom.images[i]);
            os << "\"," << w.ball_size << ',' << std::exp(-static_cast<double>(w.radius)) << ','
               << (w.distance_verified ? "yes" : "no");
        } else {
            os << "none,\"\"," << w.ball_size << ",,no";
        }
        os << ",\"" << w.presentation_note << "\"\n";
    }
    return os.str();
}

}  // namespace mg
