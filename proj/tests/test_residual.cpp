#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>

#include "markedgroups/residual.hpp"
#include "oracles.hpp"

using namespace mg;

namespace {

// Counts homomorphisms P -> Q_{2^n} by brute force over matrix images.
std::size_t count_homs_by_matrices(const Presentation& p, int n) {
    const Group q = Group::quaternion(n);
    const auto model = oracle::quaternion(n);
    const auto elems = q.elements();
    std::vector<oracle::Mat> mats;
    for (const auto& e : elems) mats.push_back(oracle::element_matrix_rank1(model, e));
    const int m = p.rank();
    std::vector<std::size_t> idx(static_cast<std::size_t>(m), 0);
    std::size_t count = 0;
    while (true) {
        oracle::Model img;
        for (auto i : idx) {
            img.gens.push_back(mats[i]);
            img.invs.push_back(mats[std::find(elems.begin(), elems.end(), q.inv(elems[i])) - elems.begin()]);
        }
        if (std::all_of(p.relators.begin(), p.relators.end(), [&](const Word& r) { return img.is_relation(r); }))
            ++count;
        std::size_t k = 0;
        while (k < idx.size() && ++idx[k] == elems.size()) idx[k++] = 0;
        if (k == idx.size()) break;
    }
    return count;
}

oracle::Model image_model(int n, const std::vector<Element>& images) {
    const auto base = oracle::quaternion(n);
    const Group q = Group::quaternion(n);
    oracle::Model m;
    for (const auto& e : images) {
        m.gens.push_back(oracle::element_matrix_rank1(base, e));
        m.invs.push_back(oracle::element_matrix_rank1(base, q.inv(e)));
    }
    return m;
}

}  // namespace

TEST_CASE("presentation parsing") {
    const Presentation p = parse_presentation("< y t | t^4, y t y^-1 t, y^2 t^-2 >");
    CHECK(p.generators == std::vector<std::string>{"y", "t"});
    CHECK(p.relators.size() == 3);
    CHECK(parse_presentation(p.to_text()).relators == p.relators);
    CHECK(parse_presentation("< g | >").relators.empty());
    CHECK_THROWS_AS(parse_presentation("< y | z >"), InputError);
    CHECK_THROWS_AS(parse_presentation("y | y^2"), InputError);
}

TEST_CASE("limit presentations carry a reconstruction note") {
    const Presentation p = presentation_of_limit(1, 1);
    CHECK(p.generators == std::vector<std::string>{"y", "a1", "t"});
    CHECK(p.note.find("reconstructed") != std::string::npos);
    // Every relator holds in the limit group itself.
    const Group g = Group::limit_quaternion(1, 1);
    const std::vector<Element> gens{*g.generator("y"), *g.generator("a1"), *g.generator("t")};
    for (const auto& r : p.relators) CHECK(evaluate<Group, Element>(r, g, gens) == g.identity());
    const Presentation big = presentation_of_limit(2, 3);
    const Group g2 = Group::limit_quaternion(2, 3);
    const std::vector<Element> gens2{*g2.generator("y"), *g2.generator("a1"), *g2.generator("a2"), *g2.generator("t")};
    for (const auto& r : big.relators) CHECK(evaluate<Group, Element>(r, g2, gens2) == g2.identity());
}

TEST_CASE("homomorphism counts agree with matrix brute force") {
    CHECK(homs(parse_presentation("< g | g^4 >"), Group::quaternion(3)).size() == 8);
    CHECK(homs(presentation_of_limit(0, 1), Group::quaternion(3)).size() == 8);
    for (const auto& [l, k, n] : std::vector<std::tuple<int, int, int>>{{0, 1, 3}, {0, 2, 4}, {1, 1, 3}, {1, 1, 4}, {1, 2, 4}}) {
        CAPTURE(l);
        CAPTURE(k);
        CAPTURE(n);
        const Presentation p = presentation_of_limit(l, k);
        CHECK(homs(p, Group::quaternion(n)).size() == count_homs_by_matrices(p, n));
    }
}

TEST_CASE("visitor can stop the hom search") {
    const CayleyTable t(Group::quaternion(4));
    std::uint64_t seen = 0;
    const auto visited = for_each_hom(presentation_of_limit(1, 1), t, [&](const auto&) { return ++seen < 3; });
    CHECK(visited == 3);
    CHECK(seen == 3);
}

TEST_CASE("frozen residual witnesses for limitQ(1,1) marked (a,y)") {
    const MarkedGroup lim = MarkedGroup::parse("limitQ(1,1)", "a,y");
    const auto table = fully_residual_check(lim, {0, 1, 2, 3}, 7);
    REQUIRE(table.size() == 4);
    const std::vector<int> expect_n{3, 3, 4, 5};
    for (std::size_t i = 0; i < table.size(); ++i) {
        const auto& w = table[i];
        CAPTURE(w.radius);
        REQUIRE(w.found);
        CHECK(w.n == expect_n[i]);
        CHECK(w.von_dyck_verified);
        CHECK(w.injectivity_verified);
        CHECK(w.distance_verified);
        // Independent: the image tuple has the same relation ball in Q_{2^n}.
        const auto model = image_model(w.n, w.marking_images);
        auto words = oracle::relation_ball(model, w.radius);
        std::sort(words.begin(), words.end(), ShortlexLess{});
        CHECK(words == rel_ball(lim, w.radius).words);
        // Independent: ball elements have distinct matrix images.
        const BallGraph ball = ball_graph(lim, w.radius);
        CHECK(ball.vertices.size() == w.ball_size);
        std::vector<oracle::Mat> mats;
        for (const auto& g : ball.geodesics) mats.push_back(model.eval(g));
        for (std::size_t a = 0; a < mats.size(); ++a)
            for (std::size_t b = a + 1; b < mats.size(); ++b) CHECK_FALSE(oracle::near(mats[a], mats[b]));
    }
}

TEST_CASE("failed attempts report a collision with its fiber") {
    const ResidualWitness w = residual_witness(MarkedGroup::parse("limitQ(1,1)", "a,y"), 2, 7);
    REQUIRE(w.attempts.size() == 2);
    const auto& fail = w.attempts[0];
    CHECK(fail.n == 3);
    CHECK_FALSE(fail.success);
    REQUIRE(fail.collision.has_value());
    const auto& fiber = fail.collision->fiber;
    for (const char* s : {"a^2", "a^-2", "y^2"}) CHECK(std::find(fiber.begin(), fiber.end(), s) != fiber.end());
    CHECK(w.attempts[1].success);
}

TEST_CASE("witness degree is nondecreasing in the radius") {
    for (const char* d : {"limitQ(0,2)", "limitQ(1,2)"}) {
        CAPTURE(d);
        const auto table = fully_residual_check(MarkedGroup::standard(Group::parse(d)), {0, 1, 2}, 7);
        for (std::size_t i = 1; i < table.size(); ++i) CHECK(table[i - 1].n <= table[i].n);
        for (const auto& w : table) CHECK(w.found);
    }
    const auto q02 = fully_residual_check(MarkedGroup::standard(Group::parse("limitQ(0,2)")), {0, 1, 2, 3}, 6);
    for (const auto& w : q02) CHECK(w.n == 3);
}

TEST_CASE("n_max too small reports not found") {
    const ResidualWitness w = residual_witness(MarkedGroup::parse("limitQ(1,1)", "a,y"), 3, 4);
    CHECK_FALSE(w.found);
    CHECK(w.attempts.size() == 2);
    CHECK_THROWS_AS(residual_witness(MarkedGroup::parse("limitD(1,1)", "a,s"), 1, 5), InputError);
}

TEST_CASE("witness table CSV") {
    const MarkedGroup lim = MarkedGroup::parse("limitQ(1,1)", "a,y");
    const std::string csv = witness_table_csv(lim, fully_residual_check(lim, {0, 1}, 5));
    CHECK(csv.rfind("R,n,generator_images,ball_size,distance_bound,distance_verified,presentation\n", 0) == 0);
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 3);
}
