#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "markedgroups/marked.hpp"
#include "oracles.hpp"

using namespace mg;

namespace {

std::vector<Word> oracle_ball(const oracle::Model& m, int lambda) {
    auto words = oracle::relation_ball(m, lambda);
    std::sort(words.begin(), words.end(), ShortlexLess{});
    return words;
}

SequenceSpec quaternion_family(std::int64_t first, std::int64_t last) {
    return family_sequence("quaternion(n)", "x,y", index_window(first, last));
}

}  // namespace

TEST_CASE("relation balls agree with the matrix oracle") {
    for (int n = 3; n <= 5; ++n) {
        const MarkedGroup q = MarkedGroup::parse("quaternion(" + std::to_string(n) + ")", "x,y");
        CHECK(rel_ball(q, 6).words == oracle_ball(oracle::quaternion(n), 6));
    }
    CHECK(rel_ball(MarkedGroup::parse("dihedral(5)", "r,s"), 7).words == oracle_ball(oracle::dihedral(5), 7));
    CHECK(rel_ball(MarkedGroup::parse("sd4(4)", "x,y"), 6).words == oracle_ball(oracle::sd4(4), 6));
    const MarkedGroup lq = MarkedGroup::standard(Group::limit_quaternion(1, 1));
    CHECK(rel_ball(lq, 5).words == oracle_ball(oracle::limit_q11(), 5));
    const MarkedGroup ay = MarkedGroup::parse("limitQ(1,1)", "a,y");
    CHECK(rel_ball(ay, 7).words == oracle_ball(oracle::select(oracle::limit_q11(), {1, 0}), 7));
}

TEST_CASE("kernel enumeration agrees with the prefix-tree oracle") {
    for (const char* d : {"quaternion(4)", "dihedral(6)", "limitH(1,2)", "limitQ(2,1)", "limitD(1,1)", "direct4(1,3)",
                          "sd4(4)/{(0;;0),(2;;4)}", "abelian(2,3)", "cyclic(5)"}) {
        CAPTURE(d);
        const MarkedGroup mg = MarkedGroup::standard(Group::parse(d));
        for (int lambda : {0, 1, 3, 6}) CHECK(rel_ball(mg, lambda) == rel_ball_bfs(mg, lambda));
    }
}

TEST_CASE("frozen relation-ball sizes") {
    CHECK(rel_ball(MarkedGroup::parse("quaternion(3)", "x,y"), 4).words.size() == 36);
    CHECK(rel_ball(MarkedGroup::standard(Group::limit_quaternion(1, 1)), 8).words.size() == 29264);
    CHECK(rel_ball(MarkedGroup::parse("quaternion(3)", "x,y"), 0).words.empty());
    // Trivial marking: every reduced word is a relation.
    const RelationBall triv = rel_ball(MarkedGroup::parse("cyclic(3)", "1,1"), 3);
    CHECK(triv.words.size() == ball_size({2, 3}) - 1);
}

TEST_CASE("relation balls are sorted, reduced and closed under inversion") {
    const RelationBall b = rel_ball(MarkedGroup::parse("dihedral(4)", "r,s"), 6);
    CHECK(std::is_sorted(b.words.begin(), b.words.end(), ShortlexLess{}));
    for (const auto& w : b.words) {
        CHECK(b.contains(w.inverse()));
        CHECK(Word::reduce(2, w.letters()) == w);
    }
}

TEST_CASE("words_into the trivial subgroup is the relation ball") {
    const MarkedGroup mg = MarkedGroup::parse("quaternion(4)", "x,y");
    const std::vector<Element> one{Element{}};
    CHECK(words_into(mg, 6, one) == rel_ball(mg, 6).words);
    const std::vector<Element> center{Element{}, Element{0, {}, 4}};
    const auto into = words_into(mg, 5, center);
    for (const auto& w : into) CHECK(std::binary_search(center.begin(), center.end(), mg.eval(w)));
    CHECK(into.size() > rel_ball(mg, 5).words.size());
}

TEST_CASE("distance between Q8 and Q16") {
    const Distance d = gg_distance(MarkedGroup::parse("quaternion(3)", "x,y"),
                                   MarkedGroup::parse("quaternion(4)", "x,y"), 8);
    CHECK(d.exact);
    CHECK(d.agree_radius == 3);
    REQUIRE(d.witness.has_value());
    CHECK(d.witness->letters() == std::vector<Letter>{1, 1, 1, 1});
    CHECK(std::abs(d.value() - std::exp(-3.0)) < 1e-12);
    bool has_mixed = false;
    for (const auto& w : d.shortest_witnesses) {
        CHECK(w.length() == 4);
        has_mixed = has_mixed || w == parse_named_word(std::vector<std::string>{"x", "y"}, "x^2 y^-2");
    }
    CHECK(has_mixed);
}

TEST_CASE("distance is zero-agreement-bounded for equal balls") {
    const MarkedGroup a = MarkedGroup::parse("quaternion(5)", "x,y");
    const Distance d = gg_distance(a, a, 6);
    CHECK_FALSE(d.exact);
    CHECK(d.agree_radius == 6);
    CHECK_FALSE(d.witness.has_value());
    const Distance r = gg_distance(MarkedGroup::parse("cyclic(2)", "g"), MarkedGroup::parse("cyclic(3)", "g"), 6);
    CHECK(r.exact);
    CHECK(r.agree_radius == 1);
    CHECK_THROWS_AS(gg_distance(a, MarkedGroup::parse("cyclic(3)", "g"), 4), InputError);
}

TEST_CASE("first_difference picks the shortlex-least word") {
    const RelationBall a = rel_ball(MarkedGroup::parse("dihedral(3)", "r,s"), 6);
    const RelationBall b = rel_ball(MarkedGroup::parse("dihedral(4)", "r,s"), 6);
    const auto w = first_difference(a, b);
    REQUIRE(w.has_value());
    CHECK(w->letters() == std::vector<Letter>{1, 1, 1});
    CHECK_FALSE(first_difference(a, a).has_value());
}

TEST_CASE("ball graphs and isomorphism") {
    const MarkedGroup q8 = MarkedGroup::parse("quaternion(3)", "x,y");
    const MarkedGroup q16 = MarkedGroup::parse("quaternion(4)", "x,y");
    const MarkedGroup lim = MarkedGroup::parse("limitQ(1,1)", "a,y");
    CHECK(ball_isomorphic(ball_graph(q16, 1), ball_graph(lim, 1)));
    CHECK(ball_isomorphic(ball_graph(q8, 1), ball_graph(q16, 1)));
    CHECK_FALSE(ball_isomorphic(ball_graph(q8, 2), ball_graph(q16, 2)));
    const BallGraph g = ball_graph(q16, 3);
    CHECK(g.vertices.front() == Element{});
    for (std::size_t i = 0; i < g.vertices.size(); ++i) {
        CHECK(q16.eval(g.geodesics[i]) == g.vertices[i]);
        CHECK(static_cast<int>(g.geodesics[i].length()) == g.depth[i]);
    }
    CHECK(g.to_dot(q16.group()).find("digraph") != std::string::npos);
}

TEST_CASE("index templates") {
    CHECK(instantiate_template("quaternion(n)", 5) == "quaternion(5)");
    CHECK(instantiate_template("g,g^{2^(n-2)}", 4) == "g,g^4");
    CHECK(eval_index_expr("2^(n-2)+1", 5) == 9);
    CHECK(eval_index_expr("(n+1)*3-n", 2) == 7);
    CHECK_THROWS_AS(eval_index_expr("n+", 2), InputError);
    CHECK(index_window(3, 6) == std::vector<std::int64_t>{3, 4, 5, 6});
}

TEST_CASE("quaternion family stabilizes once 2^(n-2) + 2 exceeds lambda") {
    const SequenceSpec seq = quaternion_family(3, 9);
    CHECK(converged_at(seq, 6) == std::optional<std::int64_t>{5});
    CHECK(converged_at(seq, 10) == std::optional<std::int64_t>{6});
    // The window end is too short to show stabilization with a long tail.
    CHECK_FALSE(converged_at(quaternion_family(3, 5), 10).has_value());
}

TEST_CASE("liminf and limsup on the tail") {
    const SequenceSpec seq = quaternion_family(3, 8);
    const auto inf = liminf_relations(seq, 6);
    const auto sup = limsup_relations(seq, 6);
    CHECK(inf.tail == std::vector<std::int64_t>{6, 7, 8});
    CHECK(inf.words == sup.words);
    CHECK(inf.words == rel_ball(MarkedGroup::parse("limitQ(1,1)", "a,y"), 6).words);
    const auto wide_inf = liminf_relations(seq, 6, 6);
    const auto wide_sup = limsup_relations(seq, 6, 6);
    CHECK(wide_inf.words.size() < wide_sup.words.size());
    for (const auto& w : wide_inf.words) CHECK(std::binary_search(wide_sup.words.begin(), wide_sup.words.end(), w, ShortlexLess{}));
}

TEST_CASE("quaternion family converges to limitQ(1,1) marked (a,y)") {
    const auto v = limit_compare(quaternion_family(3, 9), MarkedGroup::parse("limitQ(1,1)", "a,y"), 6);
    CHECK(v.match);
    CHECK(v.stabilized_at == 5);
    const auto bad = limit_compare(quaternion_family(3, 9), MarkedGroup::parse("limitD(1,1)", "a,s"), 6);
    CHECK_FALSE(bad.match);
    CHECK(bad.witness.has_value());
    CHECK_THROWS_AS(limit_compare(quaternion_family(3, 5), MarkedGroup::parse("limitQ(1,1)", "a,y"), 10), NotStabilized);
}

TEST_CASE("constant sequences") {
    const MarkedGroup d = MarkedGroup::parse("dihedral(5)", "r,s");
    const SequenceSpec seq = constant_sequence(d, index_window(1, 4));
    CHECK(converged_at(seq, 5) == std::optional<std::int64_t>{1});
    CHECK(limit_compare(seq, d, 5).match);
}

TEST_CASE("word budget") {
    const auto saved = word_budget();
    set_word_budget(100);
    CHECK_THROWS_AS(rel_ball(MarkedGroup::parse("quaternion(4)", "x,y"), 6), BudgetExceeded);
    CHECK_NOTHROW(rel_ball(MarkedGroup::parse("quaternion(4)", "x,y"), 2));
    set_word_budget(saved);
}

TEST_CASE("marking parsing and generation status") {
    const MarkedGroup m = MarkedGroup::parse("quaternion(3)", "x,(1;;0)");
    CHECK(m.rank() == 2);
    CHECK(m.generation() == GenerationStatus::verified);
    CHECK(MarkedGroup::parse("quaternion(3)", "x").generation() == GenerationStatus::unverified);
    CHECK(MarkedGroup::standard(Group::limit_quaternion(1, 1)).generation() == GenerationStatus::certified);
    CHECK_THROWS_AS(MarkedGroup::parse("quaternion(3)", "q"), InputError);
    CHECK(MarkedGroup::parse("limitQ(1,1)", "a,y").letter_names() == std::vector<std::string>{"a", "y"});
}

TEST_CASE("radius-R Cayley balls agree exactly when Rel_{2R+1} agree on these pairs") {
    const std::vector<std::pair<MarkedGroup, MarkedGroup>> pairs{
        {MarkedGroup::parse("quaternion(3)", "x,y"), MarkedGroup::parse("quaternion(4)", "x,y")},
        {MarkedGroup::parse("quaternion(4)", "x,y"), MarkedGroup::parse("quaternion(5)", "x,y")},
        {MarkedGroup::parse("dihedral(6)", "r,s"), MarkedGroup::parse("dihedral(8)", "r,s")},
        {MarkedGroup::parse("dihedral(5)", "r,s"), MarkedGroup::parse("dihedral(6)", "r,s")},
        {MarkedGroup::parse("quaternion(4)", "x,y"), MarkedGroup::parse("limitQ(1,1)", "a,y")},
    };
    for (const auto& [a, b] : pairs) {
        CAPTURE(a.label());
        CAPTURE(b.label());
        const Distance d = gg_distance(a, b, 12);
        REQUIRE(d.exact);
        for (int r = 0; r <= 4; ++r) CHECK(ball_isomorphic(ball_graph(a, r), ball_graph(b, r)) == (2 * r + 1 <= d.agree_radius));
    }
}
