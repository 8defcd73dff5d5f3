#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "markedgroups/logic.hpp"

using namespace mg;

namespace {

// Brute-force oracle for the unique-involution sentence.
bool unique_involution_by_hand(const Group& g) {
    int n = 0;
    for (const auto& e : g.elements())
        if (e != g.identity() && g.mul(e, e) == g.identity()) ++n;
    return n <= 1;
}

}  // namespace

TEST_CASE("sentence parsing") {
    const auto s = parse_sentence("forall x y : (x^2=1 & y^2=1) -> (x=1 | y=1 | x=y)");
    CHECK(s.arity() == 2);
    REQUIRE(s.clauses.size() == 1);
    CHECK(s.clauses[0].antecedent.size() == 2);
    CHECK(s.clauses[0].consequent.size() == 3);
    const auto two = parse_sentence("forall x : (x^3 = 1) -> (x = 1); (1 = 1) -> (x x = x^2)");
    CHECK(two.clauses.size() == 2);
    CHECK(parse_sentence(s.to_text()).clauses.size() == 1);
    CHECK_THROWS_AS(parse_sentence("exists x : (1=1) -> (x=1)"), InputError);
    CHECK_THROWS_AS(parse_sentence("forall x : !(x=1)"), InputError);
    CHECK_THROWS_AS(parse_sentence("forall x : (z=1) -> (x=1)"), InputError);
    CHECK_THROWS_AS(parse_sentence("forall x : ((x=1)) -> (x=1)"), InputError);
}

TEST_CASE("library sentences resolve by name") {
    CHECK(resolve_sentence("unique-involution").arity() == 2);
    CHECK(resolve_sentence("torsion-free:3").arity() == 1);
    CHECK(resolve_sentence("tautology").clauses.size() == 1);
    CHECK(resolve_sentence("forall x : (x=1) -> (x=1)").arity() == 1);
    CHECK_THROWS_AS(resolve_sentence("torsion-free:0"), InputError);
}

TEST_CASE("unique involution agrees with brute force") {
    const auto sigma = sentences::unique_involution();
    for (const char* d : {"quaternion(3)", "quaternion(5)", "dihedral(4)", "dihedral(5)", "sd4(4)", "cyclic(8)",
                          "abelian(0,6)", "limitQ(0,2)", "direct4(0,2)"}) {
        CAPTURE(d);
        const Group g = Group::parse(d);
        const ModelCheck c = holds(g, sigma);
        CHECK(c.holds == unique_involution_by_hand(g));
        if (c.holds) {
            CHECK(c.tuples_checked == g.order() * g.order());
        } else {
            REQUIRE(c.counterexample.has_value());
            const auto& xy = *c.counterexample;
            CHECK(g.mul(xy[0], xy[0]) == g.identity());
            CHECK(g.mul(xy[1], xy[1]) == g.identity());
            CHECK(xy[0] != g.identity());
            CHECK(xy[1] != g.identity());
            CHECK(xy[0] != xy[1]);
        }
    }
}

TEST_CASE("first counterexample is the least tuple in element order") {
    const ModelCheck c = holds(Group::dihedral(4), sentences::unique_involution());
    REQUIRE(c.counterexample.has_value());
    CHECK((*c.counterexample)[0] == Element{0, {}, 2});
    CHECK((*c.counterexample)[1] == Element{1, {}, 0});
}

TEST_CASE("torsion freeness") {
    CHECK_FALSE(holds(Group::quaternion(3), sentences::torsion_free(2)).holds);
    CHECK(holds(Group::cyclic(9), sentences::torsion_free(2)).holds);
    CHECK(holds_bounded(Group::abelian(2, 1), sentences::torsion_free(2), 3).holds);
    const ModelCheck lim = holds_bounded(Group::limit_quaternion(1, 1), sentences::torsion_free(2), 2);
    CHECK_FALSE(lim.holds);
    CHECK(holds(Group::dihedral(7), sentences::tautology()).holds);
}

TEST_CASE("bounded checks over infinite limits") {
    // The unique involution of limitQ(l,k) is central; the ball shows no other.
    for (int l = 0; l <= 2; ++l)
        for (int k = 1; k <= 2; ++k) {
            CAPTURE(l);
            CAPTURE(k);
            CHECK(holds_bounded(Group::limit_quaternion(l, k), sentences::unique_involution(), 3).holds);
        }
    CHECK_FALSE(holds_bounded(Group::limit_dihedral(1, 1), sentences::unique_involution(), 2).holds);
    CHECK_THROWS_AS(holds(Group::limit_quaternion(1, 1), sentences::tautology()), InputError);
}

TEST_CASE("eventual truth over windows") {
    const auto q = eventual_truth(family_sequence("quaternion(n)", "", index_window(3, 7)),
                                  sentences::unique_involution());
    CHECK(q.all_true);
    CHECK(q.cofinite_in_window);
    CHECK(q.true_from == std::optional<std::int64_t>{3});

    const auto d = eventual_truth(family_sequence("dihedral(n)", "", index_window(3, 7)),
                                  sentences::unique_involution());
    CHECK_FALSE(d.all_true);
    CHECK_FALSE(d.cofinite_in_window);
    CHECK(d.failures.size() == 5);

    const auto late = eventual_truth(family_sequence("cyclic(6-n)", "", index_window(1, 5)),
                                     parse_sentence("forall x : (x^5=1) -> (x=1)"));
    CHECK(late.truth == std::vector<bool>{false, true, true, true, true});
    CHECK(late.cofinite_in_window);
    CHECK(late.true_from == std::optional<std::int64_t>{2});

    const auto early = eventual_truth(family_sequence("dihedral(n)", "", index_window(1, 4)),
                                      parse_sentence("forall x y : (1=1) -> (x y = y x)"));
    CHECK(early.truth == std::vector<bool>{true, true, false, false});
    CHECK_FALSE(early.cofinite_in_window);
}

TEST_CASE("universal sentences pass to the limit") {
    const SequenceSpec seq = family_sequence("quaternion(n)", "x,y", index_window(3, 9));
    const std::vector<UniversalSentence> sigmas{sentences::unique_involution(), sentences::tautology(),
                                                parse_sentence("forall x y : (1=1) -> (x y = y x)")};
    const Theorem3Report r = theorem3_instance(seq, MarkedGroup::parse("limitQ(1,1)", "a,y"), sigmas, 2, 6);
    CHECK(r.consistent);
    CHECK(r.limit.match);
    REQUIRE(r.rows.size() == 3);
    CHECK(r.rows[0].true_on_window);
    CHECK(r.rows[0].checked_on_limit);
    CHECK(r.rows[0].limit_check.holds);
    CHECK_FALSE(r.rows[2].true_on_window);
    CHECK_FALSE(r.rows[2].checked_on_limit);
    CHECK_THROWS_AS(theorem3_instance(seq, MarkedGroup::parse("limitD(1,1)", "a,s"), sigmas, 2, 6), InputError);
}
