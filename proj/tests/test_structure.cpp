#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>

#include "markedgroups/structure.hpp"

using namespace mg;

TEST_CASE("lifted indices project the marking") {
    const auto q = lifts::quaternion(index_window(3, 6));
    for (auto n : q.indices) {
        const LiftedIndex li = q.make(n);
        CHECK(is_central(li.cover.group(), li.kernel));
        CHECK(is_subgroup(li.cover.group(), li.kernel));
        CHECK(li.quotient.rank() == li.cover.rank());
        CHECK(li.quotient.marking().back() == li.quotient.group().identity());
        CHECK(iso_search(li.quotient.group(), Group::quaternion(static_cast<int>(n))).has_value());
    }
    const auto d = lifts::dihedral(index_window(3, 5));
    for (auto n : d.indices) CHECK(iso_search(d.make(n).quotient.group(), Group::dihedral(n)).has_value());
    CHECK_THROWS_AS(lift_index(3, MarkedGroup::parse("sd4(3)", "x,y"), {Element{}, Element{1, {}, 0}}), InputError);
}

TEST_CASE("kernel identification invariants for the quaternion lift") {
    const auto q = lifts::quaternion(index_window(3, 8));
    for (int lambda : {6, 8, 10}) {
        CAPTURE(lambda);
        const KernelIdentification k = kernel_identification(q, lambda);
        CHECK(k.quotient_consistent);
        CHECK(k.preimage_consistent);
        CHECK(k.inverse_closed);
        CHECK(k.subgroup);
        CHECK(k.central);
        CHECK(k.k_approx == std::vector<Element>{Element{}, Element{2, {}, 1}});
        CHECK(std::find(k.m_approx.begin(), k.m_approx.end(), Word(3)) != k.m_approx.end());
        CHECK(std::is_sorted(k.m_approx.begin(), k.m_approx.end(), ShortlexLess{}));
    }
}

TEST_CASE("kernel identification for the full-center and dihedral lifts") {
    const KernelIdentification full = kernel_identification(lifts::quaternion_full_center(index_window(3, 8)), 6);
    CHECK(full.k_approx.size() == 4);
    CHECK(full.central);
    CHECK(full.quotient_consistent);
    const KernelIdentification dih = kernel_identification(lifts::dihedral(index_window(6, 12)), 6);
    CHECK(dih.k_approx.size() == 2);
    CHECK(dih.subgroup);
    CHECK(dih.central);
    CHECK(dih.quotient_consistent);
}

TEST_CASE("short windows do not stabilize") {
    CHECK_THROWS_AS(kernel_identification(lifts::quaternion(index_window(3, 4)), 10), NotStabilized);
}

TEST_CASE("limits of lifted quotients are quotients of the limit cover") {
    const Theorem1Report q = theorem1_instance(lifts::quaternion(index_window(3, 8)), 8);
    CHECK(q.consistent());
    CHECK(q.covers.match);
    CHECK(q.quotient_matches_tail);
    CHECK(q.matches_named_limit == std::optional<bool>{true});
    CHECK(theorem1_instance(lifts::quaternion_full_center(index_window(3, 8)), 6).consistent());
    CHECK(theorem1_instance(lifts::dihedral(index_window(6, 12)), 6).consistent());
    const MarkedGroup h = MarkedGroup::parse("sd4(4)", "x,y,(2;;4)");
    const auto c = lifts::constant(h, {Element{}, Element{2, {}, 4}}, index_window(1, 3));
    CHECK(theorem1_instance(c, 5).consistent());
}

TEST_CASE("centrality transfers along the quaternion lift") {
    const auto q = lifts::quaternion(index_window(3, 8));
    const std::vector<Word> tests{Word::generator(3, 1), Word::generator(3, 2), Word::generator(3, 3)};
    const CentralityReport t = centrality_transfer_check(q, Word::generator(3, 3), tests, 6);
    CHECK(t.w_in_kernel);
    CHECK(t.central());
    for (const auto& row : t.rows) {
        CHECK(row.relation_on_tail);
        CHECK(row.relation_on_limit);
    }
    const CentralityReport x = centrality_transfer_check(q, Word::generator(3, 1), tests, 6);
    CHECK_FALSE(x.w_in_kernel);
    CHECK_FALSE(x.central());
    CHECK_FALSE(x.rows[1].relation_on_limit);
}

TEST_CASE("center formula for sd4 and limit covers") {
    for (int n = 3; n <= 6; ++n) CHECK(center_formula_check(Group::sd4(n)).match);
    CHECK_FALSE(center_formula_check(Group::sd4(2)).match);
    const CenterCheck h = center_formula_check(Group::limit_cover(1, 2), 3);
    CHECK(h.bounded);
    CHECK(h.match);
    CHECK(center_formula_check(Group::limit_cover(2, 3), 2).match);
    CHECK_THROWS_AS(center_formula_check(Group::dihedral(4)), InputError);
}

TEST_CASE("exactly one unique-involution case") {
    for (int l = 0; l <= 2; ++l)
        for (int k = 2; k <= 4; ++k) {
            CAPTURE(l);
            CAPTURE(k);
            const CaseAnalysis a = case_analysis(l, k);
            REQUIRE(a.cases.size() == 5);
            CHECK(std::count_if(a.cases.begin(), a.cases.end(), [](const CaseReport& c) { return c.unique_involution; }) == 1);
            CHECK(a.unique_case == 4);
            for (const auto& c : a.cases) {
                CHECK(c.claim_holds);
                CHECK(std::all_of(c.witness_ok.begin(), c.witness_ok.end(), [](bool b) { return b; }));
            }
        }
}

TEST_CASE("case analysis with k = 1 has no unique case") {
    const CaseAnalysis a = case_analysis(1, 1);
    CHECK(a.unique_case == 0);
    CHECK_FALSE(a.cases[2].note.empty());
    CHECK_THROWS_AS(case_analysis(1, 0), InputError);
}

TEST_CASE("abelian sequences converge to Z + Z_{2^k}") {
    for (int k = 0; k <= 2; ++k) {
        CAPTURE(k);
        for (int lambda : {4, 6}) CHECK(abelian_limit_check(k, index_window(2, 8), lambda).match());
    }
    CHECK_FALSE(abelian_limit_check(1, index_window(2, 3), 8).verdict.has_value());
}
