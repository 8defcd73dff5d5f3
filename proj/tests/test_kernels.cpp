#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <utility>

#include "markedgroups/group.hpp"
#include "markedgroups/kernels.hpp"
#include "markedgroups/marked.hpp"

using namespace mg;
using namespace mg::kernels;

namespace {

std::vector<Group> kernel_groups() {
    return {Group::cyclic(7),           Group::abelian(3, 5),          Group::sd4(6),
            Group::quaternion(5),       Group::quaternion(3),          Group::dihedral(9),
            Group::limit_cover(2, 3),   Group::limit_quaternion(1, 1), Group::limit_quaternion(4, 4),
            Group::limit_dihedral(2, 2), Group::direct4(1, 6),         Group::abelian(0, 1)};
}

Element random_element(const Group& g, std::mt19937& rng) {
    std::uniform_int_distribution<int> coord(-1000, 1000);
    Element e;
    e.x = std::uniform_int_distribution<int>(0, g.top_order() - 1)(rng);
    for (int i = 0; i < g.free_rank(); ++i) e.v[static_cast<std::size_t>(i)] = coord(rng);
    e.t = std::uniform_int_distribution<std::int64_t>(0, g.torsion() - 1)(rng);
    return g.canonical(e);
}

}  // namespace

TEST_CASE("flat parameters exist for every family used by the kernels") {
    for (const auto& g : kernel_groups()) {
        CAPTURE(g.descriptor());
        CHECK(flat_params(g).has_value());
    }
    // A quotient by a four-element kernel has no folded form.
    CHECK_FALSE(flat_params(Group::parse("sd4(4)/{(0;;0),(0;;4),(2;;0),(2;;4)}")).has_value());
}

TEST_CASE("scalar kernel matches group multiplication") {
    std::mt19937 rng(1);
    for (const auto& g : kernel_groups()) {
        CAPTURE(g.descriptor());
        const auto p = *flat_params(g);
        const std::size_t n = 257;
        FrontierBuffer src(n, g.free_rank()), dst(n, g.free_rank());
        std::vector<Element> in(n);
        for (std::size_t i = 0; i < n; ++i) {
            in[i] = random_element(g, rng);
            src.set(i, in[i]);
        }
        in[5] = g.identity();
        src.set(5, in[5]);
        for (const auto& s : g.generators()) {
            for (const Element& gen : {s, g.inv(s)}) {
                std::vector<std::uint8_t> id(n);
                detail::right_multiply_scalar(p, gen, std::as_const(src).view(), dst.view(), id.data(), n);
                for (std::size_t i = 0; i < n; ++i) {
                    const Element expect = g.mul(in[i], gen);
                    CHECK(dst.get(i) == expect);
                    CHECK(static_cast<bool>(id[i]) == (expect == g.identity()));
                }
            }
        }
    }
}

#if defined(__x86_64__) || defined(_M_X64)
TEST_CASE("AVX2 kernel is bit-identical to the scalar kernel on random batches") {
    if (!isa_available(Isa::avx2)) {
        MESSAGE("AVX2 unavailable; equivalence test skipped");
        return;
    }
    std::mt19937 rng(2);
    for (const auto& g : kernel_groups()) {
        CAPTURE(g.descriptor());
        const auto p = *flat_params(g);
        for (std::size_t n : {0u, 1u, 7u, 8u, 9u, 64u, 1001u}) {
            FrontierBuffer src(n, g.free_rank()), a(n, g.free_rank()), b(n, g.free_rank());
            for (std::size_t i = 0; i < n; ++i) src.set(i, i % 11 == 0 ? g.identity() : random_element(g, rng));
            for (int trial = 0; trial < 4; ++trial) {
                const Element gen = random_element(g, rng);
                std::vector<std::uint8_t> ia(n + 1, 7), ib(n + 1, 7);
                detail::right_multiply_scalar(p, gen, std::as_const(src).view(), a.view(), ia.data(), n);
                detail::right_multiply_avx2(p, gen, std::as_const(src).view(), b.view(), ib.data(), n);
                for (std::size_t i = 0; i < n; ++i) {
                    CHECK(a.get(i) == b.get(i));
                    CHECK(ia[i] == ib[i]);
                }
                CHECK(ib[n] == 7);  // no write past the batch
            }
        }
    }
}

TEST_CASE("relation balls are identical under forced scalar and AVX2 dispatch") {
    if (!isa_available(Isa::avx2)) return;
    for (const char* d : {"quaternion(5)", "limitQ(1,1)", "dihedral(7)", "limitQ(2,2)"}) {
        const MarkedGroup mg = MarkedGroup::standard(Group::parse(d));
        force_isa(Isa::scalar);
        const RelationBall s = rel_ball(mg, 6);
        force_isa(Isa::avx2);
        const RelationBall v = rel_ball(mg, 6);
        force_isa(std::nullopt);
        CHECK(s == v);
    }
}
#endif

TEST_CASE("kernel route equals the per-element route") {
    for (const char* d : {"quaternion(4)", "sd4(4)/{(0;;0),(0;;4),(2;;0),(2;;4)}", "limitD(1,1)", "direct4(1,2)"}) {
        const MarkedGroup mg = MarkedGroup::standard(Group::parse(d));
        CHECK(rel_ball(mg, 7) == rel_ball(mg, 7, EnumOptions{false}));
    }
}

TEST_CASE("active ISA reports a usable choice") {
    CHECK(isa_available(active_isa()));
    force_isa(Isa::scalar);
    CHECK(active_isa() == Isa::scalar);
    force_isa(std::nullopt);
    CHECK(std::string(isa_name(Isa::scalar)) == "scalar");
}
