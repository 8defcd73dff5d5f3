#pragma once

// Batched frontier arithmetic for level-synchronous word enumeration.
//
// A frontier is a structure-of-arrays batch of canonical elements. The one
// hot operation is right multiplication of the whole batch by a fixed
// generator, fused with the quotient fold and an identity test. A scalar
// reference kernel and an AVX2 variant implement the same contract; the
// active one is picked at runtime from CPU features.

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "markedgroups/element.hpp"

namespace mg {
class Group;
}

namespace mg::kernels {

enum class Isa { scalar, avx2 };

const char* isa_name(Isa isa);
bool isa_available(Isa isa);
/// Best available ISA, unless MARKEDGROUPS_SIMD=scalar or force_isa overrides.
Isa active_isa();
/// Test hook; pass std::nullopt to return to automatic selection.
void force_isa(std::optional<Isa> isa);

/// Group parameters in the shape the kernels understand: Z_p x| (Z^l + Z_M),
/// optionally folded by a central element (2, 0, fold_t) that forces x < 2.
struct FlatParams {
    std::int32_t top_mask = 0;  // p - 1, p in {1, 2, 4}
    bool sign_action = false;
    int free_rank = 0;
    std::int32_t torsion = 1;
    bool fold = false;
    std::int32_t fold_t = 0;
};

/// Kernel parameters for g, when g's canonical form is expressible in them.
std::optional<FlatParams> flat_params(const Group& g);

struct ConstFrontier {
    const std::int32_t* x = nullptr;
    const std::int32_t* t = nullptr;
    std::array<const std::int32_t*, kMaxFreeRank> v{};
};

struct MutFrontier {
    std::int32_t* x = nullptr;
    std::int32_t* t = nullptr;
    std::array<std::int32_t*, kMaxFreeRank> v{};
};

/// Owning structure-of-arrays storage.
class FrontierBuffer {
public:
    FrontierBuffer() = default;
    FrontierBuffer(std::size_t n, int free_rank) { resize(n, free_rank); }

    void resize(std::size_t n, int free_rank);
    std::size_t size() const { return x_.size(); }

    ConstFrontier view(std::size_t offset = 0) const;
    MutFrontier view(std::size_t offset = 0);

    Element get(std::size_t i) const;
    void set(std::size_t i, const Element& e);

private:
    int free_rank_ = 0;
    std::vector<std::int32_t> x_, t_;
    std::array<std::vector<std::int32_t>, kMaxFreeRank> v_;
};

/// dst[i] = src[i] * g for i < n; is_identity[i] = (dst[i] == 1).
/// Inputs must be canonical; outputs are canonical.
void right_multiply(const FlatParams& p, const Element& g, ConstFrontier src, MutFrontier dst,
                    std::uint8_t* is_identity, std::size_t n);

namespace detail {
void right_multiply_scalar(const FlatParams& p, const Element& g, ConstFrontier src, MutFrontier dst,
                           std::uint8_t* is_identity, std::size_t n);
#if defined(__x86_64__) || defined(_M_X64)
void right_multiply_avx2(const FlatParams& p, const Element& g, ConstFrontier src, MutFrontier dst,
                         std::uint8_t* is_identity, std::size_t n);
#endif
}  // namespace detail

}  // namespace mg::kernels
