#include <atomic>
#include <cstdlib>
#include <string_view>

#include "markedgroups/group.hpp"
#include "markedgroups/kernels.hpp"

namespace mg::kernels {

namespace {

// -1: automatic, otherwise static_cast<int>(Isa).
std::atomic<int> g_forced{-1};

Isa detect() {
    if (const char* env = std::getenv("MARKEDGROUPS_SIMD"); env && std::string_view(env) == "scalar")
        return Isa::scalar;
    return isa_available(Isa::avx2) ? Isa::avx2 : Isa::scalar;
}

}  // namespace

const char* isa_name(Isa isa) {
    switch (isa) {
        case Isa::scalar: return "scalar";
        case Isa::avx2: return "avx2";
    }
    return "?";
}

bool isa_available(Isa isa) {
    switch (isa) {
        case Isa::scalar: return true;
        case Isa::avx2:
#if (defined(__x86_64__) || defined(_M_X64)) && (defined(__GNUC__) || defined(__clang__))
            return __builtin_cpu_supports("avx2");
#else
            return false;
#endif
    }
    return false;
}

Isa active_isa() {
    const int forced = g_forced.load(std::memory_order_relaxed);
    if (forced >= 0) return static_cast<Isa>(forced);
    static const Isa detected = detect();
    return detected;
}

void force_isa(std::optional<Isa> isa) {
    if (isa && !isa_available(*isa)) return;
    g_forced.store(isa ? static_cast<int>(*isa) : -1, std::memory_order_relaxed);
}

std::optional<FlatParams> flat_params(const Group& g) {
    const std::int64_t m = g.torsion();
    if (m > (std::int64_t{1} << 30) || g.free_rank() > kMaxFreeRank) return std::nullopt;
    const int p = g.top_order();
    if (p != 1 && p != 2 && p != 4) return std::nullopt;
    FlatParams fp;
    fp.top_mask = p - 1;
    fp.sign_action = g.action() == Action::sign;
    fp.free_rank = g.free_rank();
    fp.torsion = static_cast<std::int32_t>(m);
    const auto k = g.kernel();
    if (k.empty()) return fp;
    // Only the fold by a single central (2, 0, h) is expressible.
    if (p != 4 || k.size() != 2 || k[0] != Element{}) return std::nullopt;
    const Element& z = k[1];
    if (z.x != 2 || !z.free_part_zero()) return std::nullopt;
    fp.fold = true;
    fp.fold_t = static_cast<std::int32_t>(z.t);
    return fp;
}

void FrontierBuffer::resize(std::size_t n, int free_rank) {
    free_rank_ = free_rank;
    x_.resize(n);
    t_.resize(n);
    for (int k = 0; k < kMaxFreeRank; ++k) v_[static_cast<std::size_t>(k)].resize(k < free_rank ? n : 0);
}

ConstFrontier FrontierBuffer::view(std::size_t offset) const {
    ConstFrontier f;
    f.x = x_.data() + offset;
    f.t = t_.data() + offset;
    for (int k = 0; k < free_rank_; ++k) f.v[static_cast<std::size_t>(k)] = v_[static_cast<std::size_t>(k)].data() + offset;
    return f;
}

MutFrontier FrontierBuffer::view(std::size_t offset) {
    MutFrontier f;
    f.x = x_.data() + offset;
    f.t = t_.data() + offset;
    for (int k = 0; k < free_rank_; ++k) f.v[static_cast<std::size_t>(k)] = v_[static_cast<std::size_t>(k)].data() + offset;
    return f;
}

Element FrontierBuffer::get(std::size_t i) const {
    Element e;
    e.x = x_[i];
    e.t = t_[i];
    for (int k = 0; k < free_rank_; ++k) e.v[static_cast<std::size_t>(k)] = v_[static_cast<std::size_t>(k)][i];
    return e;
}

void FrontierBuffer::set(std::size_t i, const Element& e) {
    x_[i] = e.x;
    t_[i] = static_cast<std::int32_t>(e.t);
    for (int k = 0; k < free_rank_; ++k) v_[static_cast<std::size_t>(k)][i] = e.v[static_cast<std::size_t>(k)];
}

void right_multiply(const FlatParams& p, const Element& g, ConstFrontier src, MutFrontier dst,
                    std::uint8_t* is_identity, std::size_t n) {
#if defined(__x86_64__) || defined(_M_X64)
    if (active_isa() == Isa::avx2) {
        detail::right_multiply_avx2(p, g, src, dst, is_identity, n);
        return;
    }
#endif
    detail::right_multiply_scalar(p, g, src, dst, is_identity, n);
}

}  // namespace mg::kernels
