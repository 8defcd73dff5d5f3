// Compiled with -mavx2; only reached after a runtime CPU check.
#include "markedgroups/kernels.hpp"

#if defined(__x86_64__) || defined(_M_X64)
#include <immintrin.h>

namespace mg::kernels::detail {

namespace {

inline __m256i load(const std::int32_t* p) { return _mm256_loadu_si256(reinterpret_cast<const __m256i*>(p)); }
inline void store(std::int32_t* p, __m256i v) { _mm256_storeu_si256(reinterpret_cast<__m256i*>(p), v); }

// r - m where r >= m, lane-wise, for r in [0, 2m).
inline __m256i reduce_once(__m256i r, __m256i m, __m256i m_minus_1) {
    const __m256i ge = _mm256_cmpgt_epi32(r, m_minus_1);
    return _mm256_sub_epi32(r, _mm256_and_si256(ge, m));
}

}  // namespace

void right_multiply_avx2(const FlatParams& p, const Element& g, ConstFrontier src, MutFrontier dst,
                         std::uint8_t* is_identity, std::size_t n) {
    const bool flip = p.sign_action && (g.x & 1);
    const __m256i zero = _mm256_setzero_si256();
    const __m256i m = _mm256_set1_epi32(p.torsion);
    const __m256i m1 = _mm256_set1_epi32(p.torsion - 1);
    const __m256i gx = _mm256_set1_epi32(g.x);
    const __m256i gt = _mm256_set1_epi32(static_cast<std::int32_t>(g.t));
    const __m256i mask = _mm256_set1_epi32(p.top_mask);
    const __m256i one = _mm256_set1_epi32(1);
    const __m256i two = _mm256_set1_epi32(2);
    const __m256i fold_t = _mm256_set1_epi32(p.fold_t);
    __m256i gv[kMaxFreeRank] = {};
    for (int k = 0; k < p.free_rank; ++k) gv[k] = _mm256_set1_epi32(g.v[static_cast<std::size_t>(k)]);

    std::size_t i = 0;
    for (; i + 8 <= n; i += 8) {
        __m256i x = _mm256_and_si256(_mm256_add_epi32(load(src.x + i), gx), mask);
        __m256i t = load(src.t + i);
        if (flip) {
            // t -> (m - t) for t != 0
            const __m256i nz = _mm256_xor_si256(_mm256_cmpeq_epi32(t, zero), _mm256_set1_epi32(-1));
            t = _mm256_and_si256(_mm256_sub_epi32(m, t), nz);
        }
        t = reduce_once(_mm256_add_epi32(t, gt), m, m1);
        if (p.fold) {
            const __m256i hi = _mm256_cmpgt_epi32(x, one);
            x = _mm256_sub_epi32(x, _mm256_and_si256(hi, two));
            t = reduce_once(_mm256_add_epi32(t, _mm256_and_si256(hi, fold_t)), m, m1);
        }
        __m256i id = _mm256_and_si256(_mm256_cmpeq_epi32(x, zero), _mm256_cmpeq_epi32(t, zero));
        for (int k = 0; k < p.free_rank; ++k) {
            const auto kk = static_cast<std::size_t>(k);
            __m256i a = load(src.v[kk] + i);
            if (flip) a = _mm256_sub_epi32(zero, a);
            const __m256i r = _mm256_add_epi32(a, gv[kk]);
            store(dst.v[kk] + i, r);
            id = _mm256_and_si256(id, _mm256_cmpeq_epi32(r, zero));
        }
        store(dst.x + i, x);
        store(dst.t + i, t);
        const int bits = _mm256_movemask_ps(_mm256_castsi256_ps(id));
        for (int b = 0; b < 8; ++b) is_identity[i + static_cast<std::size_t>(b)] = static_cast<std::uint8_t>((bits >> b) & 1);
    }
    if (i < n) {
        ConstFrontier s = src;
        MutFrontier d = dst;
        s.x += i;
        s.t += i;
        d.x += i;
        d.t += i;
        for (int k = 0; k < p.free_rank; ++k) {
            s.v[static_cast<std::size_t>(k)] += i;
            d.v[static_cast<std::size_t>(k)] += i;
        }
        right_multiply_scalar(p, g, s, d, is_identity + i, n - i);
    }
}

}  // namespace mg::kernels::detail

#endif
