#include "markedgroups/kernels.hpp"

namespace mg::kernels::detail {

void right_multiply_scalar(const FlatParams& p, const Element& g, ConstFrontier src, MutFrontier dst,
                           std::uint8_t* is_identity, std::size_t n) {
    const bool flip = p.sign_action && (g.x & 1);
    const auto gx = static_cast<std::int32_t>(g.x);
    const auto gt = static_cast<std::int32_t>(g.t);
    const std::int32_t m = p.torsion;
    for (std::size_t i = 0; i < n; ++i) {
        std::int32_t x = (src.x[i] + gx) & p.top_mask;
        std::int32_t t = src.t[i];
        if (flip && t != 0) t = m - t;
        t += gt;
        if (t >= m) t -= m;
        if (p.fold && x >= 2) {
            x -= 2;
            t += p.fold_t;
            if (t >= m) t -= m;
        }
        bool id = x == 0 && t == 0;
        for (int k = 0; k < p.free_rank; ++k) {
            const auto kk = static_cast<std::size_t>(k);
            const std::int32_t a = src.v[kk][i];
            const std::int32_t r = (flip ? -a : a) + g.v[kk];
            dst.v[kk][i] = r;
            id = id && r == 0;
        }
        dst.x[i] = x;
        dst.t[i] = t;
        is_identity[i] = id ? 1 : 0;
    }
}

}  // namespace mg::kernels::detail
