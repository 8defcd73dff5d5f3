#pragma once

#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>

namespace mg {

inline constexpr int kMaxFreeRank = 4;

/// Canonical form shared by every implemented family.
///
/// An element is a triple (x, v, t) read in Z_p x Z^l x Z_M, where p is the
/// order of the top cyclic factor (1, 2 or 4), l the free rank and M the order
/// of the cyclic torsion part. Unused coordinates stay zero, so the defaulted
/// lexicographic comparison is the element total order.
struct Element {
    std::int32_t x = 0;
    std::array<std::int32_t, kMaxFreeRank> v{};
    std::int64_t t = 0;

    friend auto operator<=>(const Element&, const Element&) = default;
    friend bool operator==(const Element&, const Element&) = default;

    bool free_part_zero() const {
        for (auto c : v)
            if (c != 0) return false;
        return true;
    }
};

}  // namespace mg

template <>
struct std::hash<mg::Element> {
    std::size_t operator()(const mg::Element& e) const noexcept {
        std::uint64_t h = 0x9e3779b97f4a7c15ull ^ static_cast<std::uint64_t>(e.x);
        auto mix = [&](std::uint64_t k) {
            h ^= k + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
        };
        for (auto c : e.v) mix(static_cast<std::uint64_t>(static_cast<std::int64_t>(c)));
        mix(static_cast<std::uint64_t>(e.t));
        return static_cast<std::size_t>(h);
    }
};
