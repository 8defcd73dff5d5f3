#include "markedgroups/table.hpp"

#include <algorithm>
#include <cstdlib>

namespace mg {

CayleyTable::CayleyTable(const Group& g) {
    if (!g.finite()) throw InputError("CayleyTable needs a finite group");
    if (g.order() > 4096) throw InputError("CayleyTable: group order above 4096");
    elems_ = g.elements();
    n_ = static_cast<std::uint32_t>(elems_.size());
    prod_.resize(std::size_t{n_} * n_);
    inverse_.resize(n_);
    for (std::uint32_t a = 0; a < n_; ++a) {
        for (std::uint32_t b = 0; b < n_; ++b) prod_[std::size_t{a} * n_ + b] = index(g.mul(elems_[a], elems_[b]));
        inverse_[a] = index(g.inv(elems_[a]));
    }
    orders_.resize(n_);
    for (std::uint32_t a = 0; a < n_; ++a) {
        std::uint64_t o = 1;
        for (std::uint32_t p = a; p != 0; p = mul(p, a)) ++o;
        orders_[a] = a == 0 ? 1 : o;
    }
}

std::uint32_t CayleyTable::index(const Element& e) const {
    auto it = std::lower_bound(elems_.begin(), elems_.end(), e);
    if (it == elems_.end() || *it != e) throw InputError("CayleyTable: element not in group");
    return static_cast<std::uint32_t>(it - elems_.begin());
}

std::uint32_t CayleyTable::eval(const Word& w, const std::vector<std::uint32_t>& assignment) const {
    std::uint32_t acc = 0;
    for (Letter l : w.letters()) {
        const std::uint32_t s = assignment[static_cast<std::size_t>(std::abs(l) - 1)];
        acc = mul(acc, l > 0 ? s : inverse_[s]);
    }
    return acc;
}

}  // namespace mg
