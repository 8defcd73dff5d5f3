#pragma once

#include <cstdint>
#include <vector>

#include "markedgroups/group.hpp"
#include "markedgroups/words.hpp"

namespace mg {

/// Multiplication table of a finite group over element indices. Index 0 is
/// the identity (the least canonical element).
class CayleyTable {
public:
    explicit CayleyTable(const Group& g);

    std::uint32_t size() const { return n_; }
    std::uint32_t mul(std::uint32_t a, std::uint32_t b) const { return prod_[std::size_t{a} * n_ + b]; }
    std::uint32_t inv(std::uint32_t a) const { return inverse_[a]; }
    std::uint32_t identity() const { return 0; }
    std::uint64_t order_of(std::uint32_t a) const { return orders_[a]; }
    const Element& element(std::uint32_t i) const { return elems_[i]; }
    std::uint32_t index(const Element& e) const;

    /// Evaluates a word under an index-valued assignment of its letters.
    std::uint32_t eval(const Word& w, const std::vector<std::uint32_t>& assignment) const;

private:
    std::uint32_t n_ = 0;
    std::vector<Element> elems_;
    std::vector<std::uint32_t> prod_;
    std::vector<std::uint32_t> inverse_;
    std::vector<std::uint64_t> orders_;
};

}  // namespace mg
