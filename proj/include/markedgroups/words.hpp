#pragma once

#include <cstdint>
#include <cstdlib>
#include <functional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace mg {

/// Raised for malformed input anywhere in the library (bad letters, rank
/// mismatch, unparsable text). The CLI maps it to exit code 2.
class InputError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Raised when an enumeration would exceed the configured word budget.
class BudgetExceeded : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Letters are nonzero signed integers: +i is g_i, -i is g_i^-1.
using Letter = int;

/// Position of a letter in the canonical order g1 < g1^-1 < g2 < g2^-1 < ...
constexpr int letter_code(Letter l) { return l > 0 ? 2 * (l - 1) : 2 * (-l - 1) + 1; }
constexpr Letter letter_from_code(int code) {
    return (code % 2 == 0) ? code / 2 + 1 : -(code / 2 + 1);
}

/// A freely reduced word in the free group of rank m.
class Word {
public:
    Word() = default;
    explicit Word(int rank) : rank_(rank) {}

    /// Free reduction of an arbitrary letter sequence.
    static Word reduce(int rank, std::span<const Letter> raw);
    static Word reduce(int rank, std::initializer_list<Letter> raw) {
        return reduce(rank, std::span<const Letter>(raw.begin(), raw.size()));
    }
    static Word generator(int rank, int index, int power = 1);

    int rank() const { return rank_; }
    std::size_t length() const { return letters_.size(); }
    bool empty() const { return letters_.empty(); }
    const std::vector<Letter>& letters() const { return letters_; }

    Word inverse() const;
    Word concat(const Word& other) const;
    Word power(long e) const;

    /// Letters as space-separated signed integers ("" for the identity).
    std::string to_signed_text() const;
    /// Compact form with generator names, e.g. "x^2 y^-1"; "1" for the identity.
    std::string to_named_text(std::span<const std::string> names) const;

    friend bool operator==(const Word&, const Word&) = default;

private:
    int rank_ = 0;
    std::vector<Letter> letters_;
};

/// Shortlex: shorter first, then lexicographic in letter_code order.
bool shortlex_less(const Word& a, const Word& b);

struct ShortlexLess {
    bool operator()(const Word& a, const Word& b) const { return shortlex_less(a, b); }
};

Word commutator(const Word& a, const Word& b);

/// Parses whitespace-separated signed integers.
Word parse_signed_word(int rank, std::string_view text);
/// Parses the compact syntax `x y^-1 x^2` over the given generator names.
/// Juxtaposition without spaces (`xy^-1`) is accepted; "1" is the identity.
Word parse_named_word(std::span<const std::string> names, std::string_view text);

struct BallSpec {
    int rank = 1;
    int radius = 0;
};

/// Closed-form size of the ball: 1 + sum_{i=1..r} 2m(2m-1)^(i-1).
std::uint64_t ball_size(BallSpec spec);

/// Visits every reduced word of length <= radius once, in shortlex order.
void for_each_reduced(BallSpec spec, const std::function<void(const Word&)>& visit);
std::vector<Word> enumerate_reduced(BallSpec spec);

/// Substitutes the marking into the word. Group must provide mul/inv/identity.
template <class Group, class Element>
Element evaluate(const Word& w, const Group& g, std::span<const Element> marking) {
    if (static_cast<int>(marking.size()) != w.rank())
        throw InputError("evaluate: marking size does not match word rank");
    Element acc = g.identity();
    for (Letter l : w.letters()) {
        const Element& s = marking[static_cast<std::size_t>(std::abs(l) - 1)];
        acc = g.mul(acc, l > 0 ? s : g.inv(s));
    }
    return acc;
}

}  // namespace mg

template <>
struct std::hash<mg::Word> {
    std::size_t operator()(const mg::Word& w) const noexcept {
        std::size_t h = 1469598103934665603ull;
        for (int l : w.letters()) h = (h ^ static_cast<std::size_t>(l + 1024)) * 1099511628211ull;
        return h;
    }
};
