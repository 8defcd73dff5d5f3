#include "markedgroups/words.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <sstream>

namespace mg {

namespace {

void check_letter(int rank, Letter l) {
    if (l == 0 || std::abs(l) > rank)
        throw InputError("letter " + std::to_string(l) + " out of range for rank " +
                         std::to_string(rank));
}

}  // namespace

Word Word::reduce(int rank, std::span<const Letter> raw) {
    if (rank < 1) throw InputError("word rank must be >= 1");
    Word w(rank);
    w.letters_.reserve(raw.size());
    for (Letter l : raw) {
        check_letter(rank, l);
        if (!w.letters_.empty() && w.letters_.back() == -l)
            w.letters_.pop_back();
        else
            w.letters_.push_back(l);
    }
    return w;
}

Word Word::generator(int rank, int index, int power) {
    std::vector<Letter> raw(static_cast<std::size_t>(std::abs(power)), power >= 0 ? index : -index);
    return reduce(rank, raw);
}

Word Word::inverse() const {
    Word w(rank_);
    w.letters_.assign(letters_.rbegin(), letters_.rend());
    for (auto& l : w.letters_) l = -l;
    return w;
}

Word Word::concat(const Word& other) const {
    if (rank_ != other.rank_) throw InputError("concat: rank mismatch");
    std::vector<Letter> raw = letters_;
    raw.insert(raw.end(), other.letters_.begin(), other.letters_.end());
    return reduce(rank_, raw);
}

Word Word::power(long e) const {
    Word base = e >= 0 ? *this : inverse();
    Word acc(rank_);
    for (long i = 0; i < std::abs(e); ++i) acc = acc.concat(base);
    return acc;
}

std::string Word::to_signed_text() const {
    std::ostringstream os;
    for (std::size_t i = 0; i < letters_.size(); ++i) {
        if (i) os << ' ';
        os << letters_[i];
    }
    return os.str();
}

std::string Word::to_named_text(std::span<const std::string> names) const {
    if (letters_.empty()) return "1";
    std::ostringstream os;
    std::size_t i = 0;
    bool first = true;
    while (i < letters_.size()) {
        std::size_t j = i;
        while (j < letters_.size() && letters_[j] == letters_[i]) ++j;
        const int idx = std::abs(letters_[i]) - 1;
        const long exp = static_cast<long>(j - i) * (letters_[i] > 0 ? 1 : -1);
        if (!first) os << ' ';
        first = false;
        os << (idx < static_cast<int>(names.size()) ? names[static_cast<std::size_t>(idx)]
                                                    : "g" + std::to_string(idx + 1));
        if (exp != 1) os << '^' << exp;
        i = j;
    }
    return os.str();
}

bool shortlex_less(const Word& a, const Word& b) {
    if (a.length() != b.length()) return a.length() < b.length();
    const auto& la = a.letters();
    const auto& lb = b.letters();
    for (std::size_t i = 0; i < la.size(); ++i) {
        if (la[i] != lb[i]) return letter_code(la[i]) < letter_code(lb[i]);
    }
    return false;
}

Word commutator(const Word& a, const Word& b) {
    return a.concat(b).concat(a.inverse()).concat(b.inverse());
}

Word parse_signed_word(int rank, std::string_view text) {
    std::vector<Letter> raw;
    std::istringstream is{std::string(text)};
    std::string tok;
    while (is >> tok) {
        int v = 0;
        auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
        if (ec != std::errc{} || p != tok.data() + tok.size())
            throw InputError("bad letter token '" + tok + "'");
        raw.push_back(v);
    }
    return Word::reduce(rank, raw);
}

Word parse_named_word(std::span<const std::string> names, std::string_view text) {
    const int rank = static_cast<int>(names.size());
    std::vector<Letter> raw;
    std::size_t i = 0;
    auto skip_ws = [&] {
        while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    };
    skip_ws();
    if (text.substr(i) == "1" || i == text.size()) return Word(rank);
    while (true) {
        skip_ws();
        if (i >= text.size()) break;
        if (text[i] == '*') {
            ++i;
            continue;
        }
        // Longest generator name matching here.
        int best = -1;
        std::size_t best_len = 0;
        for (std::size_t g = 0; g < names.size(); ++g) {
            const auto& n = names[g];
            if (n.size() > best_len && text.substr(i, n.size()) == n) {
                best = static_cast<int>(g);
                best_len = n.size();
            }
        }
        if (best < 0)
            throw InputError("unknown generator at '" + std::string(text.substr(i)) + "'");
        i += best_len;
        long exp = 1;
        skip_ws();
        if (i < text.size() && text[i] == '^') {
            ++i;
            skip_ws();
            const bool braced = i < text.size() && text[i] == '{';
            if (braced) ++i;
            std::size_t start = i;
            if (i < text.size() && (text[i] == '-' || text[i] == '+')) ++i;
            while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
            auto [p, ec] = std::from_chars(text.data() + start + (text[start] == '+' ? 1 : 0),
                                           text.data() + i, exp);
            if (ec != std::errc{} || p != text.data() + i)
                throw InputError("bad exponent in '" + std::string(text) + "'");
            if (braced) {
                if (i >= text.size() || text[i] != '}') throw InputError("unclosed '{' in exponent");
                ++i;
            }
        }
        const Letter l = exp >= 0 ? best + 1 : -(best + 1);
        for (long e = 0; e < std::abs(exp); ++e) raw.push_back(l);
    }
    return Word::reduce(rank, raw);
}

std::uint64_t ball_size(BallSpec spec) {
    std::uint64_t total = 1, layer = 2ull * static_cast<std::uint64_t>(spec.rank);
    for (int i = 1; i <= spec.radius; ++i) {
        total += layer;
        layer *= 2ull * static_cast<std::uint64_t>(spec.rank) - 1;
    }
    return total;
}

void for_each_reduced(BallSpec spec, const std::function<void(const Word&)>& visit) {
    if (spec.rank < 1 || spec.radius < 0) throw InputError("invalid ball spec");
    std::vector<Word> level{Word(spec.rank)};
    visit(level.front());
    const int letters = 2 * spec.rank;
    for (int len = 1; len <= spec.radius; ++len) {
        std::vector<Word> next;
        next.reserve(level.size() * static_cast<std::size_t>(letters));
        for (const Word& w : level) {
            for (int c = 0; c < letters; ++c) {
                const Letter l = letter_from_code(c);
                if (!w.empty() && w.letters().back() == -l) continue;
                auto raw = w.letters();
                raw.push_back(l);
                Word child = Word::reduce(spec.rank, raw);
                visit(child);
                next.push_back(std::move(child));
            }
        }
        level = std::move(next);
    }
}

std::vector<Word> enumerate_reduced(BallSpec spec) {
    std::vector<Word> out;
    for_each_reduced(spec, [&](const Word& w) { out.push_back(w); });
    return out;
}

}  // namespace mg
