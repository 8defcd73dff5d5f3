#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <random>
#include <set>

#include "markedgroups/words.hpp"

using namespace mg;

TEST_CASE("free reduction cancels adjacent inverse pairs") {
    CHECK(Word::reduce(2, {1, -1}).empty());
    CHECK(Word::reduce(2, {1, 2, -2, -1, 2}).letters() == std::vector<Letter>{2});
    CHECK(Word::reduce(2, {1, 2, -2, 2}).letters() == std::vector<Letter>{1, 2});
    CHECK_THROWS_AS(Word::reduce(2, {3}), InputError);
    CHECK_THROWS_AS(Word::reduce(2, {0}), InputError);
}

TEST_CASE("inverse, concat and power") {
    const Word w = Word::reduce(2, {1, 2, 2});
    CHECK(w.inverse().letters() == std::vector<Letter>{-2, -2, -1});
    CHECK(w.concat(w.inverse()).empty());
    CHECK(w.power(2).length() == 6);
    CHECK(w.power(-1) == w.inverse());
    CHECK(w.power(0).empty());
    CHECK(Word::generator(2, 2, -3).letters() == std::vector<Letter>{-2, -2, -2});
    CHECK_THROWS_AS(w.concat(Word(3)), InputError);
}

TEST_CASE("commutator of generators has length four") {
    const Word c = commutator(Word::generator(2, 1), Word::generator(2, 2));
    CHECK(c.letters() == std::vector<Letter>{1, 2, -1, -2});
    CHECK(commutator(Word::generator(2, 1), Word::generator(2, 1)).empty());
}

TEST_CASE("letter order is g1 < g1^-1 < g2 < g2^-1") {
    CHECK(letter_code(1) == 0);
    CHECK(letter_code(-1) == 1);
    CHECK(letter_code(2) == 2);
    CHECK(letter_code(-2) == 3);
    for (int c = 0; c < 8; ++c) CHECK(letter_code(letter_from_code(c)) == c);
    CHECK(shortlex_less(Word::reduce(2, {2}), Word::reduce(2, {1, 1})));
    CHECK(shortlex_less(Word::reduce(2, {1, 1}), Word::reduce(2, {1, 2})));
    CHECK(shortlex_less(Word::reduce(2, {-1}), Word::reduce(2, {2})));
    CHECK_FALSE(shortlex_less(Word::reduce(2, {1}), Word::reduce(2, {1})));
}

TEST_CASE("named and signed text round trips") {
    const std::vector<std::string> names{"x", "y"};
    const Word w = parse_named_word(names, "x^2 y^-1 x");
    CHECK(w.letters() == std::vector<Letter>{1, 1, -2, 1});
    CHECK(w.to_named_text(names) == "x^2 y^-1 x");
    CHECK(parse_named_word(names, w.to_named_text(names)) == w);
    CHECK(parse_named_word(names, "xy^-1") == Word::reduce(2, {1, -2}));
    CHECK(parse_named_word(names, "x^{3}*y") == Word::reduce(2, {1, 1, 1, 2}));
    CHECK(parse_named_word(names, "1").empty());
    CHECK(Word(2).to_named_text(names) == "1");
    CHECK(parse_signed_word(2, w.to_signed_text()) == w);
    CHECK_THROWS_AS(parse_named_word(names, "z"), InputError);
    CHECK_THROWS_AS(parse_signed_word(2, "1 q"), InputError);
}

TEST_CASE("longest generator name wins") {
    const std::vector<std::string> names{"a", "a1", "t"};
    CHECK(parse_named_word(names, "a1 a").letters() == std::vector<Letter>{2, 1});
    CHECK(parse_named_word(names, "a1^-2t").letters() == std::vector<Letter>{-2, -2, 3});
}

TEST_CASE("ball size formula matches enumeration") {
    for (int m = 1; m <= 3; ++m)
        for (int r = 0; r <= 5; ++r) {
            const auto words = enumerate_reduced({m, r});
            CHECK(words.size() == ball_size({m, r}));
        }
    CHECK(ball_size({2, 10}) == 1 + 4 * (59049 - 1) / 2);
}

TEST_CASE("enumeration is shortlex sorted, reduced and duplicate free") {
    const auto words = enumerate_reduced({2, 6});
    CHECK(std::is_sorted(words.begin(), words.end(), ShortlexLess{}));
    std::set<std::vector<Letter>> seen;
    for (const auto& w : words) {
        const auto& ls = w.letters();
        for (std::size_t i = 1; i < ls.size(); ++i) CHECK(ls[i] != -ls[i - 1]);
        CHECK(seen.insert(ls).second);
    }
}

TEST_CASE("random words: reduction is idempotent and inverse is an involution") {
    std::mt19937 rng(7);
    std::uniform_int_distribution<int> pick(0, 5);
    for (int trial = 0; trial < 500; ++trial) {
        std::vector<Letter> raw;
        for (int i = 0; i < 12; ++i) raw.push_back(letter_from_code(pick(rng)));
        const Word w = Word::reduce(3, raw);
        CHECK(Word::reduce(3, w.letters()) == w);
        CHECK(w.inverse().inverse() == w);
        CHECK(w.concat(w.inverse()).empty());
    }
}
