#include <catch2/catch_amalgamated.hpp>

#include "helpers.hpp"
#include "tracealg/words.hpp"

using namespace tracealg;

namespace {
Word w(std::initializer_list<int> letters) {
    Word out;
    for (int a : letters) out.push_back(static_cast<Letter>(a));
    return out;
}
}  // namespace

TEST_CASE("canonicalize picks the least rotation", "[words]") {
    CHECK(canonicalize(w({2, 3, 1})).word() == w({1, 2, 3}));
    CHECK(canonicalize(w({1, 1, 3, 2})).word() == w({1, 1, 3, 2}));
    CHECK(canonicalize(w({3, 3})).word() == w({3, 3}));
}

TEST_CASE("canonicalize rejects the empty word", "[words]") {
    CHECK_THROWS_AS(canonicalize(Word{}), ParseError);
}

TEST_CASE("canonicalize is rotation invariant", "[words]") {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 100; ++trial) {
        Word word = testutil::random_word(rng, 4, 8);
        CyclicWord canon = canonicalize(word);
        for (std::size_t k = 0; k < word.size(); ++k)
            CHECK(canonicalize(rotate(word, k)) == canon);
    }
}

TEST_CASE("multidegree counts letter occurrences", "[words]") {
    CHECK(multidegree(w({1, 3, 3, 1, 3, 2}), 3).counts == std::vector<int>{2, 1, 3});
    CHECK(multidegree(w({1}), 3).counts == std::vector<int>{1, 0, 0});
    // Concatenation of the tuple (111,22,3,3).
    CHECK(multidegree(w({1, 1, 1, 2, 2, 3, 3}), 3).counts == std::vector<int>{3, 2, 2});
}

TEST_CASE("multidegree is rotation invariant and additive", "[words]") {
    std::mt19937_64 rng(8);
    for (int trial = 0; trial < 100; ++trial) {
        Word a = testutil::random_word(rng, 3, 6);
        Word b = testutil::random_word(rng, 3, 6);
        for (std::size_t k = 0; k < a.size(); ++k)
            CHECK(multidegree(rotate(a, k), 3) == multidegree(a, 3));
        Word ab = a;
        ab.insert(ab.end(), b.begin(), b.end());
        CHECK(multidegree(ab, 3) == multidegree(a, 3) + multidegree(b, 3));
    }
}

TEST_CASE("parse_tuple reads the paper notation", "[words]") {
    auto t = parse_tuple("(1132,223,1,3)");
    REQUIRE(t.size() == 4);
    CHECK(t[0] == w({1, 1, 3, 2}));
    CHECK(t[1] == w({2, 2, 3}));
    CHECK(t[2] == w({1}));
    CHECK(t[3] == w({3}));

    auto s = parse_tuple("(12,3,4)");
    REQUIRE(s.size() == 3);
    CHECK(s[0] == w({1, 2}));
    CHECK(s[1] == w({3}));
    CHECK(s[2] == w({4}));
}

TEST_CASE("parse_tuple rejects malformed input", "[words]") {
    CHECK_THROWS_AS(parse_tuple("(1,,2)"), ParseError);
    CHECK_THROWS_AS(parse_tuple("1,2"), ParseError);
    CHECK_THROWS_AS(parse_tuple("(1,0,2)"), ParseError);
    CHECK_THROWS_AS(parse_tuple("()"), ParseError);
}

TEST_CASE("tuple notation round-trips", "[words]") {
    std::mt19937_64 rng(9);
    for (int trial = 0; trial < 100; ++trial) {
        std::vector<Word> tuple;
        int arity = 2 + static_cast<int>(rng() % 3);
        for (int i = 0; i < arity; ++i) tuple.push_back(testutil::random_word(rng, 9, 5));
        CHECK(parse_tuple(print_tuple(tuple)) == tuple);
    }
}
