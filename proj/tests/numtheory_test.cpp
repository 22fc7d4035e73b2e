#include <gtest/gtest.h>

#include <algorithm>
#include <map>
#include <random>
#include <set>
#include <string>

#include "fixtures.hpp"
#include "lunar/numtheory.hpp"

using namespace lunar;
using fixtures::n10;
using fixtures::n2;

namespace {

bool contains(const std::vector<number>& v, const number& n) { return std::find(v.begin(), v.end(), n) != v.end(); }

// Brute force: every m with at most `digits` digits.
std::vector<number> brute_roots(const number& n, std::size_t digits) {
    std::vector<number> out;
    for_each_up_to_length(n.base(), digits, [&](const number& m) {
        if (m * m == n) out.push_back(m);
    });
    return out;
}

// Brute force over every pair of non-unit factors whose product has n's length.
bool brute_is_prime(const number& n) {
    if (n.is_zero() || n.is_identity()) return false;
    std::vector<std::vector<number>> by_length(n.length() + 1);
    for_each_up_to_length(n.base(), n.length(), [&](const number& m) {
        if (!m.is_zero() && !m.is_identity()) by_length[m.length()].push_back(m);
    });
    for (std::size_t la = 1; la <= n.length(); ++la) {
        for (const auto& a : by_length[la]) {
            for (const auto& b : by_length[n.length() + 1 - la]) {
                if (a * b == n) return false;
            }
        }
    }
    return true;
}

}  // namespace

TEST(SquareRoots, Examples) {
    EXPECT_TRUE(contains(square_roots(n10("557")), n10("57")));
    EXPECT_EQ(square_roots(n10("0")), std::vector<number>{n10("0")});
    EXPECT_TRUE(square_roots(n10("439")).empty());
    EXPECT_TRUE(brute_roots(n10("439"), 2).empty());
    EXPECT_TRUE(square_roots(n10("1234")).empty());
    EXPECT_EQ(square_roots(n10("7")), std::vector<number>{n10("7")});
}

TEST(SquareRoots, NotInjective) {
    EXPECT_EQ(n10("11011") * n10("11011"), n10("11111") * n10("11111"));
    // Group every root with at most 5 digits by its square, then compare.
    for (unsigned base : {2u, 3u}) {
        std::map<std::string, std::vector<number>> by_square;
        for_each_up_to_length(base, 5, [&](const number& m) { by_square[format(m * m)].push_back(m); });
        std::size_t multi = 0;
        for (auto& [s, roots] : by_square) {
            std::sort(roots.begin(), roots.end(), length_lex_less{});
            ASSERT_EQ(square_roots(parse(s, base)), roots) << s;
            if (roots.size() > 1) ++multi;
        }
        EXPECT_GT(multi, 0u) << base;
    }
    for (const auto& s : enumerate_squares(10, 5)) ASSERT_EQ(square_roots(s), brute_roots(s, 3)) << format(s);
}

TEST(SquareRoots, EmptyForSampledNonSquares) {
    std::mt19937_64 rng(17);
    auto squares = enumerate_squares(10, 5);
    std::set<std::string> known;
    for (const auto& s : squares) known.insert(format(s));
    int checked = 0;
    while (checked < 300) {
        number n = fixtures::random_number(rng, 10, 5);
        if (known.count(format(n))) continue;
        EXPECT_TRUE(square_roots(n).empty()) << format(n);
        ++checked;
    }
}

TEST(NthRoots, MatchPowers) {
    EXPECT_TRUE(contains(nth_roots(n10("1111113334444444448"), 3), n10("1134448")));
    for (const auto& p : enumerate_powers(3, 3, 7)) {
        auto roots = nth_roots(p, 3);
        ASSERT_FALSE(roots.empty()) << format(p);
        for (const auto& r : roots) EXPECT_EQ(pow(r, 3), p);
    }
    EXPECT_EQ(nth_roots(n10("42"), 1), std::vector<number>{n10("42")});
}

TEST(EnumerateSquares, Counts) {
    auto squares = enumerate_squares(10, 3);
    EXPECT_EQ(squares.size(), 100u);
    EXPECT_FALSE(contains(squares, n10("439")));
    EXPECT_EQ(enumerate_squares(2, 1), (std::vector<number>{n2("0"), n2("1")}));
    auto single = enumerate_squares(10, 1);
    ASSERT_EQ(single.size(), 10u);
    for (digit_t d = 0; d < 10; ++d) EXPECT_EQ(single[d], number(10, {d}));
}

TEST(EnumerateSquares, SortedUniqueAndRooted) {
    for (unsigned base : {2u, 3u, 10u}) {
        auto squares = enumerate_squares(base, 5);
        for (std::size_t i = 1; i < squares.size(); ++i) ASSERT_TRUE(compare_length_lex(squares[i - 1], squares[i]) < 0);
        for (const auto& s : squares) ASSERT_FALSE(square_roots(s).empty());
    }
}

TEST(IsPrime, Examples) {
    EXPECT_TRUE(is_prime(n10("439")));
    EXPECT_TRUE(brute_is_prime(n10("439")));
    EXPECT_FALSE(is_prime(n10("5")));
    EXPECT_FALSE(is_prime(n2("1")));
    EXPECT_TRUE(n2("1").is_identity());
    EXPECT_FALSE(is_prime(n10("9")));
    EXPECT_FALSE(is_prime(n10("0")));
}

TEST(IsPrime, MatchesBruteForceUpToThreeDigits) {
    for (unsigned base : {2u, 3u, 10u}) {
        for_each_up_to_length(base, 3, [](const number& n) { ASSERT_EQ(is_prime(n), brute_is_prime(n)) << format(n); });
    }
}

TEST(IsPrime, MultiDigitSquaresAreComposite) {
    for_each_up_to_length(10, 3, [](const number& n) {
        if (is_prime(n)) {
            EXPECT_TRUE(square_roots(n).empty() || n.length() == 1) << format(n);
        }
    });
}

TEST(Triples, Base10TwoDigitLegs) {
    auto triples = find_triples(10, 2);
    auto has = [&](std::string_view a, std::string_view b, std::string_view c) {
        return std::find(triples.begin(), triples.end(), triple{n10(a), n10(b), n10(c)}) != triples.end();
    };
    EXPECT_TRUE(has("4", "22", "24"));
    EXPECT_FALSE(has("3", "3", "3"));
    for (const auto& t : triples) {
        ASSERT_TRUE(is_pythagorean(t.a, t.b, t.c));
        ASSERT_TRUE(compare_length_lex(t.a, t.b) < 0);
    }
}

TEST(Triples, Base2SingleDigitIsEmpty) {
    EXPECT_TRUE(find_triples(2, 1).empty());
    // Oracle: legs 0 and 1 only, c from every 1-digit value.
    int found = 0;
    for (const char* a : {"0", "1"}) {
        for (const char* b : {"0", "1"}) {
            for (const char* c : {"0", "1"}) found += is_pythagorean(n2(a), n2(b), n2(c));
        }
    }
    EXPECT_EQ(found, 0);
}
