#include <gtest/gtest.h>

#include <algorithm>
#include <random>
#include <set>

#include "fixtures.hpp"
#include "lunar/magic.hpp"

using namespace lunar;
using namespace lunar::fixtures;

namespace {

// Line sums recomputed digit by digit, without lunar::add.
std::optional<std::vector<digit_t>> oracle_total(const grid3& g) {
    std::size_t width = 0;
    for (const auto& c : g.cells) width = std::max(width, c.length());
    std::optional<std::vector<digit_t>> total;
    for (const auto& l : square_lines) {
        std::vector<digit_t> sum(width, 0);
        for (auto k : l) {
            for (std::size_t i = 0; i < width; ++i) sum[i] = std::max(sum[i], g.cells[k][i]);
        }
        if (!total) {
            total = sum;
        } else if (*total != sum) {
            return std::nullopt;
        }
    }
    return total;
}

grid3 fold_add(const std::vector<grid3>& parts) {
    grid3 acc(parts.front().base);
    for (const auto& p : parts) acc = elementwise_add(acc, p);
    return acc;
}

}  // namespace

TEST(MagicTotal, PublishedSquares) {
    EXPECT_EQ(magic_total(square22()), n10("22"));
    EXPECT_EQ(magic_total(all42()), n10("42"));
    EXPECT_EQ(magic_total(binary1111()), n2("1111"));
    EXPECT_EQ(magic_total(square44()), n10("44"));
    auto oracle = oracle_total(binary1111());
    ASSERT_TRUE(oracle);
    EXPECT_EQ(number(2, *oracle), n2("1111"));
}

TEST(MagicTotal, LargestEntryNeedNotBeTheTotal) {
    grid3 g = square44();
    auto largest = *std::max_element(g.cells.begin(), g.cells.end(), length_lex_less{});
    EXPECT_EQ(largest, n10("43"));
    EXPECT_NE(largest, *magic_total(g));
}

TEST(MagicTotal, PerturbedSquareFails) {
    grid3 g = square22();
    g.cells[4] = n10("99");
    EXPECT_FALSE(magic_total(g));
    ASSERT_TRUE(first_failing_line(g));
    EXPECT_EQ(*first_failing_line(g), 1u);
    EXPECT_EQ(square_line_name(1), "row 2");
}

TEST(MagicTotal, AgreesWithOracleOnRandomGrids) {
    std::mt19937_64 rng(1);
    int magic = 0;
    for (int i = 0; i < 20000; ++i) {
        unsigned base = 2 + static_cast<unsigned>(rng() % 3);
        grid3 g(base);
        for (auto& c : g.cells) c = random_number(rng, base, 2);
        auto t = magic_total(g);
        auto o = oracle_total(g);
        ASSERT_EQ(t.has_value(), o.has_value());
        if (t) {
            ++magic;
            EXPECT_EQ(*t, number(base, *o));
        }
    }
    EXPECT_GT(magic, 0);
}

TEST(Distinct, Examples) {
    // The first published square repeats 20.
    EXPECT_FALSE(has_distinct_entries(square22()));
    EXPECT_TRUE(has_distinct_entries(binary1111()));
    EXPECT_TRUE(has_distinct_entries(square44()));
    EXPECT_FALSE(has_distinct_entries(all42()));
    grid3 g = square44();
    g.cells[0] = n10("0");
    EXPECT_FALSE(has_distinct_entries(g));
}

TEST(DigitPlane, Examples) {
    EXPECT_EQ(digit_plane(square44(), 1), grid(10, {"4", "3", "4", "4", "0", "2", "1", "4", "0"}));
    EXPECT_EQ(digit_plane(square22(), 0), grid(10, {"2", "0", "0", "1", "2", "0", "1", "0", "2"}));
    EXPECT_EQ(digit_plane(square22(), 7), grid3(10));
}

TEST(DigitPlane, EveryPlaneOfAMagicSquareIsMagic) {
    for (const grid3& g : {square22(), all42(), binary1111(), square44(), square448(), binary_squares()}) {
        number total = *magic_total(g);
        for (std::size_t i = 0; i < total.length() + 2; ++i) {
            auto t = magic_total(digit_plane(g, i));
            ASSERT_TRUE(t);
            EXPECT_EQ(*t, number(g.base, {total[i]}));
        }
    }
}

TEST(Decompose, MatchesDisplayedPieces) {
    auto planes = decompose(square44());
    ASSERT_EQ(planes.size(), 2u);
    EXPECT_EQ(planes[1], square44_high());
    EXPECT_EQ(planes[0], square44_low());
    auto raw = decompose(square44(), plane_form::unshifted);
    EXPECT_EQ(raw[1], digit_plane(square44(), 1));
}

TEST(Decompose, TrivialCases) {
    grid3 single = grid(10, {"1", "2", "3", "4", "5", "6", "7", "8", "9"});
    EXPECT_EQ(decompose(single), std::vector<grid3>{single});
    EXPECT_EQ(decompose(grid3(10)), std::vector<grid3>{grid3(10)});
}

TEST(Decompose, FoldReproducesArbitraryGrids) {
    std::mt19937_64 rng(8);
    for (int i = 0; i < 2000; ++i) {
        unsigned base = 2 + static_cast<unsigned>(rng() % 9);
        grid3 g(base);
        for (auto& c : g.cells) c = random_number(rng, base, 5);
        ASSERT_EQ(fold_add(decompose(g)), g);
    }
}

TEST(ElementwiseAdd, Examples) {
    EXPECT_EQ(elementwise_add(square44_high(), square44_low()), square44());
    EXPECT_EQ(elementwise_add(square22(), grid3(10)), square22());
    grid3 sum = elementwise_add(power_family(pair_first_roots(), 2), power_family(pair_second_roots(), 2));
    EXPECT_EQ(sum, power_family(pair_sum_roots(), 2));
    EXPECT_THROW(elementwise_add(square22(), binary1111()), error);
}

TEST(ElementwiseAdd, TotalsAdd) {
    std::vector<grid3> magic10{square22(), all42(), square44(), square448(), power_family(roots224(), 2),
                               power_family(roots439(), 2)};
    for (const auto& a : magic10) {
        for (const auto& b : magic10) {
            auto t = magic_total(elementwise_add(a, b));
            ASSERT_TRUE(t);
            EXPECT_EQ(*t, *magic_total(a) + *magic_total(b));
        }
    }
}

TEST(Domination, TotalDominatesEveryCell) {
    for (const grid3& g : {square22(), binary1111(), square44(), square448(), binary_squares()}) {
        EXPECT_TRUE(all_dominated_by(g, *magic_total(g)));
    }
}

TEST(Domination, DominatingCellIsTheTotal) {
    for (const grid3& g : {square22(), binary1111(), all42()}) {
        number total = *magic_total(g);
        for (const auto& c : g.cells) {
            if (all_dominated_by(g, c)) {
                EXPECT_EQ(c, total);
            }
        }
    }
}

TEST(Symmetries, FormTheDihedralGroup) {
    auto syms = square_symmetries();
    std::set<cell_permutation> unique(syms.begin(), syms.end());
    EXPECT_EQ(unique.size(), 8u);
    for (const auto& p : syms) {
        // Lines map to lines.
        std::set<cell_mask> lines;
        for (const auto& l : square_lines) lines.insert(line_mask(l));
        for (const auto& l : square_lines) EXPECT_TRUE(lines.count(apply_symmetry(line_mask(l), p)));
        EXPECT_TRUE(magic_total(apply_symmetry(square22(), p)));
    }
}

TEST(MinimalCovers, ExhaustiveScan) {
    auto covers = minimal_covers();
    auto orbits = symmetry_orbits(covers);
    // Independent recount: a cover is minimal when dropping any one of its cells breaks it.
    std::size_t brute = 0;
    for (unsigned m = 0; m < 512; ++m) {
        auto hits = [](unsigned mask) {
            for (const auto& l : square_lines) {
                if (!((mask >> l[0]) & 1u) && !((mask >> l[1]) & 1u) && !((mask >> l[2]) & 1u)) return false;
            }
            return true;
        };
        if (!hits(m)) continue;
        bool minimal = true;
        for (unsigned k = 0; k < 9; ++k) {
            if ((m >> k) & 1u) minimal = minimal && !hits(m & ~(1u << k));
        }
        brute += minimal;
    }
    EXPECT_EQ(covers.size(), brute);
    EXPECT_EQ(covers.size(), 23u);
    EXPECT_EQ(orbits.size(), 6u);
    for (auto m : covers) EXPECT_TRUE(magic_total(mask_grid(m)));
}

TEST(MinimalCovers, ContainsBothDisplayedPatterns) {
    auto covers = minimal_covers();
    auto has = [&](cell_mask m) { return std::find(covers.begin(), covers.end(), m) != covers.end(); };
    EXPECT_TRUE(has(0b100010001));              // main diagonal
    EXPECT_TRUE(has(0b010001101));              // [[1,0,1],[1,0,0],[0,1,0]]
    EXPECT_FALSE(has(0b110100111));             // [[1,1,1],[0,0,1],[0,1,1]] covers but is not minimal
    EXPECT_TRUE(covers_all_lines(0b110100111));
}

TEST(Construct, DisplayedParameters) {
    auto p = [](std::string_view s) { return n10(s); };
    grid3 g = construct({p("4"), p("3"), p("2"), p("1"), p("4"), p("3"), p("2"), p("1")});
    EXPECT_EQ(g, square44());
    EXPECT_EQ(magic_total(g), n10("44"));

    grid3 h = construct({p("4"), p("3"), p("2"), p("1"), p("8"), p("7"), p("6"), p("5")});
    EXPECT_EQ(magic_total(h), n10("48"));
    // Matches the published 48 family except for the corner, which is 44 there.
    EXPECT_EQ(h.cells[0], n10("40"));
    EXPECT_TRUE(std::equal(h.cells.begin() + 1, h.cells.end(), roots448().cells.begin() + 1));
}

TEST(Construct, RejectsDominanceViolations) {
    auto p = [](std::string_view s) { return n10(s); };
    try {
        construct({p("4"), p("3"), p("2"), p("1"), p("4"), p("8"), p("2"), p("1")});
        FAIL();
    } catch (const error& e) {
        EXPECT_EQ(e.code(), errc::dominance_violated);
    }
    EXPECT_THROW(construct({p("4"), p("5"), p("2"), p("1"), p("4"), p("3"), p("2"), p("1")}), error);
    EXPECT_THROW(construct({p("4"), p("3"), p("2"), p("1"), p("0"), p("0"), p("0"), p("0")}), error);
}

TEST(Construct, TotalIsConcatenationForRandomParameters) {
    std::mt19937_64 rng(42);
    for (int i = 0; i < 3000; ++i) {
        unsigned base = 3 + static_cast<unsigned>(rng() % 8);
        auto lower = [&](const number& x) {
            std::vector<digit_t> d(x.digits().begin(), x.digits().end());
            for (auto& v : d) v = static_cast<digit_t>(rng() % (v + 1));
            return number(base, d);
        };
        number a = random_number(rng, base, 3);
        number alpha = random_number(rng, base, 3);
        if (alpha.is_zero()) continue;
        construct_params p{a, lower(a), lower(a), lower(a), alpha, lower(alpha), lower(alpha), lower(alpha)};
        grid3 g = construct(p);
        ASSERT_EQ(magic_total(g), add(a.shifted(alpha.length()), alpha)) << format(a) << "|" << format(alpha);
    }
}

TEST(PowerFamily, PublishedFamilies) {
    EXPECT_EQ(power_family(roots448(), 2), square448());
    EXPECT_EQ(magic_total(square448()), n10("448"));
    EXPECT_EQ(power_family(binary_roots(), 2), binary_squares());
    EXPECT_EQ(magic_total(binary_squares()), n2("1011111"));
    for (unsigned n = 2; n <= 5; ++n) {
        EXPECT_EQ(magic_total(power_family(roots448(), n)), pow(n10("48"), n)) << n;
        EXPECT_EQ(magic_total(power_family(roots1447(), n)), pow(n10("1447"), n)) << n;
    }
    EXPECT_EQ(magic_total(power_family(roots224(), 2)), n10("224"));
    EXPECT_EQ(magic_total(power_family(roots439(), 2)), n10("439"));
}

TEST(Cube, LineSets) {
    EXPECT_EQ(cube_lines(cube_line_set::axes_and_space_diagonals).size(), 31u);
    EXPECT_EQ(cube_lines(cube_line_set::axes_space_and_face_diagonals).size(), 43u);
    // Every cell lies on exactly three axis lines.
    std::array<int, 27> seen{};
    auto lines = cube_lines(cube_line_set::axes_and_space_diagonals);
    for (std::size_t i = 0; i < 27; ++i) {
        for (auto c : lines[i]) ++seen[c];
    }
    for (int s : seen) EXPECT_EQ(s, 3);
}

TEST(Cube, MagicTotal) {
    cube3 c(10);
    c.cells.fill(n10("7"));
    EXPECT_EQ(cube_magic_total(c), n10("7"));
    EXPECT_FALSE(has_distinct_entries(c));
    c.cells[13] = n10("8");
    EXPECT_FALSE(cube_magic_total(c));

    // Replicating one magic square in all layers: axis lines through the layers
    // are constant columns, so the cube is magic only if every cell equals the total.
    cube3 r(2);
    for (std::size_t z = 0; z < 3; ++z) {
        for (std::size_t k = 0; k < 9; ++k) r.cells[z * 9 + k] = binary_squares().cells[k];
    }
    EXPECT_FALSE(cube_magic_total(r));
    EXPECT_TRUE(magic_total(r.layer(1)));
}
