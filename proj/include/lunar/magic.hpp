#pragma once

/**
 * @file magic.hpp
 * @brief 3x3 lunar magic squares and 3x3x3 magic cubes.
 *
 * A line sum is a digitwise maximum, so every entry of a magic square is
 * dominated by the total, and each digit position of a magic square is a
 * magic square of single digits on its own. Sums of magic squares taken
 * cell by cell are again magic.
 */

#include <algorithm>
#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "lunar/number.hpp"

namespace lunar {

using line = std::array<std::uint8_t, 3>;

/// Row-major cell indices of the 8 lines of a 3x3 square: rows, columns, diagonals.
inline constexpr std::array<line, 8> square_lines{{
    {0, 1, 2}, {3, 4, 5}, {6, 7, 8},
    {0, 3, 6}, {1, 4, 7}, {2, 5, 8},
    {0, 4, 8}, {2, 4, 6},
}};

inline std::string square_line_name(std::size_t index) {
    if (index < 3) return "row " + std::to_string(index + 1);
    if (index < 6) return "column " + std::to_string(index - 2);
    return index == 6 ? "main diagonal" : "anti-diagonal";
}

struct grid3 {
    unsigned base = 10;
    std::array<number, 9> cells{};

    grid3() = default;

    explicit grid3(unsigned b) : base(b) { cells.fill(number(b)); }

    grid3(unsigned b, std::array<number, 9> values) : base(b), cells(std::move(values)) {
        for (const auto& c : cells) {
            if (c.base() != base) throw error(errc::base_mismatch, "grid cell in base " + std::to_string(c.base()));
        }
    }

    /// Row-major digit strings.
    static grid3 parse(unsigned b, const std::array<std::string_view, 9>& text) {
        std::array<number, 9> values;
        for (std::size_t i = 0; i < 9; ++i) values[i] = lunar::parse(text[i], b);
        return grid3(b, std::move(values));
    }

    const number& at(std::size_t row, std::size_t col) const { return cells[row * 3 + col]; }

    friend bool operator==(const grid3&, const grid3&) = default;
};

/// Cellwise length-lex order, row-major.
inline std::strong_ordering compare_grids(const grid3& a, const grid3& b) {
    if (auto c = a.base <=> b.base; c != 0) return c;
    for (std::size_t i = 0; i < 9; ++i) {
        if (auto c = compare_length_lex(a.cells[i], b.cells[i]); c != 0) return c;
    }
    return std::strong_ordering::equal;
}

struct grid_less {
    bool operator()(const grid3& a, const grid3& b) const { return compare_grids(a, b) < 0; }
};

inline number line_sum(const grid3& g, const line& l) {
    return add(add(g.cells[l[0]], g.cells[l[1]]), g.cells[l[2]]);
}

inline std::array<number, 8> line_sums(const grid3& g) {
    std::array<number, 8> sums;
    for (std::size_t i = 0; i < 8; ++i) sums[i] = line_sum(g, square_lines[i]);
    return sums;
}

/// Index of the first line whose sum differs from the first row's, if any.
inline std::optional<std::size_t> first_failing_line(const grid3& g) {
    auto sums = line_sums(g);
    for (std::size_t i = 1; i < 8; ++i) {
        if (sums[i] != sums[0]) return i;
    }
    return std::nullopt;
}

inline std::optional<number> magic_total(const grid3& g) {
    if (first_failing_line(g)) return std::nullopt;
    return line_sum(g, square_lines[0]);
}

template <std::size_t N>
bool all_distinct(const std::array<number, N>& cells) {
    for (std::size_t i = 0; i < N; ++i) {
        for (std::size_t j = i + 1; j < N; ++j) {
            if (cells[i] == cells[j]) return false;
        }
    }
    return true;
}

inline bool has_distinct_entries(const grid3& g) { return all_distinct(g.cells); }

/// Every cell is dominated by `total`.
inline bool all_dominated_by(const grid3& g, const number& total) {
    return std::all_of(g.cells.begin(), g.cells.end(), [&](const number& c) { return dominates(total, c); });
}

/**
 * Single digits at position i of every cell (0-based from the right, so
 * index 1 is the "2nd digit"). Absent digits read as 0.
 */
inline grid3 digit_plane(const grid3& g, std::size_t i) {
    grid3 out(g.base);
    for (std::size_t k = 0; k < 9; ++k) out.cells[k] = number::from_normalized(g.base, {g.cells[k][i]});
    return out;
}

inline std::size_t max_cell_length(const grid3& g) {
    std::size_t len = 0;
    for (const auto& c : g.cells) len = std::max(len, c.length());
    return len;
}

enum class plane_form { shifted, unshifted };

/**
 * One grid per digit position, index i holding plane i. Shifted planes
 * carry their digit at position i, so their cellwise sum is g again; the
 * all-zero grid decomposes into itself.
 */
inline std::vector<grid3> decompose(const grid3& g, plane_form form = plane_form::shifted) {
    const std::size_t planes = std::max<std::size_t>(1, max_cell_length(g));
    std::vector<grid3> out;
    out.reserve(planes);
    for (std::size_t i = 0; i < planes; ++i) {
        grid3 p = digit_plane(g, i);
        if (form == plane_form::shifted) {
            for (auto& c : p.cells) c = c.shifted(i);
        }
        out.push_back(std::move(p));
    }
    return out;
}

inline grid3 elementwise_add(const grid3& a, const grid3& b) {
    if (a.base != b.base) throw error(errc::base_mismatch, "grids in different bases");
    grid3 out(a.base);
    for (std::size_t k = 0; k < 9; ++k) out.cells[k] = add(a.cells[k], b.cells[k]);
    return out;
}

inline grid3 power_family(const grid3& roots, unsigned exponent) {
    grid3 out(roots.base);
    for (std::size_t k = 0; k < 9; ++k) out.cells[k] = pow(roots.cells[k], exponent);
    return out;
}

// ---------------------------------------------------------------------------
// Symmetries and minimal covers

using cell_permutation = std::array<std::uint8_t, 9>;

/// The 8 rotations and reflections of the square; entry k maps cell k to its image.
inline std::array<cell_permutation, 8> square_symmetries() {
    auto rotate = [](const cell_permutation& p) {
        cell_permutation out{};
        for (std::uint8_t k = 0; k < 9; ++k) {
            std::uint8_t r = k / 3, c = k % 3;
            out[k] = p[static_cast<std::uint8_t>(c * 3 + (2 - r))];
        }
        return out;
    };
    cell_permutation id{0, 1, 2, 3, 4, 5, 6, 7, 8};
    cell_permutation mirror{2, 1, 0, 5, 4, 3, 8, 7, 6};
    std::array<cell_permutation, 8> out{};
    out[0] = id;
    out[4] = mirror;
    for (std::size_t i = 1; i < 4; ++i) {
        out[i] = rotate(out[i - 1]);
        out[i + 4] = rotate(out[i + 3]);
    }
    return out;
}

inline grid3 apply_symmetry(const grid3& g, const cell_permutation& p) {
    grid3 out(g.base);
    for (std::size_t k = 0; k < 9; ++k) out.cells[p[k]] = g.cells[k];
    return out;
}

/// Bit k set means cell k (row-major) is in the set.
using cell_mask = std::uint16_t;

inline constexpr cell_mask full_cell_mask = 0x1ff;

inline cell_mask line_mask(const line& l) {
    return static_cast<cell_mask>((1u << l[0]) | (1u << l[1]) | (1u << l[2]));
}

inline bool covers_all_lines(cell_mask m) {
    return std::all_of(square_lines.begin(), square_lines.end(),
                       [m](const line& l) { return (m & line_mask(l)) != 0; });
}

inline cell_mask apply_symmetry(cell_mask m, const cell_permutation& p) {
    cell_mask out = 0;
    for (std::size_t k = 0; k < 9; ++k) {
        if (m & (1u << k)) out = static_cast<cell_mask>(out | (1u << p[k]));
    }
    return out;
}

/**
 * Minimal cell sets meeting all 8 lines, ascending by mask value. These
 * are the places the total-achieving digit must occupy in a single-digit
 * magic square, minimal meaning no cell can be dropped.
 */
inline std::vector<cell_mask> minimal_covers() {
    std::vector<cell_mask> out;
    for (unsigned m = 0; m <= full_cell_mask; ++m) {
        auto mask = static_cast<cell_mask>(m);
        if (!covers_all_lines(mask)) continue;
        bool minimal = true;
        for (std::size_t k = 0; k < 9 && minimal; ++k) {
            if ((mask & (1u << k)) && covers_all_lines(static_cast<cell_mask>(mask & ~(1u << k)))) minimal = false;
        }
        if (minimal) out.push_back(mask);
    }
    return out;
}

/// Groups masks into orbits under the square's symmetries; each orbit sorted, orbits ordered by least member.
inline std::vector<std::vector<cell_mask>> symmetry_orbits(const std::vector<cell_mask>& masks) {
    const auto syms = square_symmetries();
    std::vector<std::vector<cell_mask>> orbits;
    std::vector<bool> seen(full_cell_mask + 1, false);
    for (cell_mask m : masks) {
        if (seen[m]) continue;
        std::vector<cell_mask> orbit;
        for (const auto& p : syms) {
            cell_mask image = apply_symmetry(m, p);
            if (!seen[image]) {
                seen[image] = true;
                orbit.push_back(image);
            }
        }
        std::sort(orbit.begin(), orbit.end());
        orbits.push_back(std::move(orbit));
    }
    std::sort(orbits.begin(), orbits.end());
    return orbits;
}

inline grid3 mask_grid(cell_mask m, unsigned base = 10) {
    grid3 out(base);
    for (std::size_t k = 0; k < 9; ++k) {
        if (m & (1u << k)) out.cells[k] = number::digit(base, 1);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Parametrized construction

/// a dominates b, c, d and alpha dominates beta, gamma, delta; alpha nonzero.
struct construct_params {
    number a, b, c, d;
    number alpha, beta, gamma, delta;
};

/**
 * Builds
 *
 *     a.       b.+alpha  a.+delta
 *     a.+gamma 0         c.+alpha
 *     d.+alpha a.+beta   alpha
 *
 * where x. is x shifted left by the digit length of alpha, so each entry
 * is a literal concatenation and the total is the concatenation a|alpha.
 */
inline grid3 construct(const construct_params& p) {
    const unsigned base = p.alpha.base();
    for (const number* x : {&p.a, &p.b, &p.c, &p.d, &p.beta, &p.gamma, &p.delta}) {
        detail::require_same_base(p.alpha, *x);
    }
    if (p.alpha.is_zero()) throw error(errc::dominance_violated, "alpha must be nonzero");
    const char* names[] = {"b", "c", "d", "beta", "gamma", "delta"};
    const number* lows[] = {&p.b, &p.c, &p.d, &p.beta, &p.gamma, &p.delta};
    for (std::size_t i = 0; i < 6; ++i) {
        const number& high = i < 3 ? p.a : p.alpha;
        if (!dominates(high, *lows[i])) {
            throw error(errc::dominance_violated,
                        std::string(i < 3 ? "a" : "alpha") + " = " + format(high) + " does not dominate " + names[i] +
                            " = " + format(*lows[i]));
        }
    }
    const std::size_t width = p.alpha.length();
    const number as = p.a.shifted(width);
    return grid3(base, {
                           as, add(p.b.shifted(width), p.alpha), add(as, p.delta),
                           add(as, p.gamma), number(base), add(p.c.shifted(width), p.alpha),
                           add(p.d.shifted(width), p.alpha), add(as, p.beta), p.alpha,
                       });
}

// ---------------------------------------------------------------------------
// Cubes

enum class cube_line_set { axes_and_space_diagonals, axes_space_and_face_diagonals };

inline const char* to_string(cube_line_set s) {
    return s == cube_line_set::axes_and_space_diagonals ? "axes_and_space_diagonals"
                                                        : "axes_space_and_face_diagonals";
}

inline std::optional<cube_line_set> parse_cube_line_set(std::string_view s) {
    if (s == "axes_and_space_diagonals") return cube_line_set::axes_and_space_diagonals;
    if (s == "axes_space_and_face_diagonals") return cube_line_set::axes_space_and_face_diagonals;
    return std::nullopt;
}

/// Cell index of (layer, row, col).
constexpr std::uint8_t cube_index(int z, int y, int x) { return static_cast<std::uint8_t>(z * 9 + y * 3 + x); }

/**
 * 27 axis-parallel lines and 4 space diagonals; with face diagonals, also
 * the 2 diagonals of each of the 6 outer faces (12 more).
 */
inline std::vector<line> cube_lines(cube_line_set set) {
    std::vector<line> out;
    for (int a = 0; a < 3; ++a) {
        for (int b = 0; b < 3; ++b) {
            out.push_back({cube_index(a, b, 0), cube_index(a, b, 1), cube_index(a, b, 2)});
            out.push_back({cube_index(a, 0, b), cube_index(a, 1, b), cube_index(a, 2, b)});
            out.push_back({cube_index(0, a, b), cube_index(1, a, b), cube_index(2, a, b)});
        }
    }
    out.push_back({cube_index(0, 0, 0), cube_index(1, 1, 1), cube_index(2, 2, 2)});
    out.push_back({cube_index(0, 0, 2), cube_index(1, 1, 1), cube_index(2, 2, 0)});
    out.push_back({cube_index(0, 2, 0), cube_index(1, 1, 1), cube_index(2, 0, 2)});
    out.push_back({cube_index(0, 2, 2), cube_index(1, 1, 1), cube_index(2, 0, 0)});
    if (set == cube_line_set::axes_space_and_face_diagonals) {
        for (int f : {0, 2}) {
            out.push_back({cube_index(f, 0, 0), cube_index(f, 1, 1), cube_index(f, 2, 2)});
            out.push_back({cube_index(f, 0, 2), cube_index(f, 1, 1), cube_index(f, 2, 0)});
            out.push_back({cube_index(0, f, 0), cube_index(1, f, 1), cube_index(2, f, 2)});
            out.push_back({cube_index(0, f, 2), cube_index(1, f, 1), cube_index(2, f, 0)});
            out.push_back({cube_index(0, 0, f), cube_index(1, 1, f), cube_index(2, 2, f)});
            out.push_back({cube_index(0, 2, f), cube_index(1, 1, f), cube_index(2, 0, f)});
        }
    }
    return out;
}

struct cube3 {
    unsigned base = 10;
    std::array<number, 27> cells{};
    cube_line_set line_set = cube_line_set::axes_and_space_diagonals;

    cube3() = default;

    explicit cube3(unsigned b, cube_line_set set = cube_line_set::axes_and_space_diagonals)
        : base(b), line_set(set) {
        cells.fill(number(b));
    }

    cube3(unsigned b, std::array<number, 27> values, cube_line_set set = cube_line_set::axes_and_space_diagonals)
        : base(b), cells(std::move(values)), line_set(set) {
        for (const auto& c : cells) {
            if (c.base() != base) throw error(errc::base_mismatch, "cube cell in base " + std::to_string(c.base()));
        }
    }

    /// Layer z as a square.
    grid3 layer(std::size_t z) const {
        grid3 g(base);
        for (std::size_t k = 0; k < 9; ++k) g.cells[k] = cells[z * 9 + k];
        return g;
    }

    friend bool operator==(const cube3&, const cube3&) = default;
};

inline std::optional<number> cube_magic_total(const cube3& c) {
    std::optional<number> total;
    for (const auto& l : cube_lines(c.line_set)) {
        number s = add(add(c.cells[l[0]], c.cells[l[1]]), c.cells[l[2]]);
        if (!total) {
            total = std::move(s);
        } else if (s != *total) {
            return std::nullopt;
        }
    }
    return total;
}

inline bool has_distinct_entries(const cube3& c) { return all_distinct(c.cells); }

}  // namespace lunar
