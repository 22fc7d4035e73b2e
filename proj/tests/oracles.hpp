#pragma once

/**
 * @file oracles.hpp
 * @brief Exact counts of 3x3 magic squares with unconstrained entries.
 *
 * Lunar addition is digitwise, so a grid has total T exactly when each
 * digit plane i is a single-digit grid whose every line has maximum t_i.
 * For one plane with digit t > 0 that count is a sum over the cell sets S
 * that meet every line: cells in S hold t, the rest hold one of t smaller
 * digits. Distinct-entry counts follow by Mobius inversion over the set
 * partitions of the 9 cells: count the grids constant on each block, then
 * weight each partition by prod (-1)^(|b|-1) (|b|-1)!.
 *
 * Nothing here shares code with the search engine.
 */

#include <array>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "lunar/magic.hpp"

namespace lunar::oracle {

using wide = __int128;

class square_counter {
public:
    square_counter() {
        std::array<int, 9> block{};
        enumerate(block, 0, 0);
    }

    /// Number of grids with this total; entries pairwise distinct when asked.
    std::uint64_t count(const number& total, bool distinct) const {
        wide sum = 0;
        for (const auto& p : parts_) {
            if (!distinct && p.blocks != 9) continue;
            wide term = distinct ? p.mobius : 1;
            for (std::size_t i = 0; i < total.length() && term != 0; ++i) term *= plane_count(p, total[i]);
            sum += term;
        }
        if (sum < 0 || sum > static_cast<wide>(UINT64_MAX)) throw std::overflow_error("count out of range");
        return static_cast<std::uint64_t>(sum);
    }

private:
    struct partition {
        int blocks = 0;
        std::int64_t mobius = 1;
        // covers[s]: block sets of size s that meet every line.
        std::array<std::int64_t, 10> covers{};
    };

    static wide plane_count(const partition& p, digit_t t) {
        if (t == 0) return 1;
        wide n = 0;
        for (int s = 0; s <= p.blocks; ++s) {
            wide w = p.covers[s];
            for (int k = s; k < p.blocks; ++k) w *= t;
            n += w;
        }
        return n;
    }

    void enumerate(std::array<int, 9>& block, int cell, int used) {
        if (cell == 9) {
            record(block, used);
            return;
        }
        for (int b = 0; b <= used; ++b) {
            block[cell] = b;
            enumerate(block, cell + 1, b == used ? used + 1 : used);
        }
    }

    void record(const std::array<int, 9>& block, int blocks) {
        partition p;
        p.blocks = blocks;
        std::array<int, 9> size{};
        for (int b : block) ++size[b];
        for (int b = 0; b < blocks; ++b) {
            for (int k = 1; k < size[b]; ++k) p.mobius *= -k;
        }
        std::array<unsigned, 8> line_blocks{};
        for (std::size_t l = 0; l < 8; ++l) {
            for (auto c : square_lines[l]) line_blocks[l] |= 1u << block[c];
        }
        for (unsigned s = 0; s < (1u << blocks); ++s) {
            bool ok = true;
            for (auto lb : line_blocks) ok = ok && (lb & s) != 0;
            if (ok) ++p.covers[static_cast<std::size_t>(__builtin_popcount(s))];
        }
        parts_.push_back(p);
    }

    std::vector<partition> parts_;
};

}  // namespace lunar::oracle
