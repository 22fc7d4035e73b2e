#pragma once

// Published lunar magic squares used across the test suites.

#include <array>
#include <random>
#include <string_view>
#include <vector>

#include "lunar/magic.hpp"
#include "lunar/number.hpp"

namespace lunar::fixtures {

inline number n10(std::string_view s) { return parse(s, 10); }
inline number n2(std::string_view s) { return parse(s, 2); }

inline grid3 grid(unsigned base, std::array<std::string_view, 9> cells) { return grid3::parse(base, cells); }

inline grid3 square22() { return grid(10, {"12", "0", "20", "1", "22", "10", "21", "20", "2"}); }
inline grid3 all42() { return grid(10, {"42", "42", "42", "42", "42", "42", "42", "42", "42"}); }
inline grid3 binary1111() { return grid(2, {"1111", "1110", "1011", "1010", "0", "111", "110", "1001", "1"}); }
inline grid3 square44() { return grid(10, {"40", "34", "41", "42", "0", "24", "14", "43", "4"}); }

// Digit-plane pieces of square44: high plane (shifted) and low plane.
inline grid3 square44_high() { return grid(10, {"40", "30", "40", "40", "0", "20", "10", "40", "0"}); }
inline grid3 square44_low() { return grid(10, {"0", "4", "1", "2", "0", "4", "4", "3", "4"}); }

inline grid3 roots448() { return grid(10, {"44", "38", "45", "46", "0", "28", "18", "47", "8"}); }
inline grid3 square448() { return grid(10, {"444", "338", "445", "446", "0", "228", "118", "447", "8"}); }
inline grid3 roots224() { return grid(10, {"22", "0", "14", "1", "24", "2", "4", "3", "23"}); }
inline grid3 roots439() { return grid(10, {"39", "40", "29", "19", "33", "41", "42", "9", "43"}); }
inline grid3 roots1447() {
    return grid(10, {"1447", "1347", "1444", "1446", "0", "1247", "1147", "1445", "1"});
}

inline grid3 binary_roots() { return grid(2, {"11", "101", "1001", "110", "1011", "1", "1010", "0", "111"}); }
inline grid3 binary_squares() {
    return grid(2, {"111", "10101", "1001001", "11100", "1011111", "1", "1010100", "0", "11111"});
}

// Sum of squares of squares: first + second = sum, all as roots.
inline grid3 pair_first_roots() {
    return grid(10, {"5789", "5778", "6778", "6678", "6789", "5689", "6788", "5678", "6689"});
}
inline grid3 pair_second_roots() {
    return grid(10, {"13458", "13348", "23348", "22348", "23458", "12458", "23448", "12348", "22458"});
}
inline grid3 pair_sum_roots() {
    return grid(10, {"15789", "15778", "26778", "26678", "26789", "15689", "26788", "15678", "26689"});
}

/// Uniform random number in `base` with up to `max_len` digits (leading digit may be 0, giving shorter values).
inline number random_number(std::mt19937_64& rng, unsigned base, std::size_t max_len) {
    std::uniform_int_distribution<std::size_t> len_dist(0, max_len);
    std::uniform_int_distribution<digit_t> digit_dist(0, base - 1);
    std::vector<digit_t> d(len_dist(rng));
    for (auto& x : d) x = digit_dist(rng);
    return number(base, std::move(d));
}

}  // namespace lunar::fixtures
