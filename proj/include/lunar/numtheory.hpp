#pragma once

/**
 * @file numtheory.hpp
 * @brief Lunar squares and square roots, lunar primes, Pythagorean triples.
 */

#include <algorithm>
#include <cstddef>
#include <vector>

#include "lunar/number.hpp"

namespace lunar {

namespace detail {

inline void sort_unique(std::vector<number>& values) {
    std::sort(values.begin(), values.end(), length_lex_less{});
    values.erase(std::unique(values.begin(), values.end()), values.end());
}

/// Calls visit(digits) for every digit vector with digit i in [lo[i], hi[i]], odometer order.
template <class Visitor>
void for_each_bounded(std::vector<digit_t> lo, const std::vector<digit_t>& hi, Visitor&& visit) {
    for (std::size_t i = 0; i < lo.size(); ++i) {
        if (lo[i] > hi[i]) return;
    }
    std::vector<digit_t> cur = lo;
    for (;;) {
        visit(std::as_const(cur));
        std::size_t i = 0;
        for (; i < cur.size(); ++i) {
            if (cur[i] < hi[i]) {
                ++cur[i];
                break;
            }
            cur[i] = lo[i];
        }
        if (i == cur.size()) return;
    }
}

}  // namespace detail

/**
 * Every m with m^exponent == n, sorted by compare_length_lex.
 *
 * A nonzero k-digit root gives a power of exponent*(k-1)+1 digits whose
 * first and last digits equal the root's, and root digit i never exceeds
 * digit exponent*i of n (that position of the power is at least m_i).
 */
inline std::vector<number> nth_roots(const number& n, unsigned exponent) {
    if (exponent == 0) throw error(errc::invalid_argument, "exponent must be at least 1");
    std::vector<number> roots;
    if (n.is_zero() || exponent == 1) {
        roots.push_back(n);
        return roots;
    }
    if ((n.length() - 1) % exponent != 0) return roots;
    const std::size_t k = (n.length() - 1) / exponent + 1;
    std::vector<digit_t> lo(k, 0), hi(k, 0);
    for (std::size_t i = 0; i < k; ++i) hi[i] = n[exponent * i];
    lo[0] = hi[0] = n[0];
    lo[k - 1] = hi[k - 1] = n.leading_digit();
    detail::for_each_bounded(lo, hi, [&](const std::vector<digit_t>& digits) {
        number m = number::from_normalized(n.base(), digits);
        if (pow(m, exponent) == n) roots.push_back(std::move(m));
    });
    detail::sort_unique(roots);
    return roots;
}

/// Every m with m*m == n; empty when n is not a lunar square (lunar squaring is not injective).
inline std::vector<number> square_roots(const number& n) { return nth_roots(n, 2); }

inline bool is_square(const number& n) { return !square_roots(n).empty(); }

inline bool is_nth_power(const number& n, unsigned exponent) { return !nth_roots(n, exponent).empty(); }

/// All distinct lunar squares with at most `max_digits` digits, zero included.
inline std::vector<number> enumerate_squares(unsigned base, std::size_t max_digits) {
    if (max_digits == 0) throw error(errc::invalid_argument, "max_digits must be at least 1");
    std::vector<number> squares;
    for_each_up_to_length(base, (max_digits + 1) / 2, [&](const number& m) { squares.push_back(mul(m, m)); });
    detail::sort_unique(squares);
    return squares;
}

/// All distinct n-th powers with at most `max_digits` digits (a d-digit root gives n(d-1)+1 digits).
inline std::vector<number> enumerate_powers(unsigned base, unsigned exponent, std::size_t max_digits) {
    if (exponent == 0) throw error(errc::invalid_argument, "exponent must be at least 1");
    if (max_digits == 0) throw error(errc::invalid_argument, "max_digits must be at least 1");
    const std::size_t root_digits = (max_digits - 1) / exponent + 1;
    std::vector<number> powers;
    for_each_up_to_length(base, root_digits, [&](const number& m) { powers.push_back(pow(m, exponent)); });
    detail::sort_unique(powers);
    return powers;
}

/**
 * Does n = a * b hold for some b of exactly `b_len` digits other than the identity?
 *
 * Each b digit is capped by the largest value v with min(a_i, v) <= n_{i+j}
 * for every i. The capped b* dominates every b with a*b == n, and a*b*
 * is still dominated by n, so a*b* == n decides existence. When b* is the
 * identity the smaller single digits are tried directly.
 */
inline bool has_cofactor(const number& n, const number& a, std::size_t b_len) {
    const unsigned base = n.base();
    std::vector<digit_t> cap(b_len, static_cast<digit_t>(base - 1));
    for (std::size_t j = 0; j < b_len; ++j) {
        for (std::size_t i = 0; i < a.length(); ++i) {
            if (a[i] > n[i + j]) cap[j] = std::min(cap[j], n[i + j]);
        }
    }
    if (cap.back() == 0) return false;
    number best = number::from_normalized(base, cap);
    if (!best.is_identity()) return mul(a, best) == n;
    for (digit_t c = base - 1; c-- > 1;) {
        if (mul(a, number::digit(base, c)) == n) return true;
    }
    return false;
}

/**
 * n is prime when it is not zero, not the identity B-1, and every
 * factorization n = a * b uses the identity as one factor.
 */
inline bool is_prime(const number& n) {
    if (n.is_zero() || n.is_identity()) return false;
    const unsigned base = n.base();
    const std::size_t len = n.length();
    // len(a*b) = len(a) + len(b) - 1; by symmetry take len(a) <= len(b).
    for (std::size_t a_len = 1; a_len <= (len + 1) / 2; ++a_len) {
        const std::size_t b_len = len + 1 - a_len;
        std::vector<digit_t> lo(a_len, 0), hi(a_len, 0);
        for (std::size_t i = 0; i < a_len; ++i) hi[i] = base - 1;
        lo[a_len - 1] = 1;
        bool composite = false;
        detail::for_each_bounded(lo, hi, [&](const std::vector<digit_t>& digits) {
            if (composite) return;
            number a = number::from_normalized(base, digits);
            if (a.is_identity()) return;
            if (has_cofactor(n, a, b_len)) composite = true;
        });
        if (composite) return false;
    }
    return true;
}

/// Lunar primes with at most `max_digits` digits, in length-lex order.
inline std::vector<number> enumerate_primes(unsigned base, std::size_t max_digits) {
    std::vector<number> primes;
    for_each_up_to_length(base, max_digits, [&](const number& n) {
        if (is_prime(n)) primes.push_back(n);
    });
    return primes;
}

/// a^2 + b^2 = c^2 with a, b, c pairwise distinct; a < b under compare_length_lex.
struct triple {
    number a;
    number b;
    number c;

    friend bool operator==(const triple&, const triple&) = default;
};

inline bool is_pythagorean(const number& a, const number& b, const number& c) {
    return a != b && b != c && a != c && add(mul(a, a), mul(b, b)) == mul(c, c);
}

inline std::vector<triple> find_triples(unsigned base, std::size_t max_leg_digits) {
    if (max_leg_digits == 0) throw error(errc::invalid_argument, "max_leg_digits must be at least 1");
    std::vector<number> legs;
    for_each_up_to_length(base, max_leg_digits, [&](const number& n) { legs.push_back(n); });
    std::vector<number> squares;
    squares.reserve(legs.size());
    for (const auto& leg : legs) squares.push_back(mul(leg, leg));

    std::vector<triple> out;
    for (std::size_t i = 0; i < legs.size(); ++i) {
        for (std::size_t j = i + 1; j < legs.size(); ++j) {
            for (auto& c : square_roots(add(squares[i], squares[j]))) {
                if (c != legs[i] && c != legs[j]) out.push_back({legs[i], legs[j], std::move(c)});
            }
        }
    }
    return out;
}

}  // namespace lunar
