#pragma once

/**
 * @file number.hpp
 * @brief Lunar (dismal) arithmetic on natural numbers in an arbitrary base.
 *
 * Digit addition is max, digit multiplication is min, and there are no
 * carries. A number in base B is the coefficient vector of a polynomial
 * over {0, ..., B-1} with those two operations, so multiplication is a
 * max-min convolution of digit vectors.
 *
 * Digits are stored least-significant first with no high zeros; zero is
 * the empty vector. The multiplicative identity is the single digit B-1.
 */

#include <algorithm>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <type_traits>
#include <utility>
#include <vector>

namespace lunar {

using digit_t = std::uint32_t;

enum class errc {
    invalid_digit,
    empty_input,
    base_mismatch,
    invalid_base,
    not_nondecreasing,
    dominance_violated,
    invalid_argument,
    malformed_document,
};

inline const char* to_string(errc code) {
    switch (code) {
    case errc::invalid_digit: return "InvalidDigit";
    case errc::empty_input: return "EmptyInput";
    case errc::base_mismatch: return "BaseMismatch";
    case errc::invalid_base: return "InvalidBase";
    case errc::not_nondecreasing: return "NotNondecreasing";
    case errc::dominance_violated: return "DominanceViolated";
    case errc::invalid_argument: return "InvalidArgument";
    case errc::malformed_document: return "MalformedDocument";
    }
    return "Unknown";
}

class error : public std::runtime_error {
public:
    error(errc code, const std::string& what)
        : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

    errc code() const noexcept { return code_; }

private:
    errc code_;
};

class number {
public:
    /// Zero in base 10.
    number() = default;

    /// Zero in `base`.
    explicit number(unsigned base) : base_(base) { check_base(base); }

    /// From least-significant-first digits; high zeros are dropped.
    number(unsigned base, std::vector<digit_t> digits) : base_(base), digits_(std::move(digits)) {
        check_base(base);
        for (digit_t d : digits_) {
            if (d >= base_) {
                throw error(errc::invalid_digit,
                            "digit " + std::to_string(d) + " out of range for base " + std::to_string(base_));
            }
        }
        normalize();
    }

    static number digit(unsigned base, digit_t d) { return number(base, std::vector<digit_t>{d}); }

    /// The multiplicative identity B-1.
    static number identity(unsigned base) { return digit(base, static_cast<digit_t>(base - 1)); }

    unsigned base() const noexcept { return base_; }
    std::span<const digit_t> digits() const noexcept { return digits_; }
    std::size_t length() const noexcept { return digits_.size(); }
    bool is_zero() const noexcept { return digits_.empty(); }
    bool is_identity() const noexcept { return digits_.size() == 1 && digits_[0] == base_ - 1; }

    /// Digit at position i counted from the right starting at 0; absent digits read as 0.
    digit_t operator[](std::size_t i) const noexcept { return i < digits_.size() ? digits_[i] : 0; }

    digit_t leading_digit() const noexcept { return digits_.empty() ? 0 : digits_.back(); }

    /// Append `width` zero digits on the right (positional shift).
    number shifted(std::size_t width) const {
        if (is_zero()) return *this;
        std::vector<digit_t> out(width, 0);
        out.insert(out.end(), digits_.begin(), digits_.end());
        return from_normalized(base_, std::move(out));
    }

    friend bool operator==(const number&, const number&) = default;

    /// Internal constructor for digit vectors already known to be valid.
    static number from_normalized(unsigned base, std::vector<digit_t> digits) {
        number n;
        n.base_ = base;
        n.digits_ = std::move(digits);
        n.normalize();
        return n;
    }

private:
    static void check_base(unsigned base) {
        if (base < 2) throw error(errc::invalid_base, "base must be at least 2, got " + std::to_string(base));
    }

    void normalize() {
        while (!digits_.empty() && digits_.back() == 0) digits_.pop_back();
    }

    unsigned base_ = 10;
    std::vector<digit_t> digits_;
};

namespace detail {

inline void require_same_base(const number& a, const number& b) {
    if (a.base() != b.base()) {
        throw error(errc::base_mismatch,
                    "base " + std::to_string(a.base()) + " vs base " + std::to_string(b.base()));
    }
}

inline int digit_value(char c) {
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'a' && c <= 'z') return c - 'a' + 10;
    if (c >= 'A' && c <= 'Z') return c - 'A' + 10;
    return -1;
}

}  // namespace detail

inline constexpr unsigned max_text_base = 36;

/// Parse a most-significant-first digit string (0-9 then a-z, case-insensitive).
inline number parse(std::string_view text, unsigned base) {
    if (base < 2 || base > max_text_base) {
        throw error(errc::invalid_base, "text bases are 2..36, got " + std::to_string(base));
    }
    if (text.empty()) throw error(errc::empty_input, "empty digit string");
    std::vector<digit_t> digits;
    digits.reserve(text.size());
    for (auto it = text.rbegin(); it != text.rend(); ++it) {
        int v = detail::digit_value(*it);
        if (v < 0 || static_cast<unsigned>(v) >= base) {
            throw error(errc::invalid_digit,
                        "'" + std::string(1, *it) + "' is not a base-" + std::to_string(base) + " digit");
        }
        digits.push_back(static_cast<digit_t>(v));
    }
    return number::from_normalized(base, std::move(digits));
}

inline std::string format(const number& n) {
    if (n.is_zero()) return "0";
    if (n.base() > max_text_base) {
        throw error(errc::invalid_base, "cannot format base " + std::to_string(n.base()) + " as text");
    }
    static constexpr char symbols[] = "0123456789abcdefghijklmnopqrstuvwxyz";
    std::string out;
    out.reserve(n.length());
    auto d = n.digits();
    for (auto it = d.rbegin(); it != d.rend(); ++it) out.push_back(symbols[*it]);
    return out;
}

inline number add(const number& a, const number& b) {
    detail::require_same_base(a, b);
    auto da = a.digits();
    auto db = b.digits();
    std::vector<digit_t> out(std::max(da.size(), db.size()), 0);
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = std::max(a[i], b[i]);
    return number::from_normalized(a.base(), std::move(out));
}

/// Max-min convolution: digit k is the max over i+j=k of min(a_i, b_j).
inline number mul(const number& a, const number& b) {
    detail::require_same_base(a, b);
    if (a.is_zero() || b.is_zero()) return number(a.base());
    auto da = a.digits();
    auto db = b.digits();
    std::vector<digit_t> out(da.size() + db.size() - 1, 0);
    for (std::size_t i = 0; i < da.size(); ++i) {
        if (da[i] == 0) continue;
        for (std::size_t j = 0; j < db.size(); ++j) {
            digit_t m = std::min(da[i], db[j]);
            if (m > out[i + j]) out[i + j] = m;
        }
    }
    return number::from_normalized(a.base(), std::move(out));
}

inline number operator+(const number& a, const number& b) { return add(a, b); }
inline number operator*(const number& a, const number& b) { return mul(a, b); }

/// a^0 is the identity B-1.
inline number pow(const number& a, unsigned n) {
    number result = number::identity(a.base());
    number square = a;
    while (n != 0) {
        if (n & 1u) result = mul(result, square);
        n >>= 1;
        if (n != 0) square = mul(square, square);
    }
    return result;
}

/// True when the digits never decrease reading most- to least-significant.
inline bool is_nondecreasing(const number& a) {
    auto d = a.digits();
    for (std::size_t i = 0; i + 1 < d.size(); ++i) {
        if (d[i + 1] > d[i]) return false;
    }
    return true;
}

/**
 * Closed-form power of a number with non-decreasing digits: every digit
 * except the last is repeated n times, e.g. 1134448^3 = 1111113334444444448.
 */
inline number pow_nondecreasing(const number& a, unsigned n) {
    if (n == 0) throw error(errc::invalid_argument, "exponent must be at least 1");
    if (!is_nondecreasing(a)) {
        throw error(errc::not_nondecreasing, "digits of the base decrease somewhere");
    }
    auto d = a.digits();
    if (d.empty()) return a;
    std::vector<digit_t> out;
    out.reserve((d.size() - 1) * n + 1);
    out.push_back(d[0]);
    for (std::size_t i = 1; i < d.size(); ++i) out.insert(out.end(), n, d[i]);
    return number::from_normalized(a.base(), std::move(out));
}

/// m dominates n when every digit of m is >= the matching digit of n; same as m + n == m.
inline bool dominates(const number& m, const number& n) {
    detail::require_same_base(m, n);
    if (n.length() > m.length()) return false;
    for (std::size_t i = 0; i < n.length(); ++i) {
        if (n[i] > m[i]) return false;
    }
    return true;
}

/**
 * The canonical total order wherever "smallest" is needed: shorter digit
 * strings first, then lexicographic from the most-significant digit.
 * Lunar integers have no natural order compatible with their arithmetic,
 * so this one is a convention.
 */
inline std::strong_ordering compare_length_lex(const number& a, const number& b) {
    detail::require_same_base(a, b);
    if (auto c = a.length() <=> b.length(); c != 0) return c;
    for (std::size_t i = a.length(); i-- > 0;) {
        if (auto c = a[i] <=> b[i]; c != 0) return c;
    }
    return std::strong_ordering::equal;
}

struct length_lex_less {
    bool operator()(const number& a, const number& b) const { return compare_length_lex(a, b) < 0; }
};

/// Successor under compare_length_lex (plain base-B increment).
inline number next_length_lex(const number& n) {
    std::vector<digit_t> d(n.digits().begin(), n.digits().end());
    std::size_t i = 0;
    for (; i < d.size(); ++i) {
        if (d[i] + 1 < n.base()) {
            ++d[i];
            return number::from_normalized(n.base(), std::move(d));
        }
        d[i] = 0;
    }
    d.push_back(1);
    return number::from_normalized(n.base(), std::move(d));
}

/// Visit every number with at most `max_digits` digits in length-lex order, zero first.
template <class Visitor>
void for_each_up_to_length(unsigned base, std::size_t max_digits, Visitor&& visit) {
    number n(base);
    while (n.length() <= max_digits) {
        if constexpr (std::is_same_v<std::invoke_result_t<Visitor&, const number&>, bool>) {
            if (!visit(std::as_const(n))) return;
        } else {
            visit(std::as_const(n));
        }
        n = next_length_lex(n);
    }
}

}  // namespace lunar

template <>
struct std::hash<lunar::number> {
    std::size_t operator()(const lunar::number& n) const noexcept {
        std::size_t h = std::hash<unsigned>{}(n.base());
        for (auto d : n.digits()) h = h * 1000003u ^ std::hash<lunar::digit_t>{}(d);
        return h;
    }
};
