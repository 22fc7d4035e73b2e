#pragma once

/**
 * @file expr.hpp
 * @brief Evaluates lunar arithmetic expressions such as "15+83" or "(12+3)*7^2".
 *
 *     expr    := term ('+' term)*
 *     term    := power ('*' power)*
 *     power   := primary ('^' decimal)*      left-associative
 *     primary := digits | '(' expr ')'
 *
 * Whitespace is ignored everywhere. Literals are digit strings in the
 * expression's base; exponents are always decimal.
 */

#include <cctype>
#include <stdexcept>
#include <string>
#include <string_view>

#include "lunar/number.hpp"

namespace lunar {

class syntax_error : public std::runtime_error {
public:
    syntax_error(const std::string& what, std::size_t pos)
        : std::runtime_error(what + " at position " + std::to_string(pos)), pos_(pos) {}

    std::size_t position() const noexcept { return pos_; }

private:
    std::size_t pos_;
};

namespace detail {

class expr_parser {
public:
    expr_parser(std::string_view text, unsigned base) : base_(base) {
        for (char c : text) {
            if (!std::isspace(static_cast<unsigned char>(c))) src_.push_back(c);
        }
    }

    number run() {
        if (src_.empty()) throw syntax_error("empty expression", 0);
        number v = expr();
        if (pos_ != src_.size()) throw syntax_error(std::string("unexpected '") + src_[pos_] + "'", pos_);
        return v;
    }

private:
    bool eat(char c) {
        if (pos_ < src_.size() && src_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    number expr() {
        number v = term();
        while (eat('+')) v = add(v, term());
        return v;
    }

    number term() {
        number v = power();
        while (eat('*')) v = mul(v, power());
        return v;
    }

    number power() {
        number v = primary();
        while (eat('^')) {
            std::size_t start = pos_;
            unsigned long long e = 0;
            while (pos_ < src_.size() && src_[pos_] >= '0' && src_[pos_] <= '9') {
                e = e * 10 + static_cast<unsigned>(src_[pos_] - '0');
                if (e > 1'000'000) throw syntax_error("exponent too large", start);
                ++pos_;
            }
            if (pos_ == start) throw syntax_error("expected a decimal exponent", start);
            v = pow(v, static_cast<unsigned>(e));
        }
        return v;
    }

    number primary() {
        if (eat('(')) {
            number v = expr();
            if (!eat(')')) throw syntax_error("expected ')'", pos_);
            return v;
        }
        std::size_t start = pos_;
        while (pos_ < src_.size() && std::isalnum(static_cast<unsigned char>(src_[pos_]))) ++pos_;
        if (pos_ == start) {
            if (pos_ == src_.size()) throw syntax_error("unexpected end of expression", pos_);
            throw syntax_error(std::string("unexpected '") + src_[pos_] + "'", pos_);
        }
        return parse(std::string_view(src_).substr(start, pos_ - start), base_);
    }

    std::string src_;
    std::size_t pos_ = 0;
    unsigned base_;
};

}  // namespace detail

/// Throws syntax_error for malformed input and lunar::error for bad digits.
inline number evaluate(std::string_view expression, unsigned base) {
    return detail::expr_parser(expression, base).run();
}

}  // namespace lunar
