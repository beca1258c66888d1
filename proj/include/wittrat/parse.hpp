#pragma once

// Recursive-descent parser for rational expressions in t:
//
//   expr    := term (('+' | '-') term)*
//   term    := unary (('*' | '/') unary | <juxtaposed primary>)*
//   unary   := ('-' | '+') unary | power
//   power   := primary ('^' ['-'] integer)?
//   primary := integer | 't' | '(' expr ')'
//
// Juxtaposition multiplies, so "2t" and "3(1-t)" are accepted.

#include <cctype>
#include <string>
#include <string_view>

#include "wittrat/error.hpp"
#include "wittrat/polynomial.hpp"
#include "wittrat/witt.hpp"

namespace wittrat {

/// Unreduced quotient of two rational polynomials.
struct RationalFunction {
    Polynomial<Rationals> num{Rationals{}};
    Polynomial<Rationals> den = Polynomial<Rationals>::one(Rationals{});

    friend RationalFunction operator+(const RationalFunction& a, const RationalFunction& b) {
        return {a.num * b.den + b.num * a.den, a.den * b.den};
    }
    friend RationalFunction operator-(const RationalFunction& a, const RationalFunction& b) {
        return {a.num * b.den - b.num * a.den, a.den * b.den};
    }
    friend RationalFunction operator*(const RationalFunction& a, const RationalFunction& b) {
        return {a.num * b.num, a.den * b.den};
    }
    friend RationalFunction operator/(const RationalFunction& a, const RationalFunction& b) {
        if (b.num.is_zero()) throw math_error("division by zero in expression");
        return {a.num * b.den, a.den * b.num};
    }
};

namespace detail {

class ExprParser {
public:
    explicit ExprParser(std::string_view text) : s_(text) {}

    RationalFunction parse() {
        auto r = expr();
        skip_ws();
        if (pos_ < s_.size()) fail("operator or end of input", std::string("unexpected '") + s_[pos_] + "'");
        return r;
    }

private:
    RationalFunction expr() {
        auto acc = term();
        for (;;) {
            skip_ws();
            if (accept('+'))
                acc = acc + term();
            else if (accept('-'))
                acc = acc - term();
            else
                return acc;
        }
    }

    RationalFunction term() {
        auto acc = unary();
        for (;;) {
            skip_ws();
            if (accept('*')) {
                acc = acc * unary();
            } else if (accept('/')) {
                const auto at = pos_;
                auto rhs = unary();
                if (rhs.num.is_zero()) fail_at(at, "nonzero divisor", "division by zero");
                acc = acc / rhs;
            } else if (pos_ < s_.size() && starts_primary(s_[pos_])) {
                acc = acc * power();
            } else {
                return acc;
            }
        }
    }

    RationalFunction unary() {
        skip_ws();
        if (accept('-')) {
            auto v = unary();
            return {-v.num, v.den};
        }
        if (accept('+')) return unary();
        return power();
    }

    RationalFunction power() {
        auto base = primary();
        skip_ws();
        if (!accept('^')) return base;
        skip_ws();
        const bool negative = accept('-');
        skip_ws();
        if (pos_ >= s_.size() || !std::isdigit(static_cast<unsigned char>(s_[pos_])))
            fail("integer exponent", "missing exponent");
        const auto e = integer_literal();
        if (e > 4096) fail("exponent <= 4096", "exponent too large");
        const auto k = static_cast<unsigned>(e);
        RationalFunction r{base.num.pow(k), base.den.pow(k)};
        if (negative) {
            if (r.num.is_zero()) fail("nonzero base", "negative power of zero");
            std::swap(r.num, r.den);
        }
        return r;
    }

    RationalFunction primary() {
        skip_ws();
        const Rationals q;
        if (pos_ >= s_.size()) fail("number, 't' or '('", "unexpected end of input");
        const char c = s_[pos_];
        if (std::isdigit(static_cast<unsigned char>(c))) {
            const auto start = pos_;
            while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
            Integer v(std::string(s_.substr(start, pos_ - start)));
            return {Polynomial<Rationals>::constant(q, Rational(v)), Polynomial<Rationals>::one(q)};
        }
        if (c == 't') {
            ++pos_;
            return {Polynomial<Rationals>::monomial(q, 1, 1), Polynomial<Rationals>::one(q)};
        }
        if (c == '(') {
            ++pos_;
            auto inner = expr();
            skip_ws();
            if (!accept(')')) fail("')'", "unbalanced parenthesis");
            return inner;
        }
        fail("number, 't' or '('", std::string("unexpected '") + c + "'");
    }

    std::uint64_t integer_literal() {
        std::uint64_t v = 0;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
            v = v * 10 + static_cast<std::uint64_t>(s_[pos_] - '0');
            if (v > 1'000'000) fail("small exponent", "exponent too large");
            ++pos_;
        }
        return v;
    }

    static bool starts_primary(char c) { return std::isdigit(static_cast<unsigned char>(c)) || c == 't' || c == '('; }

    void skip_ws() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }

    bool accept(char c) {
        if (pos_ < s_.size() && s_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    [[noreturn]] void fail(const std::string& expected, const std::string& detail) const { fail_at(pos_, expected, detail); }
    [[noreturn]] static void fail_at(std::size_t at, const std::string& expected, const std::string& detail) {
        throw parse_error(at, expected, detail);
    }

    std::string_view s_;
    std::size_t pos_ = 0;
};

}  // namespace detail

inline RationalFunction parse_rational_function(std::string_view text) { return detail::ExprParser(text).parse(); }

/// Parses an expression and reduces it to a canonical Witt vector over Q.
inline WittVector<Rationals> parse_witt(std::string_view text) {
    const auto rf = parse_rational_function(text);
    return WittVector<Rationals>(rf.num, rf.den);
}

/// Parses into a chosen coefficient ring (coefficients mapped from Q).
template <CoefficientRing R>
WittVector<R> parse_witt(std::string_view text, const R& ring) {
    const auto f = parse_witt(text);
    return change_ring(f, ring, [&](const Rational& v) { return ring.from_rational(v); });
}

/// True when every coefficient of the canonical form is an integer.
inline bool is_integral(const WittVector<Rationals>& f) {
    for (const auto* p : {&f.num(), &f.den()})
        for (const auto& v : p->coeffs())
            if (denominator(v) != 1) return false;
    return true;
}

}  // namespace wittrat
