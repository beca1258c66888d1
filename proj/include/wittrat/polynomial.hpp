#pragma once

#include <algorithm>
#include <cstddef>
#include <span>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "wittrat/integer.hpp"
#include "wittrat/ring.hpp"

namespace wittrat {

/// Dense univariate polynomial in t, coefficients stored in ascending order.
/// Trailing zeros are always trimmed, so the zero polynomial stores nothing
/// and reports degree -1.
template <CoefficientRing R>
class Polynomial {
public:
    using ring_type = R;
    using value_type = typename R::value_type;

    explicit Polynomial(R ring = R{}) : ring_(std::move(ring)) {}

    Polynomial(R ring, std::vector<value_type> coeffs) : ring_(std::move(ring)), c_(std::move(coeffs)) { trim(); }

    static Polynomial constant(const R& ring, value_type v) { return Polynomial(ring, {std::move(v)}); }
    static Polynomial one(const R& ring) { return constant(ring, ring.one()); }

    static Polynomial monomial(const R& ring, value_type v, std::size_t power) {
        std::vector<value_type> c(power + 1, ring.zero());
        c[power] = std::move(v);
        return Polynomial(ring, std::move(c));
    }

    /// Build from small integers, e.g. from_ints(Z, {1, -5, 6}) = 1 - 5t + 6t^2.
    static Polynomial from_ints(const R& ring, std::initializer_list<std::int64_t> coeffs) {
        std::vector<value_type> c;
        c.reserve(coeffs.size());
        for (auto v : coeffs) c.push_back(ring.from_int(v));
        return Polynomial(ring, std::move(c));
    }

    const R& ring() const noexcept { return ring_; }
    int degree() const noexcept { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const noexcept { return c_.empty(); }
    std::span<const value_type> coeffs() const noexcept { return c_; }
    std::size_t size() const noexcept { return c_.size(); }

    value_type coeff(std::size_t i) const { return i < c_.size() ? c_[i] : ring_.zero(); }
    value_type lead() const { return c_.empty() ? ring_.zero() : c_.back(); }
    value_type constant_term() const { return coeff(0); }

    value_type eval(const value_type& x) const {
        value_type acc = ring_.zero();
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
        return acc;
    }

    friend Polynomial operator+(const Polynomial& a, const Polynomial& b) {
        a.check_ring(b);
        std::vector<value_type> c(std::max(a.c_.size(), b.c_.size()), a.ring_.zero());
        for (std::size_t i = 0; i < a.c_.size(); ++i) c[i] = a.c_[i];
        for (std::size_t i = 0; i < b.c_.size(); ++i) c[i] = c[i] + b.c_[i];
        return Polynomial(a.ring_, std::move(c));
    }

    friend Polynomial operator-(const Polynomial& a, const Polynomial& b) { return a + (-b); }

    Polynomial operator-() const {
        std::vector<value_type> c;
        c.reserve(c_.size());
        for (const auto& v : c_) c.push_back(ring_.zero() - v);
        return Polynomial(ring_, std::move(c));
    }

    friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
        a.check_ring(b);
        if (a.is_zero() || b.is_zero()) return Polynomial(a.ring_);
        std::vector<value_type> c(a.c_.size() + b.c_.size() - 1, a.ring_.zero());
        for (std::size_t i = 0; i < a.c_.size(); ++i) {
            if (a.c_[i] == a.ring_.zero()) continue;
            for (std::size_t j = 0; j < b.c_.size(); ++j) c[i + j] = c[i + j] + a.c_[i] * b.c_[j];
        }
        return Polynomial(a.ring_, std::move(c));
    }

    friend Polynomial operator*(const value_type& s, const Polynomial& a) {
        std::vector<value_type> c;
        c.reserve(a.c_.size());
        for (const auto& v : a.c_) c.push_back(s * v);
        return Polynomial(a.ring_, std::move(c));
    }

    Polynomial& operator+=(const Polynomial& b) { return *this = *this + b; }
    Polynomial& operator-=(const Polynomial& b) { return *this = *this - b; }
    Polynomial& operator*=(const Polynomial& b) { return *this = *this * b; }

    friend bool operator==(const Polynomial& a, const Polynomial& b) { return a.ring_ == b.ring_ && a.c_ == b.c_; }

    Polynomial pow(unsigned e) const {
        Polynomial result = one(ring_);
        Polynomial base = *this;
        while (e > 0) {
            if (e & 1U) result *= base;
            e >>= 1U;
            if (e > 0) base *= base;
        }
        return result;
    }

    /// f(t) -> f(t^nu).
    Polynomial substitute_power(unsigned nu) const {
        if (c_.empty()) return *this;
        std::vector<value_type> c((c_.size() - 1) * nu + 1, ring_.zero());
        for (std::size_t i = 0; i < c_.size(); ++i) c[i * nu] = c_[i];
        return Polynomial(ring_, std::move(c));
    }

    /// t^n f(1/t); requires n >= degree.
    Polynomial reversed(std::size_t n) const {
        std::vector<value_type> c(n + 1, ring_.zero());
        for (std::size_t i = 0; i < c_.size(); ++i) c[n - i] = c_[i];
        return Polynomial(ring_, std::move(c));
    }

    Polynomial derivative() const {
        std::vector<value_type> c;
        for (std::size_t i = 1; i < c_.size(); ++i) c.push_back(ring_.from_int(static_cast<std::int64_t>(i)) * c_[i]);
        return Polynomial(ring_, std::move(c));
    }

    /// f mod t^n.
    Polynomial truncated(std::size_t n) const {
        std::vector<value_type> c(c_.begin(), c_.begin() + static_cast<std::ptrdiff_t>(std::min(n, c_.size())));
        return Polynomial(ring_, std::move(c));
    }

private:
    void trim() {
        while (!c_.empty() && c_.back() == ring_.zero()) c_.pop_back();
    }

    void check_ring(const Polynomial& other) const {
        if (!(ring_ == other.ring_)) throw math_error("coefficient rings differ: " + ring_.name() + " vs " + other.ring_.name());
    }

    R ring_;
    std::vector<value_type> c_;
};

template <CoefficientRing Target, CoefficientRing Source, class Fn>
Polynomial<Target> map_coefficients(const Polynomial<Source>& p, const Target& target, Fn&& fn) {
    std::vector<typename Target::value_type> c;
    c.reserve(p.size());
    for (const auto& v : p.coeffs()) c.push_back(fn(v));
    return Polynomial<Target>(target, std::move(c));
}

// ---------------------------------------------------------------------------
// Division.

template <CoefficientField R>
std::pair<Polynomial<R>, Polynomial<R>> divmod(const Polynomial<R>& a, const Polynomial<R>& b) {
    if (b.is_zero()) throw math_error("polynomial division by zero");
    const R& ring = a.ring();
    if (a.degree() < b.degree()) return {Polynomial<R>(ring), a};
    std::vector<typename R::value_type> rem(a.coeffs().begin(), a.coeffs().end());
    std::vector<typename R::value_type> quot(static_cast<std::size_t>(a.degree() - b.degree() + 1), ring.zero());
    const auto inv_lead = ring.one() / b.lead();
    const auto db = static_cast<std::size_t>(b.degree());
    for (std::size_t k = quot.size(); k-- > 0;) {
        const auto q = rem[k + db] * inv_lead;
        quot[k] = q;
        if (q == ring.zero()) continue;
        for (std::size_t j = 0; j <= db; ++j) rem[k + j] = rem[k + j] - q * b.coeffs()[j];
    }
    rem.resize(db);
    return {Polynomial<R>(ring, std::move(quot)), Polynomial<R>(ring, std::move(rem))};
}

/// Exact quotient a / b; throws "inexact division" when b does not divide a.
template <CoefficientRing R>
Polynomial<R> divide_exact(const Polynomial<R>& a, const Polynomial<R>& b) {
    if constexpr (R::is_field) {
        auto [q, r] = divmod(a, b);
        if (!r.is_zero()) throw math_error("inexact division");
        return q;
    } else {
        if (b.is_zero()) throw math_error("polynomial division by zero");
        const R& ring = a.ring();
        if (a.is_zero()) return a;
        if (a.degree() < b.degree()) throw math_error("inexact division");
        std::vector<typename R::value_type> rem(a.coeffs().begin(), a.coeffs().end());
        std::vector<typename R::value_type> quot(static_cast<std::size_t>(a.degree() - b.degree() + 1), ring.zero());
        const auto db = static_cast<std::size_t>(b.degree());
        const auto lead = b.lead();
        for (std::size_t k = quot.size(); k-- > 0;) {
            const auto& top = rem[k + db];
            if (top % lead != 0) throw math_error("inexact division");
            const auto q = top / lead;
            quot[k] = q;
            for (std::size_t j = 0; j <= db; ++j) rem[k + j] -= q * b.coeffs()[j];
        }
        for (const auto& v : rem)
            if (v != 0) throw math_error("inexact division");
        return Polynomial<R>(ring, std::move(quot));
    }
}

// ---------------------------------------------------------------------------
// Content, primitive part, gcd.

inline Integer content(const Polynomial<Integers>& p) {
    Integer g = 0;
    for (const auto& v : p.coeffs()) g = boost::multiprecision::gcd(g, v);
    return g;
}

/// Primitive part with positive leading coefficient.
inline Polynomial<Integers> primitive_part(const Polynomial<Integers>& p) {
    if (p.is_zero()) return p;
    Integer g = content(p);
    if (p.lead() < 0) g = -g;
    std::vector<Integer> c;
    for (const auto& v : p.coeffs()) c.push_back(v / g);
    return Polynomial<Integers>(p.ring(), std::move(c));
}

template <CoefficientField R>
Polynomial<R> monic(const Polynomial<R>& p) {
    if (p.is_zero()) return p;
    return (p.ring().one() / p.lead()) * p;
}

namespace detail {

/// Euclid over a field; returns a monic gcd.
template <CoefficientField R>
Polynomial<R> euclid_gcd(Polynomial<R> a, Polynomial<R> b) {
    while (!b.is_zero()) {
        auto r = divmod(a, b).second;
        a = std::move(b);
        b = std::move(r);
    }
    return monic(a);
}

/// Degree of gcd(a mod p, b mod p) for a prime p not dividing either lead.
inline int modular_gcd_degree(const Polynomial<Integers>& a, const Polynomial<Integers>& b, std::uint64_t p) {
    const PrimeField fp(p);
    auto lift = [&](const Integer& v) { return fp.from_integer(v); };
    return euclid_gcd(map_coefficients(a, fp, lift), map_coefficients(b, fp, lift)).degree();
}

inline Polynomial<Integers> pseudo_remainder(Polynomial<Integers> a, const Polynomial<Integers>& b) {
    const auto lb = b.lead();
    while (!a.is_zero() && a.degree() >= b.degree()) {
        const auto shift = static_cast<std::size_t>(a.degree() - b.degree());
        a = Polynomial<Integers>::constant(a.ring(), lb) * a -
            Polynomial<Integers>::monomial(a.ring(), a.lead(), shift) * b;
    }
    return a;
}

}  // namespace detail

/// gcd over Z: primitive with positive leading coefficient, times the gcd of contents.
inline Polynomial<Integers> gcd(const Polynomial<Integers>& a, const Polynomial<Integers>& b) {
    const Integers z;
    if (a.is_zero()) return b.is_zero() ? b : (b.lead() < 0 ? -b : b);
    if (b.is_zero()) return a.lead() < 0 ? -a : a;
    const Integer cont = boost::multiprecision::gcd(content(a), content(b));
    auto pa = primitive_part(a);
    auto pb = primitive_part(b);
    if (pa.degree() == 0 || pb.degree() == 0) return Polynomial<Integers>::constant(z, cont);
    // A large prime not dividing both leading coefficients bounds the gcd degree from above.
    constexpr std::uint64_t probe = 2305843009213693951ULL;  // 2^61 - 1
    if (num::reduce(pa.lead(), probe) != 0 && num::reduce(pb.lead(), probe) != 0 &&
        detail::modular_gcd_degree(pa, pb, probe) == 0)
        return Polynomial<Integers>::constant(z, cont);
    if (pa.degree() < pb.degree()) std::swap(pa, pb);
    while (!pb.is_zero()) {
        auto r = detail::pseudo_remainder(pa, pb);
        pa = std::move(pb);
        pb = primitive_part(r);
    }
    return Polynomial<Integers>::constant(z, cont) * primitive_part(pa);
}

/// Clears denominators: returns the primitive integer polynomial proportional to p.
inline Polynomial<Integers> integer_primitive(const Polynomial<Rationals>& p) {
    Integer l = 1;
    for (const auto& v : p.coeffs()) l = boost::multiprecision::lcm(l, denominator(v));
    std::vector<Integer> c;
    for (const auto& v : p.coeffs()) c.push_back(numerator(v) * (l / denominator(v)));
    return primitive_part(Polynomial<Integers>(Integers{}, std::move(c)));
}

inline Polynomial<Rationals> to_rationals(const Polynomial<Integers>& p) {
    return map_coefficients(p, Rationals{}, [](const Integer& v) { return Rational(v); });
}

/// Monic gcd over a field. Over Q the computation runs on primitive integer
/// polynomials to avoid coefficient blow-up.
template <CoefficientField R>
Polynomial<R> gcd(const Polynomial<R>& a, const Polynomial<R>& b) {
    if constexpr (std::is_same_v<R, Rationals>) {
        if (a.is_zero()) return monic(b);
        if (b.is_zero()) return monic(a);
        return monic(to_rationals(gcd(integer_primitive(a), integer_primitive(b))));
    } else {
        return detail::euclid_gcd(a, b);
    }
}

// ---------------------------------------------------------------------------
// Printing: ascending powers, explicit signs, variable t.

namespace detail {

inline bool is_negative(const Integer& v) { return v < 0; }
inline bool is_negative(const Rational& v) { return v < 0; }
inline bool is_negative(const PrimeFieldElem&) { return false; }
inline Integer abs_value(const Integer& v) { return v < 0 ? Integer(-v) : v; }
inline Rational abs_value(const Rational& v) { return v < 0 ? Rational(-v) : v; }
inline PrimeFieldElem abs_value(const PrimeFieldElem& v) { return v; }
inline bool is_fraction(const Integer&) { return false; }
inline bool is_fraction(const Rational& v) { return denominator(v) != 1; }
inline bool is_fraction(const PrimeFieldElem&) { return false; }

}  // namespace detail

template <CoefficientRing R>
std::string to_string(const Polynomial<R>& p, const std::string& var = "t") {
    if (p.is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    const auto one = p.ring().one();
    for (std::size_t i = 0; i < p.size(); ++i) {
        const auto& v = p.coeffs()[i];
        if (v == p.ring().zero()) continue;
        const bool neg = detail::is_negative(v);
        if (first) {
            if (neg) os << "-";
        } else {
            os << (neg ? " - " : " + ");
        }
        first = false;
        const auto mag = detail::abs_value(v);
        if (i == 0) {
            os << to_string(mag);
            continue;
        }
        if (!(mag == one)) {
            if (detail::is_fraction(mag))
                os << "(" << to_string(mag) << ")";
            else
                os << to_string(mag);
        }
        os << var;
        if (i > 1) os << "^" << i;
    }
    return os.str();
}

}  // namespace wittrat
