#pragma once

// Rational Witt vectors W_rat(R): rational functions f = P/Q in 1 + tR[[t]].
// Witt addition is multiplication of rational functions; Witt multiplication
// is induced by tensor products of matrix representatives
// f = det(1 - tA) / det(1 - tB).

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "wittrat/matrix.hpp"
#include "wittrat/polynomial.hpp"
#include "wittrat/ring.hpp"
#include "wittrat/series.hpp"

namespace wittrat {

struct WittConfig {
    /// Largest matrix dimension an operation may build.
    std::size_t matrix_cap = 64;
};

template <CoefficientRing R>
class WittVector;

namespace detail {

template <CoefficientField R>
std::pair<Polynomial<R>, Polynomial<R>> reduce_fraction(const Polynomial<R>& num, const Polynomial<R>& den) {
    if (den.is_zero()) throw math_error("zero denominator");
    if (num.is_zero()) throw math_error("not a Witt vector: f(0) ≠ 1");
    const auto g = gcd(num, den);
    auto n = divide_exact(num, g);
    auto d = divide_exact(den, g);
    const auto n0 = n.constant_term();
    const auto d0 = d.constant_term();
    if (d0 == den.ring().zero() || !(n0 == d0)) throw math_error("not a Witt vector: f(0) ≠ 1");
    const auto s = den.ring().one() / d0;
    return {s * n, s * d};
}

}  // namespace detail

/// Element of W_rat(R) in canonical form: num and den coprime, num(0) = den(0) = 1.
template <CoefficientRing R>
class WittVector {
public:
    using ring_type = R;
    using value_type = typename R::value_type;

    /// Reduced to canonical form; throws when f(0) != 1 or (over Z) when the
    /// reduced form is not integral.
    WittVector(const Polynomial<R>& num, const Polynomial<R>& den) {
        if constexpr (R::is_field) {
            std::tie(num_, den_) = detail::reduce_fraction(num, den);
        } else {
            const Rationals q;
            auto lift = [](const Integer& v) { return Rational(v); };
            auto [n, d] = detail::reduce_fraction(map_coefficients(num, q, lift), map_coefficients(den, q, lift));
            const R& ring = num.ring();
            auto drop = [&](const Rational& v) {
                if (denominator(v) != 1) throw math_error("not defined over Z");
                return ring.from_rational(v);
            };
            num_ = map_coefficients(n, ring, drop);
            den_ = map_coefficients(d, ring, drop);
        }
    }

    explicit WittVector(const Polynomial<R>& num) : WittVector(num, Polynomial<R>::one(num.ring())) {}

    const Polynomial<R>& num() const noexcept { return num_; }
    const Polynomial<R>& den() const noexcept { return den_; }
    const R& ring() const noexcept { return num_.ring(); }

    friend bool operator==(const WittVector& a, const WittVector& b) { return a.num_ == b.num_ && a.den_ == b.den_; }

private:
    Polynomial<R> num_;
    Polynomial<R> den_;
};

template <CoefficientRing R>
std::string to_string(const WittVector<R>& f) {
    if (f.den().degree() == 0) return to_string(f.num());
    auto wrap = [](const Polynomial<R>& p) {
        const auto s = to_string(p);
        return p.degree() >= 1 ? "(" + s + ")" : s;
    };
    return wrap(f.num()) + "/" + wrap(f.den());
}

/// Almkvist representative: f = det(1 - tA) / det(1 - tB).
template <CoefficientRing R>
struct MatrixPair {
    Matrix<R> a;
    Matrix<R> b;
};

template <CoefficientRing R>
struct GhostSequence {
    using value_type = typename R::value_type;
    R ring;
    std::vector<value_type> values;  // values[k] = g_{k+1}

    std::size_t order() const noexcept { return values.size(); }
    const value_type& operator[](std::size_t n) const { return values.at(n - 1); }  // 1-based

    friend GhostSequence operator+(const GhostSequence& x, const GhostSequence& y) { return combine(x, y, std::plus<>{}); }
    friend GhostSequence operator*(const GhostSequence& x, const GhostSequence& y) { return combine(x, y, std::multiplies<>{}); }
    friend bool operator==(const GhostSequence& x, const GhostSequence& y) { return x.values == y.values; }

private:
    template <class Op>
    static GhostSequence combine(const GhostSequence& x, const GhostSequence& y, Op op) {
        const std::size_t n = std::min(x.order(), y.order());
        GhostSequence out{x.ring, {}};
        for (std::size_t i = 0; i < n; ++i) out.values.push_back(op(x.values[i], y.values[i]));
        return out;
    }
};

// ---------------------------------------------------------------------------
// Additive structure.

template <CoefficientRing R>
WittVector<R> witt_zero(const R& ring) {
    return WittVector<R>(Polynomial<R>::one(ring));
}

template <CoefficientRing R>
WittVector<R> teichmuller(const R& ring, const typename R::value_type& r) {
    return WittVector<R>(Polynomial<R>(ring, {ring.one(), ring.zero() - r}));
}

/// The multiplicative identity [1] = 1 - t.
template <CoefficientRing R>
WittVector<R> witt_one(const R& ring) {
    return teichmuller(ring, ring.one());
}

template <CoefficientRing R>
WittVector<R> witt_add(const WittVector<R>& f, const WittVector<R>& g) {
    return WittVector<R>(f.num() * g.num(), f.den() * g.den());
}

template <CoefficientRing R>
WittVector<R> witt_neg(const WittVector<R>& f) {
    return WittVector<R>(f.den(), f.num());
}

template <CoefficientRing R>
WittVector<R> witt_sub(const WittVector<R>& f, const WittVector<R>& g) {
    return WittVector<R>(f.num() * g.den(), f.den() * g.num());
}

/// k-fold Witt sum of f (f^k as a rational function); negative k allowed.
template <CoefficientRing R>
WittVector<R> witt_multiple(const WittVector<R>& f, int k) {
    const auto e = static_cast<unsigned>(k < 0 ? -k : k);
    if (k >= 0) return WittVector<R>(f.num().pow(e), f.den().pow(e));
    return WittVector<R>(f.den().pow(e), f.num().pow(e));
}

// ---------------------------------------------------------------------------
// Matrix representatives and multiplication.

template <CoefficientRing R>
MatrixPair<R> companion_pair(const WittVector<R>& f) {
    auto companion = [](const Polynomial<R>& p) {
        // det(1 - tC) = p  <=>  det(xI - C) = t^d p(1/t), the (monic) reversal.
        return companion_of_monic(p.reversed(static_cast<std::size_t>(p.degree())));
    };
    return {companion(f.num()), companion(f.den())};
}

template <CoefficientRing R>
WittVector<R> from_matrix_pair(const MatrixPair<R>& pair) {
    return WittVector<R>(det_one_minus_t(pair.a), det_one_minus_t(pair.b));
}

namespace detail {

inline void check_cap(std::size_t size, const WittConfig& cfg) {
    if (size > cfg.matrix_cap)
        throw math_error("intermediate matrix size " + std::to_string(size) + " exceeds the cap " +
                         std::to_string(cfg.matrix_cap));
}

template <CoefficientRing R>
Polynomial<R> tensor_factor(const Matrix<R>& x, const Matrix<R>& y, const WittConfig& cfg) {
    check_cap(x.size() * y.size(), cfg);
    return det_one_minus_t(kronecker(x, y));
}

}  // namespace detail

/// (A_f, B_f) * (A_g, B_g) = (A_f(x)A_g + B_f(x)B_g) - (A_f(x)B_g + B_f(x)A_g) as virtual modules.
template <CoefficientRing R>
WittVector<R> witt_mul(const WittVector<R>& f, const WittVector<R>& g, const WittConfig& cfg = {}) {
    if (!(f.ring() == g.ring())) throw math_error("coefficient rings differ");
    const auto pf = companion_pair(f);
    const auto pg = companion_pair(g);
    auto num = detail::tensor_factor(pf.a, pg.a, cfg) * detail::tensor_factor(pf.b, pg.b, cfg);
    auto den = detail::tensor_factor(pf.a, pg.b, cfg) * detail::tensor_factor(pf.b, pg.a, cfg);
    return WittVector<R>(num, den);
}

// ---------------------------------------------------------------------------
// Ghost components.

/// g_n with -t dlog f / dt = sum_n g_n t^n, so ghost([a]) = (a, a^2, ...).
template <CoefficientRing R>
GhostSequence<R> ghost(const WittVector<R>& f, std::size_t order) {
    if (order == 0) throw math_error("ghost order must be at least 1");
    const R& ring = f.ring();
    const auto c = TruncatedSeries<R>::from_ratio(f.num(), f.den(), order);
    GhostSequence<R> out{ring, {}};
    for (std::size_t n = 1; n <= order; ++n) {
        auto g = ring.zero() - ring.from_int(static_cast<std::int64_t>(n)) * c[n];
        for (std::size_t k = 1; k < n; ++k) g = g - out.values[k - 1] * c[n - k];
        out.values.push_back(g);
    }
    return out;
}

/// Inverse of ghost over Q: f = exp(-sum g_n t^n / n), rationalised at the given degrees.
inline WittVector<Rationals> from_ghost(const GhostSequence<Rationals>& g, std::size_t dnum, std::size_t dden) {
    const std::size_t n = g.order();
    TruncatedSeries<Rationals> log_f(Rationals{}, n);
    for (std::size_t k = 1; k <= n; ++k) log_f[k] = -g[k] / static_cast<long long>(k);
    const auto series = series_exp(log_f);
    auto [p, q] = pade_reconstruct(series, dnum, dden);
    return WittVector<Rationals>(p, q);
}

template <CoefficientRing R>
GhostSequence<Rationals> to_rational_ghost(const GhostSequence<R>& g) {
    GhostSequence<Rationals> out{Rationals{}, {}};
    for (const auto& v : g.values) out.values.push_back(g.ring.to_rational(v));
    return out;
}

// ---------------------------------------------------------------------------
// Frobenius, Verschiebung, projection.

/// F_nu: det(1 - tA)/det(1 - tB) -> det(1 - tA^nu)/det(1 - tB^nu), computed on the matrix pair.
template <CoefficientRing R>
WittVector<R> frobenius(const WittVector<R>& f, int nu, const WittConfig& cfg = {}) {
    if (nu <= 0) throw math_error("Frobenius index must be positive");
    const auto pair = companion_pair(f);
    detail::check_cap(std::max(pair.a.size(), pair.b.size()), cfg);
    const auto e = static_cast<unsigned>(nu);
    return WittVector<R>(det_one_minus_t(pair.a.pow(e)), det_one_minus_t(pair.b.pow(e)));
}

/// V_nu: f(t) -> f(t^nu).
template <CoefficientRing R>
WittVector<R> verschiebung(const WittVector<R>& f, int nu) {
    if (nu <= 0) throw math_error("Verschiebung index must be positive");
    const auto e = static_cast<unsigned>(nu);
    return WittVector<R>(f.num().substitute_power(e), f.den().substitute_power(e));
}

/// f -> -f'(0)/f(0); here f(0) = 1 and f'(0) = num_1 - den_1.
template <CoefficientRing R>
typename R::value_type canonical_projection(const WittVector<R>& f) {
    return f.den().coeff(1) - f.num().coeff(1);
}

/// Coefficient-wise change of ring, e.g. Z -> Q or Z -> F_p.
template <CoefficientRing Target, CoefficientRing Source, class Fn>
WittVector<Target> change_ring(const WittVector<Source>& f, const Target& target, Fn&& fn) {
    return WittVector<Target>(map_coefficients(f.num(), target, fn), map_coefficients(f.den(), target, fn));
}

inline WittVector<Rationals> to_rationals(const WittVector<Integers>& f) {
    return change_ring(f, Rationals{}, [](const Integer& v) { return Rational(v); });
}

}  // namespace wittrat
