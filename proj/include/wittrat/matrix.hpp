#pragma once

#include <cstddef>
#include <vector>

#include "wittrat/integer.hpp"
#include "wittrat/polynomial.hpp"
#include "wittrat/ring.hpp"

namespace wittrat {

/// Dense square matrix, row-major.
template <CoefficientRing R>
class Matrix {
public:
    using value_type = typename R::value_type;

    explicit Matrix(R ring = R{}, std::size_t n = 0) : ring_(std::move(ring)), n_(n), a_(n * n, ring_.zero()) {}

    static Matrix identity(const R& ring, std::size_t n) {
        Matrix m(ring, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = ring.one();
        return m;
    }

    const R& ring() const noexcept { return ring_; }
    std::size_t size() const noexcept { return n_; }
    bool empty() const noexcept { return n_ == 0; }

    value_type& operator()(std::size_t i, std::size_t j) { return a_[i * n_ + j]; }
    const value_type& operator()(std::size_t i, std::size_t j) const { return a_[i * n_ + j]; }

    friend Matrix operator*(const Matrix& x, const Matrix& y) {
        if (x.n_ != y.n_) throw math_error("matrix size mismatch");
        Matrix out(x.ring_, x.n_);
        for (std::size_t i = 0; i < x.n_; ++i)
            for (std::size_t k = 0; k < x.n_; ++k) {
                const auto& xik = x(i, k);
                if (xik == x.ring_.zero()) continue;
                for (std::size_t j = 0; j < x.n_; ++j) out(i, j) = out(i, j) + xik * y(k, j);
            }
        return out;
    }

    friend bool operator==(const Matrix& x, const Matrix& y) { return x.n_ == y.n_ && x.a_ == y.a_; }

    Matrix pow(unsigned e) const {
        Matrix result = identity(ring_, n_);
        Matrix base = *this;
        while (e > 0) {
            if (e & 1U) result = result * base;
            e >>= 1U;
            if (e > 0) base = base * base;
        }
        return result;
    }

private:
    R ring_;
    std::size_t n_;
    std::vector<value_type> a_;
};

/// Kronecker product; (A (x) B)(i*q + k, j*q + l) = A(i, j) B(k, l).
template <CoefficientRing R>
Matrix<R> kronecker(const Matrix<R>& a, const Matrix<R>& b) {
    const std::size_t p = a.size();
    const std::size_t q = b.size();
    Matrix<R> out(a.ring(), p * q);
    for (std::size_t i = 0; i < p; ++i)
        for (std::size_t j = 0; j < p; ++j) {
            if (a(i, j) == a.ring().zero()) continue;
            for (std::size_t k = 0; k < q; ++k)
                for (std::size_t l = 0; l < q; ++l) out(i * q + k, j * q + l) = a(i, j) * b(k, l);
        }
    return out;
}

/// Companion matrix of the monic x^d + c[d-1] x^{d-1} + ... + c[0].
template <CoefficientRing R>
Matrix<R> companion_of_monic(const Polynomial<R>& monic_poly) {
    const R& ring = monic_poly.ring();
    const auto d = static_cast<std::size_t>(std::max(monic_poly.degree(), 0));
    Matrix<R> m(ring, d);
    for (std::size_t i = 1; i < d; ++i) m(i, i - 1) = ring.one();
    for (std::size_t i = 0; i < d; ++i) m(i, d - 1) = ring.zero() - monic_poly.coeff(i);
    return m;
}

/// det(xI - M) by Berkowitz's division-free recurrence. O(n^4); valid over any commutative ring.
template <CoefficientRing R>
Polynomial<R> charpoly_berkowitz(const Matrix<R>& m) {
    const R& ring = m.ring();
    const std::size_t n = m.size();
    using V = typename R::value_type;
    if (n == 0) return Polynomial<R>::one(ring);
    std::vector<V> v{ring.one(), ring.zero() - m(n - 1, n - 1)};  // highest power first
    for (std::size_t k = n - 1; k-- > 0;) {
        const std::size_t s = n - k;
        std::vector<V> c(s + 1, ring.zero());
        c[0] = ring.one();
        c[1] = ring.zero() - m(k, k);
        std::vector<V> w(s - 1);  // A'^j C
        for (std::size_t i = 0; i + 1 < s; ++i) w[i] = m(k + 1 + i, k);
        for (std::size_t j = 0; j + 2 <= s; ++j) {
            V dot = ring.zero();
            for (std::size_t i = 0; i + 1 < s; ++i) dot = dot + m(k, k + 1 + i) * w[i];
            c[j + 2] = ring.zero() - dot;
            std::vector<V> next(s - 1, ring.zero());
            for (std::size_t r = 0; r + 1 < s; ++r)
                for (std::size_t q = 0; q + 1 < s; ++q) next[r] = next[r] + m(k + 1 + r, k + 1 + q) * w[q];
            w = std::move(next);
        }
        std::vector<V> nv(s + 1, ring.zero());
        for (std::size_t i = 0; i <= s; ++i)
            for (std::size_t j = 0; j < s && j <= i; ++j) nv[i] = nv[i] + c[i - j] * v[j];
        v = std::move(nv);
    }
    std::vector<V> asc(v.rbegin(), v.rend());
    return Polynomial<R>(ring, std::move(asc));
}

/// det(xI - M) over a field via reduction to upper Hessenberg form. O(n^3).
template <CoefficientField R>
Polynomial<R> charpoly_hessenberg(Matrix<R> h) {
    const R& ring = h.ring();
    const std::size_t n = h.size();
    const auto zero = ring.zero();
    for (std::size_t j = 0; j + 2 < n; ++j) {
        std::size_t piv = j + 1;
        while (piv < n && h(piv, j) == zero) ++piv;
        if (piv == n) continue;
        if (piv != j + 1) {
            for (std::size_t c = 0; c < n; ++c) std::swap(h(piv, c), h(j + 1, c));
            for (std::size_t r = 0; r < n; ++r) std::swap(h(r, piv), h(r, j + 1));
        }
        const auto inv = ring.one() / h(j + 1, j);
        for (std::size_t i = j + 2; i < n; ++i) {
            if (h(i, j) == zero) continue;
            const auto u = h(i, j) * inv;
            for (std::size_t c = 0; c < n; ++c) h(i, c) = h(i, c) - u * h(j + 1, c);
            for (std::size_t r = 0; r < n; ++r) h(r, j + 1) = h(r, j + 1) + u * h(r, i);
        }
    }
    const auto x = Polynomial<R>::monomial(ring, ring.one(), 1);
    std::vector<Polynomial<R>> p{Polynomial<R>::one(ring)};
    for (std::size_t m = 0; m < n; ++m) {
        auto next = (x - Polynomial<R>::constant(ring, h(m, m))) * p[m];
        auto prod = ring.one();
        for (std::size_t i = 1; i <= m; ++i) {
            prod = prod * h(m - i + 1, m - i);
            const auto t = h(m - i, m) * prod;
            if (!(t == zero)) next = next - Polynomial<R>::constant(ring, t) * p[m - i];
        }
        p.push_back(std::move(next));
    }
    return p.back();
}

namespace detail {

/// Chinese remaindering over 62-bit primes, bounded via Hadamard's inequality on principal minors.
inline Polynomial<Integers> charpoly_multimodular(const Matrix<Integers>& m) {
    const std::size_t n = m.size();
    const Integers z;
    if (n == 0) return Polynomial<Integers>::one(z);
    Integer row_norm_sq = 0;
    for (std::size_t i = 0; i < n; ++i) {
        Integer s = 0;
        for (std::size_t j = 0; j < n; ++j) s += m(i, j) * m(i, j);
        if (s > row_norm_sq) row_norm_sq = s;
    }
    // |c_k| <= C(n,k) R^k <= (1 + R)^n with R the largest row 2-norm.
    const Integer bound = num::pow(num::isqrt(row_norm_sq) + 2, static_cast<unsigned>(n));
    Integer modulus = 1;
    std::vector<Integer> acc(n + 1, 0);
    std::uint64_t prime = (1ULL << 62);
    while (modulus <= 2 * bound) {
        do {
            --prime;
        } while (!num::is_prime_u64(prime));
        const PrimeField fp(prime);
        Matrix<PrimeField> mp(fp, n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) mp(i, j) = fp.from_integer(m(i, j));
        const auto cp = charpoly_hessenberg(mp);
        const auto inv = fp.from_integer(modulus).inverse().value();
        for (std::size_t k = 0; k <= n; ++k) {
            const auto r = cp.coeff(k).value();
            const auto cur = num::reduce(acc[k], prime);
            const auto diff = r >= cur ? r - cur : r + prime - cur;
            acc[k] += modulus * Integer(num::mulmod(diff, inv, prime));
        }
        modulus *= prime;
    }
    const Integer half = modulus / 2;
    for (auto& v : acc) {
        v %= modulus;
        if (v > half) v -= modulus;
    }
    return Polynomial<Integers>(z, std::move(acc));
}

}  // namespace detail

/// det(xI - M), dispatched to an exact method suited to the ring.
template <CoefficientRing R>
Polynomial<R> charpoly(const Matrix<R>& m) {
    if constexpr (std::is_same_v<R, Integers>) {
        return detail::charpoly_multimodular(m);
    } else if constexpr (std::is_same_v<R, Rationals>) {
        // M = N / D with N integral: c_k(M) = c_k(N) / D^{n-k} in x^k.
        const std::size_t n = m.size();
        Integer d = 1;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) d = boost::multiprecision::lcm(d, denominator(m(i, j)));
        Matrix<Integers> scaled(Integers{}, n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) scaled(i, j) = numerator(m(i, j)) * (d / denominator(m(i, j)));
        const auto cp = detail::charpoly_multimodular(scaled);
        std::vector<Rational> c(n + 1);
        for (std::size_t k = 0; k <= n; ++k)
            c[k] = Rational(cp.coeff(k)) / Rational(num::pow(d, static_cast<unsigned>(n - k)));
        return Polynomial<Rationals>(m.ring(), std::move(c));
    } else if constexpr (R::is_field) {
        return charpoly_hessenberg(m);
    } else {
        return charpoly_berkowitz(m);
    }
}

/// det(1 - tM) = t^n det(t^{-1} I - M), the reversal of the characteristic polynomial.
template <CoefficientRing R>
Polynomial<R> det_one_minus_t(const Matrix<R>& m) {
    return charpoly(m).reversed(m.size());
}

}  // namespace wittrat
