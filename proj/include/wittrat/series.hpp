#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "wittrat/polynomial.hpp"
#include "wittrat/ring.hpp"

namespace wittrat {

/// c_0 + c_1 t + ... + c_N t^N, known only modulo t^{N+1}.
template <CoefficientRing R>
class TruncatedSeries {
public:
    using value_type = typename R::value_type;

    TruncatedSeries(R ring, std::size_t order) : ring_(std::move(ring)), c_(order + 1, ring_.zero()) {}

    TruncatedSeries(R ring, std::vector<value_type> coeffs) : ring_(std::move(ring)), c_(std::move(coeffs)) {
        if (c_.empty()) throw math_error("series needs at least the constant coefficient");
    }

    static TruncatedSeries from_polynomial(const Polynomial<R>& p, std::size_t order) {
        TruncatedSeries s(p.ring(), order);
        for (std::size_t i = 0; i <= order; ++i) s.c_[i] = p.coeff(i);
        return s;
    }

    /// Expansion of num/den; den(0) must be a unit of R.
    static TruncatedSeries from_ratio(const Polynomial<R>& num, const Polynomial<R>& den, std::size_t order) {
        return from_polynomial(num, order) * from_polynomial(den, order).inverse();
    }

    const R& ring() const noexcept { return ring_; }
    std::size_t order() const noexcept { return c_.size() - 1; }
    const value_type& operator[](std::size_t i) const { return c_.at(i); }
    value_type& operator[](std::size_t i) { return c_.at(i); }
    const std::vector<value_type>& coeffs() const noexcept { return c_; }

    friend TruncatedSeries operator+(const TruncatedSeries& a, const TruncatedSeries& b) {
        const std::size_t n = std::min(a.order(), b.order());
        TruncatedSeries out(a.ring_, n);
        for (std::size_t i = 0; i <= n; ++i) out.c_[i] = a.c_[i] + b.c_[i];
        return out;
    }

    friend TruncatedSeries operator*(const TruncatedSeries& a, const TruncatedSeries& b) {
        const std::size_t n = std::min(a.order(), b.order());
        TruncatedSeries out(a.ring_, n);
        for (std::size_t i = 0; i <= n; ++i) {
            if (a.c_[i] == a.ring_.zero()) continue;
            for (std::size_t j = 0; i + j <= n; ++j) out.c_[i + j] = out.c_[i + j] + a.c_[i] * b.c_[j];
        }
        return out;
    }

    friend bool operator==(const TruncatedSeries& a, const TruncatedSeries& b) { return a.c_ == b.c_; }

    /// Multiplicative inverse; the constant term must be a unit.
    TruncatedSeries inverse() const {
        const auto c0 = c_[0];
        value_type inv0;
        if constexpr (R::is_field) {
            if (c0 == ring_.zero()) throw math_error("series constant term is not invertible");
            inv0 = ring_.one() / c0;
        } else {
            if (c0 == ring_.one())
                inv0 = ring_.one();
            else if (c0 == ring_.zero() - ring_.one())
                inv0 = c0;
            else
                throw math_error("series constant term is not a unit");
        }
        TruncatedSeries out(ring_, order());
        out.c_[0] = inv0;
        for (std::size_t n = 1; n <= order(); ++n) {
            value_type s = ring_.zero();
            for (std::size_t k = 1; k <= n; ++k) s = s + c_[k] * out.c_[n - k];
            out.c_[n] = ring_.zero() - inv0 * s;
        }
        return out;
    }

    /// Truncation to a lower order.
    TruncatedSeries truncated(std::size_t order) const {
        if (order > this->order()) throw math_error("cannot extend a truncated series");
        return TruncatedSeries(ring_, std::vector<value_type>(c_.begin(), c_.begin() + static_cast<std::ptrdiff_t>(order + 1)));
    }

    Polynomial<R> to_polynomial() const { return Polynomial<R>(ring_, c_); }

private:
    R ring_;
    std::vector<value_type> c_;
};

/// exp(s) for s with zero constant term, via n e_n = sum_{k=1}^n k s_k e_{n-k}.
inline TruncatedSeries<Rationals> series_exp(const TruncatedSeries<Rationals>& s) {
    if (s[0] != 0) throw math_error("exp needs a series with constant term 0");
    const std::size_t n = s.order();
    TruncatedSeries<Rationals> e(s.ring(), n);
    e[0] = 1;
    for (std::size_t m = 1; m <= n; ++m) {
        Rational acc = 0;
        for (std::size_t k = 1; k <= m; ++k) acc += Rational(static_cast<long long>(k)) * s[k] * e[m - k];
        e[m] = acc / static_cast<long long>(m);
    }
    return e;
}

/// log(f) for f with constant term 1, as the integral of f'/f.
inline TruncatedSeries<Rationals> series_log(const TruncatedSeries<Rationals>& f) {
    if (f[0] != 1) throw math_error("log needs a series with constant term 1");
    const std::size_t n = f.order();
    const auto inv = f.inverse();
    TruncatedSeries<Rationals> out(f.ring(), n);
    for (std::size_t m = 1; m <= n; ++m) {
        // coefficient of t^{m-1} in f' * (1/f)
        Rational acc = 0;
        for (std::size_t k = 1; k <= m; ++k) acc += Rational(static_cast<long long>(k)) * f[k] * inv[m - k];
        out[m] = acc / static_cast<long long>(m);
    }
    return out;
}

namespace detail {

/// Solves the square system a x = b over Q. Free variables of a singular but
/// consistent system are set to zero; an inconsistent system returns false.
inline bool solve_linear(std::vector<std::vector<Rational>> a, std::vector<Rational> b, std::vector<Rational>& x) {
    const std::size_t rows = a.size();
    const std::size_t cols = rows == 0 ? 0 : a[0].size();
    std::vector<std::size_t> pivot_col;
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t piv = r;
        while (piv < rows && a[piv][c] == 0) ++piv;
        if (piv == rows) continue;
        std::swap(a[piv], a[r]);
        std::swap(b[piv], b[r]);
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == r || a[i][c] == 0) continue;
            const Rational f = a[i][c] / a[r][c];
            for (std::size_t j = c; j < cols; ++j) a[i][j] -= f * a[r][j];
            b[i] -= f * b[r];
        }
        pivot_col.push_back(c);
        ++r;
    }
    for (std::size_t i = r; i < rows; ++i)
        if (b[i] != 0) return false;
    x.assign(cols, 0);
    for (std::size_t i = 0; i < r; ++i) x[pivot_col[i]] = b[i] / a[i][pivot_col[i]];
    return true;
}

}  // namespace detail

/// Rational reconstruction: P, Q with deg P <= dnum, deg Q <= dden, Q(0) = 1 and
/// Q s = P mod t^{dnum+dden+1}. The result is re-expanded against every supplied
/// coefficient; any mismatch means s is not of that shape.
inline std::pair<Polynomial<Rationals>, Polynomial<Rationals>> pade_reconstruct(const TruncatedSeries<Rationals>& s,
                                                                                std::size_t dnum, std::size_t dden) {
    if (s.order() < dnum + dden) throw math_error("series order too small for the requested degrees");
    const Rationals q;
    auto c = [&](std::ptrdiff_t k) -> Rational { return k < 0 ? Rational(0) : s[static_cast<std::size_t>(k)]; };
    // Unknowns q_1..q_dden: sum_{j=0}^{dden} q_j c_{k-j} = 0 for k = dnum+1 .. dnum+dden.
    std::vector<std::vector<Rational>> a(dden, std::vector<Rational>(dden));
    std::vector<Rational> b(dden);
    for (std::size_t row = 0; row < dden; ++row) {
        const auto k = static_cast<std::ptrdiff_t>(dnum + 1 + row);
        for (std::size_t j = 1; j <= dden; ++j) a[row][j - 1] = c(k - static_cast<std::ptrdiff_t>(j));
        b[row] = -c(k);
    }
    std::vector<Rational> sol;
    if (!detail::solve_linear(a, b, sol)) throw math_error("no rational reconstruction");
    std::vector<Rational> qc{1};
    qc.insert(qc.end(), sol.begin(), sol.end());
    Polynomial<Rationals> den(q, qc);
    std::vector<Rational> pc(dnum + 1);
    for (std::size_t k = 0; k <= dnum; ++k) {
        Rational acc = 0;
        for (std::size_t j = 0; j <= std::min(k, dden); ++j) acc += den.coeff(j) * s[k - j];
        pc[k] = acc;
    }
    Polynomial<Rationals> numr(q, pc);
    if (!(TruncatedSeries<Rationals>::from_ratio(numr, den, s.order()) == s)) throw math_error("no rational reconstruction");
    return {numr, den};
}

}  // namespace wittrat
