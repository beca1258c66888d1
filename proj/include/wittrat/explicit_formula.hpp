#pragma once

// Numerical check of the explicit formula for smooth compactly supported
// test functions on (0, inf):
//
//   Phi(0) + Phi(1) - sum_rho Phi(rho)
//     = sum_p log p sum_k phi(k log p) + int phi(t) / (1 - e^{-2t}) dt,
//
// with Phi(alpha) = int e^{t alpha} phi(t) dt and rho = 1/2 +- i gamma.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "wittrat/error.hpp"
#include "wittrat/integer.hpp"

namespace wittrat {

struct Bump {
    double c = 1.5;
    double r = 0.7;
    double weight = 1.0;

    double lo() const noexcept { return c - r; }
    double hi() const noexcept { return c + r; }

    double operator()(double t) const {
        const double u = (t - c) / r;
        if (!(u > -1 && u < 1)) return 0.0;
        return weight * std::exp(-1.0 / (1.0 - u * u));
    }
};

/// Finite weighted sum of bumps; each must be supported inside (0, inf).
struct TestFunction {
    std::vector<Bump> bumps;

    static TestFunction bump(double c, double r) {
        if (!(r > 0) || !(c - r > 0) || !std::isfinite(c) || !std::isfinite(r))
            throw math_error("bump needs r > 0 and c - r > 0");
        return TestFunction{{Bump{c, r, 1.0}}};
    }

    double operator()(double t) const {
        double s = 0;
        for (const auto& b : bumps) s += b(t);
        return s;
    }

    double support_lo() const {
        double v = bumps.empty() ? 1.0 : bumps.front().lo();
        for (const auto& b : bumps) v = std::min(v, b.lo());
        return v;
    }
    double support_hi() const {
        double v = bumps.empty() ? 1.0 : bumps.front().hi();
        for (const auto& b : bumps) v = std::max(v, b.hi());
        return v;
    }

    friend TestFunction operator+(TestFunction a, const TestFunction& b) {
        a.bumps.insert(a.bumps.end(), b.bumps.begin(), b.bumps.end());
        return a;
    }
};

struct ZeroTable {
    std::vector<double> gammas;  // strictly increasing imaginary parts
    std::size_t size() const noexcept { return gammas.size(); }
};

inline ZeroTable parse_zeros(std::istream& in) {
    ZeroTable t;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        const auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos) continue;
        const auto last = line.find_last_not_of(" \t\r");
        const std::string field = line.substr(first, last - first + 1);
        char* end = nullptr;
        const double v = std::strtod(field.c_str(), &end);
        if (end != field.c_str() + field.size() || !std::isfinite(v))
            throw math_error("non-numeric at line " + std::to_string(lineno));
        if (!(v > 0)) throw math_error("non-positive at line " + std::to_string(lineno));
        if (!t.gammas.empty() && !(v > t.gammas.back())) throw math_error("non-monotone at line " + std::to_string(lineno));
        t.gammas.push_back(v);
    }
    if (t.gammas.empty()) throw math_error("no zeros");
    if (t.gammas.front() < 14.0 || t.gammas.front() > 14.2)
        throw math_error("first zero " + std::to_string(t.gammas.front()) + " outside [14, 14.2]");
    return t;
}

inline ZeroTable parse_zeros(const std::string& text) {
    std::istringstream in(text);
    return parse_zeros(in);
}

inline ZeroTable load_zeros(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw math_error("cannot open zero table " + path);
    return parse_zeros(in);
}

// ---------------------------------------------------------------------------
// Quadrature.

struct GaussLegendreRule {
    std::vector<double> nodes;    // on [-1, 1]
    std::vector<double> weights;
};

/// n-point rule by Newton iteration on P_n; cached per n.
inline const GaussLegendreRule& gauss_legendre(std::size_t n) {
    static std::mutex mu;
    static std::map<std::size_t, std::unique_ptr<GaussLegendreRule>> cache;
    std::lock_guard lock(mu);
    auto& slot = cache[n];
    if (slot) return *slot;
    auto rule = std::make_unique<GaussLegendreRule>();
    rule->nodes.resize(n);
    rule->weights.resize(n);
    for (std::size_t i = 0; i < (n + 1) / 2; ++i) {
        long double x = std::cos(std::numbers::pi_v<long double> * (i + 0.75L) / (n + 0.5L));
        long double dp = 0;
        for (int iter = 0; iter < 100; ++iter) {
            long double p0 = 1, p1 = x;
            for (std::size_t k = 2; k <= n; ++k) {
                const long double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            if (n == 1) p0 = 1;
            dp = n * (x * p1 - p0) / (x * x - 1);
            const long double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-19L) break;
        }
        long double p0 = 1, p1 = x;
        for (std::size_t k = 2; k <= n; ++k) {
            const long double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
            p0 = p1;
            p1 = p2;
        }
        dp = n * (x * p1 - p0) / (x * x - 1);
        const long double w = 2 / ((1 - x * x) * dp * dp);
        rule->nodes[i] = static_cast<double>(-x);
        rule->nodes[n - 1 - i] = static_cast<double>(x);
        rule->weights[i] = rule->weights[n - 1 - i] = static_cast<double>(w);
    }
    slot = std::move(rule);
    return *slot;
}

inline constexpr std::size_t quadrature_start_nodes = 16;
inline constexpr std::size_t quadrature_max_nodes = 1U << 16;
inline constexpr double quadrature_tolerance = 1e-12;

/// Integral of f over [a, b] with node doubling until successive values agree
/// to 1e-12 of the integral of |f|.
template <class T, class F>
T integrate(F&& f, double a, double b) {
    auto apply = [&](std::size_t n, double& scale) {
        const auto& rule = gauss_legendre(n);
        const double half = 0.5 * (b - a);
        const double mid = 0.5 * (a + b);
        T sum{};
        scale = 0;
        for (std::size_t i = 0; i < n; ++i) {
            const T v = f(mid + half * rule.nodes[i]);
            sum += rule.weights[i] * v;
            scale += rule.weights[i] * std::abs(v);
        }
        scale *= std::abs(half);
        return half * sum;
    };
    double scale = 0;
    T prev = apply(quadrature_start_nodes, scale);
    for (std::size_t n = 2 * quadrature_start_nodes; n <= quadrature_max_nodes; n *= 2) {
        const T cur = apply(n, scale);
        if (std::abs(cur - prev) <= quadrature_tolerance * scale) return cur;
        prev = cur;
    }
    throw math_error("quadrature did not converge with 2^16 nodes");
}

/// Phi(alpha) = int e^{t alpha} phi(t) dt, bump by bump.
inline std::complex<double> transform(const TestFunction& phi, std::complex<double> alpha) {
    std::complex<double> total = 0;
    for (const auto& b : phi.bumps)
        total += integrate<std::complex<double>>([&](double t) { return std::exp(t * alpha) * b(t); }, b.lo(), b.hi());
    return total;
}

// ---------------------------------------------------------------------------
// The two sides.

struct ZeroSide {
    double value = 0;
    double imag_residue = 0;
    std::size_t zeros_used = 0;
};

inline constexpr double zero_side_imag_tolerance = 1e-10;

namespace detail {

class KahanAccumulator {
public:
    void add(double x) {
        const double y = x - c_;
        const double t = s_ + y;
        c_ = (t - s_) - y;
        s_ = t;
    }
    double value() const noexcept { return s_; }

private:
    double s_ = 0;
    double c_ = 0;
};

}  // namespace detail

/// Phi(0) + Phi(1) - sum_{k <= K} [Phi(1/2 + i gamma_k) + Phi(1/2 - i gamma_k)].
/// Transforms may be computed in parallel; the sum is always taken in index order.
inline ZeroSide zero_side(const TestFunction& phi, const ZeroTable& zeros, std::size_t k, unsigned threads = 1) {
    if (k > zeros.size()) throw math_error("zero_side: K exceeds the zero table size");
    std::vector<std::complex<double>> terms(k);
    auto work = [&](std::size_t begin, std::size_t step) {
        for (std::size_t i = begin; i < k; i += step) {
            const double g = zeros.gammas[i];
            terms[i] = transform(phi, {0.5, g}) + transform(phi, {0.5, -g});
        }
    };
    threads = std::max(1U, threads);
    if (threads == 1 || k < 2) {
        work(0, 1);
    } else {
        std::vector<std::jthread> pool;
        for (unsigned t = 0; t < threads; ++t) pool.emplace_back(work, t, threads);
    }
    const auto phi0 = transform(phi, 0.0);
    const auto phi1 = transform(phi, 1.0);
    detail::KahanAccumulator re, im;
    re.add(phi0.real());
    re.add(phi1.real());
    im.add(phi0.imag());
    im.add(phi1.imag());
    for (const auto& t : terms) {
        re.add(-t.real());
        im.add(-t.imag());
    }
    ZeroSide out;
    out.value = re.value();
    out.imag_residue = im.value();
    out.zeros_used = k;
    if (!(std::abs(out.imag_residue) < zero_side_imag_tolerance))
        throw internal_error("zero side has imaginary residue " + std::to_string(out.imag_residue));
    return out;
}

struct PrimeSide {
    double prime_sum = 0;
    double archimedean = 0;
    double value = 0;
    std::size_t prime_powers_hit = 0;
};

/// sum_{p <= B} log p sum_k phi(k log p) + int phi(t) / (1 - e^{-2t}) dt.
inline PrimeSide prime_side(const TestFunction& phi, std::uint64_t prime_bound) {
    const double hi = phi.support_hi();
    if (prime_bound < 2 || std::log(static_cast<double>(prime_bound)) < hi) throw math_error("prime bound too small");
    const double lo = phi.support_lo();
    PrimeSide out;
    detail::KahanAccumulator sum;
    for (auto p : num::primes_up_to(prime_bound)) {
        const double lp = std::log(static_cast<double>(p));
        if (lp >= hi) break;
        for (std::uint64_t kk = 1; static_cast<double>(kk) * lp < hi; ++kk) {
            const double t = static_cast<double>(kk) * lp;
            if (t <= lo) continue;
            const double v = phi(t);
            if (v != 0) {
                sum.add(lp * v);
                ++out.prime_powers_hit;
            }
        }
    }
    out.prime_sum = sum.value();
    detail::KahanAccumulator arch;
    for (const auto& b : phi.bumps)
        arch.add(integrate<double>([&](double t) { return b(t) / (1 - std::exp(-2 * t)); }, b.lo(), b.hi()));
    out.archimedean = arch.value();
    detail::KahanAccumulator total;
    total.add(out.prime_sum);
    total.add(out.archimedean);
    out.value = total.value();
    return out;
}

struct ConvergenceRow {
    std::size_t k = 0;
    double zero_side = 0;
    double defect = 0;
};

struct ExplicitFormulaReport {
    TestFunction phi;
    std::size_t k = 0;
    std::uint64_t prime_bound = 0;
    ZeroSide zeros;
    PrimeSide primes;
    double defect = 0;
    std::vector<ConvergenceRow> convergence;  // K in {10, 100, 1000} within the table
};

inline ExplicitFormulaReport explicit_formula_defect(const TestFunction& phi, const ZeroTable& zeros, std::size_t k,
                                                     std::uint64_t prime_bound, unsigned threads = 1) {
    ExplicitFormulaReport r;
    r.phi = phi;
    r.k = k;
    r.prime_bound = prime_bound;
    r.primes = prime_side(phi, prime_bound);
    r.zeros = zero_side(phi, zeros, k, threads);
    r.defect = std::abs(r.zeros.value - r.primes.value);
    for (std::size_t kk : {10U, 100U, 1000U}) {
        if (kk > zeros.size()) break;
        const auto z = kk == k ? r.zeros : zero_side(phi, zeros, kk, threads);
        r.convergence.push_back({kk, z.value, std::abs(z.value - r.primes.value)});
    }
    return r;
}

}  // namespace wittrat
