#pragma once

// Zeta functions of varieties over F_p as rational Witt vectors, the two
// product formulas, and closed-point ledgers with their Euler/Ruelle products.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "wittrat/error.hpp"
#include "wittrat/finite_field.hpp"
#include "wittrat/integer.hpp"
#include "wittrat/polynomial.hpp"
#include "wittrat/reciprocity.hpp"
#include "wittrat/series.hpp"
#include "wittrat/witt.hpp"

namespace wittrat {

// ---------------------------------------------------------------------------
// Varieties and point counts.

struct VarietyTerm {
    std::uint64_t coeff = 0;      // reduced mod p
    std::vector<unsigned> exps;   // one exponent per variable
    friend bool operator==(const VarietyTerm&, const VarietyTerm&) = default;
};

using VarietyEquation = std::vector<VarietyTerm>;

/// Common zero locus of polynomials over F_p in `vars` variables.
struct AffineVariety {
    std::uint64_t p = 2;
    unsigned vars = 0;
    std::vector<VarietyEquation> equations;

    /// Terms given as (integer coefficient, exponent vector); coefficients are reduced mod p.
    static AffineVariety make(std::uint64_t p, unsigned vars,
                              const std::vector<std::vector<std::pair<std::int64_t, std::vector<unsigned>>>>& eqs) {
        const PrimeField fp(p);  // validates p
        AffineVariety x;
        x.p = p;
        x.vars = vars;
        for (const auto& eq : eqs) {
            VarietyEquation out;
            for (const auto& [c, e] : eq) {
                if (e.size() != vars) throw math_error("exponent vector has wrong length");
                const auto r = num::reduce(c, p);
                if (r != 0) out.push_back({r, e});
            }
            x.equations.push_back(std::move(out));
        }
        return x;
    }
};

inline int total_degree(const VarietyEquation& eq) {
    int d = -1;
    for (const auto& t : eq) {
        int s = 0;
        for (auto e : t.exps) s += static_cast<int>(e);
        d = std::max(d, s);
    }
    return d;
}

struct CountOptions {
    std::uint64_t cap = 100'000'000;  // evaluation steps
    unsigned threads = 1;
};

namespace detail {

inline bool vanishes(const FiniteField& f, const std::vector<VarietyEquation>& eqs, const std::vector<std::uint32_t>& pt) {
    for (const auto& eq : eqs) {
        std::uint32_t acc = 0;
        for (const auto& t : eq) {
            auto term = static_cast<std::uint32_t>(t.coeff);
            for (std::size_t i = 0; i < t.exps.size() && term != 0; ++i)
                if (t.exps[i] != 0) term = f.mul(term, f.pow(pt[i], t.exps[i]));
            acc = f.add(acc, term);
        }
        if (acc != 0) return false;
    }
    return true;
}

}  // namespace detail

/// #X(F_{p^n}) by exhaustive enumeration of F_{p^n}^k.
inline std::uint64_t count_points(const AffineVariety& x, unsigned n, const CountOptions& opt = {}) {
    if (n == 0) throw math_error("count_points: level must be >= 1");
    long double steps = std::pow(static_cast<long double>(x.p), static_cast<long double>(n) * x.vars);
    if (steps > static_cast<long double>(opt.cap))
        throw math_error("count_points: enumeration needs " + std::to_string(static_cast<unsigned long long>(steps)) +
                         " evaluation steps, cap is " + std::to_string(opt.cap));
    const auto field = finite_field_make(x.p, n);
    const std::uint64_t q = field->size();
    if (x.vars == 0) return detail::vanishes(*field, x.equations, {}) ? 1 : 0;

    auto run = [&](std::uint64_t first_begin, std::uint64_t first_step) {
        std::uint64_t count = 0;
        std::vector<std::uint32_t> pt(x.vars, 0);
        for (std::uint64_t a = first_begin; a < q; a += first_step) {
            pt.assign(x.vars, 0);
            pt[0] = static_cast<std::uint32_t>(a);
            for (;;) {
                if (detail::vanishes(*field, x.equations, pt)) ++count;
                std::size_t i = 1;
                while (i < x.vars && ++pt[i] == q) pt[i++] = 0;
                if (i == x.vars) break;
            }
        }
        return count;
    };

    const unsigned threads = std::max(1U, std::min<unsigned>(opt.threads, static_cast<unsigned>(q)));
    if (threads == 1) return run(0, 1);
    std::vector<std::uint64_t> partial(threads, 0);
    {
        std::vector<std::jthread> pool;
        for (unsigned t = 0; t < threads; ++t) pool.emplace_back([&, t] { partial[t] = run(t, threads); });
    }
    std::uint64_t total = 0;
    for (auto c : partial) total += c;
    return total;
}

namespace detail {

enum class Slot { free, zero, one };

/// Substitutes fixed coordinates into homogeneous equations over k+1 variables.
inline AffineVariety restrict_to_stratum(std::uint64_t p, const std::vector<VarietyEquation>& homogeneous,
                                         const std::vector<Slot>& slots) {
    AffineVariety out;
    out.p = p;
    out.vars = static_cast<unsigned>(std::count(slots.begin(), slots.end(), Slot::free));
    for (const auto& eq : homogeneous) {
        VarietyEquation r;
        for (const auto& t : eq) {
            bool killed = false;
            std::vector<unsigned> e;
            for (std::size_t i = 0; i < slots.size(); ++i) {
                if (slots[i] == Slot::free) e.push_back(t.exps[i]);
                else if (slots[i] == Slot::zero && t.exps[i] > 0) killed = true;
            }
            if (!killed) r.push_back({t.coeff, std::move(e)});
        }
        out.equations.push_back(std::move(r));
    }
    return out;
}

}  // namespace detail

/// Points of the projective closure over F_{p^n}. The closure x_1..x_k, x_0 is
/// split into the affine chart x_0 = 1 and, inside x_0 = 0, the strata where x_i
/// is the last nonzero coordinate (scaled to 1). The strata are disjoint, so the
/// count is a plain sum of affine counts.
inline std::uint64_t count_points_projective(const AffineVariety& x, unsigned n, const CountOptions& opt = {}) {
    const unsigned k = x.vars;
    std::vector<VarietyEquation> hom;
    for (const auto& eq : x.equations) {
        const int d = total_degree(eq);
        VarietyEquation h;
        for (const auto& t : eq) {
            auto e = t.exps;
            int s = 0;
            for (auto v : e) s += static_cast<int>(v);
            e.push_back(static_cast<unsigned>(d - s));
            h.push_back({t.coeff, std::move(e)});
        }
        hom.push_back(std::move(h));
    }
    std::uint64_t total = count_points(x, n, opt);
    for (unsigned i = 0; i < k; ++i) {
        std::vector<detail::Slot> slots(k + 1, detail::Slot::zero);
        for (unsigned j = 0; j < i; ++j) slots[j] = detail::Slot::free;
        slots[i] = detail::Slot::one;
        total += count_points(detail::restrict_to_stratum(x.p, hom, slots), n, opt);
    }
    return total;
}

struct PointCountTable {
    std::uint64_t p = 2;
    std::vector<std::uint64_t> counts;  // counts[n-1] = N_n
    std::size_t order() const noexcept { return counts.size(); }
};

inline PointCountTable point_count_table(const AffineVariety& x, std::size_t m, bool projective,
                                         const CountOptions& opt = {}) {
    PointCountTable t{x.p, {}};
    for (std::size_t n = 1; n <= m; ++n) {
        t.counts.push_back(projective ? count_points_projective(x, static_cast<unsigned>(n), opt)
                                      : count_points(x, static_cast<unsigned>(n), opt));
    }
    return t;
}

/// exp(sum N_n t^n / n) to order m.
inline TruncatedSeries<Rationals> zeta_series(const PointCountTable& table) {
    const Rationals q;
    TruncatedSeries<Rationals> s(q, table.order());
    for (std::size_t n = 1; n <= table.order(); ++n)
        s[n] = Rational(Integer(table.counts[n - 1])) / static_cast<long long>(n);
    return series_exp(s);
}

/// Z(t) as an integral Witt vector. Z = exp(sum N_n t^n/n) has t dlog Z = sum N_n t^n,
/// so its additive inverse carries the counts as ghost components.
inline WittVector<Integers> zeta_rational(const PointCountTable& table, std::size_t dnum, std::size_t dden) {
    static const std::string failure = "zeta not rational at given degrees";
    if (table.order() < dnum + dden) throw math_error(failure + ": need at least dnum + dden counts");
    const auto s = zeta_series(table);
    std::optional<WittVector<Rationals>> z;
    try {
        auto [p, q] = pade_reconstruct(s, dnum, dden);
        z.emplace(p, q);
    } catch (const math_error&) {
        throw math_error(failure);
    }
    const Integers zz;
    std::vector<Integer> num, den;
    for (const auto& c : z->num().coeffs()) {
        if (denominator(c) != 1) throw math_error(failure + ": coefficients not integral");
        num.push_back(numerator(c));
    }
    for (const auto& c : z->den().coeffs()) {
        if (denominator(c) != 1) throw math_error(failure + ": coefficients not integral");
        den.push_back(numerator(c));
    }
    WittVector<Integers> out(Polynomial<Integers>(zz, std::move(num)), Polynomial<Integers>(zz, std::move(den)));
    const auto g = ghost(witt_neg(out), table.order());
    for (std::size_t n = 1; n <= table.order(); ++n)
        if (g[n] != Integer(table.counts[n - 1])) throw math_error(failure + ": ghost mismatch at n = " + std::to_string(n));
    return out;
}

/// Numerator 1 - a t + p t^2 of an elliptic zeta, with the Hasse bound.
struct HasseReport {
    Integer a = 0;
    Integer leading = 0;      // t^2 coefficient, the product of the reciprocal roots
    std::uint64_t bound = 0;  // floor(2 sqrt p)
    bool ok = false;
};

inline HasseReport hasse_check(const WittVector<Integers>& zeta, std::uint64_t p) {
    HasseReport r;
    const auto& num = zeta.num();
    r.bound = num::isqrt(4 * p);
    if (num.degree() != 2) return r;
    r.a = -num.coeff(1);
    r.leading = num.coeff(2);
    const Integer abs_a = r.a < 0 ? Integer(-r.a) : r.a;
    const Integers zz;
    const auto expected_den = Polynomial<Integers>::from_ints(zz, {1, -1}) *
                              Polynomial<Integers>::from_ints(zz, {1, -static_cast<std::int64_t>(p)});
    r.ok = abs_a <= r.bound && r.leading == Integer(p) && zeta.den() == expected_den;
    return r;
}

// ---------------------------------------------------------------------------
// Product formulas.

inline constexpr std::uint64_t trial_division_bound = 1'000'000;

namespace detail {

inline const std::vector<std::uint64_t>& trial_primes() {
    static const auto primes = num::primes_up_to(trial_division_bound);
    return primes;
}

/// Factorisation of |n| >= 1 by trial division up to the fixed bound.
inline std::vector<std::pair<std::uint64_t, int>> factor_trial(Integer n) {
    if (n < 0) n = -n;
    std::vector<std::pair<std::uint64_t, int>> out;
    for (auto p : trial_primes()) {
        if (Integer(p) * p > n) break;
        int e = 0;
        while (n % p == 0) {
            n /= p;
            ++e;
        }
        if (e > 0) out.emplace_back(p, e);
    }
    if (n > 1) {
        if (n > Integer(trial_division_bound) * trial_division_bound)
            throw math_error("cannot factor beyond trial division bound " + std::to_string(trial_division_bound));
        out.emplace_back(n.convert_to<std::uint64_t>(), 1);
    }
    return out;
}

inline double log_abs(Integer n) {
    if (n < 0) n = -n;
    const auto bits = boost::multiprecision::msb(n);
    if (bits < 1000) return std::log(n.convert_to<double>());
    const auto shift = bits - 60;
    return std::log((n >> shift).convert_to<double>()) + static_cast<double>(shift) * std::log(2.0);
}

class KahanSum {
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

struct ProductFormulaReport {
    std::vector<std::pair<std::uint64_t, int>> valuations;  // (p, ord_p f), ascending p
    double log_abs = 0;   // log |f|
    double defect = 0;    // |sum ord_p log p - log |f||
    double scale = 1;     // 1 + sum |ord_p| log p
    bool ok = false;      // defect < 1e-12 * scale
};

inline constexpr double product_formula_tolerance = 1e-12;

inline ProductFormulaReport product_formula_defect(const Rational& f) {
    if (f == 0) throw math_error("product formula: f must be nonzero");
    ProductFormulaReport r;
    std::map<std::uint64_t, int> ord;
    for (auto [p, e] : detail::factor_trial(numerator(f))) ord[p] += e;
    for (auto [p, e] : detail::factor_trial(denominator(f))) ord[p] -= e;
    detail::KahanSum sum;
    detail::KahanSum scale;
    scale.add(1.0);
    for (auto [p, e] : ord) {
        r.valuations.emplace_back(p, e);
        const double lp = std::log(static_cast<double>(p));
        sum.add(e * lp);
        scale.add(std::abs(e) * lp);
    }
    r.log_abs = detail::log_abs(numerator(f)) - detail::log_abs(denominator(f));
    sum.add(-r.log_abs);
    r.defect = std::abs(sum.value());
    r.scale = scale.value();
    r.ok = r.defect < product_formula_tolerance * r.scale;
    return r;
}

namespace detail {

/// Degree first, then coefficients from the top.
inline bool place_order(const std::pair<Polynomial<PrimeField>, int>& a, const std::pair<Polynomial<PrimeField>, int>& b) {
    if (a.first.degree() != b.first.degree()) return a.first.degree() < b.first.degree();
    for (int i = a.first.degree(); i >= 0; --i) {
        const auto u = static_cast<std::size_t>(i);
        if (a.first.coeff(u).value() != b.first.coeff(u).value()) return a.first.coeff(u).value() < b.first.coeff(u).value();
    }
    return false;
}

}  // namespace detail

/// Monic irreducible factorisation by trial division with monic polynomials of
/// increasing degree. Returns the factors with multiplicities and the unit.
inline std::pair<PrimeFieldElem, std::vector<std::pair<Polynomial<PrimeField>, int>>> factor_over_prime_field(
    const Polynomial<PrimeField>& f) {
    if (f.is_zero()) throw math_error("cannot factor the zero polynomial");
    const auto& fp = f.ring();
    const std::uint64_t p = fp.p;
    auto rest = monic(f);
    std::vector<std::pair<Polynomial<PrimeField>, int>> out;
    for (int d = 1; 2 * d <= rest.degree(); ++d) {
        const auto count = std::pow(static_cast<long double>(p), d);
        if (count > 1e7L) throw math_error("factorisation needs too many trial divisors");
        const auto total = static_cast<std::uint64_t>(count);
        for (std::uint64_t tail = 0; tail < total && 2 * d <= rest.degree(); ++tail) {
            std::vector<PrimeFieldElem> c;
            for (std::uint64_t v = tail, i = 0; i < static_cast<std::uint64_t>(d); ++i, v /= p) c.push_back(fp.from_int(static_cast<std::int64_t>(v % p)));
            c.push_back(fp.one());
            Polynomial<PrimeField> pi(fp, std::move(c));
            int e = 0;
            for (;;) {
                auto [quo, rem] = divmod(rest, pi);
                if (!rem.is_zero()) break;
                rest = std::move(quo);
                ++e;
            }
            if (e > 0) out.emplace_back(std::move(pi), e);
        }
    }
    if (rest.degree() >= 1) {
        bool merged = false;
        for (auto& [pi, e] : out)
            if (pi == rest) {
                ++e;
                merged = true;
            }
        if (!merged) out.emplace_back(rest, 1);
    }
    std::sort(out.begin(), out.end(), detail::place_order);
    return {f.lead(), out};
}

struct FunctionFieldReport {
    std::vector<std::pair<Polynomial<PrimeField>, int>> valuations;  // finite places with nonzero order
    int ord_infinity = 0;
    std::int64_t sum = 0;  // must be 0
};

/// Degree-weighted orders of num/den over the finite places of P^1 plus the place at infinity.
inline FunctionFieldReport function_field_product_formula(const Polynomial<PrimeField>& num,
                                                          const Polynomial<PrimeField>& den) {
    if (num.is_zero()) throw math_error("function field product formula: f must be nonzero");
    if (den.is_zero()) throw math_error("function field product formula: zero denominator");
    FunctionFieldReport r;
    std::vector<std::pair<Polynomial<PrimeField>, int>> all = factor_over_prime_field(num).second;
    for (auto& [pi, e] : factor_over_prime_field(den).second) {
        auto it = std::find_if(all.begin(), all.end(), [&](const auto& x) { return x.first == pi; });
        if (it == all.end())
            all.emplace_back(pi, -e);
        else
            it->second -= e;
    }
    for (auto& [pi, e] : all) {
        if (e == 0) continue;
        r.sum += static_cast<std::int64_t>(e) * pi.degree();
        r.valuations.emplace_back(pi, e);
    }
    std::sort(r.valuations.begin(), r.valuations.end(), detail::place_order);
    r.ord_infinity = den.degree() - num.degree();
    r.sum += r.ord_infinity;
    return r;
}

// ---------------------------------------------------------------------------
// Closed points and Euler/Ruelle products.

enum class LedgerKind { spec_z, quadratic, projective_line };

struct LedgerSource {
    LedgerKind kind = LedgerKind::spec_z;
    std::int64_t d = 0;   // quadratic discriminant
    std::uint64_t q = 0;  // field size for P^1

    static LedgerSource spec_z() { return {}; }
    static LedgerSource quadratic(std::int64_t d) { return {LedgerKind::quadratic, d, 0}; }
    static LedgerSource projective_line(std::uint64_t q) { return {LedgerKind::projective_line, 0, q}; }

    std::string describe() const {
        switch (kind) {
            case LedgerKind::spec_z: return "spec Z";
            case LedgerKind::quadratic: return "quadratic " + std::to_string(d);
            case LedgerKind::projective_line: return "P1 over F_" + std::to_string(q);
        }
        return "?";
    }
};

struct LedgerEntry {
    std::uint64_t norm = 0;
    double length = 0;  // log norm
    std::uint64_t multiplicity = 0;
};

struct ClosedPointLedger {
    LedgerSource source;
    std::uint64_t bound = 0;
    std::vector<LedgerEntry> entries;  // ascending norm
};

inline bool is_squarefree(std::int64_t n) {
    if (n < 0) n = -n;
    for (std::int64_t k = 2; k * k <= n; ++k)
        if (n % (k * k) == 0) return false;
    return n != 0;
}

inline bool is_fundamental_discriminant(std::int64_t d) {
    if (d == 0 || d == 1) return false;
    const auto r = num::reduce(d, 4);
    if (r == 1) return is_squarefree(d);
    if (r != 0) return false;
    const auto m = d / 4;
    const auto rm = num::reduce(m, 4);
    return (rm == 2 || rm == 3) && is_squarefree(m);
}

namespace detail {

inline std::uint64_t count_monic_irreducibles(std::uint64_t q, unsigned degree) {
    const PrimeField fp(q);
    const auto total = static_cast<std::uint64_t>(std::pow(static_cast<long double>(q), degree));
    std::uint64_t count = 0;
    for (std::uint64_t tail = 0; tail < total; ++tail) {
        std::vector<PrimeFieldElem> c;
        for (std::uint64_t v = tail, i = 0; i < degree; ++i, v /= q) c.push_back(fp.from_int(static_cast<std::int64_t>(v % q)));
        c.push_back(fp.one());
        if (is_irreducible(Polynomial<PrimeField>(fp, std::move(c)))) ++count;
    }
    return count;
}

}  // namespace detail

inline constexpr std::uint64_t ledger_norm_cap = 1ULL << 22;

inline ClosedPointLedger closed_points(const LedgerSource& source, double bound) {
    if (!(bound >= 0) || !std::isfinite(bound)) throw math_error("closed_points: bound must be a finite nonnegative number");
    ClosedPointLedger ledger;
    ledger.source = source;
    ledger.bound = static_cast<std::uint64_t>(std::floor(bound));
    std::map<std::uint64_t, std::uint64_t> mult;
    switch (source.kind) {
        case LedgerKind::spec_z:
            if (ledger.bound > 100'000'000) throw math_error("closed_points: bound too large");
            for (auto p : num::primes_up_to(ledger.bound)) mult[p] += 1;
            break;
        case LedgerKind::quadratic: {
            const auto d = source.d;
            if (d > 10'000 || d < -10'000) throw math_error("closed_points: |d| must be <= 10^4");
            if (!is_fundamental_discriminant(d))
                throw math_error("closed_points: " + std::to_string(d) +
                                 " is not a fundamental discriminant (use the field discriminant, e.g. -4 for Q(i))");
            if (ledger.bound > 100'000'000) throw math_error("closed_points: bound too large");
            for (auto p : num::primes_up_to(ledger.bound)) {
                const int k = kronecker_symbol(d, p);
                if (k == 1) mult[p] += 2;
                else if (k == 0) mult[p] += 1;
                else if (p <= ledger.bound / p) mult[p * p] += 1;
            }
            break;
        }
        case LedgerKind::projective_line: {
            const auto q = source.q;
            if (q < 2 || !num::is_prime_trial(q)) throw math_error("closed_points: P1 needs a prime field size");
            std::uint64_t norm = q;
            for (unsigned e = 1; norm <= ledger.bound; ++e) {
                if (norm > ledger_norm_cap) throw math_error("closed_points: enumeration of degree " + std::to_string(e) + " too large");
                auto c = detail::count_monic_irreducibles(q, e);
                if (e == 1) c += 1;  // the point at infinity
                mult[norm] += c;
                if (norm > ledger.bound / q) break;
                norm *= q;
            }
            break;
        }
    }
    for (auto [n, m] : mult) ledger.entries.push_back({n, std::log(static_cast<double>(n)), m});
    return ledger;
}

struct EulerRuelleReport {
    double s = 0;
    double euler = 1;
    double ruelle = 1;
    std::optional<double> reference;  // exact zeta value of the source, when available
    std::optional<double> gap;        // |euler - reference|
};

/// zeta(s) for s > 1: sum_{n < N} n^-s plus the Euler-Maclaurin tail at N = 10^6.
inline double riemann_zeta_reference(double s) {
    if (!(s > 1)) throw math_error("zeta reference needs s > 1");
    constexpr std::uint64_t big_n = 1'000'000;
    long double sum = 0;
    long double c = 0;
    for (std::uint64_t n = big_n - 1; n >= 1; --n) {
        const long double y = std::pow(static_cast<long double>(n), -static_cast<long double>(s)) - c;
        const long double t = sum + y;
        c = (t - sum) - y;
        sum = t;
    }
    const long double n = big_n;
    const long double ls = s;
    const long double tail = std::pow(n, 1 - ls) / (ls - 1) + std::pow(n, -ls) / 2 + ls * std::pow(n, -ls - 1) / 12 -
                             ls * (ls + 1) * (ls + 2) * std::pow(n, -ls - 3) / 720;
    return static_cast<double>(sum + tail);
}

/// Truncated Euler product over norms and Ruelle product over lengths of the ledger,
/// restricted to norms <= bound. Both are accumulated in long double in ledger order.
inline EulerRuelleReport euler_vs_ruelle(const ClosedPointLedger& ledger, double s, std::optional<double> bound = {}) {
    if (!(s > 1)) throw math_error("euler_vs_ruelle: s must be > 1");
    const double limit = bound.value_or(static_cast<double>(ledger.bound));
    long double euler = 1;
    long double ruelle = 1;
    const long double ls = s;
    for (const auto& e : ledger.entries) {
        if (static_cast<double>(e.norm) > limit) break;
        const long double fe = 1 / (1 - std::pow(static_cast<long double>(e.norm), -ls));
        const long double fr = 1 / (1 - std::exp(-ls * std::log(static_cast<long double>(e.norm))));
        for (std::uint64_t k = 0; k < e.multiplicity; ++k) {
            euler *= fe;
            ruelle *= fr;
        }
    }
    EulerRuelleReport r;
    r.s = s;
    r.euler = static_cast<double>(euler);
    r.ruelle = static_cast<double>(ruelle);
    if (ledger.source.kind == LedgerKind::spec_z) {
        r.reference = riemann_zeta_reference(s);
    } else if (ledger.source.kind == LedgerKind::projective_line) {
        const double t = std::pow(static_cast<double>(ledger.source.q), -s);
        r.reference = 1 / ((1 - t) * (1 - static_cast<double>(ledger.source.q) * t));
    }
    if (r.reference) r.gap = std::abs(r.euler - *r.reference);
    return r;
}

/// Number of representable doubles strictly between a and b, plus one (0 when equal).
inline std::uint64_t ulp_distance(double a, double b) {
    if (a == b) return 0;
    if (std::isnan(a) || std::isnan(b)) return std::numeric_limits<std::uint64_t>::max();
    auto key = [](double x) {
        std::int64_t i;
        std::memcpy(&i, &x, sizeof i);
        return i < 0 ? std::numeric_limits<std::int64_t>::min() - i : i;
    };
    const auto ka = key(a);
    const auto kb = key(b);
    return ka > kb ? static_cast<std::uint64_t>(ka - kb) : static_cast<std::uint64_t>(kb - ka);
}

}  // namespace wittrat
