#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "test_support.hpp"
#include "wittrat/zeta.hpp"

using namespace wittrat;

namespace {

const Integers ZZ;

// y^2 = x^3 + a x + b in variables (x, y).
AffineVariety weierstrass(std::uint64_t p, std::int64_t a, std::int64_t b) {
    return AffineVariety::make(p, 2, {{{1, {0, 2}}, {-1, {3, 0}}, {-a, {1, 0}}, {-b, {0, 0}}}});
}

AffineVariety affine_line(std::uint64_t p) { return AffineVariety::make(p, 1, {}); }
AffineVariety empty_variety(std::uint64_t p) { return AffineVariety::make(p, 0, {{{1, {}}}}); }
AffineVariety point(std::uint64_t p) { return AffineVariety::make(p, 0, {}); }

// Oracle: affine points over F_p with plain integer arithmetic.
std::uint64_t brute_weierstrass(std::int64_t p, std::int64_t a, std::int64_t b) {
    std::uint64_t n = 0;
    for (std::int64_t x = 0; x < p; ++x)
        for (std::int64_t y = 0; y < p; ++y)
            if (((y * y - x * x * x - a * x - b) % p + p) % p == 0) ++n;
    return n;
}

// Oracle: N_n = q^n + 1 - (alpha^n + conj alpha^n), power sums from the trace a.
std::vector<std::int64_t> elliptic_counts_from_trace(std::int64_t p, std::int64_t a, std::size_t m) {
    std::vector<std::int64_t> s{2, a};
    for (std::size_t n = 2; n <= m; ++n) s.push_back(a * s[n - 1] - p * s[n - 2]);
    std::vector<std::int64_t> out;
    std::int64_t pn = 1;
    for (std::size_t n = 1; n <= m; ++n) {
        pn *= p;
        out.push_back(pn + 1 - s[n]);
    }
    return out;
}

PrimeFieldElem fe(const PrimeField& f, std::int64_t v) { return f.from_int(v); }

}  // namespace

TEST(CountPoints, EllipticOverF5) {
    EXPECT_EQ(brute_weierstrass(5, 1, 0), 3U);
    EXPECT_EQ(count_points(weierstrass(5, 1, 0), 1), 3U);
    EXPECT_EQ(count_points_projective(weierstrass(5, 1, 0), 1), 4U);
}

TEST(CountPoints, TrivialVarieties) {
    for (unsigned n = 1; n <= 3; ++n) {
        EXPECT_EQ(count_points(affine_line(3), n), static_cast<std::uint64_t>(std::pow(3, n)));
        EXPECT_EQ(count_points(AffineVariety::make(3, 1, {{}}), n), static_cast<std::uint64_t>(std::pow(3, n)));
        EXPECT_EQ(count_points(AffineVariety::make(3, 1, {{{1, {0}}}}), n), 0U);
        EXPECT_EQ(count_points(empty_variety(5), n), 0U);
        EXPECT_EQ(count_points(point(5), n), 1U);
        EXPECT_EQ(count_points_projective(affine_line(3), n), static_cast<std::uint64_t>(std::pow(3, n)) + 1);
    }
}

TEST(CountPoints, MatchesIntegerBruteForce) {
    for (std::uint64_t p : {3, 5, 7, 11, 13})
        for (std::int64_t a = 0; a < 3; ++a)
            for (std::int64_t b = 0; b < 3; ++b)
                EXPECT_EQ(count_points(weierstrass(p, a, b), 1), brute_weierstrass(static_cast<std::int64_t>(p), a, b));
}

TEST(CountPoints, ExtensionLevelsFollowTrace) {
    const auto a = 5 + 1 - 4;
    const auto expected = elliptic_counts_from_trace(5, a, 4);
    for (unsigned n = 1; n <= 4; ++n)
        EXPECT_EQ(static_cast<std::int64_t>(count_points_projective(weierstrass(5, 1, 0), n)), expected[n - 1]);
}

TEST(CountPoints, ThreadsDoNotChangeCounts) {
    CountOptions four;
    four.threads = 4;
    for (unsigned n = 1; n <= 3; ++n)
        EXPECT_EQ(count_points(weierstrass(7, 1, 1), n, four), count_points(weierstrass(7, 1, 1), n));
}

TEST(CountPoints, CapReportsBudget) {
    CountOptions tight;
    tight.cap = 100;
    try {
        (void)count_points(weierstrass(5, 1, 0), 2, tight);
        FAIL();
    } catch (const math_error& e) {
        EXPECT_NE(std::string(e.what()).find("625"), std::string::npos);
    }
}

TEST(Zeta, ProjectiveLine) {
    const auto table = point_count_table(affine_line(3), 6, true);
    const auto z = zeta_rational(table, 0, 2);
    const auto expected = Polynomial<Integers>::from_ints(ZZ, {1, -1}) * Polynomial<Integers>::from_ints(ZZ, {1, -3});
    EXPECT_EQ(z.num(), Polynomial<Integers>::one(ZZ));
    EXPECT_EQ(z.den(), expected);
    // ghost oracle: 1^n + 3^n
    const auto g = ghost(witt_neg(z), 6);
    for (std::size_t n = 1; n <= 6; ++n) EXPECT_EQ(g[n], 1 + num::pow(Integer(3), static_cast<unsigned>(n)));
}

TEST(Zeta, EmptyVarietyIsOne) {
    const auto z = zeta_rational(point_count_table(empty_variety(5), 4, false), 1, 1);
    EXPECT_EQ(z, witt_zero(ZZ));
}

TEST(Zeta, SeriesMatchesRationalExpansion) {
    const auto table = point_count_table(affine_line(3), 6, true);
    const auto s = zeta_series(table);
    const Rationals qq;
    const auto direct = TruncatedSeries<Rationals>::from_ratio(
        Polynomial<Rationals>::one(qq), Polynomial<Rationals>::from_ints(qq, {1, -4, 3}), 6);
    EXPECT_TRUE(s == direct);
}

TEST(Zeta, EllipticHasse) {
    struct Curve {
        std::uint64_t p;
        std::int64_t a, b;
    };
    for (const auto& c : {Curve{5, 1, 0}, Curve{7, 1, 1}}) {
        const auto table = point_count_table(weierstrass(c.p, c.a, c.b), 4, true);
        const auto z = zeta_rational(table, 2, 2);
        const auto h = hasse_check(z, c.p);
        EXPECT_TRUE(h.ok) << to_string(z);
        EXPECT_EQ(h.leading, Integer(c.p));
        const auto trace = static_cast<std::int64_t>(c.p) + 1 -
                           static_cast<std::int64_t>(brute_weierstrass(static_cast<std::int64_t>(c.p), c.a, c.b)) - 1;
        EXPECT_EQ(h.a, Integer(trace));
        // re-expansion oracle
        const auto counts = elliptic_counts_from_trace(static_cast<std::int64_t>(c.p), trace, 4);
        for (std::size_t n = 1; n <= 4; ++n) EXPECT_EQ(static_cast<std::int64_t>(table.counts[n - 1]), counts[n - 1]);
    }
}

TEST(Zeta, GhostEqualsCountsForSeveralVarieties) {
    struct Case {
        AffineVariety x;
        bool projective;
        std::size_t dnum, dden;
    };
    const std::vector<Case> cases{
        {empty_variety(5), false, 0, 0}, {point(5), false, 0, 1},       {affine_line(5), false, 0, 1},
        {affine_line(3), true, 0, 2},    {weierstrass(5, 1, 0), true, 2, 2}, {weierstrass(7, 1, 1), true, 2, 2},
    };
    for (const auto& c : cases) {
        const auto table = point_count_table(c.x, 4, c.projective);
        const auto z = zeta_rational(table, c.dnum, c.dden);
        const auto g = ghost(witt_neg(z), 4);
        for (std::size_t n = 1; n <= 4; ++n) EXPECT_EQ(g[n], Integer(table.counts[n - 1]));
    }
}

TEST(Zeta, WrongDegreesRejected) {
    const auto table = point_count_table(weierstrass(5, 1, 0), 4, true);
    EXPECT_THROW((void)zeta_rational(table, 1, 1), math_error);
    EXPECT_THROW((void)zeta_rational(table, 3, 3), math_error);
}

TEST(ProductFormula, Examples) {
    EXPECT_TRUE(product_formula_defect(Rational(12, 5)).ok);
    EXPECT_EQ(product_formula_defect(Rational(1)).defect, 0.0);
    const auto r = product_formula_defect(Rational(-360, 77));
    EXPECT_TRUE(r.ok);
    const std::vector<std::pair<std::uint64_t, int>> expected{{2, 3}, {3, 2}, {5, 1}, {7, -1}, {11, -1}};
    EXPECT_EQ(r.valuations, expected);
    EXPECT_THROW((void)product_formula_defect(Rational(0)), math_error);
}

TEST(ProductFormula, RandomRationals) {
    auto rng = wittrat::testing::make_rng(51);
    for (int i = 0; i < 1000; ++i) {
        const auto a = wittrat::testing::uniform(rng, 1, 999'999) * (wittrat::testing::uniform(rng, 0, 1) ? 1 : -1);
        const auto b = wittrat::testing::uniform(rng, 1, 999'999);
        const auto r = product_formula_defect(Rational(a, b));
        EXPECT_TRUE(r.ok) << a << "/" << b << " defect " << r.defect;
    }
}

TEST(ProductFormula, LargePrimeCofactor) {
    // 999983 is the largest prime below 10^6; its square is still within range
    const Integer big = Integer(999983) * 999983;
    EXPECT_TRUE(product_formula_defect(Rational(big, 2)).ok);
    EXPECT_THROW((void)product_formula_defect(Rational(Integer(1000003) * 1000033)), math_error);
}

TEST(FunctionFieldProductFormula, Examples) {
    const PrimeField f3(3);
    const auto x2p1 = Polynomial<PrimeField>(f3, {fe(f3, 1), fe(f3, 0), fe(f3, 1)});
    const auto x = Polynomial<PrimeField>::monomial(f3, f3.one(), 1);
    const auto one = Polynomial<PrimeField>::one(f3);
    const auto r = function_field_product_formula(x2p1, x);
    EXPECT_EQ(r.sum, 0);
    EXPECT_EQ(r.ord_infinity, -1);
    ASSERT_EQ(r.valuations.size(), 2U);
    EXPECT_EQ(r.valuations[0].first, x);
    EXPECT_EQ(r.valuations[0].second, -1);
    EXPECT_EQ(r.valuations[1].first, x2p1);
    EXPECT_EQ(function_field_product_formula(one, one).sum, 0);
    EXPECT_EQ(function_field_product_formula(x, one).sum, 0);
    EXPECT_THROW((void)function_field_product_formula(Polynomial<PrimeField>(f3), one), math_error);
}

TEST(FunctionFieldProductFormula, FactorisationIsExact) {
    auto rng = wittrat::testing::make_rng(52);
    for (std::uint64_t p : {2, 3, 5}) {
        const PrimeField fp(p);
        for (int i = 0; i < 30; ++i) {
            const auto f = wittrat::testing::random_unit_poly(rng, fp, static_cast<int>(wittrat::testing::uniform(rng, 1, 7)), 4);
            const auto [unit, factors] = factor_over_prime_field(f);
            auto prod = Polynomial<PrimeField>::constant(fp, unit);
            for (const auto& [pi, e] : factors) {
                EXPECT_TRUE(is_irreducible(pi));
                EXPECT_EQ(pi.lead(), fp.one());
                prod = prod * pi.pow(static_cast<unsigned>(e));
            }
            EXPECT_EQ(prod, f);
        }
    }
}

TEST(FunctionFieldProductFormula, RandomFunctionsSumToZero) {
    auto rng = wittrat::testing::make_rng(53);
    for (std::uint64_t p : {2, 3, 5}) {
        const PrimeField fp(p);
        for (int i = 0; i < 67; ++i) {
            auto rand_poly = [&] {
                std::vector<PrimeFieldElem> c;
                const auto d = wittrat::testing::uniform(rng, 0, 8);
                for (int k = 0; k <= d; ++k) c.push_back(fp.from_int(wittrat::testing::uniform(rng, 0, static_cast<std::int64_t>(p) - 1)));
                c.back() = fp.from_int(wittrat::testing::uniform(rng, 1, static_cast<std::int64_t>(p) - 1));
                return Polynomial<PrimeField>(fp, std::move(c));
            };
            EXPECT_EQ(function_field_product_formula(rand_poly(), rand_poly()).sum, 0);
        }
    }
}

TEST(ClosedPoints, SpecZ) {
    const auto l = closed_points(LedgerSource::spec_z(), 10);
    ASSERT_EQ(l.entries.size(), 4U);
    const std::vector<std::uint64_t> norms{2, 3, 5, 7};
    for (std::size_t i = 0; i < 4; ++i) {
        EXPECT_EQ(l.entries[i].norm, norms[i]);
        EXPECT_EQ(l.entries[i].multiplicity, 1U);
        EXPECT_EQ(l.entries[i].length, std::log(static_cast<double>(norms[i])));
    }
}

TEST(ClosedPoints, GaussianIntegers) {
    const auto l = closed_points(LedgerSource::quadratic(-4), 30);
    auto find = [&](std::uint64_t n) -> std::uint64_t {
        for (const auto& e : l.entries)
            if (e.norm == n) return e.multiplicity;
        return 0;
    };
    EXPECT_EQ(find(5), 2U);   // 5 = (2+i)(2-i)
    EXPECT_EQ(find(2), 1U);   // ramified
    EXPECT_EQ(find(3), 0U);   // inert
    EXPECT_EQ(find(9), 1U);
    EXPECT_EQ(find(13), 2U);
    EXPECT_THROW((void)closed_points(LedgerSource::quadratic(-1), 30), math_error);
    EXPECT_THROW((void)closed_points(LedgerSource::quadratic(20), 30), math_error);
}

TEST(ClosedPoints, QuadraticResidueDegrees) {
    // Oracle: splitting by counting roots of x^2 - d mod p (or x^2 + x + (1-d)/4 when d = 1 mod 4).
    for (std::int64_t d : {-4, -3, -7, 5, 8, 13, -20, 21}) {
        const auto l = closed_points(LedgerSource::quadratic(d), 2000);
        std::map<std::uint64_t, std::uint64_t> m;
        for (const auto& e : l.entries) m[e.norm] = e.multiplicity;
        for (auto p : num::primes_up_to(44)) {
            const auto pi = static_cast<std::int64_t>(p);
            int roots = 0;
            for (std::int64_t x = 0; x < pi; ++x) {
                const std::int64_t v = (d % 4 == 0 || (d % 4 + 4) % 4 != 1) ? x * x - d / 4 : x * x + x + (1 - d) / 4;
                if ((v % pi + pi) % pi == 0) ++roots;
            }
            const std::uint64_t degree_sum = m[p] + 2 * m[p * p];
            if (d % pi == 0) {
                EXPECT_EQ(m[p], 1U) << d << " " << p;
            } else {
                EXPECT_EQ(degree_sum, 2U) << d << " " << p;
                EXPECT_EQ(m[p], roots == 2 ? 2U : 0U) << d << " " << p;
            }
        }
    }
}

TEST(ClosedPoints, ProjectiveLineOverF2) {
    const auto l = closed_points(LedgerSource::projective_line(2), 4);
    ASSERT_EQ(l.entries.size(), 2U);
    EXPECT_EQ(l.entries[0].norm, 2U);
    EXPECT_EQ(l.entries[0].multiplicity, 3U);
    EXPECT_EQ(l.entries[1].norm, 4U);
    EXPECT_EQ(l.entries[1].multiplicity, 1U);
}

TEST(ClosedPoints, IrreducibleCountsMatchNecklaceFormula) {
    auto mobius = [](unsigned n) {
        int mu = 1;
        for (unsigned k = 2; k <= n; ++k)
            if (n % k == 0) {
                n /= k;
                if (n % k == 0) return 0;
                mu = -mu;
            }
        return mu;
    };
    for (std::uint64_t q : {2, 3}) {
        const auto l = closed_points(LedgerSource::projective_line(q), q == 2 ? 1024 : 729);
        std::uint64_t qe = 1;
        for (unsigned e = 1; e <= l.entries.size(); ++e) {
            qe *= q;
            std::int64_t count = 0;
            for (unsigned d = 1; d <= e; ++d)
                if (e % d == 0) count += mobius(e / d) * static_cast<std::int64_t>(std::pow(q, d));
            count /= e;
            if (e == 1) count += 1;
            EXPECT_EQ(l.entries[e - 1].norm, qe);
            EXPECT_EQ(static_cast<std::int64_t>(l.entries[e - 1].multiplicity), count);
        }
    }
}

TEST(EulerRuelle, SpecZAgreesAndConverges) {
    const auto l100 = closed_points(LedgerSource::spec_z(), 100);
    const auto l1000 = closed_points(LedgerSource::spec_z(), 1000);
    const auto a = euler_vs_ruelle(l100, 2);
    const auto b = euler_vs_ruelle(l1000, 2);
    EXPECT_LE(ulp_distance(a.euler, a.ruelle), 4U);
    EXPECT_LE(ulp_distance(b.euler, b.ruelle), 4U);
    ASSERT_TRUE(a.reference && b.reference);
    EXPECT_NEAR(*a.reference, std::numbers::pi * std::numbers::pi / 6, 1e-14);
    EXPECT_LT(*b.gap, *a.gap);
}

TEST(EulerRuelle, EmptyLedger) {
    const auto r = euler_vs_ruelle(closed_points(LedgerSource::spec_z(), 1), 2);
    EXPECT_EQ(r.euler, 1.0);
    EXPECT_EQ(r.ruelle, 1.0);
    EXPECT_THROW((void)euler_vs_ruelle(closed_points(LedgerSource::spec_z(), 10), 1.0), math_error);
}

TEST(EulerRuelle, ProjectiveLineOverF2) {
    const auto r = euler_vs_ruelle(closed_points(LedgerSource::projective_line(2), 1024), 2);
    EXPECT_NEAR(*r.reference, 8.0 / 3.0, 1e-15);
    EXPECT_LT(*r.gap, 1e-3);
    EXPECT_LE(ulp_distance(r.euler, r.ruelle), 4U);
}

TEST(EulerRuelle, AnyLedgerWithinFourUlps) {
    for (double s : {1.5, 2.0, 3.0, 4.5}) {
        for (const auto& src : {LedgerSource::spec_z(), LedgerSource::quadratic(-4), LedgerSource::quadratic(5),
                                LedgerSource::projective_line(3)}) {
            const auto r = euler_vs_ruelle(closed_points(src, 5000), s);
            EXPECT_LE(ulp_distance(r.euler, r.ruelle), 4U) << src.describe() << " s=" << s;
        }
    }
}

TEST(Ulp, Distance) {
    EXPECT_EQ(ulp_distance(1.0, 1.0), 0U);
    EXPECT_EQ(ulp_distance(1.0, std::nextafter(1.0, 2.0)), 1U);
    EXPECT_EQ(ulp_distance(-0.0, 0.0), 0U);
    EXPECT_EQ(ulp_distance(std::nextafter(0.0, -1.0), std::nextafter(0.0, 1.0)), 2U);
}
