#include <gtest/gtest.h>

#include "test_support.hpp"
#include "wittrat/parse.hpp"
#include "wittrat/witt.hpp"

using namespace wittrat;
using wittrat::testing::make_rng;
using wittrat::testing::random_witt;
using wittrat::testing::uniform;

namespace {

const Integers Z;
const Rationals Q;

WittVector<Integers> wz(std::initializer_list<std::int64_t> num, std::initializer_list<std::int64_t> den = {1}) {
    return WittVector<Integers>(Polynomial<Integers>::from_ints(Z, num), Polynomial<Integers>::from_ints(Z, den));
}

GhostSequence<Rationals> qghost(std::vector<std::int64_t> v) {
    GhostSequence<Rationals> g{Q, {}};
    for (auto x : v) g.values.emplace_back(x);
    return g;
}

std::vector<Integer> ints(const GhostSequence<Integers>& g) { return g.values; }

}  // namespace

TEST(WittAdd, TeichmullerSumIsProduct) {
    EXPECT_EQ(witt_add(teichmuller(Z, Integer(2)), teichmuller(Z, Integer(3))), wz({1, -5, 6}));
}

TEST(WittAdd, ZeroAndNegation) {
    auto rng = make_rng(21);
    for (int i = 0; i < 20; ++i) {
        auto f = random_witt(rng, Z);
        EXPECT_EQ(witt_add(f, witt_zero(Z)), f);
        EXPECT_EQ(witt_add(f, witt_neg(f)), witt_zero(Z));
    }
    const auto f = wz({1, -2}, {1, -3});
    EXPECT_EQ(witt_neg(f), wz({1, -3}, {1, -2}));
    EXPECT_EQ(witt_add(f, witt_neg(f)), wz({1}));
}

TEST(WittVector, CanonicalForm) {
    // (2 - 4t)/(2 - 6t) is the Witt vector (1 - 2t)/(1 - 3t).
    EXPECT_EQ(wz({2, -4}, {2, -6}), wz({1, -2}, {1, -3}));
    EXPECT_EQ(wz({1, -2, 1}, {1, -1}), wz({1, -1}));
    EXPECT_THROW(wz({2, -1}), math_error);
    EXPECT_THROW(wz({0, 1}, {0, 2}), math_error);  // t/(2t) = 1/2
    // (1 + t/2) is not an integral series.
    EXPECT_THROW(WittVector<Integers>(Polynomial<Integers>::from_ints(Z, {2, 1}), Polynomial<Integers>::from_ints(Z, {2})),
                 math_error);
}

TEST(Teichmuller, Examples) {
    EXPECT_EQ(teichmuller(Z, Integer(0)), witt_zero(Z));
    EXPECT_EQ(teichmuller(Z, Integer(1)), wz({1, -1}));
    EXPECT_EQ(teichmuller(Z, Integer(7)), wz({1, -7}));
    EXPECT_EQ(witt_one(Z), wz({1, -1}));
}

TEST(CompanionPair, Examples) {
    auto pair = companion_pair(wz({1, -5, 6}));
    EXPECT_EQ(pair.a.size(), 2U);
    EXPECT_EQ(pair.b.size(), 0U);
    EXPECT_EQ(det_one_minus_t(pair.a), Polynomial<Integers>::from_ints(Z, {1, -5, 6}));
    auto unit = companion_pair(witt_zero(Z));
    EXPECT_TRUE(unit.a.empty());
    EXPECT_TRUE(unit.b.empty());
    auto inv = companion_pair(wz({1}, {1, -3}));
    EXPECT_TRUE(inv.a.empty());
    ASSERT_EQ(inv.b.size(), 1U);
    EXPECT_EQ(inv.b(0, 0), 3);
}

TEST(CompanionPair, DeterminantRoundTrip) {
    auto rng = make_rng(22);
    for (int i = 0; i < 50; ++i) {
        auto f = random_witt(rng, Z, 5);
        auto pair = companion_pair(f);
        ASSERT_EQ(det_one_minus_t(pair.a), f.num());
        ASSERT_EQ(det_one_minus_t(pair.b), f.den());
        ASSERT_EQ(from_matrix_pair(pair), f);
    }
}

TEST(WittMul, Examples) {
    EXPECT_EQ(witt_mul(teichmuller(Z, Integer(2)), teichmuller(Z, Integer(3))), wz({1, -6}));
    EXPECT_EQ(witt_mul(wz({1, -5, 6}), wz({1, -5})), wz({1, -25, 150}));
    // ghost oracle for the last example: g_n = (2^n + 3^n) 5^n
    auto g = ghost(wz({1, -25, 150}), 5);
    for (unsigned n = 1; n <= 5; ++n)
        EXPECT_EQ(g[n], (num::pow(2, n) + num::pow(3, n)) * num::pow(5, n));
}

TEST(WittMul, IdentityIsOneMinusT) {
    auto rng = make_rng(23);
    const auto one = witt_one(Z);
    for (int i = 0; i < 30; ++i) {
        auto f = random_witt(rng, Z);
        ASSERT_EQ(witt_mul(f, one), f);
        // all ghosts of 1 - t are 1
        for (const auto& v : ghost(one, 8).values) ASSERT_EQ(v, 1);
    }
}

TEST(WittMul, ZeroAnnihilates) {
    auto rng = make_rng(24);
    for (int i = 0; i < 10; ++i) EXPECT_EQ(witt_mul(random_witt(rng, Z), witt_zero(Z)), witt_zero(Z));
}

TEST(WittMul, MatchesFromGhostOracle) {
    auto rng = make_rng(25);
    for (int i = 0; i < 40; ++i) {
        auto f = random_witt(rng, Z, 2);
        auto g = random_witt(rng, Z, 2);
        auto prod = witt_mul(f, g);
        const std::size_t dn = static_cast<std::size_t>(prod.num().degree());
        const std::size_t dd = static_cast<std::size_t>(prod.den().degree());
        const std::size_t order = std::max<std::size_t>(12, dn + dd + 4);
        auto pointwise = to_rational_ghost(ghost(f, order) * ghost(g, order));
        ASSERT_EQ(from_ghost(pointwise, dn, dd), to_rationals(prod));
    }
}

TEST(WittMul, CapIsEnforced) {
    auto f = wz({1, 1, 1, 1, 1, 1, 1, 1, 1});  // degree 8
    WittConfig small{.matrix_cap = 63};
    EXPECT_THROW((void)witt_mul(f, f, small), math_error);
    EXPECT_NO_THROW((void)witt_mul(f, f));
}

TEST(WittMul, OverPrimeFieldGhostsMultiply) {
    const PrimeField f5(5);
    auto rng = make_rng(26);
    for (int i = 0; i < 30; ++i) {
        auto f = random_witt(rng, f5);
        auto g = random_witt(rng, f5);
        ASSERT_EQ(ghost(witt_mul(f, g), 12), ghost(f, 12) * ghost(g, 12));
        ASSERT_EQ(ghost(witt_add(f, g), 12), ghost(f, 12) + ghost(g, 12));
    }
}

TEST(Ghost, Examples) {
    EXPECT_EQ(ints(ghost(teichmuller(Z, Integer(-4)), 4)), (std::vector<Integer>{-4, 16, -64, 256}));
    EXPECT_EQ(ints(ghost(witt_zero(Z), 5)), std::vector<Integer>(5, 0));
    EXPECT_EQ(ints(ghost(wz({1, -5, 6}), 3)), (std::vector<Integer>{5, 13, 35}));
    EXPECT_THROW((void)ghost(witt_zero(Z), 0), math_error);
}

TEST(FromGhost, Examples) {
    // ghost(1/(1 - t)) = (-1, -1, ...) under ghost([a]) = (a, a^2, ...)
    auto geometric = from_ghost(qghost(std::vector<std::int64_t>(8, -1)), 0, 1);
    EXPECT_EQ(geometric.num(), Polynomial<Rationals>::from_ints(Q, {1}));
    EXPECT_EQ(geometric.den(), Polynomial<Rationals>::from_ints(Q, {1, -1}));
    // ... and (1, 1, ...) belongs to the multiplicative identity 1 - t
    EXPECT_EQ(from_ghost(qghost(std::vector<std::int64_t>(8, 1)), 1, 0), witt_one(Q));
    EXPECT_THROW((void)from_ghost(qghost(std::vector<std::int64_t>(8, 1)), 0, 1), math_error);
    EXPECT_EQ(from_ghost(qghost(std::vector<std::int64_t>(6, 0)), 0, 0), witt_zero(Q));
    EXPECT_EQ(from_ghost(qghost({6, 36, 216, 1296}), 1, 0), teichmuller(Q, Rational(6)));
}

TEST(FromGhost, InvertsGhost) {
    auto rng = make_rng(27);
    for (int i = 0; i < 50; ++i) {
        auto f = to_rationals(random_witt(rng, Z));
        const auto dn = static_cast<std::size_t>(f.num().degree());
        const auto dd = static_cast<std::size_t>(f.den().degree());
        auto g = ghost(f, 12);
        auto back = from_ghost(g, dn, dd);
        ASSERT_EQ(back, f);
        ASSERT_EQ(ghost(back, 12), g);
    }
}

TEST(Frobenius, Examples) {
    EXPECT_EQ(frobenius(wz({1, -3}), 2), wz({1, -9}));
    EXPECT_EQ(frobenius(wz({1, -2}, {1, 4, -3}), 1), wz({1, -2}, {1, 4, -3}));
    EXPECT_EQ(frobenius(wz({1, -5, 6}), 2), wz({1, -13, 36}));
    EXPECT_THROW((void)frobenius(wz({1, -3}), 0), math_error);
}

TEST(Frobenius, ShiftsGhostIndices) {
    auto rng = make_rng(28);
    for (int i = 0; i < 30; ++i) {
        auto f = random_witt(rng, Z);
        const int nu = static_cast<int>(uniform(rng, 1, 5));
        auto gf = ghost(frobenius(f, nu), 6);
        auto g = ghost(f, static_cast<std::size_t>(6 * nu));
        for (std::size_t k = 1; k <= 6; ++k) ASSERT_EQ(gf[k], g[k * static_cast<std::size_t>(nu)]);
    }
}

TEST(Frobenius, IsRingHomomorphism) {
    auto rng = make_rng(29);
    for (int i = 0; i < 30; ++i) {
        auto f = random_witt(rng, Z, 2);
        auto g = random_witt(rng, Z, 2);
        const int nu = static_cast<int>(uniform(rng, 1, 6));
        ASSERT_EQ(frobenius(witt_add(f, g), nu), witt_add(frobenius(f, nu), frobenius(g, nu)));
        ASSERT_EQ(frobenius(witt_mul(f, g), nu), witt_mul(frobenius(f, nu), frobenius(g, nu)));
    }
}

TEST(Frobenius, OverPrimeFieldIsPthPowerOnCoefficients) {
    // For F_p coefficients F_p acts as the coefficient-wise p-th power, i.e. the identity on F_p.
    const PrimeField f5(5);
    auto rng = make_rng(30);
    for (int i = 0; i < 20; ++i) {
        auto f = random_witt(rng, f5);
        ASSERT_EQ(frobenius(f, 5), f);
    }
}

TEST(Verschiebung, Examples) {
    EXPECT_EQ(verschiebung(wz({1, -3}), 2), wz({1, 0, -3}));
    EXPECT_EQ(frobenius(verschiebung(wz({1, -3}), 2), 2), wz({1, -6, 9}));
    auto f = wz({1, 2}, {1, -1, 3});
    EXPECT_EQ(verschiebung(f, 1), f);
    EXPECT_THROW((void)verschiebung(f, -1), math_error);
    // ghosts of F_2 V_2 (1 - 3t) are 2 * 3^k
    auto g = ghost(frobenius(verschiebung(wz({1, -3}), 2), 2), 5);
    for (unsigned k = 1; k <= 5; ++k) EXPECT_EQ(g[k], 2 * num::pow(3, k));
}

TEST(Verschiebung, GhostRule) {
    auto rng = make_rng(31);
    for (int i = 0; i < 20; ++i) {
        auto f = random_witt(rng, Z);
        const int nu = static_cast<int>(uniform(rng, 1, 4));
        auto gv = ghost(verschiebung(f, nu), 12);
        auto g = ghost(f, 12);
        for (std::size_t k = 1; k <= 12; ++k) {
            const auto expected = k % static_cast<std::size_t>(nu) == 0 ? Integer(nu * g[k / static_cast<std::size_t>(nu)]) : Integer(0);
            ASSERT_EQ(gv[k], expected);
        }
    }
}

TEST(CanonicalProjection, Examples) {
    EXPECT_EQ(canonical_projection(wz({1, -7})), 7);
    EXPECT_EQ(canonical_projection(witt_zero(Z)), 0);
    EXPECT_EQ(canonical_projection(wz({1, -5, 6})), 5);
}

TEST(CanonicalProjection, AdditiveAndMultiplicativeOnTeichmuller) {
    auto rng = make_rng(32);
    for (int i = 0; i < 50; ++i) {
        auto f = random_witt(rng, Z);
        auto g = random_witt(rng, Z);
        ASSERT_EQ(canonical_projection(witt_add(f, g)), canonical_projection(f) + canonical_projection(g));
        ASSERT_EQ(canonical_projection(f), ghost(f, 1)[1]);
        const Integer a = uniform(rng, -20, 20);
        const Integer b = uniform(rng, -20, 20);
        ASSERT_EQ(canonical_projection(witt_mul(teichmuller(Z, a), teichmuller(Z, b))), a * b);
    }
}

TEST(ParseWitt, Examples) {
    auto f = parse_witt("(1-2*t)/(1-3*t)");
    EXPECT_EQ(f.num(), Polynomial<Rationals>::from_ints(Q, {1, -2}));
    EXPECT_EQ(f.den(), Polynomial<Rationals>::from_ints(Q, {1, -3}));
    try {
        (void)parse_witt("2-t");
        FAIL();
    } catch (const math_error& e) {
        EXPECT_NE(std::string(e.what()).find("not a Witt vector"), std::string::npos);
    }
    EXPECT_EQ(parse_witt("(1-t)^2/(1-t)"), parse_witt("1-t"));
}

TEST(ParseWitt, GrammarFeatures) {
    EXPECT_EQ(parse_witt("(1-2t)"), parse_witt("1 - 2*t"));
    EXPECT_EQ(parse_witt("1 - 1/2 t"), WittVector<Rationals>(Polynomial<Rationals>(Q, {1, Rational(-1, 2)})));
    EXPECT_EQ(parse_witt("(1-t)^-1"), witt_neg(parse_witt("1-t")));
    EXPECT_EQ(parse_witt("-t^2 + 1"), parse_witt("1 - t*t"));
    EXPECT_EQ(parse_witt("3(1-t) - 2"), parse_witt("1 - 3t"));
    EXPECT_EQ(parse_witt("(1-2t)", Z), wz({1, -2}));
    EXPECT_EQ(parse_witt("1 - 6t", PrimeField(5)), teichmuller(PrimeField(5), PrimeField(5).one()));
}

TEST(ParseWitt, ErrorsCarryPosition) {
    try {
        (void)parse_witt("(1-t");
        FAIL();
    } catch (const parse_error& e) {
        EXPECT_EQ(e.position(), 4U);
        EXPECT_EQ(e.expected(), "')'");
    }
    try {
        (void)parse_witt("1 + * t");
        FAIL();
    } catch (const parse_error& e) {
        EXPECT_EQ(e.position(), 4U);
    }
    EXPECT_THROW((void)parse_witt("1 - x"), parse_error);
    EXPECT_THROW((void)parse_witt("1/(t-t)"), parse_error);
    EXPECT_THROW((void)parse_witt("t^"), parse_error);
}

TEST(ParseWitt, PrintedFormRoundTrips) {
    auto rng = make_rng(33);
    for (int i = 0; i < 50; ++i) {
        auto f = to_rationals(random_witt(rng, Z));
        ASSERT_EQ(parse_witt(to_string(f)), f) << to_string(f);
    }
    auto half = WittVector<Rationals>(Polynomial<Rationals>(Q, {1, Rational(-5, 2), Rational(1, 3)}));
    EXPECT_EQ(parse_witt(to_string(half)), half);
}
