#include <gtest/gtest.h>

#include <algorithm>
#include <array>
#include <set>

#include "wittrat/reciprocity.hpp"

using namespace wittrat;

namespace {

// Oracle: exhaustive squares.
int squares_symbol(std::int64_t a, std::int64_t p) {
    const auto r = ((a % p) + p) % p;
    if (r == 0) return 0;
    for (std::int64_t x = 1; x < p; ++x)
        if (x * x % p == r) return 1;
    return -1;
}

bool pairwise_trivial(std::uint64_t p, std::uint64_t l, std::uint64_t q) {
    auto s = [](std::uint64_t a, std::uint64_t b) { return squares_symbol(static_cast<std::int64_t>(a), static_cast<std::int64_t>(b)); };
    return s(p, l) == 1 && s(p, q) == 1 && s(l, q) == 1;
}

}  // namespace

TEST(Legendre, Examples) {
    EXPECT_EQ(legendre(5, 41), 1);
    EXPECT_EQ(legendre(0, 7), 0);
    EXPECT_EQ(legendre(14, 7), 0);
    EXPECT_EQ(legendre(3, 7), -1);
    EXPECT_EQ(legendre(-1, 5), 1);
    EXPECT_THROW((void)legendre(3, 2), math_error);
    EXPECT_THROW((void)legendre(3, 15), math_error);
}

TEST(Legendre, AgreesWithSquaresBelow100) {
    for (auto p : num::primes_up_to(100)) {
        if (p == 2) continue;
        const auto pi = static_cast<std::int64_t>(p);
        for (std::int64_t a = -pi; a < 2 * pi; ++a) EXPECT_EQ(legendre(a, p), squares_symbol(a, pi)) << a << " " << p;
    }
}

TEST(Kronecker, PrimeTwo) {
    EXPECT_EQ(kronecker_symbol(-4, 2), 0);
    EXPECT_EQ(kronecker_symbol(5, 2), -1);
    EXPECT_EQ(kronecker_symbol(17, 2), 1);
    EXPECT_EQ(kronecker_symbol(-7, 2), 1);
    EXPECT_EQ(kronecker_symbol(-3, 2), -1);
}

TEST(ReciprocityCheck, Examples) {
    const auto a = reciprocity_check(13, 17);
    EXPECT_EQ(a.symbol_pl, a.symbol_lp);
    const auto b = reciprocity_check(3, 7);
    EXPECT_EQ(b.symbol_pl, -b.symbol_lp);
    const auto c = reciprocity_check(5, 3);
    EXPECT_EQ(c.symbol_pl, -1);
    EXPECT_EQ(c.symbol_lp, -1);
    EXPECT_EQ(c.p_mod4, 1U);
    EXPECT_EQ(c.l_mod4, 3U);
    EXPECT_THROW((void)reciprocity_check(7, 7), math_error);
}

TEST(LinkingTable, Examples) {
    const auto t12 = linking_table(12);
    EXPECT_EQ(t12.size(), 12U);
    EXPECT_TRUE(std::all_of(t12.begin(), t12.end(), [](const auto& e) { return e.relation_ok; }));
    EXPECT_TRUE(std::is_sorted(t12.begin(), t12.end(), [](const auto& x, const auto& y) {
        return std::pair(x.p, x.l) < std::pair(y.p, y.l);
    }));
    EXPECT_TRUE(linking_table(5).empty());
    EXPECT_THROW((void)linking_table(4), math_error);
}

TEST(LinkingTable, ExhaustiveBelow500) {
    const auto t = linking_table(500, 4);
    EXPECT_EQ(t.size(), 94U * 93U);  // 95 primes below 500, minus 2
    for (const auto& e : t) {
        ASSERT_TRUE(e.relation_ok) << e.p << " " << e.l;
        EXPECT_EQ(e.symbol_pl, squares_symbol(static_cast<std::int64_t>(e.p), static_cast<std::int64_t>(e.l)));
    }
    const auto serial = linking_table(500, 1);
    ASSERT_EQ(serial.size(), t.size());
    for (std::size_t i = 0; i < t.size(); ++i) EXPECT_EQ(std::pair(t[i].p, t[i].l), std::pair(serial[i].p, serial[i].l));
}

TEST(Redei, BorromeanTriple) {
    std::array<std::uint64_t, 3> v{5, 41, 61};
    std::sort(v.begin(), v.end());
    do {
        const auto r = redei_symbol(v[0], v[1], v[2]);
        EXPECT_EQ(r.symbol, -1) << v[0] << " " << v[1] << " " << v[2];
        EXPECT_EQ(r.symbol_pl, 1);
        EXPECT_EQ(r.symbol_pq, 1);
        EXPECT_EQ(r.symbol_lq, 1);
        const auto& s = r.solution;
        EXPECT_EQ(s.x * s.x, v[0] * s.y * s.y + v[1] * s.z * s.z);
        EXPECT_EQ(s.y % 2, 0U);
        EXPECT_GE(r.solutions_checked, 1U);
    } while (std::next_permutation(v.begin(), v.end()));
}

TEST(Redei, PreconditionsEnforced) {
    EXPECT_THROW((void)redei_symbol(5, 41, 7), math_error);    // 7 is not 1 mod 4
    EXPECT_THROW((void)redei_symbol(5, 13, 29), math_error);   // (5/13) = -1
    EXPECT_THROW((void)redei_symbol(5, 5, 41), math_error);
    EXPECT_THROW((void)redei_symbol(5, 41, 45), math_error);
}

TEST(Redei, ScanTriplesPermutationInvariant) {
    // Scan admissible triples with primes <= 200 (oracle for admissibility: exhaustive squares).
    std::vector<std::uint64_t> primes;
    for (auto p : num::primes_up_to(200))
        if (p % 4 == 1) primes.push_back(p);
    int admissible = 0;
    int plus = 0;
    int minus = 0;
    for (std::size_t i = 0; i < primes.size(); ++i)
        for (std::size_t j = i + 1; j < primes.size(); ++j)
            for (std::size_t k = j + 1; k < primes.size(); ++k) {
                std::array<std::uint64_t, 3> v{primes[i], primes[j], primes[k]};
                if (!pairwise_trivial(v[0], v[1], v[2])) continue;
                ++admissible;
                const int base = redei_symbol(v[0], v[1], v[2]).symbol;
                (base == 1 ? plus : minus) += 1;
                do {
                    EXPECT_EQ(redei_symbol(v[0], v[1], v[2]).symbol, base) << v[0] << " " << v[1] << " " << v[2];
                } while (std::next_permutation(v.begin(), v.end()));
            }
    EXPECT_GE(admissible, 5);
    EXPECT_GT(plus, 0);
    EXPECT_GT(minus, 0);
}

TEST(Redei, KnownPlusTriples) {
    EXPECT_EQ(redei_symbol(5, 29, 109).symbol, 1);
    EXPECT_EQ(redei_symbol(5, 29, 149).symbol, 1);
}
