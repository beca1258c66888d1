#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "wittrat/error.hpp"

namespace wittrat {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline Integer numerator(const Rational& q) { return boost::multiprecision::numerator(q); }
inline Integer denominator(const Rational& q) { return boost::multiprecision::denominator(q); }

inline std::string to_string(const Integer& z) { return z.str(); }

inline std::string to_string(const Rational& q) {
    if (denominator(q) == 1) return numerator(q).str();
    return numerator(q).str() + "/" + denominator(q).str();
}

inline bool fits_int64(const Integer& z) {
    return z >= std::numeric_limits<std::int64_t>::min() &&
           z <= std::numeric_limits<std::int64_t>::max();
}

namespace num {

inline std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

inline std::uint64_t powmod(std::uint64_t base, std::uint64_t exp, std::uint64_t m) {
    std::uint64_t result = 1 % m;
    base %= m;
    while (exp > 0) {
        if (exp & 1U) result = mulmod(result, base, m);
        base = mulmod(base, base, m);
        exp >>= 1U;
    }
    return result;
}

/// Least nonnegative residue of a signed value.
inline std::uint64_t reduce(std::int64_t a, std::uint64_t m) {
    const auto r = a % static_cast<std::int64_t>(m);
    return static_cast<std::uint64_t>(r < 0 ? r + static_cast<std::int64_t>(m) : r);
}

inline std::uint64_t reduce(const Integer& a, std::uint64_t m) {
    Integer r = a % m;
    if (r < 0) r += m;
    return static_cast<std::uint64_t>(r);
}

/// Trial division; intended for the desk-scale moduli used as coefficient fields.
inline bool is_prime_trial(std::uint64_t n) {
    if (n < 2) return false;
    if (n < 4) return true;
    if (n % 2 == 0) return false;
    for (std::uint64_t d = 3; d <= n / d; d += 2)
        if (n % d == 0) return false;
    return true;
}

/// Deterministic Miller-Rabin for all 64-bit inputs.
inline bool is_prime_u64(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t p : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
        if (n % p == 0) return n == p;
    }
    std::uint64_t d = n - 1;
    int s = 0;
    while ((d & 1U) == 0) {
        d >>= 1U;
        ++s;
    }
    for (std::uint64_t a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
        std::uint64_t x = powmod(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (int r = 1; r < s; ++r) {
            x = mulmod(x, x, n);
            if (x == n - 1) {
                composite = false;
                break;
            }
        }
        if (composite) return false;
    }
    return true;
}

inline std::vector<std::uint64_t> primes_up_to(std::uint64_t bound) {
    std::vector<std::uint64_t> primes;
    if (bound < 2) return primes;
    std::vector<bool> composite(bound + 1, false);
    for (std::uint64_t i = 2; i <= bound; ++i) {
        if (composite[i]) continue;
        primes.push_back(i);
        for (std::uint64_t j = i * i; j <= bound; j += i) composite[j] = true;
    }
    return primes;
}

/// Prime factorisation of a positive 64-bit value, ascending primes.
inline std::vector<std::pair<std::uint64_t, int>> factor_u64(std::uint64_t n) {
    std::vector<std::pair<std::uint64_t, int>> out;
    for (std::uint64_t d = 2; d <= n / d; d += (d == 2 ? 1 : 2)) {
        int e = 0;
        while (n % d == 0) {
            n /= d;
            ++e;
        }
        if (e > 0) out.emplace_back(d, e);
    }
    if (n > 1) out.emplace_back(n, 1);
    return out;
}

inline std::uint64_t euler_phi(std::uint64_t n) {
    std::uint64_t phi = n;
    for (const auto& [p, e] : factor_u64(n)) phi = phi / p * (p - 1);
    return phi;
}

inline std::uint64_t isqrt(std::uint64_t n) {
    auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<long double>(n)));
    while (r * r > n) --r;
    while ((r + 1) * (r + 1) <= n) ++r;
    return r;
}

inline Integer isqrt(const Integer& n) {
    if (n < 0) throw math_error("isqrt of a negative integer");
    return boost::multiprecision::sqrt(n);
}

/// Multiplicative order of a modulo m (gcd(a, m) = 1).
inline std::uint64_t multiplicative_order(std::uint64_t a, std::uint64_t m) {
    if (m == 1) return 1;
    std::uint64_t order = euler_phi(m);
    for (const auto& [q, e] : factor_u64(order)) {
        for (int i = 0; i < e && order % q == 0 && powmod(a, order / q, m) == 1; ++i) order /= q;
    }
    return order;
}

inline Integer pow(const Integer& base, unsigned exp) { return boost::multiprecision::pow(base, exp); }

}  // namespace num
}  // namespace wittrat
