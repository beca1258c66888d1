#pragma once

// Quadratic residue symbols as mod-2 linking numbers, and Redei's triple
// symbol for primes 1 mod 4 as the Borromean analogue.

#include <algorithm>
#include <array>
#include <cstdint>
#include <numeric>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "wittrat/error.hpp"
#include "wittrat/integer.hpp"

namespace wittrat {

/// (a/p) by Euler's criterion, for an odd prime p.
inline int legendre(const Integer& a, std::uint64_t p) {
    if (p % 2 == 0 || !num::is_prime_trial(p)) throw math_error("legendre: " + std::to_string(p) + " is not an odd prime");
    const auto r = num::reduce(a, p);
    if (r == 0) return 0;
    return num::powmod(r, (p - 1) / 2, p) == 1 ? 1 : -1;
}

inline int legendre(std::int64_t a, std::uint64_t p) { return legendre(Integer(a), p); }

/// Kronecker symbol (d/p) for a prime p, including p = 2.
inline int kronecker_symbol(std::int64_t d, std::uint64_t p) {
    if (p == 2) {
        if (d % 2 == 0) return 0;
        const auto r = num::reduce(d, 8);
        return (r == 1 || r == 7) ? 1 : -1;
    }
    return legendre(d, p);
}

struct LinkingEntry {
    std::uint64_t p = 0;
    std::uint64_t l = 0;
    int symbol_pl = 0;  // (p/l)
    int symbol_lp = 0;  // (l/p)
    unsigned p_mod4 = 0;
    unsigned l_mod4 = 0;
    bool relation_ok = false;
};

/// Symbols for a pair of distinct odd primes and whether they obey reciprocity:
/// equal unless both primes are 3 mod 4, in which case opposite.
inline LinkingEntry linking_entry(std::uint64_t p, std::uint64_t l) {
    if (p == l) throw math_error("linking entry needs distinct primes");
    LinkingEntry e;
    e.p = p;
    e.l = l;
    e.symbol_pl = legendre(static_cast<std::int64_t>(p), l);
    e.symbol_lp = legendre(static_cast<std::int64_t>(l), p);
    e.p_mod4 = static_cast<unsigned>(p % 4);
    e.l_mod4 = static_cast<unsigned>(l % 4);
    const bool both_three = e.p_mod4 == 3 && e.l_mod4 == 3;
    e.relation_ok = both_three ? e.symbol_pl == -e.symbol_lp : e.symbol_pl == e.symbol_lp;
    return e;
}

/// linking_entry, with a violation treated as an internal error.
inline LinkingEntry reciprocity_check(std::uint64_t p, std::uint64_t l) {
    auto e = linking_entry(p, l);
    if (!e.relation_ok)
        throw internal_error("quadratic reciprocity violated for (" + std::to_string(p) + ", " + std::to_string(l) + ")");
    return e;
}

/// All ordered pairs of distinct odd primes below bound, ordered by (p, l).
inline std::vector<LinkingEntry> linking_table(std::uint64_t bound, unsigned threads = 1) {
    if (bound < 5) throw math_error("linking table needs bound >= 5");
    std::vector<std::uint64_t> primes;
    for (auto p : num::primes_up_to(bound - 1))
        if (p != 2) primes.push_back(p);
    std::vector<std::vector<LinkingEntry>> rows(primes.size());
    auto work = [&](std::size_t begin, std::size_t step) {
        for (std::size_t i = begin; i < primes.size(); i += step)
            for (auto l : primes)
                if (l != primes[i]) rows[i].push_back(linking_entry(primes[i], l));
    };
    threads = std::max(1U, threads);
    if (threads == 1) {
        work(0, 1);
    } else {
        std::vector<std::jthread> pool;
        for (unsigned t = 0; t < threads; ++t) pool.emplace_back(work, t, threads);
    }
    std::vector<LinkingEntry> out;
    for (auto& r : rows) out.insert(out.end(), r.begin(), r.end());
    return out;
}

struct RedeiSolution {
    std::uint64_t x = 0;
    std::uint64_t y = 0;
    std::uint64_t z = 0;
};

struct RedeiResult {
    std::uint64_t p = 0, l = 0, q = 0;
    int symbol_pl = 0, symbol_pq = 0, symbol_lq = 0;
    RedeiSolution solution;       // first normalised solution found
    std::array<std::uint64_t, 2> roots{};  // the two square roots of p mod q
    std::size_t solutions_checked = 0;
    std::uint64_t search_bound = 0;
    int symbol = 0;
};

namespace detail {

inline std::uint64_t sqrt_mod_prime(std::uint64_t a, std::uint64_t q) {
    a %= q;
    for (std::uint64_t r = 0; r < q; ++r)
        if (num::mulmod(r, r, q) == a) return r;
    throw math_error("no square root mod " + std::to_string(q));
}

}  // namespace detail

inline constexpr std::uint64_t redei_initial_bound = 64;
inline constexpr std::uint64_t redei_absolute_cap = 1ULL << 20;

/// Redei's symbol [p, l, q]: from a primitive solution of x^2 = p y^2 + l z^2
/// with y even and x > 0, the Legendre symbol of x + y sqrt(p) at a prime of
/// Q(sqrt p) above q. Every normalised solution in the final search box and
/// both choices of sqrt(p) mod q are evaluated and must agree.
inline RedeiResult redei_symbol(std::uint64_t p, std::uint64_t l, std::uint64_t q) {
    for (auto v : {p, l, q}) {
        if (!num::is_prime_trial(v) || v % 4 != 1) throw math_error("redei: " + std::to_string(v) + " is not a prime 1 mod 4");
        if (v >= (1ULL << 20)) throw math_error("redei: primes must be below 2^20");
    }
    if (p == l || p == q || l == q) throw math_error("redei: primes must be distinct");
    RedeiResult res;
    res.p = p;
    res.l = l;
    res.q = q;
    res.symbol_pl = legendre(static_cast<std::int64_t>(p), l);
    res.symbol_pq = legendre(static_cast<std::int64_t>(p), q);
    res.symbol_lq = legendre(static_cast<std::int64_t>(l), q);
    if (res.symbol_pl != 1 || res.symbol_pq != 1 || res.symbol_lq != 1)
        throw math_error("redei: pairwise quadratic symbols must all be +1");
    const auto r = detail::sqrt_mod_prime(p, q);
    res.roots = {r, q - r};

    for (std::uint64_t bound = redei_initial_bound; bound <= redei_absolute_cap; bound *= 2) {
        std::optional<int> symbol;
        std::size_t checked = 0;
        for (std::uint64_t z = 1; z <= bound; ++z) {
            for (std::uint64_t y = 0; y <= bound; y += 2) {
                const auto x2 = static_cast<unsigned __int128>(p) * y * y + static_cast<unsigned __int128>(l) * z * z;
                if (x2 > static_cast<unsigned __int128>(bound) * bound) break;
                const auto x = num::isqrt(static_cast<std::uint64_t>(x2));
                if (static_cast<unsigned __int128>(x) * x != x2) continue;
                if (std::gcd(std::gcd(x, y), z) != 1) continue;
                bool used = false;
                for (auto root : res.roots) {
                    const auto v = (x % q + num::mulmod(y % q, root, q)) % q;
                    if (v == 0) continue;
                    const int s = legendre(static_cast<std::int64_t>(v), q);
                    if (symbol && *symbol != s) throw internal_error("redei: normalization violated");
                    symbol = s;
                    used = true;
                }
                if (!used) continue;
                if (checked == 0) res.solution = {x, y, z};
                ++checked;
            }
        }
        if (symbol) {
            res.symbol = *symbol;
            res.solutions_checked = checked;
            res.search_bound = bound;
            return res;
        }
    }
    throw math_error("redei: search exhausted");
}

}  // namespace wittrat
