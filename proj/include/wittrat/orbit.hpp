#pragma once

// Finite-level model of the Frobenius dynamics on character points: a closed
// point of residue field F_{p^n} together with a character chi_a of its
// multiplicative group, chi_a(g^k) = exp(2 pi i a k / m), m = p^n - 1.

#include <algorithm>
#include <complex>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <numeric>
#include <optional>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "wittrat/error.hpp"
#include "wittrat/finite_field.hpp"
#include "wittrat/integer.hpp"

namespace wittrat {

inline constexpr std::uint64_t packet_modulus_cap = 1'000'000'000;

namespace detail {

inline std::uint64_t level_modulus(std::uint64_t p, unsigned n) {
    if (n == 0) throw math_error("level must be >= 1");
    if (!num::is_prime_trial(p)) throw math_error(std::to_string(p) + " is not prime");
    unsigned __int128 q = 1;
    for (unsigned i = 0; i < n; ++i) {
        q *= p;
        if (q > (static_cast<unsigned __int128>(1) << 62)) throw math_error("p^n too large");
    }
    return static_cast<std::uint64_t>(q) - 1;
}

/// Fields are shared between points of the same level.
inline std::shared_ptr<const FiniteField> level_field(std::uint64_t p, unsigned n) {
    static std::mutex mu;
    static std::map<std::pair<std::uint64_t, unsigned>, std::shared_ptr<const FiniteField>> cache;
    std::lock_guard lock(mu);
    auto& slot = cache[{p, n}];
    if (!slot) slot = finite_field_make(p, n);
    return slot;
}

}  // namespace detail

struct FiniteLevelPoint {
    std::uint64_t p = 2;
    unsigned n = 1;
    std::uint64_t m = 1;  // p^n - 1
    std::uint64_t a = 0;  // character index mod m

    bool faithful() const noexcept { return std::gcd(a, m) == 1; }
    friend bool operator==(const FiniteLevelPoint&, const FiniteLevelPoint&) = default;
};

inline FiniteLevelPoint make_point(std::uint64_t p, unsigned n, std::uint64_t a) {
    FiniteLevelPoint pt;
    pt.p = p;
    pt.n = n;
    pt.m = detail::level_modulus(p, n);
    if (a >= pt.m && !(pt.m == 1 && a == 0)) throw math_error("character index must satisfy 0 <= a < p^n - 1");
    pt.a = pt.m == 1 ? 0 : a;
    return pt;
}

/// Description of the fixed generator g of F_{p^n}^x.
inline std::string generator_tag(const FiniteLevelPoint& pt) {
    const auto f = detail::level_field(pt.p, pt.n);
    return to_string(f->generator());
}

/// Precomposition of the character with x -> x^nu.
inline FiniteLevelPoint frobenius_nu(const FiniteLevelPoint& pt, std::uint64_t nu) {
    auto out = pt;
    out.a = pt.m == 1 ? 0 : static_cast<std::uint64_t>(static_cast<unsigned __int128>(pt.a) * nu % pt.m);
    return out;
}

inline FiniteLevelPoint frobenius_step(const FiniteLevelPoint& pt) { return frobenius_nu(pt, pt.p); }

inline std::vector<FiniteLevelPoint> orbit_of(const FiniteLevelPoint& pt) {
    std::vector<FiniteLevelPoint> out{pt};
    for (auto cur = frobenius_step(pt); !(cur == pt); cur = frobenius_step(cur)) {
        out.push_back(cur);
        if (out.size() > 64 * static_cast<std::size_t>(pt.n) + 64) throw internal_error("Frobenius orbit does not close");
    }
    return out;
}

struct PacketSummary {
    std::uint64_t p = 2;
    unsigned n = 1;
    std::uint64_t m = 1;
    std::uint64_t faithful_count = 0;
    std::uint64_t orbit_count = 0;
    std::uint64_t orbit_length = 0;
    double suspension_length = 0;  // n log p
    std::vector<std::vector<std::uint64_t>> orbits;  // each starting at its least index
    bool orbits_truncated = false;
};

struct PacketOptions {
    unsigned threads = 1;
    std::size_t max_listed_orbits = 100'000;
};

/// Groups the faithful characters of F_{p^n}^x into Frobenius orbits. Every orbit
/// must have length exactly n; anything else is an internal error.
inline PacketSummary packet_summary(std::uint64_t p, unsigned n, const PacketOptions& opt = {}) {
    PacketSummary s;
    s.p = p;
    s.n = n;
    s.m = detail::level_modulus(p, n);
    if (s.m > packet_modulus_cap) throw math_error("packet_summary: p^n - 1 exceeds 10^9");
    s.suspension_length = static_cast<double>(n) * std::log(static_cast<double>(p));

    struct Partial {
        std::uint64_t faithful = 0;
        std::uint64_t reps = 0;
        std::vector<std::vector<std::uint64_t>> orbits;
    };
    const std::uint64_t m = s.m;
    auto work = [&](std::uint64_t begin, std::uint64_t step) {
        Partial part;
        std::vector<std::uint64_t> orbit;
        for (std::uint64_t a = begin; a < std::max<std::uint64_t>(m, 1); a += step) {
            if (std::gcd(a, m) != 1) continue;
            ++part.faithful;
            orbit.assign(1, a);
            bool least = true;
            for (std::uint64_t b = m == 1 ? 0 : static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * p % m); b != a;
                 b = static_cast<std::uint64_t>(static_cast<unsigned __int128>(b) * p % m)) {
                if (b < a) least = false;
                orbit.push_back(b);
                if (orbit.size() > n) break;
            }
            if (orbit.size() != n)
                throw internal_error("faithful orbit of length " + std::to_string(orbit.size()) + " at level " + std::to_string(n));
            if (least) {
                ++part.reps;
                if (part.orbits.size() < opt.max_listed_orbits) part.orbits.push_back(orbit);
            }
        }
        return part;
    };

    const unsigned threads = std::max(1U, opt.threads);
    std::vector<Partial> parts(threads);
    if (threads == 1) {
        parts[0] = work(0, 1);
    } else {
        std::vector<std::jthread> pool;
        std::vector<std::exception_ptr> errors(threads);
        for (unsigned t = 0; t < threads; ++t)
            pool.emplace_back([&, t] {
                try {
                    parts[t] = work(t, threads);
                } catch (...) {
                    errors[t] = std::current_exception();
                }
            });
        pool.clear();
        for (auto& e : errors)
            if (e) std::rethrow_exception(e);
    }
    for (auto& part : parts) {
        s.faithful_count += part.faithful;
        s.orbit_count += part.reps;
        for (auto& o : part.orbits) s.orbits.push_back(std::move(o));
    }
    std::sort(s.orbits.begin(), s.orbits.end());
    if (s.orbits.size() > opt.max_listed_orbits) s.orbits.resize(opt.max_listed_orbits);
    s.orbits_truncated = s.orbits.size() < s.orbit_count;
    s.orbit_length = n;
    if (s.faithful_count != num::euler_phi(m)) throw internal_error("faithful count differs from phi(p^n - 1)");
    if (s.orbit_count * n != s.faithful_count) throw internal_error("orbits do not partition the faithful points");
    return s;
}

/// chi_a(f mod p) as an exact root-of-unity index e (value exp(2 pi i e / m)),
/// or nothing when p divides f.
inline std::optional<std::uint64_t> character_index(const Integer& f, const FiniteLevelPoint& pt) {
    const auto r = num::reduce(f, pt.p);
    if (r == 0) return std::nullopt;
    if (pt.m == 1) return 0;
    const auto field = detail::level_field(pt.p, pt.n);
    const auto k = discrete_log(field->generator(), field->from_prime_field(r));
    return static_cast<std::uint64_t>(static_cast<unsigned __int128>(pt.a) * k % pt.m);
}

inline std::complex<double> root_of_unity(std::uint64_t e, std::uint64_t m) {
    if (e == 0) return {1.0, 0.0};
    return std::polar(1.0, 2 * std::numbers::pi * static_cast<double>(e) / static_cast<double>(m));
}

inline std::complex<double> evaluate_integer(const Integer& f, const FiniteLevelPoint& pt) {
    const auto e = character_index(f, pt);
    if (!e) return {0.0, 0.0};
    return root_of_unity(*e, pt.m);
}

inline constexpr double evaluation_tolerance = 1e-12;

/// evaluate(f, F_nu P) == evaluate(f, P)^nu, checked on exact indices and on the complex values.
inline bool frobenius_equivariance_check(const Integer& f, const FiniteLevelPoint& pt, std::uint64_t nu) {
    if (nu == 0 || std::gcd(nu, pt.m) != 1) throw math_error("frobenius_equivariance_check: nu must be coprime to p^n - 1");
    const auto moved = frobenius_nu(pt, nu);
    const auto lhs = character_index(f, moved);
    const auto rhs = character_index(f, pt);
    if (!lhs || !rhs) return !lhs && !rhs;
    const auto rhs_pow = static_cast<std::uint64_t>(static_cast<unsigned __int128>(*rhs) * nu % pt.m);
    const auto zl = evaluate_integer(f, moved);
    const auto zr = std::pow(evaluate_integer(f, pt), static_cast<int>(nu % 1'000'000));
    return *lhs == rhs_pow && std::abs(zl - zr) < 1e-9;
}

struct AdditivityWitness {
    Integer f = 0;
    Integer g = 0;
    std::complex<double> value_sum;  // evaluate(f + g)
    std::complex<double> sum_values; // evaluate(f) + evaluate(g)
};

/// First pair (f, g) with 1 <= f <= g <= limit for which evaluation is not additive.
inline std::optional<AdditivityWitness> find_additivity_failure(const FiniteLevelPoint& pt, std::int64_t limit = 50) {
    for (std::int64_t f = 1; f <= limit; ++f)
        for (std::int64_t g = f; g <= limit; ++g) {
            const auto lhs = evaluate_integer(Integer(f + g), pt);
            const auto rhs = evaluate_integer(Integer(f), pt) + evaluate_integer(Integer(g), pt);
            if (std::abs(lhs - rhs) > 1e-9) return AdditivityWitness{f, g, lhs, rhs};
        }
    return std::nullopt;
}

}  // namespace wittrat
