#pragma once

// Finite fields F_{p^n} = F_p[t]/(m(t)). Elements are encoded as integers
// code = sum_i c_i p^i where c_i is the coefficient of t^i; ordering elements
// by code is the lexicographic order with the top coefficient most significant.

#include <cmath>
#include <cstdint>
#include <memory>
#include <ranges>
#include <string>
#include <unordered_map>
#include <vector>

#include "wittrat/error.hpp"
#include "wittrat/integer.hpp"
#include "wittrat/polynomial.hpp"
#include "wittrat/ring.hpp"

namespace wittrat {

inline constexpr std::uint64_t default_field_size_limit = 10'000'000;

/// Irreducible iff gcd(f, x^{p^k} - x) = 1 for k <= n/2. Constants are not irreducible.
inline bool is_irreducible(const Polynomial<PrimeField>& f) {
    const auto& fp = f.ring();
    const std::uint64_t p = fp.p;
    if (f.degree() < 1) return false;
    const auto x = Polynomial<PrimeField>::monomial(fp, fp.one(), 1);
    auto power = x;  // x^{p^k} mod f
    const int n = f.degree();
    for (int k = 1; 2 * k <= n; ++k) {
        auto acc = Polynomial<PrimeField>::one(fp);
        auto base = divmod(power, f).second;
        for (std::uint64_t e = p; e > 0; e >>= 1U) {
            if (e & 1U) acc = divmod(acc * base, f).second;
            base = divmod(base * base, f).second;
        }
        power = acc;
        if (gcd(power - x, f).degree() > 0) return false;
    }
    return true;
}

class FiniteField;

class FiniteFieldElem {
public:
    FiniteFieldElem(std::shared_ptr<const FiniteField> field, std::uint32_t code) : field_(std::move(field)), code_(code) {}

    std::uint32_t code() const noexcept { return code_; }
    const FiniteField& field() const noexcept { return *field_; }
    const std::shared_ptr<const FiniteField>& field_ptr() const noexcept { return field_; }
    bool is_zero() const noexcept { return code_ == 0; }

    friend FiniteFieldElem operator+(const FiniteFieldElem& a, const FiniteFieldElem& b);
    friend FiniteFieldElem operator-(const FiniteFieldElem& a, const FiniteFieldElem& b);
    friend FiniteFieldElem operator*(const FiniteFieldElem& a, const FiniteFieldElem& b);
    friend FiniteFieldElem operator/(const FiniteFieldElem& a, const FiniteFieldElem& b);
    FiniteFieldElem pow(std::uint64_t e) const;
    FiniteFieldElem inverse() const;

    friend bool operator==(const FiniteFieldElem& a, const FiniteFieldElem& b) noexcept {
        return a.field_ == b.field_ && a.code_ == b.code_;
    }

private:
    std::shared_ptr<const FiniteField> field_;
    std::uint32_t code_;
};

class FiniteField : public std::enable_shared_from_this<FiniteField> {
    struct private_tag {};

public:
    /// Use finite_field_make; the constructor is public only for make_shared.
    FiniteField(private_tag, std::uint64_t p, unsigned n, std::uint64_t size_limit)
        : fp_(p), p_(p), n_(n) {
        if (n == 0) throw math_error("field degree must be at least 1");
        long double size = std::pow(static_cast<long double>(p), static_cast<long double>(n));
        if (size > static_cast<long double>(size_limit))
            throw math_error("field F_" + std::to_string(p) + "^" + std::to_string(n) + " exceeds the size limit " +
                             std::to_string(size_limit));
        q_ = 1;
        for (unsigned i = 0; i < n; ++i) q_ *= p;
        place_.resize(n);
        for (unsigned i = 0; i < n; ++i) place_[i] = i == 0 ? 1 : place_[i - 1] * p;
        modulus_ = find_modulus();
        generator_ = find_generator();
        if (q_ <= table_limit) build_tables();
    }

    static std::shared_ptr<const FiniteField> make(std::uint64_t p, unsigned n,
                                                   std::uint64_t size_limit = default_field_size_limit) {
        return std::make_shared<const FiniteField>(private_tag{}, p, n, size_limit);
    }

    std::uint64_t characteristic() const noexcept { return p_; }
    unsigned degree() const noexcept { return n_; }
    std::uint64_t size() const noexcept { return q_; }
    const PrimeField& prime_field() const noexcept { return fp_; }
    const Polynomial<PrimeField>& modulus() const noexcept { return modulus_; }
    std::uint32_t generator_code() const noexcept { return generator_; }

    FiniteFieldElem element(std::uint32_t code) const {
        if (code >= q_) throw math_error("element code out of range");
        return {shared_from_this(), code};
    }
    FiniteFieldElem zero() const { return element(0); }
    FiniteFieldElem one() const { return element(1); }
    FiniteFieldElem generator() const { return element(generator_); }
    FiniteFieldElem from_prime_field(std::uint64_t v) const { return element(static_cast<std::uint32_t>(v % p_)); }

    /// All p^n elements in code order.
    auto enumerate() const {
        auto self = shared_from_this();
        return std::views::iota(std::uint32_t{0}, static_cast<std::uint32_t>(q_)) |
               std::views::transform([self](std::uint32_t c) { return FiniteFieldElem(self, c); });
    }

    // Code-level arithmetic, used by the enumeration loops.
    std::uint32_t add(std::uint32_t a, std::uint32_t b) const {
        if (n_ == 1) return static_cast<std::uint32_t>((a + b) % p_);
        std::uint32_t out = 0;
        for (unsigned i = n_; i-- > 0;) {
            const auto da = (a / place_[i]) % p_;
            const auto db = (b / place_[i]) % p_;
            out = static_cast<std::uint32_t>(out * p_ + (da + db) % p_);
        }
        return out;
    }

    std::uint32_t neg(std::uint32_t a) const {
        std::uint32_t out = 0;
        for (unsigned i = n_; i-- > 0;) {
            const auto d = (a / place_[i]) % p_;
            out = static_cast<std::uint32_t>(out * p_ + (d == 0 ? 0 : p_ - d));
        }
        return out;
    }

    std::uint32_t sub(std::uint32_t a, std::uint32_t b) const { return add(a, neg(b)); }

    std::uint32_t mul(std::uint32_t a, std::uint32_t b) const {
        if (a == 0 || b == 0) return 0;
        if (!log_.empty()) {
            auto k = static_cast<std::uint64_t>(log_[a]) + log_[b];
            if (k >= q_ - 1) k -= q_ - 1;
            return exp_[k];
        }
        return slow_mul(a, b);
    }

    std::uint32_t pow(std::uint32_t a, std::uint64_t e) const {
        std::uint32_t r = 1;
        while (e > 0) {
            if (e & 1U) r = mul(r, a);
            a = mul(a, a);
            e >>= 1U;
        }
        return r;
    }

    std::uint32_t inv(std::uint32_t a) const {
        if (a == 0) throw math_error("division by zero in F_" + std::to_string(q_));
        return pow(a, q_ - 2);
    }

    bool has_tables() const noexcept { return !log_.empty(); }
    /// g^k for the fixed generator (requires tables).
    std::uint32_t exp_table(std::uint64_t k) const { return exp_.at(k % (q_ - 1)); }
    std::uint32_t log_table(std::uint32_t a) const { return log_.at(a); }

    bool is_generator(std::uint32_t g) const {
        if (g == 0) return false;
        if (q_ == 2) return g == 1;
        for (const auto& [l, e] : num::factor_u64(q_ - 1))
            if (pow(g, (q_ - 1) / l) == 1) return false;
        return true;
    }

    Polynomial<PrimeField> to_polynomial(std::uint32_t code) const {
        std::vector<PrimeFieldElem> c;
        for (unsigned i = 0; i < n_; ++i) c.push_back(fp_.from_int(static_cast<std::int64_t>((code / place_[i]) % p_)));
        return Polynomial<PrimeField>(fp_, std::move(c));
    }

    std::uint32_t from_polynomial(const Polynomial<PrimeField>& poly) const {
        const auto r = poly.degree() >= static_cast<int>(n_) ? divmod(poly, modulus_).second : poly;
        std::uint32_t code = 0;
        for (unsigned i = n_; i-- > 0;) code = static_cast<std::uint32_t>(code * p_ + r.coeff(i).value());
        return code;
    }

    std::string describe() const {
        return "F_" + std::to_string(p_) + "^" + std::to_string(n_) + " = F_" + std::to_string(p_) + "[t]/(" +
               to_string(modulus_) + "), generator " + to_string(to_polynomial(generator_));
    }

    static constexpr std::uint64_t table_limit = 1ULL << 22;

private:
    std::uint32_t slow_mul(std::uint32_t a, std::uint32_t b) const {
        return from_polynomial(divmod(to_polynomial(a) * to_polynomial(b), modulus_).second);
    }

    Polynomial<PrimeField> find_modulus() const {
        for (std::uint64_t tail = 0; tail < q_; ++tail) {
            std::vector<PrimeFieldElem> c;
            for (unsigned i = 0; i < n_; ++i)
                c.push_back(fp_.from_int(static_cast<std::int64_t>((tail / place_[i]) % p_)));
            c.push_back(fp_.one());
            Polynomial<PrimeField> f(fp_, std::move(c));
            if (is_irreducible(f)) return f;
        }
        throw internal_error("no irreducible polynomial found");
    }

    std::uint32_t find_generator() const {
        for (std::uint32_t g = 1; g < q_; ++g)
            if (is_generator(g)) return g;
        throw internal_error("multiplicative group has no generator");
    }

    void build_tables() {
        exp_.resize(q_ - 1);
        log_.assign(q_, 0);
        std::uint32_t cur = 1;
        for (std::uint64_t k = 0; k + 1 < q_; ++k) {
            exp_[k] = cur;
            log_[cur] = static_cast<std::uint32_t>(k);
            cur = slow_mul(cur, generator_);
        }
        if (cur != 1) throw internal_error("generator order mismatch");
    }

    PrimeField fp_;
    std::uint64_t p_;
    unsigned n_;
    std::uint64_t q_ = 1;
    std::vector<std::uint64_t> place_;
    Polynomial<PrimeField> modulus_;
    std::uint32_t generator_ = 1;
    std::vector<std::uint32_t> exp_;
    std::vector<std::uint32_t> log_;
};

inline std::shared_ptr<const FiniteField> finite_field_make(std::uint64_t p, unsigned n,
                                                            std::uint64_t size_limit = default_field_size_limit) {
    return FiniteField::make(p, n, size_limit);
}

namespace detail {
inline void same_field(const FiniteFieldElem& a, const FiniteFieldElem& b) {
    if (a.field_ptr() != b.field_ptr()) throw math_error("elements of different finite fields");
}
}  // namespace detail

inline FiniteFieldElem operator+(const FiniteFieldElem& a, const FiniteFieldElem& b) {
    detail::same_field(a, b);
    return {a.field_, a.field_->add(a.code_, b.code_)};
}
inline FiniteFieldElem operator-(const FiniteFieldElem& a, const FiniteFieldElem& b) {
    detail::same_field(a, b);
    return {a.field_, a.field_->sub(a.code_, b.code_)};
}
inline FiniteFieldElem operator*(const FiniteFieldElem& a, const FiniteFieldElem& b) {
    detail::same_field(a, b);
    return {a.field_, a.field_->mul(a.code_, b.code_)};
}
inline FiniteFieldElem operator/(const FiniteFieldElem& a, const FiniteFieldElem& b) { return a * b.inverse(); }
inline FiniteFieldElem FiniteFieldElem::pow(std::uint64_t e) const { return {field_, field_->pow(code_, e)}; }
inline FiniteFieldElem FiniteFieldElem::inverse() const { return {field_, field_->inv(code_)}; }

inline std::string to_string(const FiniteFieldElem& a) { return to_string(a.field().to_polynomial(a.code())); }

/// k in [0, q-1) with g^k = x, by baby-step giant-step.
inline std::uint64_t discrete_log(const FiniteFieldElem& g, const FiniteFieldElem& x) {
    detail::same_field(g, x);
    const FiniteField& f = g.field();
    if (x.is_zero()) throw math_error("discrete log of zero");
    if (!f.is_generator(g.code())) throw math_error("base is not a generator of the multiplicative group");
    const std::uint64_t order = f.size() - 1;
    const auto m = static_cast<std::uint64_t>(std::ceil(std::sqrt(static_cast<double>(order))));
    std::unordered_map<std::uint32_t, std::uint64_t> baby;
    baby.reserve(m);
    std::uint32_t cur = 1;
    for (std::uint64_t j = 0; j < m; ++j) {
        baby.emplace(cur, j);
        cur = f.mul(cur, g.code());
    }
    const std::uint32_t giant = f.inv(f.pow(g.code(), m));
    std::uint32_t y = x.code();
    for (std::uint64_t i = 0; i <= m; ++i) {
        if (auto it = baby.find(y); it != baby.end()) return (i * m + it->second) % order;
        y = f.mul(y, giant);
    }
    throw internal_error("baby-step giant-step found no logarithm");
}

}  // namespace wittrat
