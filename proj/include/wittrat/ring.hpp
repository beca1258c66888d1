#pragma once

// Coefficient rings. A ring object is a small value that manufactures
// constants and names the ring; its elements carry ordinary arithmetic
// operators so that generic code reads like textbook formulas.

#include <concepts>
#include <cstdint>
#include <ostream>
#include <string>

#include "wittrat/integer.hpp"

namespace wittrat {

class PrimeFieldElem {
public:
    PrimeFieldElem() = default;
    PrimeFieldElem(std::uint64_t value, std::uint64_t modulus) : value_(value % modulus), modulus_(modulus) {}

    std::uint64_t value() const noexcept { return value_; }
    std::uint64_t modulus() const noexcept { return modulus_; }
    bool is_zero() const noexcept { return value_ == 0; }

    friend PrimeFieldElem operator+(const PrimeFieldElem& a, const PrimeFieldElem& b) {
        check(a, b);
        std::uint64_t s = a.value_ + b.value_;
        if (s >= a.modulus_) s -= a.modulus_;
        return {s, a.modulus_};
    }
    friend PrimeFieldElem operator-(const PrimeFieldElem& a, const PrimeFieldElem& b) {
        check(a, b);
        return {a.value_ >= b.value_ ? a.value_ - b.value_ : a.value_ + a.modulus_ - b.value_, a.modulus_};
    }
    friend PrimeFieldElem operator*(const PrimeFieldElem& a, const PrimeFieldElem& b) {
        check(a, b);
        return {num::mulmod(a.value_, b.value_, a.modulus_), a.modulus_};
    }
    friend PrimeFieldElem operator/(const PrimeFieldElem& a, const PrimeFieldElem& b) { return a * b.inverse(); }
    PrimeFieldElem operator-() const { return {value_ == 0 ? 0 : modulus_ - value_, modulus_}; }
    PrimeFieldElem& operator+=(const PrimeFieldElem& b) { return *this = *this + b; }
    PrimeFieldElem& operator-=(const PrimeFieldElem& b) { return *this = *this - b; }
    PrimeFieldElem& operator*=(const PrimeFieldElem& b) { return *this = *this * b; }
    PrimeFieldElem& operator/=(const PrimeFieldElem& b) { return *this = *this / b; }

    PrimeFieldElem inverse() const {
        if (value_ == 0) throw math_error("division by zero in F_" + std::to_string(modulus_));
        return {num::powmod(value_, modulus_ - 2, modulus_), modulus_};
    }

    friend bool operator==(const PrimeFieldElem& a, const PrimeFieldElem& b) noexcept {
        return a.value_ == b.value_ && a.modulus_ == b.modulus_;
    }

    friend std::ostream& operator<<(std::ostream& os, const PrimeFieldElem& a) { return os << a.value_; }

private:
    static void check(const PrimeFieldElem& a, const PrimeFieldElem& b) {
        if (a.modulus_ != b.modulus_) throw math_error("mixed prime-field moduli");
    }

    std::uint64_t value_ = 0;
    std::uint64_t modulus_ = 1;
};

inline std::string to_string(const PrimeFieldElem& a) { return std::to_string(a.value()); }

/// The integers Z.
struct Integers {
    using value_type = Integer;
    static constexpr bool is_field = false;
    static constexpr bool characteristic_zero = true;

    Integer zero() const { return 0; }
    Integer one() const { return 1; }
    Integer from_int(std::int64_t v) const { return v; }
    Integer from_rational(const Rational& q) const {
        if (denominator(q) != 1) throw math_error("not defined over Z: coefficient " + to_string(q));
        return numerator(q);
    }
    Rational to_rational(const Integer& v) const { return Rational(v); }
    std::string name() const { return "Z"; }
    friend bool operator==(const Integers&, const Integers&) = default;
};

/// The rationals Q.
struct Rationals {
    using value_type = Rational;
    static constexpr bool is_field = true;
    static constexpr bool characteristic_zero = true;

    Rational zero() const { return 0; }
    Rational one() const { return 1; }
    Rational from_int(std::int64_t v) const { return v; }
    Rational from_rational(const Rational& q) const { return q; }
    Rational to_rational(const Rational& v) const { return v; }
    std::string name() const { return "Q"; }
    friend bool operator==(const Rationals&, const Rationals&) = default;
};

/// The prime field F_p; primality is checked on construction.
struct PrimeField {
    using value_type = PrimeFieldElem;
    static constexpr bool is_field = true;
    static constexpr bool characteristic_zero = false;

    PrimeField() = default;
    explicit PrimeField(std::uint64_t modulus) : p(modulus) {
        const bool prime = modulus < (1ULL << 40) ? num::is_prime_trial(modulus) : num::is_prime_u64(modulus);
        if (!prime) throw math_error(std::to_string(modulus) + " is not prime");
        if (modulus >= (1ULL << 62)) throw math_error("prime modulus too large");
    }

    PrimeFieldElem zero() const { return {0, p}; }
    PrimeFieldElem one() const { return {1, p}; }
    PrimeFieldElem from_int(std::int64_t v) const { return {num::reduce(v, p), p}; }
    PrimeFieldElem from_integer(const Integer& v) const { return {num::reduce(v, p), p}; }
    PrimeFieldElem from_rational(const Rational& q) const {
        const auto d = num::reduce(denominator(q), p);
        if (d == 0) throw math_error("denominator of " + to_string(q) + " vanishes mod " + std::to_string(p));
        return PrimeFieldElem(num::reduce(numerator(q), p), p) / PrimeFieldElem(d, p);
    }
    std::string name() const { return "Fp:" + std::to_string(p); }
    friend bool operator==(const PrimeField&, const PrimeField&) = default;

    std::uint64_t p = 2;
};

template <class R>
concept CoefficientRing = requires(const R& r, const typename R::value_type& a, std::int64_t i) {
    { r.zero() } -> std::convertible_to<typename R::value_type>;
    { r.one() } -> std::convertible_to<typename R::value_type>;
    { r.from_int(i) } -> std::convertible_to<typename R::value_type>;
    { r.name() } -> std::convertible_to<std::string>;
    { a + a } -> std::convertible_to<typename R::value_type>;
    { a * a } -> std::convertible_to<typename R::value_type>;
    { a == a } -> std::convertible_to<bool>;
};

template <class R>
concept CoefficientField = CoefficientRing<R> && R::is_field;

}  // namespace wittrat
