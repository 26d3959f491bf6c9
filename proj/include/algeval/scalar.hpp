#pragma once

#include <gmpxx.h>

#include <cmath>
#include <cstdint>
#include <string>
#include <string_view>

namespace algeval {

using BigInt = mpz_class;

// Exact scalar: arbitrary-precision rational, always kept reduced with a
// positive denominator (mpq canonical form). The float mirror is plain
// binary64. Every templated computation in this library is instantiated
// for exactly these two types; mixing modes requires an explicit
// conversion through to_double().
using Rational = mpq_class;

template <class S>
inline constexpr bool is_exact_scalar_v = false;
template <>
inline constexpr bool is_exact_scalar_v<Rational> = true;

// Tolerance for zero tests in float mode (deltas, q, discriminant, unit-cube
// boundaries). Exact mode always compares exactly.
inline constexpr double kFloatZeroTol = 1e-9;

inline Rational make_rational(BigInt num, BigInt den) {
    Rational q;
    q.get_num() = std::move(num);
    q.get_den() = std::move(den);
    q.canonicalize();
    return q;
}

inline Rational make_rational(long num, long den = 1) {
    Rational q(num, den);
    q.canonicalize();
    return q;
}

inline double to_double(const Rational& q) { return q.get_d(); }
inline double to_double(double x) { return x; }

// Canonical text form: "p" when the denominator is 1, else "p/q".
std::string scalar_text(const Rational& q);
// Shortest round-trip decimal.
std::string scalar_text(double x);

// Accepts "p/q", "p", and plain decimals ("0.25" parses to 1/4 exactly).
Rational parse_rational(std::string_view text);

template <class S>
S scalar_from(const Rational& q) {
    if constexpr (is_exact_scalar_v<S>) {
        return q;
    } else {
        return to_double(q);
    }
}

template <class S>
S scalar_ratio(long num, long den) {
    if constexpr (is_exact_scalar_v<S>) {
        return make_rational(num, den);
    } else {
        return static_cast<double>(num) / static_cast<double>(den);
    }
}

template <class S>
bool scalar_is_zero(const S& x) {
    if constexpr (is_exact_scalar_v<S>) {
        return sgn(x) == 0;
    } else {
        return std::fabs(x) <= kFloatZeroTol;
    }
}

template <class S>
bool scalar_is_negative(const S& x) {
    if constexpr (is_exact_scalar_v<S>) {
        return sgn(x) < 0;
    } else {
        return x < -kFloatZeroTol;
    }
}

// Closed unit interval membership; float mode allows rounding slack.
template <class S>
bool scalar_in_unit_interval(const S& x) {
    if constexpr (is_exact_scalar_v<S>) {
        return x >= 0 && x <= 1;
    } else {
        return x >= -kFloatZeroTol && x <= 1.0 + kFloatZeroTol;
    }
}

template <class S>
int scalar_sign(const S& x) {
    if constexpr (is_exact_scalar_v<S>) {
        return sgn(x);
    } else {
        if (std::fabs(x) <= kFloatZeroTol) return 0;
        return x < 0 ? -1 : 1;
    }
}

inline const char* scalar_mode_name(bool exact) { return exact ? "exact" : "float"; }

}  // namespace algeval
