#pragma once

#include <cmath>
#include <optional>
#include <utility>

#include "algeval/errors.hpp"
#include "algeval/scalar.hpp"

namespace algeval {

// Exact integer square root test: returns r iff r*r == n, else nullopt.
// Newton iteration on big integers, no floating point anywhere.
std::optional<BigInt> integer_sqrt_exact(const BigInt& n);

// Exact rational square root: defined for x >= 0, nullopt when x is not the
// square of a rational. Throws NegativeRadicand for x < 0 so callers can
// route negative radicands to the complex-solution path instead of the
// unresolved-square-root one.
std::optional<Rational> rational_sqrt_exact(const Rational& x);

bool is_rational_square(const Rational& x);

struct GoldenSectionResult {
    double x;
    double value;
};

// 1-D minimization on [lo, hi]; the bracket shrinks by the golden ratio per
// iteration. Optimal for unimodal f, best-effort (a local minimum inside the
// bracket) otherwise.
template <class F>
GoldenSectionResult golden_section_min(F&& f, double lo, double hi, int iters) {
    if (!(lo < hi)) throw InvalidBracket("golden_section_min requires lo < hi");
    constexpr double inv_phi = 0.6180339887498949;
    double a = lo, b = hi;
    double x1 = b - inv_phi * (b - a);
    double x2 = a + inv_phi * (b - a);
    double f1 = f(x1), f2 = f(x2);
    for (int i = 0; i < iters; ++i) {
        if (f1 <= f2) {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - inv_phi * (b - a);
            f1 = f(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + inv_phi * (b - a);
            f2 = f(x2);
        }
    }
    double xm = 0.5 * (a + b);
    double fm = f(xm);
    GoldenSectionResult best{xm, fm};
    if (f1 < best.value) best = {x1, f1};
    if (f2 < best.value) best = {x2, f2};
    return best;
}

}  // namespace algeval
