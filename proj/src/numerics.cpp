#include "algeval/numerics.hpp"

namespace algeval {

std::optional<BigInt> integer_sqrt_exact(const BigInt& n) {
    if (n < 0) return std::nullopt;
    if (n == 0) return BigInt(0);
    // Newton iteration x <- (x + n/x) / 2 starting above sqrt(n) converges
    // monotonically down to floor(sqrt(n)).
    std::size_t bits = mpz_sizeinbase(n.get_mpz_t(), 2);
    BigInt x = BigInt(1) << static_cast<unsigned long>((bits + 1) / 2);
    for (;;) {
        BigInt y = (x + n / x) >> 1;
        if (y >= x) break;
        x = y;
    }
    if (x * x == n) return x;
    return std::nullopt;
}

std::optional<Rational> rational_sqrt_exact(const Rational& x) {
    int s = sgn(x);
    if (s < 0) throw NegativeRadicand("square root of negative rational " + scalar_text(x));
    if (s == 0) return Rational(0);
    auto num = integer_sqrt_exact(x.get_num());
    if (!num) return std::nullopt;
    auto den = integer_sqrt_exact(x.get_den());
    if (!den) return std::nullopt;
    return make_rational(std::move(*num), std::move(*den));
}

bool is_rational_square(const Rational& x) { return rational_sqrt_exact(x).has_value(); }

}  // namespace algeval
