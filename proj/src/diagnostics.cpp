#include "algeval/diagnostics.hpp"

#include <cmath>

namespace algeval {

AgreementReport agreement_report(const DecisionSketch& sketch) {
    auto st = statistics<Rational>(frequencies<Rational>(sketch));

    AgreementReport report;
    report.agreement = st.agreement;

    Rational c_squared(1);
    std::array<Rational, 3> w;  // 1 - 2 a_{i,j}
    for (int p = 0; p < 3; ++p) {
        w[p] = Rational(1) - 2 * st.agreement[p];
        c_squared *= w[p];
    }
    report.c_squared = c_squared;
    report.c_is_rational_square = sgn(c_squared) >= 0 && is_rational_square(c_squared);

    if (sgn(c_squared) >= 0) {
        double c = std::sqrt(to_double(c_squared));
        for (int i = 0; i < 3; ++i) {
            // e_i is built from the agreement of the complementary pair,
            // which is kPairs[2 - i] for classifiers in canonical order.
            const Rational& w_pair = w[2 - i];
            if (sgn(w_pair) == 0) continue;
            double wd = to_double(w_pair);
            report.e_estimates[i] = std::array<double, 4>{
                (c + wd) / (2 * wd),
                (c + wd) / (-2 * wd),
                (c - wd) / (2 * wd),
                (c - wd) / (-2 * wd),
            };
        }
    }
    return report;
}

}  // namespace algeval
