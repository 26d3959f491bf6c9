#pragma once

#include <array>
#include <optional>

#include "algeval/errors.hpp"
#include "algeval/numerics.hpp"
#include "algeval/point.hpp"
#include "algeval/sketch.hpp"

namespace algeval {

// Stream-level correctness and error rates of a ground truth: the per-label
// accuracies convolved with the prevalences, plus the joint pair rates and
// their factorization gap e_{i,j} - e_i e_j. A nonzero gap on independent
// inputs is what breaks the agreement-equation solution for independent
// classifiers.
template <class S>
struct StreamRates {
    std::array<S, 3> correct{};        // c_i
    std::array<S, 3> error{};          // e_i = 1 - c_i
    std::array<S, 3> joint_correct{};  // c_{i,j}, pair order per kPairs
    std::array<S, 3> joint_error{};    // e_{i,j}
    std::array<S, 3> factorization_gap{};
};

template <class S>
StreamRates<S> stream_rates(const EvaluationPoint<S>& point, const CorrelationSet<S>& corr) {
    StreamRates<S> r;
    S pa = point.prevalence_alpha;
    S pb = S(1) - pa;
    for (int i = 0; i < 3; ++i) {
        r.correct[i] = pa * point.acc_alpha[i] + pb * point.acc_beta[i];
        r.error[i] = S(1) - r.correct[i];
    }
    for (int p = 0; p < 3; ++p) {
        auto [i, j] = kPairs[p];
        S corr_term = pa * corr.pair_alpha[p] + pb * corr.pair_beta[p];
        r.joint_correct[p] =
            pa * point.acc_alpha[i] * point.acc_alpha[j] +
            pb * point.acc_beta[i] * point.acc_beta[j] + corr_term;
        r.joint_error[p] =
            pa * (S(1) - point.acc_alpha[i]) * (S(1) - point.acc_alpha[j]) +
            pb * (S(1) - point.acc_beta[i]) * (S(1) - point.acc_beta[j]) + corr_term;
        r.factorization_gap[p] = r.joint_error[p] - r.error[i] * r.error[j];
    }
    return r;
}

template <class S>
StreamRates<S> stream_rates(const GroundTruthPoint& gt) {
    if constexpr (is_exact_scalar_v<S>) {
        return stream_rates(gt.point, gt.correlations);
    } else {
        return stream_rates(point_to_double(gt.point),
                            correlations_to_double(gt.correlations));
    }
}

// The agreement-equation exhibit: agreement rates, the product radicand
// (1-2a_12)(1-2a_13)(1-2a_23), its exact rational-square verdict, and the
// four sign variants of the error-rate formula e_i = (c +- w)/(+- 2w) with
// w = 1 - 2 a_{j,k}. Sketch counters are integers, so the radicand is an
// exact rational in either CLI mode. e_estimates are absent for classifier i
// when w vanishes or when the radicand is negative (the float square root
// does not exist); the error formula's printed sign ambiguity is enumerated
// rather than resolved.
struct AgreementReport {
    std::array<Rational, 3> agreement{};  // a_{i,j}, pair order per kPairs
    Rational c_squared{};
    bool c_is_rational_square = false;
    std::array<std::optional<std::array<double, 4>>, 3> e_estimates{};

    const std::array<double, 4>& require_e_estimates(int i) const {
        if (!e_estimates[i])
            throw DegenerateAgreement("e_" + std::to_string(i + 1) +
                                      " estimates undefined: 1 - 2a equals zero for the "
                                      "complementary pair or the radicand is negative");
        return *e_estimates[i];
    }
};

AgreementReport agreement_report(const DecisionSketch& sketch);

}  // namespace algeval
