#pragma once

#include <array>
#include <cstdint>

#include "algeval/numerics.hpp"
#include "algeval/point.hpp"
#include "algeval/sketch.hpp"

namespace algeval {

// Residuals of a 7-point against the correlation-free containing variety of
// an observed sketch, in the shifted coordinates pi_{i,l} = P_{i,l} - f_{i,l}:
//   linear[i] = P_alpha pi_{i,alpha} - (1 - P_alpha) pi_{i,beta}
//   cross[p]  = pi_{i,alpha} pi_{j,beta} - pi_{i,beta} pi_{j,alpha}
// All six vanish iff the point lies on the containing variety.
template <class S>
struct VarietyResiduals {
    std::array<S, 3> linear{};
    std::array<S, 3> cross{};

    bool all_zero() const {
        for (int i = 0; i < 3; ++i)
            if (!scalar_is_zero(linear[i]) || !scalar_is_zero(cross[i])) return false;
        return true;
    }
};

template <class S>
VarietyResiduals<S> residuals(const EvaluationPoint<S>& point, const FrequencyVector<S>& fv) {
    auto st = statistics(fv);
    std::array<S, 3> pi_alpha, pi_beta;
    for (int i = 0; i < 3; ++i) {
        S f_beta = st.vote_beta[i];
        pi_alpha[i] = point.acc_alpha[i] - (S(1) - f_beta);
        pi_beta[i] = point.acc_beta[i] - f_beta;
    }
    VarietyResiduals<S> r;
    S p = point.prevalence_alpha;
    for (int i = 0; i < 3; ++i) r.linear[i] = p * pi_alpha[i] - (S(1) - p) * pi_beta[i];
    for (int pr = 0; pr < 3; ++pr) {
        auto [i, j] = kPairs[pr];
        r.cross[pr] = pi_alpha[i] * pi_beta[j] - pi_beta[i] * pi_alpha[j];
    }
    return r;
}

template <class S>
VarietyResiduals<S> residuals(const EvaluationPoint<S>& point, const DecisionSketch& sketch) {
    return residuals(point, frequencies<S>(sketch));
}

// Euclidean projection of a 7-point onto the containing variety of a sketch.
// The regular locus is parametrized by (P_alpha, t_1, t_2, t_3) as
//   (P_alpha, f_{i,alpha} + t_i, f_{i,beta} + rho t_i),  rho = P_alpha / (1 - P_alpha);
// for fixed P_alpha the optimal t_i has the closed form
//   t_i = (a_i + rho b_i) / (1 + rho^2),
// with a_i, b_i the query offsets from the sketch marginals. The outer 1-D
// search over P_alpha is a grid scan plus golden-section refinement, with the
// degenerate sheets at P_alpha = 0 and 1 evaluated in closed form.
struct VarietyProjection {
    EvaluationPoint<double> closest;
    double distance = 0.0;
    double p_alpha_star = 0.0;
    std::array<double, 3> t{};
};

VarietyProjection project(const EvaluationPoint<double>& point,
                          const FrequencyVector<double>& fv, int grid = 512,
                          int refinements = 40);

VarietyProjection project(const EvaluationPoint<double>& point, const DecisionSketch& sketch,
                          int grid = 512, int refinements = 40);

// Per-classifier blind-spot diagnostics: the shifted coordinates pi_{i,l}
// and the competences g_i, flagged when their magnitude falls below the
// threshold.
struct BlindSpotEntry {
    double pi_alpha = 0.0;
    double pi_beta = 0.0;
    double competence = 0.0;
    bool flag_pi_alpha = false;
    bool flag_pi_beta = false;
    bool flag_competence = false;
};

struct BlindSpotReport {
    std::array<BlindSpotEntry, 3> classifiers{};
    double threshold = 0.1;

    bool any_flag() const {
        for (const auto& e : classifiers)
            if (e.flag_pi_alpha || e.flag_pi_beta || e.flag_competence) return true;
        return false;
    }
};

template <class S>
BlindSpotReport blind_spot_report(const EvaluationPoint<S>& point,
                                  const FrequencyVector<S>& fv, double threshold = 0.1) {
    auto st = statistics(fv);
    BlindSpotReport report;
    report.threshold = threshold;
    for (int i = 0; i < 3; ++i) {
        auto& e = report.classifiers[i];
        double f_beta = to_double(st.vote_beta[i]);
        e.pi_alpha = to_double(point.acc_alpha[i]) - (1.0 - f_beta);
        e.pi_beta = to_double(point.acc_beta[i]) - f_beta;
        e.competence = to_double(point.competence(i));
        e.flag_pi_alpha = std::fabs(e.pi_alpha) < threshold;
        e.flag_pi_beta = std::fabs(e.pi_beta) < threshold;
        e.flag_competence = std::fabs(e.competence) < threshold;
    }
    return report;
}

template <class S>
BlindSpotReport blind_spot_report(const EvaluationPoint<S>& point,
                                  const DecisionSketch& sketch, double threshold = 0.1) {
    return blind_spot_report(point, frequencies<S>(sketch), threshold);
}

}  // namespace algeval
