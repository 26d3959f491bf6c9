#include "algeval/variety.hpp"

#include <algorithm>
#include <cmath>

namespace algeval {

namespace {

struct SurfaceFrame {
    std::array<double, 3> f_alpha{};  // sketch marginals f_{i,alpha}
    std::array<double, 3> f_beta{};
    std::array<double, 3> a{};  // query offsets: q_{i,alpha} - f_{i,alpha}
    std::array<double, 3> b{};  // q_{i,beta} - f_{i,beta}
    double query_prevalence = 0.0;
};

// Squared distance to the surface slice at fixed prevalence p, with the
// inner t minimization folded in:
//   (p_q - p)^2 + sum_i (rho a_i - b_i)^2 / (1 + rho^2).
double slice_distance_sq(const SurfaceFrame& fr, double p) {
    double rho = p / (1.0 - p);
    double denom = 1.0 + rho * rho;
    double d = (fr.query_prevalence - p) * (fr.query_prevalence - p);
    for (int i = 0; i < 3; ++i) {
        double r = rho * fr.a[i] - fr.b[i];
        d += r * r / denom;
    }
    return d;
}

}  // namespace

VarietyProjection project(const EvaluationPoint<double>& point,
                          const FrequencyVector<double>& fv, int grid, int refinements) {
    auto st = statistics(fv);
    SurfaceFrame fr;
    fr.query_prevalence = point.prevalence_alpha;
    for (int i = 0; i < 3; ++i) {
        fr.f_beta[i] = st.vote_beta[i];
        fr.f_alpha[i] = 1.0 - st.vote_beta[i];
        fr.a[i] = point.acc_alpha[i] - fr.f_alpha[i];
        fr.b[i] = point.acc_beta[i] - fr.f_beta[i];
    }

    if (grid < 2) grid = 2;
    double lo = 1.0 / grid;
    double hi = 1.0 - 1.0 / grid;
    double best_p = lo;
    double best_d = slice_distance_sq(fr, lo);
    for (int k = 1; k < grid; ++k) {
        double p = lo + (hi - lo) * static_cast<double>(k) / (grid - 1);
        double d = slice_distance_sq(fr, p);
        if (d < best_d) {
            best_d = d;
            best_p = p;
        }
    }
    double step = (hi - lo) / (grid - 1);
    double blo = std::max(lo, best_p - step);
    double bhi = std::min(hi, best_p + step);
    auto refined = golden_section_min([&](double p) { return slice_distance_sq(fr, p); },
                                      blo, bhi, refinements);
    if (refined.value < best_d) {
        best_d = refined.value;
        best_p = refined.x;
    }

    VarietyProjection out;
    out.p_alpha_star = best_p;
    double rho = best_p / (1.0 - best_p);
    double denom = 1.0 + rho * rho;
    for (int i = 0; i < 3; ++i) out.t[i] = (fr.a[i] + rho * fr.b[i]) / denom;
    out.closest.prevalence_alpha = best_p;
    for (int i = 0; i < 3; ++i) {
        out.closest.acc_alpha[i] = fr.f_alpha[i] + out.t[i];
        out.closest.acc_beta[i] = fr.f_beta[i] + rho * out.t[i];
    }
    out.distance = std::sqrt(std::max(best_d, 0.0));

    // Degenerate sheets: at P_alpha = 1 the linear polynomials force
    // pi_{i,alpha} = 0 with pi_{i,beta} free; at P_alpha = 0 the mirror.
    double d_at_one = (fr.query_prevalence - 1.0) * (fr.query_prevalence - 1.0);
    double d_at_zero = fr.query_prevalence * fr.query_prevalence;
    for (int i = 0; i < 3; ++i) {
        d_at_one += fr.a[i] * fr.a[i];
        d_at_zero += fr.b[i] * fr.b[i];
    }
    if (d_at_one < best_d) {
        best_d = d_at_one;
        out.p_alpha_star = 1.0;
        out.t = {0.0, 0.0, 0.0};
        out.closest.prevalence_alpha = 1.0;
        for (int i = 0; i < 3; ++i) {
            out.closest.acc_alpha[i] = fr.f_alpha[i];
            out.closest.acc_beta[i] = point.acc_beta[i];
        }
        out.distance = std::sqrt(std::max(best_d, 0.0));
    }
    if (d_at_zero < best_d) {
        best_d = d_at_zero;
        out.p_alpha_star = 0.0;
        out.t = {0.0, 0.0, 0.0};
        out.closest.prevalence_alpha = 0.0;
        for (int i = 0; i < 3; ++i) {
            out.closest.acc_alpha[i] = point.acc_alpha[i];
            out.closest.acc_beta[i] = fr.f_beta[i];
        }
        out.distance = std::sqrt(std::max(best_d, 0.0));
    }
    return out;
}

VarietyProjection project(const EvaluationPoint<double>& point, const DecisionSketch& sketch,
                          int grid, int refinements) {
    return project(point, frequencies<double>(sketch), grid, refinements);
}

}  // namespace algeval
