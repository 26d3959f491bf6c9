#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "algeval/evaluators.hpp"
#include "algeval/forward.hpp"
#include "algeval/point.hpp"
#include "algeval/rng.hpp"

namespace algeval {

// Samples rational ground truths on a fixed denominator lattice so that
// exact-mode pipelines stay exact: coordinates are k/denominator uniform on
// the closed ranges, correlations uniform on [-gamma_cap, gamma_cap] subject
// to feasibility rejection.
struct TruthSampler {
    Rational prevalence_lo = make_rational(1, 4);
    Rational prevalence_hi = make_rational(3, 4);
    Rational accuracy_lo = make_rational(3, 5);
    Rational accuracy_hi = make_rational(19, 20);
    Rational gamma_cap = Rational(0);
    unsigned denominator = 40;

    Rational sample_coordinate(Rng& rng, const Rational& lo, const Rational& hi) const;

    // One feasible (point, correlations) draw; throws InfeasibleMoments after
    // max_retries rejections.
    std::pair<EvaluationPoint<Rational>, CorrelationSet<Rational>> sample(
        Rng& rng, int max_retries = 100) const;
};

struct ProfileConfig {
    std::vector<std::uint64_t> test_sizes;
    int trials_per_size = 1;
    TruthSampler sampler;
    std::uint64_t seed = 0;
    bool exact_mode = true;
    int max_retries = 100;
    int jobs = 1;
};

struct ProfileRecord {
    std::uint64_t test_size = 0;
    std::uint64_t trials = 0;
    std::uint64_t successes = 0;
    double fraction_seemingly_correct = 0.0;
    // Trials whose failure mode implies no real solution point exists
    // (EmptyVariety or ComplexSolution).
    double fraction_never_solvable = 0.0;
    std::array<std::uint64_t, 4> failure_histogram{};  // indexed by FailureKind
};

std::vector<ProfileRecord> profile_failures(const ProfileConfig& config);

struct ScatterRecord {
    std::uint64_t test_size = 0;
    std::uint64_t trial = 0;
    double max_abs_pair_corr = 0.0;
    std::optional<FailureKind> failure;          // empty on success
    std::optional<double> distance;              // projection distance of the estimate
    std::optional<double> estimate_error;        // min-over-pair distance to realized truth
};

std::vector<ScatterRecord> scatter_distance_correlation(const ProfileConfig& config);

// Spearman rank correlation with average ranks for ties.
double spearman_rank_correlation(std::span<const double> x, std::span<const double> y);

}  // namespace algeval
