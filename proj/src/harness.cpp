#include "algeval/harness.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <numeric>
#include <thread>

#include "algeval/variety.hpp"

namespace algeval {

Rational TruthSampler::sample_coordinate(Rng& rng, const Rational& lo,
                                         const Rational& hi) const {
    // Lattice points k/denominator inside [lo, hi], endpoints included.
    BigInt den(denominator);
    BigInt k_lo, k_hi;
    mpz_cdiv_q(k_lo.get_mpz_t(), BigInt(lo.get_num() * den).get_mpz_t(),
               lo.get_den().get_mpz_t());
    mpz_fdiv_q(k_hi.get_mpz_t(), BigInt(hi.get_num() * den).get_mpz_t(),
               hi.get_den().get_mpz_t());
    if (k_hi < k_lo)
        throw InfeasibleMoments("no lattice point of denominator " +
                                std::to_string(denominator) + " inside [" + scalar_text(lo) +
                                ", " + scalar_text(hi) + "]");
    unsigned long span = BigInt(k_hi - k_lo).get_ui() + 1;
    BigInt k = k_lo + BigInt(static_cast<unsigned long>(rng.below(span)));
    return make_rational(std::move(k), std::move(den));
}

namespace {

// Feasible interval for a single pair correlation given the two conditional
// accuracies: the four pair-table entries must stay nonnegative. Drawing
// inside this box before the full trio rejection does not change the
// accepted distribution (everything outside would be rejected anyway), it
// only removes hopeless draws.
std::pair<Rational, Rational> pair_gamma_bounds(const Rational& p_i, const Rational& p_j) {
    Rational lo = -p_i * p_j;
    Rational lo2 = -(1 - p_i) * (1 - p_j);
    if (lo2 > lo) lo = lo2;
    Rational hi = p_i * (1 - p_j);
    Rational hi2 = (1 - p_i) * p_j;
    if (hi2 < hi) hi = hi2;
    return {lo, hi};
}

}  // namespace

std::pair<EvaluationPoint<Rational>, CorrelationSet<Rational>> TruthSampler::sample(
    Rng& rng, int max_retries) const {
    Rational cap = gamma_cap;
    for (int attempt = 0; attempt < max_retries; ++attempt) {
        EvaluationPoint<Rational> point;
        point.prevalence_alpha = sample_coordinate(rng, prevalence_lo, prevalence_hi);
        for (int i = 0; i < 3; ++i) {
            point.acc_alpha[i] = sample_coordinate(rng, accuracy_lo, accuracy_hi);
            point.acc_beta[i] = sample_coordinate(rng, accuracy_lo, accuracy_hi);
        }
        try {
            CorrelationSet<Rational> corr;
            if (sgn(cap) > 0) {
                for (int p = 0; p < 3; ++p) {
                    auto [i, j] = kPairs[p];
                    auto [lo_a, hi_a] =
                        pair_gamma_bounds(point.acc_alpha[i], point.acc_alpha[j]);
                    auto [lo_b, hi_b] =
                        pair_gamma_bounds(point.acc_beta[i], point.acc_beta[j]);
                    corr.pair_alpha[p] = sample_coordinate(
                        rng, lo_a > -cap ? lo_a : -cap, hi_a < cap ? hi_a : cap);
                    corr.pair_beta[p] = sample_coordinate(
                        rng, lo_b > -cap ? lo_b : -cap, hi_b < cap ? hi_b : cap);
                }
                // 3-way correlations stay zero: the pair caps are the stress
                // knob, and feasible triple ranges shrink fast near the cap.
            }
            conditional_event_table(point, corr);
            return {point, corr};
        } catch (const InfeasibleMoments&) {
            continue;
        }
    }
    throw InfeasibleMoments("no feasible ground truth after bounded retries");
}

namespace {

struct TrialOutcome {
    bool success = false;
    FailureKind failure = FailureKind::EmptyVariety;
    double max_abs_pair_corr = 0.0;
    std::optional<double> distance;
    std::optional<double> estimate_error;
};

double max_abs_pair_correlation(const GroundTruthPoint& gt) {
    double best = 0.0;
    for (int p = 0; p < 3; ++p) {
        best = std::max(best, std::fabs(to_double(gt.correlations.pair_alpha[p])));
        best = std::max(best, std::fabs(to_double(gt.correlations.pair_beta[p])));
    }
    return best;
}

double point_distance(const EvaluationPoint<double>& a, const EvaluationPoint<double>& b) {
    auto ca = point_coordinates(a);
    auto cb = point_coordinates(b);
    double sum = 0.0;
    for (int k = 0; k < 7; ++k) {
        double d = ca[k] - cb[k];
        sum += d * d;
    }
    return std::sqrt(sum);
}

TrialOutcome run_trial(const ProfileConfig& config, std::uint64_t test_size,
                       std::uint64_t size_index, std::uint64_t trial, bool with_scatter) {
    Rng rng = Rng(config.seed).split(size_index * 1000003ULL + trial);
    auto [point, corr] = config.sampler.sample(rng, config.max_retries);
    LabeledStream stream = sample_stream(point, corr, test_size, rng.next_u64());
    DecisionSketch sketch = to_sketch(stream);

    TrialOutcome out;
    if (with_scatter) {
        GroundTruthPoint realized = truth_statistics(stream);
        out.max_abs_pair_corr = max_abs_pair_correlation(realized);

        auto evaluate_and_measure = [&](const auto& outcome) {
            if (outcome.has_points()) {
                out.success = true;
                const auto& pts = outcome.points();
                EvaluationPoint<double> low = point_to_double(pts.low);
                EvaluationPoint<double> high = point_to_double(pts.high);
                FrequencyVector<double> fv = frequencies<double>(sketch);
                out.distance = std::min(project(low, fv).distance,
                                        project(high, fv).distance);
                EvaluationPoint<double> truth = point_to_double(realized.point);
                out.estimate_error = std::min(point_distance(low, truth),
                                              point_distance(high, truth));
            } else {
                out.failure = outcome.failure().kind;
            }
        };
        if (config.exact_mode) {
            evaluate_and_measure(independent_evaluate<Rational>(sketch));
        } else {
            evaluate_and_measure(independent_evaluate<double>(sketch));
        }
    } else {
        if (config.exact_mode) {
            auto outcome = independent_evaluate<Rational>(sketch);
            out.success = outcome.has_points();
            if (!out.success) out.failure = outcome.failure().kind;
        } else {
            auto outcome = independent_evaluate<double>(sketch);
            out.success = outcome.has_points();
            if (!out.success) out.failure = outcome.failure().kind;
        }
    }
    return out;
}

// Runs trials on a small worker pool; results land in trial order so the
// job count never changes the output.
std::vector<TrialOutcome> run_trials(const ProfileConfig& config, std::uint64_t test_size,
                                     std::uint64_t size_index, bool with_scatter) {
    std::uint64_t trials = static_cast<std::uint64_t>(config.trials_per_size);
    std::vector<TrialOutcome> outcomes(trials);
    int jobs = std::max(1, config.jobs);
    if (jobs == 1) {
        for (std::uint64_t t = 0; t < trials; ++t)
            outcomes[t] = run_trial(config, test_size, size_index, t, with_scatter);
        return outcomes;
    }
    std::vector<std::thread> workers;
    workers.reserve(jobs);
    std::mutex error_mutex;
    std::exception_ptr first_error;
    for (int w = 0; w < jobs; ++w) {
        workers.emplace_back([&, w]() {
            try {
                for (std::uint64_t t = w; t < trials; t += jobs)
                    outcomes[t] = run_trial(config, test_size, size_index, t, with_scatter);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!first_error) first_error = std::current_exception();
            }
        });
    }
    for (auto& th : workers) th.join();
    if (first_error) std::rethrow_exception(first_error);
    return outcomes;
}

}  // namespace

std::vector<ProfileRecord> profile_failures(const ProfileConfig& config) {
    std::vector<ProfileRecord> records;
    records.reserve(config.test_sizes.size());
    for (std::size_t si = 0; si < config.test_sizes.size(); ++si) {
        std::uint64_t n = config.test_sizes[si];
        auto outcomes = run_trials(config, n, si, /*with_scatter=*/false);

        ProfileRecord rec;
        rec.test_size = n;
        rec.trials = outcomes.size();
        for (const auto& o : outcomes) {
            if (o.success) {
                ++rec.successes;
            } else {
                ++rec.failure_histogram[static_cast<int>(o.failure)];
            }
        }
        double trials = static_cast<double>(rec.trials);
        rec.fraction_seemingly_correct = static_cast<double>(rec.successes) / trials;
        std::uint64_t unsolvable =
            rec.failure_histogram[static_cast<int>(FailureKind::EmptyVariety)] +
            rec.failure_histogram[static_cast<int>(FailureKind::ComplexSolution)];
        rec.fraction_never_solvable = static_cast<double>(unsolvable) / trials;
        records.push_back(rec);
    }
    return records;
}

std::vector<ScatterRecord> scatter_distance_correlation(const ProfileConfig& config) {
    std::vector<ScatterRecord> records;
    for (std::size_t si = 0; si < config.test_sizes.size(); ++si) {
        std::uint64_t n = config.test_sizes[si];
        auto outcomes = run_trials(config, n, si, /*with_scatter=*/true);
        for (std::uint64_t t = 0; t < outcomes.size(); ++t) {
            const auto& o = outcomes[t];
            ScatterRecord rec;
            rec.test_size = n;
            rec.trial = t;
            rec.max_abs_pair_corr = o.max_abs_pair_corr;
            if (o.success) {
                rec.distance = o.distance;
                rec.estimate_error = o.estimate_error;
            } else {
                rec.failure = o.failure;
            }
            records.push_back(rec);
        }
    }
    return records;
}

namespace {

std::vector<double> average_ranks(std::span<const double> values) {
    std::size_t n = values.size();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
    std::vector<double> ranks(n);
    std::size_t i = 0;
    while (i < n) {
        std::size_t j = i;
        while (j + 1 < n && values[order[j + 1]] == values[order[i]]) ++j;
        double rank = 0.5 * static_cast<double>(i + j) + 1.0;
        for (std::size_t k = i; k <= j; ++k) ranks[order[k]] = rank;
        i = j + 1;
    }
    return ranks;
}

}  // namespace

double spearman_rank_correlation(std::span<const double> x, std::span<const double> y) {
    std::size_t n = std::min(x.size(), y.size());
    if (n < 2) return 0.0;
    auto rx = average_ranks(x.subspan(0, n));
    auto ry = average_ranks(y.subspan(0, n));
    double mean = (static_cast<double>(n) + 1.0) / 2.0;
    double num = 0.0, dx = 0.0, dy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double a = rx[i] - mean;
        double b = ry[i] - mean;
        num += a * b;
        dx += a * a;
        dy += b * b;
    }
    if (dx == 0.0 || dy == 0.0) return 0.0;
    return num / std::sqrt(dx * dy);
}

}  // namespace algeval
