#pragma once

#include <array>
#include <cstdint>

#include "algeval/errors.hpp"
#include "algeval/point.hpp"
#include "algeval/rng.hpp"
#include "algeval/sketch.hpp"

namespace algeval {

// Per-label conditional decision-event frequencies #(event | label) / n_label.
// Feasible iff every entry lies in [0,1]; each label's eight entries sum to 1
// by construction.
template <class S>
struct ConditionalEventTable {
    std::array<S, 8> given_alpha{};
    std::array<S, 8> given_beta{};

    const std::array<S, 8>& given(Label l) const {
        return l == Label::alpha ? given_alpha : given_beta;
    }
};

namespace detail {

// E[prod_i I_i | label] where I_i is the indicator of classifier i casting
// vote event.votes[i], expanded through the correct-vote moments
//   E[x_i]       = acc_i
//   E[x_i x_j]   = acc_i acc_j + pair_ij
//   E[x_i x_j x_k] = acc_i acc_j acc_k + acc_i pair_jk + acc_j pair_ik
//                    + acc_k pair_ij + triple.
template <class S>
S conditional_event_frequency(const DecisionEvent& event, Label label,
                              const std::array<S, 3>& acc, const std::array<S, 3>& pair,
                              const S& triple) {
    // I_i = c_i + s_i * x_i with (c,s) = (0,+1) when the vote matches the
    // label, (1,-1) otherwise.
    std::array<S, 3> c;
    std::array<S, 3> s;
    for (int i = 0; i < 3; ++i) {
        if (event.votes[i] == label) {
            c[i] = S(0);
            s[i] = S(1);
        } else {
            c[i] = S(1);
            s[i] = S(-1);
        }
    }
    S m3 = acc[0] * acc[1] * acc[2] + acc[0] * pair[2] + acc[1] * pair[1] +
           acc[2] * pair[0] + triple;
    std::array<S, 3> m2;  // E[x_i x_j] by pair index
    for (int p = 0; p < 3; ++p) {
        auto [i, j] = kPairs[p];
        m2[p] = acc[i] * acc[j] + pair[p];
    }
    S value = c[0] * c[1] * c[2];
    value += s[0] * c[1] * c[2] * acc[0];
    value += c[0] * s[1] * c[2] * acc[1];
    value += c[0] * c[1] * s[2] * acc[2];
    value += s[0] * s[1] * c[2] * m2[0];
    value += s[0] * c[1] * s[2] * m2[1];
    value += c[0] * s[1] * s[2] * m2[2];
    value += s[0] * s[1] * s[2] * m3;
    return value;
}

}  // namespace detail

template <class S>
ConditionalEventTable<S> conditional_event_table(const EvaluationPoint<S>& point,
                                                 const CorrelationSet<S>& corr) {
    ConditionalEventTable<S> table;
    for (int e = 0; e < 8; ++e) {
        auto ev = DecisionEvent::from_index(e);
        table.given_alpha[e] = detail::conditional_event_frequency(
            ev, Label::alpha, point.acc_alpha, corr.pair_alpha, corr.triple_alpha);
        table.given_beta[e] = detail::conditional_event_frequency(
            ev, Label::beta, point.acc_beta, corr.pair_beta, corr.triple_beta);
    }
    for (int e = 0; e < 8; ++e) {
        if (!scalar_in_unit_interval(table.given_alpha[e]))
            throw InfeasibleMoments("conditional frequency of " +
                                    DecisionEvent::from_index(e).pattern() +
                                    " given alpha is outside [0,1]");
        if (!scalar_in_unit_interval(table.given_beta[e]))
            throw InfeasibleMoments("conditional frequency of " +
                                    DecisionEvent::from_index(e).pattern() +
                                    " given beta is outside [0,1]");
    }
    return table;
}

template <class S>
FrequencyVector<S> correlated_trio_frequencies(const EvaluationPoint<S>& point,
                                               const CorrelationSet<S>& corr) {
    auto table = conditional_event_table(point, corr);
    FrequencyVector<S> out;
    S p = point.prevalence_alpha;
    for (int e = 0; e < 8; ++e)
        out[e] = p * table.given_alpha[e] + (S(1) - p) * table.given_beta[e];
    return out;
}

// Formal evaluation of the correlated generating polynomials: mixes the
// per-label moment expansions without requiring the conditional tables to be
// realizable as counts. Some algebraically valid correlation settings (used
// by the Taylor blind-spot analysis) have no per-label realization even
// though every mixed frequency stays in [0,1]; only the mixed outputs are
// range-checked here.
template <class S>
FrequencyVector<S> formal_trio_frequencies(const EvaluationPoint<S>& point,
                                           const CorrelationSet<S>& corr) {
    FrequencyVector<S> out;
    S p = point.prevalence_alpha;
    for (int e = 0; e < 8; ++e) {
        auto ev = DecisionEvent::from_index(e);
        S given_alpha = detail::conditional_event_frequency(
            ev, Label::alpha, point.acc_alpha, corr.pair_alpha, corr.triple_alpha);
        S given_beta = detail::conditional_event_frequency(
            ev, Label::beta, point.acc_beta, corr.pair_beta, corr.triple_beta);
        out[e] = p * given_alpha + (S(1) - p) * given_beta;
        if (!scalar_in_unit_interval(out[e]))
            throw InfeasibleMoments("mixed frequency of " + ev.pattern() +
                                    " is outside [0,1]");
    }
    return out;
}

template <class S>
FrequencyVector<S> independent_frequencies(const EvaluationPoint<S>& point) {
    return correlated_trio_frequencies(point, CorrelationSet<S>::zero());
}

template <class S>
struct PairFrequencies {
    S both_alpha{}, alpha_beta{}, beta_alpha{}, both_beta{};

    S sum() const { return both_alpha + alpha_beta + beta_alpha + both_beta; }
};

// The four pair-sketch generating polynomials for classifiers (i, j):
//   f_{a,a} = P_a (P_ia P_ja + G_a) + P_b ((1-P_ib)(1-P_jb) + G_b), etc.
// acc arrays are {classifier i, classifier j} on the respective label.
template <class S>
PairFrequencies<S> correlated_pair_table(const S& prevalence_alpha,
                                         const std::array<S, 2>& acc_alpha,
                                         const std::array<S, 2>& acc_beta,
                                         const S& gamma_alpha, const S& gamma_beta) {
    S pa = prevalence_alpha;
    S pb = S(1) - pa;
    std::array<S, 8> conditionals = {
        acc_alpha[0] * acc_alpha[1] + gamma_alpha,                  // aa | alpha
        acc_alpha[0] * (S(1) - acc_alpha[1]) - gamma_alpha,         // ab | alpha
        (S(1) - acc_alpha[0]) * acc_alpha[1] - gamma_alpha,         // ba | alpha
        (S(1) - acc_alpha[0]) * (S(1) - acc_alpha[1]) + gamma_alpha,// bb | alpha
        (S(1) - acc_beta[0]) * (S(1) - acc_beta[1]) + gamma_beta,   // aa | beta
        (S(1) - acc_beta[0]) * acc_beta[1] - gamma_beta,            // ab | beta
        acc_beta[0] * (S(1) - acc_beta[1]) - gamma_beta,            // ba | beta
        acc_beta[0] * acc_beta[1] + gamma_beta,                     // bb | beta
    };
    for (const S& c : conditionals)
        if (!scalar_in_unit_interval(c))
            throw InfeasibleMoments("pair conditional frequency outside [0,1]");
    PairFrequencies<S> out;
    out.both_alpha = pa * conditionals[0] + pb * conditionals[4];
    out.alpha_beta = pa * conditionals[1] + pb * conditionals[5];
    out.beta_alpha = pa * conditionals[2] + pb * conditionals[6];
    out.both_beta = pa * conditionals[3] + pb * conditionals[7];
    return out;
}

// Smallest n for which every count n * f is integral: the lcm of the reduced
// denominators.
BigInt minimal_test_size(const FrequencyVector<Rational>& freqs);
BigInt minimal_test_size(const FrequencyVector<double>&);  // throws NotRational

// Smallest n for which the by-label materialization counts
// n * P_label * cond(event | label) are all integral.
BigInt minimal_materialization_size(const EvaluationPoint<Rational>& point,
                                    const CorrelationSet<Rational>& corr);

// Exact finite stream realizing (point, corr): per label exactly
// n_label = n * P_label items with event counts n_label * cond(event|label),
// order shuffled by the seeded generator. truth_statistics of the output
// reproduces (point, corr) exactly.
LabeledStream materialize_stream(const EvaluationPoint<Rational>& point,
                                 const CorrelationSet<Rational>& corr, std::uint64_t n,
                                 std::uint64_t seed);

// Finite-n noise source: n items drawn by seeded categorical sampling,
// truth ~ Bernoulli(P_alpha), event ~ conditional table.
LabeledStream sample_stream(const EvaluationPoint<Rational>& point,
                            const CorrelationSet<Rational>& corr, std::uint64_t n,
                            std::uint64_t seed);

}  // namespace algeval
