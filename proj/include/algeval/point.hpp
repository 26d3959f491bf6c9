#pragma once

#include <array>
#include <cstddef>

#include "algeval/scalar.hpp"

namespace algeval {

// Classifier pairs in canonical order: (1,2), (1,3), (2,3) as zero-based
// (0,1), (0,2), (1,2). kThirdOfPair[p] is the classifier not in pair p.
inline constexpr std::array<std::array<int, 2>, 3> kPairs = {{{0, 1}, {0, 2}, {1, 2}}};
inline constexpr std::array<int, 3> kThirdOfPair = {2, 1, 0};

constexpr int pair_index(int i, int j) {
    // expects i < j
    return i == 0 ? (j == 1 ? 0 : 1) : 2;
}

// A point in 7-dimensional evaluation space: prevalence of the alpha label
// plus per-classifier accuracies on each label.
template <class S>
struct EvaluationPoint {
    S prevalence_alpha{};
    std::array<S, 3> acc_alpha{};  // P_{i,alpha}
    std::array<S, 3> acc_beta{};   // P_{i,beta}

    // g_i = P_{i,alpha} + P_{i,beta} - 1; zero on the blind-spot line.
    S competence(int i) const { return acc_alpha[i] + acc_beta[i] - 1; }

    friend bool operator==(const EvaluationPoint&, const EvaluationPoint&) = default;
};

// Pair and 3-way sample correlations per label; all zero means sample
// independence on the test.
template <class S>
struct CorrelationSet {
    std::array<S, 3> pair_alpha{};  // Gamma_{i,j,alpha}, pair order per kPairs
    std::array<S, 3> pair_beta{};
    S triple_alpha{};
    S triple_beta{};

    static CorrelationSet zero() { return CorrelationSet{}; }

    bool is_zero() const {
        for (int p = 0; p < 3; ++p)
            if (pair_alpha[p] != S{} || pair_beta[p] != S{}) return false;
        return triple_alpha == S{} && triple_beta == S{};
    }

    friend bool operator==(const CorrelationSet&, const CorrelationSet&) = default;
};

template <class S>
EvaluationPoint<double> point_to_double(const EvaluationPoint<S>& p) {
    EvaluationPoint<double> out;
    out.prevalence_alpha = to_double(p.prevalence_alpha);
    for (int i = 0; i < 3; ++i) {
        out.acc_alpha[i] = to_double(p.acc_alpha[i]);
        out.acc_beta[i] = to_double(p.acc_beta[i]);
    }
    return out;
}

template <class S>
CorrelationSet<double> correlations_to_double(const CorrelationSet<S>& c) {
    CorrelationSet<double> out;
    for (int p = 0; p < 3; ++p) {
        out.pair_alpha[p] = to_double(c.pair_alpha[p]);
        out.pair_beta[p] = to_double(c.pair_beta[p]);
    }
    out.triple_alpha = to_double(c.triple_alpha);
    out.triple_beta = to_double(c.triple_beta);
    return out;
}

// Coordinates flattened in canonical order: prevalence, then per classifier
// the alpha and beta accuracies. Used by the projection code and reports.
template <class S>
std::array<S, 7> point_coordinates(const EvaluationPoint<S>& p) {
    return {p.prevalence_alpha, p.acc_alpha[0], p.acc_beta[0],
            p.acc_alpha[1],     p.acc_beta[1],  p.acc_alpha[2], p.acc_beta[2]};
}

template <class S>
EvaluationPoint<S> point_from_coordinates(const std::array<S, 7>& c) {
    EvaluationPoint<S> p;
    p.prevalence_alpha = c[0];
    p.acc_alpha = {c[1], c[3], c[5]};
    p.acc_beta = {c[2], c[4], c[6]};
    return p;
}

}  // namespace algeval
