#pragma once

#include <array>
#include <cmath>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "algeval/errors.hpp"
#include "algeval/numerics.hpp"
#include "algeval/point.hpp"
#include "algeval/sketch.hpp"

namespace algeval {

// Majority-voting evaluator output. Every defined field is a ratio of sketch
// counters and lies in [0,1] by construction; an accuracy is absent when the
// relevant majority-vote prevalence is zero.
template <class S>
struct MVEstimate {
    S prevalence_alpha{};
    std::array<std::optional<S>, 3> acc_alpha{};
    std::array<std::optional<S>, 3> acc_beta{};

    const S& require_acc(int i, Label l) const {
        const auto& field = l == Label::alpha ? acc_alpha[i] : acc_beta[i];
        if (!field)
            throw UndefinedAccuracy("majority-vote prevalence of label " +
                                    std::string(1, label_char(l)) +
                                    " is zero; accuracy undefined");
        return *field;
    }
};

enum class FailureKind { EmptyVariety, ComplexSolution, OutsideUnitCube, UnresolvedSquareRoot };

const char* failure_kind_name(FailureKind kind);

struct Failure {
    FailureKind kind;
    std::string detail;
    // Offending quantities as (name, value-text) pairs.
    std::vector<std::pair<std::string, std::string>> data;
};

// Radicands entering the estimate: the prevalence discriminant and the three
// squared competences. In exact mode their rational-square status decides
// whether the estimate resolves to integer ratios.
template <class S>
struct Radicands {
    S disc{};
    std::array<S, 3> g_squared{};
};

template <class S>
struct PointPair {
    EvaluationPoint<S> low;   // ascending prevalence; ties by ascending P_{1,alpha}
    EvaluationPoint<S> high;
};

template <class S>
struct EvaluationOutcome {
    std::variant<PointPair<S>, Failure> result;
    std::optional<Radicands<S>> radicands;
    bool exact = false;

    bool has_points() const { return std::holds_alternative<PointPair<S>>(result); }
    const PointPair<S>& points() const { return std::get<PointPair<S>>(result); }
    const Failure& failure() const { return std::get<Failure>(result); }
};

// The sister-point transformation; an involution.
template <class S>
EvaluationPoint<S> sister_point(const EvaluationPoint<S>& p) {
    EvaluationPoint<S> out;
    out.prevalence_alpha = S(1) - p.prevalence_alpha;
    for (int i = 0; i < 3; ++i) {
        out.acc_alpha[i] = S(1) - p.acc_beta[i];
        out.acc_beta[i] = S(1) - p.acc_alpha[i];
    }
    return out;
}

template <class S>
MVEstimate<S> mv_evaluate(const FrequencyVector<S>& fv) {
    MVEstimate<S> mv;
    // Majority-alpha patterns: aaa, aab, aba, baa (indices 0,1,2,4).
    S prev_alpha = fv[0] + fv[1] + fv[2] + fv[4];
    S prev_beta = fv[3] + fv[5] + fv[6] + fv[7];
    mv.prevalence_alpha = prev_alpha;
    // The sole dissenter against an alpha majority: baa for classifier 1,
    // aba for 2, aab for 3. Mirrored for beta majorities.
    constexpr std::array<int, 3> alpha_dissent = {4, 2, 1};
    constexpr std::array<int, 3> beta_dissent = {3, 5, 6};
    bool alpha_defined = !(prev_alpha == S(0));
    bool beta_defined = !(prev_beta == S(0));
    for (int i = 0; i < 3; ++i) {
        if (alpha_defined) mv.acc_alpha[i] = S(1) - fv[alpha_dissent[i]] / prev_alpha;
        if (beta_defined) mv.acc_beta[i] = S(1) - fv[beta_dissent[i]] / prev_beta;
    }
    return mv;
}

template <class S>
MVEstimate<S> mv_evaluate(const DecisionSketch& sketch) {
    return mv_evaluate(frequencies<S>(sketch));
}

namespace detail {

template <class S>
EvaluationOutcome<S> make_failure(FailureKind kind, std::string detail,
                                  std::vector<std::pair<std::string, std::string>> data,
                                  std::optional<Radicands<S>> radicands) {
    EvaluationOutcome<S> out;
    out.result = Failure{kind, std::move(detail), std::move(data)};
    out.radicands = std::move(radicands);
    out.exact = is_exact_scalar_v<S>;
    return out;
}

template <class S>
std::string radicand_text(const S& v) {
    return scalar_text(v);
}

}  // namespace detail

// The fully inferential independent evaluator. Solves the independence
// moment system
//   Delta_{i,j} = q g_i g_j,   T = q (2 P_alpha - 1) g_1 g_2 g_3,
//   f_{i,beta}  = P_alpha (1 - P_{i,alpha}) + (1 - P_alpha) P_{i,beta}
// with q = P_alpha (1 - P_alpha), giving the prevalence quadratic
//   disc * P^2 - disc * P + D = 0,  D = Delta_12 Delta_13 Delta_23,
//   disc = T^2 + 4 D,
// whose roots are 1/2 +- T / (2 sqrt(disc)). Failure modes are data.
template <class S>
EvaluationOutcome<S> independent_evaluate(const FrequencyVector<S>& fv) {
    auto st = statistics(fv);
    const auto& delta = st.delta;
    const S& t = st.triple_delta;

    auto pair_name = [](int p) {
        return "delta_" + std::to_string(kPairs[p][0] + 1) + std::to_string(kPairs[p][1] + 1);
    };

    for (int p = 0; p < 3; ++p) {
        if (scalar_is_zero(delta[p])) {
            return detail::make_failure<S>(
                FailureKind::EmptyVariety,
                pair_name(p) + " vanishes: the pair carries no joint signal",
                {{pair_name(p), detail::radicand_text(delta[p])}}, std::nullopt);
        }
    }

    S d_product = delta[0] * delta[1] * delta[2];
    S disc = t * t + 4 * d_product;
    if (scalar_is_zero(disc)) {
        return detail::make_failure<S>(
            FailureKind::EmptyVariety, "degenerate discriminant: prevalence quadratic has no root",
            {{"disc", detail::radicand_text(disc)}}, std::nullopt);
    }
    if (scalar_is_negative(disc)) {
        Radicands<S> rad;
        rad.disc = disc;
        return detail::make_failure<S>(FailureKind::ComplexSolution,
                                       "negative discriminant: complex prevalence roots",
                                       {{"disc", detail::radicand_text(disc)}},
                                       std::move(rad));
    }

    S q = d_product / disc;
    if (scalar_is_zero(q)) {
        return detail::make_failure<S>(FailureKind::EmptyVariety,
                                       "q = P(1-P) vanishes: no admissible prevalence",
                                       {{"q", detail::radicand_text(q)}}, std::nullopt);
    }
    // q = P(1-P) for both roots; q < 0 puts the roots outside [0,1] but the
    // points stay real, so only g^2 < 0 is a complex failure.
    std::array<S, 3> g_squared = {
        delta[0] * delta[1] / (delta[2] * q),
        delta[0] * delta[2] / (delta[1] * q),
        delta[1] * delta[2] / (delta[0] * q),
    };
    Radicands<S> rad{disc, g_squared};

    for (int i = 0; i < 3; ++i) {
        if (scalar_is_negative(g_squared[i])) {
            return detail::make_failure<S>(
                FailureKind::ComplexSolution,
                "g_" + std::to_string(i + 1) + "^2 is negative: complex accuracies",
                {{"g_squared_" + std::to_string(i + 1),
                  detail::radicand_text(g_squared[i])}},
                rad);
        }
    }

    bool tie = scalar_is_zero(t);
    S sqrt_disc{};
    std::array<S, 3> g_abs{};
    if constexpr (is_exact_scalar_v<S>) {
        // Rationality gate: disc enters the estimate only off the tie (at
        // T = 0 the prevalence is 1/2 with no square root taken).
        if (!tie) {
            auto sd = rational_sqrt_exact(disc);
            if (!sd) {
                return detail::make_failure<S>(
                    FailureKind::UnresolvedSquareRoot,
                    "discriminant is not the square of a rational",
                    {{"disc", detail::radicand_text(disc)}}, rad);
            }
            sqrt_disc = *sd;
        }
        for (int i = 0; i < 3; ++i) {
            auto gi = rational_sqrt_exact(g_squared[i]);
            if (!gi) {
                return detail::make_failure<S>(
                    FailureKind::UnresolvedSquareRoot,
                    "g_" + std::to_string(i + 1) + "^2 is not the square of a rational",
                    {{"g_squared_" + std::to_string(i + 1),
                      detail::radicand_text(g_squared[i])}},
                    rad);
            }
            g_abs[i] = *gi;
        }
    } else {
        sqrt_disc = std::sqrt(disc);
        for (int i = 0; i < 3; ++i) g_abs[i] = std::sqrt(std::max(g_squared[i], S(0)));
    }

    // Pairwise signs: sign(g_i g_j) = sign(Delta_{i,j}) * sign(q). With
    // disc > 0 the three constraints are always mutually consistent.
    int sq = scalar_sign(q);
    std::array<int, 3> sign = {1, scalar_sign(delta[0]) * sq,
                               scalar_sign(delta[1]) * sq};

    auto build_point = [&](const S& root, bool flip) {
        EvaluationPoint<S> p;
        p.prevalence_alpha = root;
        for (int i = 0; i < 3; ++i) {
            S g = g_abs[i];
            if ((sign[i] < 0) != flip) g = -g;
            p.acc_beta[i] = st.vote_beta[i] + root * g;
            p.acc_alpha[i] = (S(1) - st.vote_beta[i]) + (S(1) - root) * g;
        }
        return p;
    };

    EvaluationPoint<S> first, second;
    if (tie) {
        // Both roots coincide at 1/2; the two variety points are the global
        // sign flips of each other.
        S half = scalar_ratio<S>(1, 2);
        first = build_point(half, false);
        second = build_point(half, true);
    } else {
        S root_plus = scalar_ratio<S>(1, 2) + t / (2 * sqrt_disc);
        S root_minus = S(1) - root_plus;
        // sign(T) = sign(q (2P-1)) sign(g1 g2 g3): the plus root requires
        // sign(g1 g2 g3) = sign(q), the minus root the opposite.
        int tentative = sign[0] * sign[1] * sign[2];
        first = build_point(root_plus, tentative != sq);
        second = build_point(root_minus, tentative != -sq);
    }

    // Closed unit cube; boundary accuracies of exactly 0 or 1 are accepted.
    std::vector<std::pair<std::string, std::string>> outside;
    auto check_cube = [&](const EvaluationPoint<S>& p, const char* tag) {
        auto coords = point_coordinates(p);
        static constexpr std::array<const char*, 7> names = {
            "prevalence", "acc_1_alpha", "acc_1_beta", "acc_2_alpha",
            "acc_2_beta", "acc_3_alpha", "acc_3_beta"};
        for (int k = 0; k < 7; ++k) {
            if (!scalar_in_unit_interval(coords[k]))
                outside.emplace_back(std::string(tag) + "." + names[k],
                                     detail::radicand_text(coords[k]));
        }
    };
    check_cube(first, "point1");
    check_cube(second, "point2");
    if (!outside.empty()) {
        // Keep the candidate prevalence roots visible: they are real numbers
        // even when accuracy coordinates leave the cube.
        outside.emplace_back("prevalence_root_1",
                             detail::radicand_text(first.prevalence_alpha));
        outside.emplace_back("prevalence_root_2",
                             detail::radicand_text(second.prevalence_alpha));
        return detail::make_failure<S>(FailureKind::OutsideUnitCube,
                                       "evaluation points leave the unit cube",
                                       std::move(outside), rad);
    }

    auto ascending = [](const EvaluationPoint<S>& a, const EvaluationPoint<S>& b) {
        if (a.prevalence_alpha != b.prevalence_alpha)
            return a.prevalence_alpha < b.prevalence_alpha;
        return a.acc_alpha[0] < b.acc_alpha[0];
    };
    if (!ascending(first, second)) std::swap(first, second);

    EvaluationOutcome<S> out;
    out.result = PointPair<S>{std::move(first), std::move(second)};
    out.radicands = std::move(rad);
    out.exact = is_exact_scalar_v<S>;
    return out;
}

template <class S>
EvaluationOutcome<S> independent_evaluate(const DecisionSketch& sketch) {
    return independent_evaluate(frequencies<S>(sketch));
}

// Decoding hints (optional post-filters, never defaults).

// Keeps the point where at least two classifiers have competence above zero;
// inapplicable (nullopt) when neither or both qualify.
template <class S>
std::optional<EvaluationPoint<S>> decode_majority_competent(const PointPair<S>& pair) {
    auto qualifies = [](const EvaluationPoint<S>& p) {
        int positive = 0;
        for (int i = 0; i < 3; ++i)
            if (p.competence(i) > S(0)) ++positive;
        return positive >= 2;
    };
    bool low = qualifies(pair.low), high = qualifies(pair.high);
    if (low == high) return std::nullopt;
    return low ? pair.low : pair.high;
}

template <class S>
EvaluationPoint<S> decode_prevalence_near(const PointPair<S>& pair, double hint) {
    double dl = std::fabs(to_double(pair.low.prevalence_alpha) - hint);
    double dh = std::fabs(to_double(pair.high.prevalence_alpha) - hint);
    return dl <= dh ? pair.low : pair.high;
}

}  // namespace algeval
