#pragma once

#include <iosfwd>
#include <optional>
#include <string>

#include <json.hpp>

#include "algeval/diagnostics.hpp"
#include "algeval/evaluators.hpp"
#include "algeval/harness.hpp"
#include "algeval/point.hpp"
#include "algeval/sketch.hpp"
#include "algeval/variety.hpp"

namespace algeval {

using Json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;

// Sketch file: {"n": int, "counts": {"aaa": int, ..., "bbb": int}}.
Json sketch_to_json(const DecisionSketch& sketch);
DecisionSketch sketch_from_json(const Json& j);

// Ground-truth file:
// {"prevalence":"3/5","acc":{"1":{"a":"9/10","b":"4/5"},...},
//  "corr":{"pairs":{"12":{"a":"0","b":"0"},...},"triple":{"a":"0","b":"0"}}}
struct TruthSpec {
    EvaluationPoint<Rational> point;
    CorrelationSet<Rational> correlations;
};

Json truth_to_json(const TruthSpec& truth);
TruthSpec truth_from_json(const Json& j);

template <class S>
Json point_to_json(const EvaluationPoint<S>& p) {
    Json acc = Json::object();
    for (int i = 0; i < 3; ++i) {
        acc[std::to_string(i + 1)] = {{"a", scalar_text(p.acc_alpha[i])},
                                      {"b", scalar_text(p.acc_beta[i])}};
    }
    return Json{{"prevalence", scalar_text(p.prevalence_alpha)}, {"acc", std::move(acc)}};
}

EvaluationPoint<Rational> point_from_json(const Json& j);

template <class S>
Json mv_to_json(const MVEstimate<S>& mv) {
    Json acc = Json::object();
    for (int i = 0; i < 3; ++i) {
        Json entry = Json::object();
        if (mv.acc_alpha[i]) entry["a"] = scalar_text(*mv.acc_alpha[i]);
        if (mv.acc_beta[i]) entry["b"] = scalar_text(*mv.acc_beta[i]);
        acc[std::to_string(i + 1)] = std::move(entry);
    }
    return Json{{"prevalence", scalar_text(mv.prevalence_alpha)}, {"acc", std::move(acc)}};
}

Json failure_to_json(const Failure& failure);

template <class S>
Json outcome_to_json(const EvaluationOutcome<S>& outcome) {
    Json j;
    j["status"] = outcome.has_points() ? "points" : "failure";
    if (outcome.has_points()) {
        j["points"] = Json::array({point_to_json(outcome.points().low),
                                   point_to_json(outcome.points().high)});
    } else {
        j["failure"] = failure_to_json(outcome.failure());
    }
    if (outcome.radicands) {
        Json g = Json::array();
        for (const auto& v : outcome.radicands->g_squared) g.push_back(scalar_text(v));
        j["radicands"] = Json{{"disc", scalar_text(outcome.radicands->disc)},
                              {"g_squared", std::move(g)}};
    }
    j["exact"] = outcome.exact;
    return j;
}

template <class S>
Json evaluation_report_json(const MVEstimate<S>& mv, const EvaluationOutcome<S>& outcome) {
    return Json{{"mode", scalar_mode_name(is_exact_scalar_v<S>)},
                {"mv", mv_to_json(mv)},
                {"independent", outcome_to_json(outcome)}};
}

Json projection_to_json(const VarietyProjection& projection,
                        const VarietyResiduals<double>& residuals_at_input,
                        const BlindSpotReport& blind_spots);

Json diagnostics_to_json(const AgreementReport& report,
                         const std::optional<StreamRates<Rational>>& rates);

Json blind_spot_to_json(const BlindSpotReport& report);

// Harness config:
// {"test_sizes":[...],"trials_per_size":N,"seed":S,"mode":"exact"|"float",
//  "jobs":K,"max_retries":R,
//  "sampler":{"prevalence":["1/4","3/4"],"accuracy":["3/5","19/20"],
//             "gamma_cap":"3/20","denominator":40}}
ProfileConfig profile_config_from_json(const Json& j);
Json profile_config_to_json(const ProfileConfig& config);

void write_profile_csv(std::ostream& out, const std::vector<ProfileRecord>& records);
void write_profile_jsonl(std::ostream& out, const std::vector<ProfileRecord>& records);
void write_scatter_csv(std::ostream& out, const std::vector<ScatterRecord>& records);
void write_scatter_jsonl(std::ostream& out, const std::vector<ScatterRecord>& records);

Json load_json_file(const std::string& path);

}  // namespace algeval
