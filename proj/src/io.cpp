#include "algeval/io.hpp"

#include <fstream>
#include <ostream>

namespace algeval {

namespace {

const Json& require_field(const Json& j, const char* key) {
    auto it = j.find(key);
    if (it == j.end()) throw ParseError(std::string("missing field '") + key + "'");
    return *it;
}

Rational rational_field(const Json& j) {
    if (j.is_string()) return parse_rational(j.get<std::string>());
    if (j.is_number_integer()) return make_rational(j.get<long>(), 1);
    if (j.is_number_float()) return parse_rational(scalar_text(j.get<double>()));
    throw ParseError("expected a rational value, got " + j.dump());
}

constexpr std::array<const char*, 3> kPairKeys = {"12", "13", "23"};

}  // namespace

Json sketch_to_json(const DecisionSketch& sketch) {
    Json counts = Json::object();
    for (int e = 0; e < 8; ++e)
        counts[DecisionEvent::from_index(e).pattern()] = sketch.count(e);
    return Json{{"n", sketch.n()}, {"counts", std::move(counts)}};
}

DecisionSketch sketch_from_json(const Json& j) {
    const Json& counts = require_field(j, "counts");
    std::array<std::uint64_t, 8> values{};
    for (int e = 0; e < 8; ++e) {
        std::string key = DecisionEvent::from_index(e).pattern();
        const Json& c = require_field(counts, key.c_str());
        if (c.is_number_unsigned()) {
            values[e] = c.get<std::uint64_t>();
        } else if (c.is_number_integer()) {
            long long v = c.get<long long>();
            if (v < 0) throw ParseError("count '" + key + "' is negative");
            values[e] = static_cast<std::uint64_t>(v);
        } else {
            throw ParseError("count '" + key + "' is not an integer");
        }
    }
    DecisionSketch sketch = DecisionSketch::from_counts(values);
    if (auto it = j.find("n"); it != j.end()) {
        if (it->get<std::uint64_t>() != sketch.n())
            throw ParseError("declared n does not match the counter sum");
    }
    return sketch;
}

EvaluationPoint<Rational> point_from_json(const Json& j) {
    EvaluationPoint<Rational> p;
    p.prevalence_alpha = rational_field(require_field(j, "prevalence"));
    const Json& acc = require_field(j, "acc");
    for (int i = 0; i < 3; ++i) {
        const Json& entry = require_field(acc, std::to_string(i + 1).c_str());
        p.acc_alpha[i] = rational_field(require_field(entry, "a"));
        p.acc_beta[i] = rational_field(require_field(entry, "b"));
    }
    return p;
}

Json truth_to_json(const TruthSpec& truth) {
    Json j = point_to_json(truth.point);
    Json pairs = Json::object();
    for (int p = 0; p < 3; ++p) {
        pairs[kPairKeys[p]] = {{"a", scalar_text(truth.correlations.pair_alpha[p])},
                               {"b", scalar_text(truth.correlations.pair_beta[p])}};
    }
    j["corr"] = Json{{"pairs", std::move(pairs)},
                     {"triple",
                      {{"a", scalar_text(truth.correlations.triple_alpha)},
                       {"b", scalar_text(truth.correlations.triple_beta)}}}};
    return j;
}

TruthSpec truth_from_json(const Json& j) {
    TruthSpec truth;
    truth.point = point_from_json(j);
    if (auto it = j.find("corr"); it != j.end()) {
        if (auto pairs = it->find("pairs"); pairs != it->end()) {
            for (int p = 0; p < 3; ++p) {
                const Json& entry = require_field(*pairs, kPairKeys[p]);
                truth.correlations.pair_alpha[p] = rational_field(require_field(entry, "a"));
                truth.correlations.pair_beta[p] = rational_field(require_field(entry, "b"));
            }
        }
        if (auto triple = it->find("triple"); triple != it->end()) {
            truth.correlations.triple_alpha = rational_field(require_field(*triple, "a"));
            truth.correlations.triple_beta = rational_field(require_field(*triple, "b"));
        }
    }
    return truth;
}

Json failure_to_json(const Failure& failure) {
    Json data = Json::object();
    for (const auto& [name, value] : failure.data) data[name] = value;
    return Json{{"kind", failure_kind_name(failure.kind)},
                {"detail", failure.detail},
                {"data", std::move(data)}};
}

Json projection_to_json(const VarietyProjection& projection,
                        const VarietyResiduals<double>& residuals_at_input,
                        const BlindSpotReport& blind_spots) {
    Json res = Json::object();
    for (int i = 0; i < 3; ++i)
        res["linear_" + std::to_string(i + 1)] = residuals_at_input.linear[i];
    for (int p = 0; p < 3; ++p)
        res[std::string("cross_") + kPairKeys[p]] = residuals_at_input.cross[p];
    return Json{{"distance", projection.distance},
                {"p_alpha_star", projection.p_alpha_star},
                {"t", {projection.t[0], projection.t[1], projection.t[2]}},
                {"closest_point", point_to_json(projection.closest)},
                {"residuals_at_input", std::move(res)},
                {"blind_spots", blind_spot_to_json(blind_spots)}};
}

Json diagnostics_to_json(const AgreementReport& report,
                         const std::optional<StreamRates<Rational>>& rates) {
    Json agreement = Json::object();
    for (int p = 0; p < 3; ++p)
        agreement[kPairKeys[p]] = scalar_text(report.agreement[p]);
    Json estimates = Json::object();
    for (int i = 0; i < 3; ++i) {
        if (report.e_estimates[i]) {
            Json arr = Json::array();
            for (double v : *report.e_estimates[i]) arr.push_back(v);
            estimates[std::to_string(i + 1)] = std::move(arr);
        } else {
            estimates[std::to_string(i + 1)] = nullptr;
        }
    }
    Json j{{"agreement", std::move(agreement)},
           {"c_squared", scalar_text(report.c_squared)},
           {"c_is_rational_square", report.c_is_rational_square},
           {"e_estimates", std::move(estimates)}};
    if (rates) {
        Json r = Json::object();
        Json correct = Json::object(), error = Json::object();
        for (int i = 0; i < 3; ++i) {
            correct[std::to_string(i + 1)] = scalar_text(rates->correct[i]);
            error[std::to_string(i + 1)] = scalar_text(rates->error[i]);
        }
        Json joint_correct = Json::object(), joint_error = Json::object(),
             gap = Json::object();
        for (int p = 0; p < 3; ++p) {
            joint_correct[kPairKeys[p]] = scalar_text(rates->joint_correct[p]);
            joint_error[kPairKeys[p]] = scalar_text(rates->joint_error[p]);
            gap[kPairKeys[p]] = scalar_text(rates->factorization_gap[p]);
        }
        r["correct"] = std::move(correct);
        r["error"] = std::move(error);
        r["joint_correct"] = std::move(joint_correct);
        r["joint_error"] = std::move(joint_error);
        r["factorization_gap"] = std::move(gap);
        j["stream_rates"] = std::move(r);
    }
    return j;
}

Json blind_spot_to_json(const BlindSpotReport& report) {
    Json classifiers = Json::object();
    for (int i = 0; i < 3; ++i) {
        const auto& e = report.classifiers[i];
        classifiers[std::to_string(i + 1)] = Json{
            {"pi_alpha", e.pi_alpha},       {"pi_beta", e.pi_beta},
            {"competence", e.competence},   {"flag_pi_alpha", e.flag_pi_alpha},
            {"flag_pi_beta", e.flag_pi_beta}, {"flag_competence", e.flag_competence}};
    }
    return Json{{"threshold", report.threshold}, {"classifiers", std::move(classifiers)}};
}

ProfileConfig profile_config_from_json(const Json& j) {
    ProfileConfig config;
    for (const auto& v : require_field(j, "test_sizes"))
        config.test_sizes.push_back(v.get<std::uint64_t>());
    config.trials_per_size = require_field(j, "trials_per_size").get<int>();
    config.seed = require_field(j, "seed").get<std::uint64_t>();
    if (auto it = j.find("mode"); it != j.end())
        config.exact_mode = it->get<std::string>() == "exact";
    if (auto it = j.find("jobs"); it != j.end()) config.jobs = it->get<int>();
    if (auto it = j.find("max_retries"); it != j.end())
        config.max_retries = it->get<int>();
    if (auto it = j.find("sampler"); it != j.end()) {
        const Json& s = *it;
        if (auto f = s.find("prevalence"); f != s.end()) {
            config.sampler.prevalence_lo = rational_field((*f)[0]);
            config.sampler.prevalence_hi = rational_field((*f)[1]);
        }
        if (auto f = s.find("accuracy"); f != s.end()) {
            config.sampler.accuracy_lo = rational_field((*f)[0]);
            config.sampler.accuracy_hi = rational_field((*f)[1]);
        }
        if (auto f = s.find("gamma_cap"); f != s.end())
            config.sampler.gamma_cap = rational_field(*f);
        if (auto f = s.find("denominator"); f != s.end())
            config.sampler.denominator = f->get<unsigned>();
    }
    if (config.test_sizes.empty()) throw ParseError("test_sizes must be nonempty");
    for (std::size_t i = 1; i < config.test_sizes.size(); ++i)
        if (config.test_sizes[i] <= config.test_sizes[i - 1])
            throw ParseError("test_sizes must be strictly increasing");
    if (config.trials_per_size < 1) throw ParseError("trials_per_size must be >= 1");
    return config;
}

Json profile_config_to_json(const ProfileConfig& config) {
    return Json{
        {"test_sizes", config.test_sizes},
        {"trials_per_size", config.trials_per_size},
        {"seed", config.seed},
        {"mode", config.exact_mode ? "exact" : "float"},
        {"jobs", config.jobs},
        {"max_retries", config.max_retries},
        {"sampler",
         {{"prevalence",
           {scalar_text(config.sampler.prevalence_lo), scalar_text(config.sampler.prevalence_hi)}},
          {"accuracy",
           {scalar_text(config.sampler.accuracy_lo), scalar_text(config.sampler.accuracy_hi)}},
          {"gamma_cap", scalar_text(config.sampler.gamma_cap)},
          {"denominator", config.sampler.denominator}}}};
}

void write_profile_csv(std::ostream& out, const std::vector<ProfileRecord>& records) {
    out << "test_size,trials,successes,fraction_seemingly_correct,fraction_never_solvable,"
           "empty_variety,complex_solution,outside_unit_cube,unresolved_square_root\n";
    for (const auto& r : records) {
        out << r.test_size << ',' << r.trials << ',' << r.successes << ','
            << scalar_text(r.fraction_seemingly_correct) << ','
            << scalar_text(r.fraction_never_solvable);
        for (int k = 0; k < 4; ++k) out << ',' << r.failure_histogram[k];
        out << "\n";
    }
}

namespace {

Json profile_record_to_json(const ProfileRecord& r) {
    return Json{{"test_size", r.test_size},
                {"trials", r.trials},
                {"successes", r.successes},
                {"fraction_seemingly_correct", r.fraction_seemingly_correct},
                {"fraction_never_solvable", r.fraction_never_solvable},
                {"failure_histogram",
                 {{"EmptyVariety", r.failure_histogram[0]},
                  {"ComplexSolution", r.failure_histogram[1]},
                  {"OutsideUnitCube", r.failure_histogram[2]},
                  {"UnresolvedSquareRoot", r.failure_histogram[3]}}}};
}

Json scatter_record_to_json(const ScatterRecord& r) {
    Json j{{"test_size", r.test_size},
           {"trial", r.trial},
           {"max_abs_pair_corr", r.max_abs_pair_corr},
           {"outcome", r.failure ? failure_kind_name(*r.failure) : "success"}};
    j["distance"] = r.distance ? Json(*r.distance) : Json(nullptr);
    j["estimate_error"] = r.estimate_error ? Json(*r.estimate_error) : Json(nullptr);
    return j;
}

}  // namespace

void write_profile_jsonl(std::ostream& out, const std::vector<ProfileRecord>& records) {
    for (const auto& r : records) out << profile_record_to_json(r).dump() << "\n";
}

void write_scatter_csv(std::ostream& out, const std::vector<ScatterRecord>& records) {
    out << "test_size,trial,max_abs_pair_corr,outcome,distance,estimate_error\n";
    for (const auto& r : records) {
        out << r.test_size << ',' << r.trial << ',' << scalar_text(r.max_abs_pair_corr)
            << ',' << (r.failure ? failure_kind_name(*r.failure) : "success") << ',';
        if (r.distance) out << scalar_text(*r.distance);
        out << ',';
        if (r.estimate_error) out << scalar_text(*r.estimate_error);
        out << "\n";
    }
}

void write_scatter_jsonl(std::ostream& out, const std::vector<ScatterRecord>& records) {
    for (const auto& r : records) out << scatter_record_to_json(r).dump() << "\n";
}

Json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open '" + path + "'");
    Json j;
    try {
        in >> j;
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError("invalid JSON in '" + path + "': " + e.what());
    }
    return j;
}

}  // namespace algeval
