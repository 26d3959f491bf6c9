#include <doctest.h>

#include <fstream>
#include <sstream>

#include "algeval/io.hpp"
#include "reference_oracle.hpp"
#include "schema_subset.hpp"

using namespace algeval;

namespace {

Json load_schema(const std::string& name) {
    std::ifstream in(std::string(ALGEVAL_SOURCE_DIR) + "/schemas/" + name);
    REQUIRE(in.good());
    Json j;
    in >> j;
    return j;
}

TruthSpec tp1_truth() {
    auto pt = oracle::tp1();
    TruthSpec truth;
    truth.point.prevalence_alpha = pt.prevalence;
    truth.point.acc_alpha = pt.p_alpha;
    truth.point.acc_beta = pt.p_beta;
    return truth;
}

DecisionSketch tp1_sketch() {
    auto fv = independent_frequencies(tp1_truth().point);
    BigInt n = minimal_test_size(fv);
    std::array<std::uint64_t, 8> counts{};
    for (int e = 0; e < 8; ++e) {
        Rational count = fv[e] * Rational(n);
        counts[e] = count.get_num().get_ui();
    }
    return DecisionSketch::from_counts(counts);
}

}  // namespace

TEST_CASE("sketch json round trip and schema") {
    auto sk = tp1_sketch();
    Json j = sketch_to_json(sk);
    CHECK(j["n"] == 500);
    CHECK(j["counts"]["aaa"] == 156);
    CHECK(sketch_from_json(j) == sk);

    std::string why;
    CHECK_MESSAGE(schema_subset::validate(load_schema("sketch.schema.json"), j, &why), why);

    Json bad = j;
    bad["n"] = 7;
    CHECK_THROWS_AS(sketch_from_json(bad), ParseError);
    Json missing = j;
    missing["counts"].erase("aba");
    CHECK_THROWS_AS(sketch_from_json(missing), ParseError);
}

TEST_CASE("truth json round trip and schema") {
    TruthSpec truth = tp1_truth();
    truth.correlations.pair_alpha[1] = make_rational(-1, 20);
    Json j = truth_to_json(truth);
    CHECK(j["prevalence"] == "3/5");
    CHECK(j["acc"]["1"]["a"] == "9/10");
    CHECK(j["corr"]["pairs"]["13"]["a"] == "-1/20");

    auto parsed = truth_from_json(j);
    CHECK(parsed.point == truth.point);
    CHECK(parsed.correlations == truth.correlations);

    std::string why;
    CHECK_MESSAGE(schema_subset::validate(load_schema("truth.schema.json"), j, &why), why);

    // corr block optional, decimals accepted
    Json minimal = {{"prevalence", "0.5"},
                    {"acc",
                     {{"1", {{"a", "0.9"}, {"b", "0.8"}}},
                      {"2", {{"a", "0.7"}, {"b", "0.6"}}},
                      {"3", {{"a", "0.8"}, {"b", "0.7"}}}}}};
    auto spec = truth_from_json(minimal);
    CHECK(spec.point.prevalence_alpha == make_rational(1, 2));
    CHECK(spec.correlations.is_zero());
}

TEST_CASE("evaluation report json and schema") {
    auto sk = tp1_sketch();
    auto mv = mv_evaluate<Rational>(sk);
    auto outcome = independent_evaluate<Rational>(sk);
    Json report = evaluation_report_json(mv, outcome);
    CHECK(report["mode"] == "exact");
    CHECK(report["independent"]["status"] == "points");
    CHECK(report["independent"]["points"][1]["prevalence"] == "3/5");
    // canonical reduced serialization of 99225/156250000
    CHECK(report["independent"]["radicands"]["disc"] == "3969/6250000");
    CHECK(parse_rational(report["independent"]["radicands"]["disc"].get<std::string>()) ==
          make_rational(99225, 156250000));
    CHECK(report["independent"]["exact"] == true);

    std::string why;
    CHECK_MESSAGE(
        schema_subset::validate(load_schema("evaluation_report.schema.json"), report, &why),
        why);

    // failure form validates too
    DecisionSketch degenerate = DecisionSketch::from_counts({1, 1, 1, 1, 1, 1, 1, 1});
    auto failed = independent_evaluate<Rational>(degenerate);
    Json failure_report = evaluation_report_json(mv_evaluate<Rational>(degenerate), failed);
    CHECK(failure_report["independent"]["status"] == "failure");
    CHECK_MESSAGE(schema_subset::validate(load_schema("evaluation_report.schema.json"),
                                          failure_report, &why),
                  why);
}

TEST_CASE("projection report json and schema") {
    auto fv = frequencies<double>(tp1_sketch());
    auto query = point_to_double(tp1_truth().point);
    query.acc_beta[2] += 0.25;
    auto proj = project(query, fv);
    auto res = residuals(query, fv);
    auto spots = blind_spot_report(query, fv);
    Json report = projection_to_json(proj, res, spots);
    CHECK(report["distance"].get<double>() > 0.0);
    CHECK(report["blind_spots"]["classifiers"]["3"]["flag_competence"] == false);

    std::string why;
    CHECK_MESSAGE(
        schema_subset::validate(load_schema("projection_report.schema.json"), report, &why),
        why);
}

TEST_CASE("diagnostics json and schema") {
    auto report = agreement_report(tp1_sketch());
    auto rates = stream_rates(tp1_truth().point, CorrelationSet<Rational>::zero());
    Json j = diagnostics_to_json(report, rates);
    CHECK(j["c_squared"] == "-6336/390625");
    CHECK(j["c_is_rational_square"] == false);

    std::string why;
    CHECK_MESSAGE(schema_subset::validate(load_schema("diagnostics.schema.json"), j, &why),
                  why);

    Json no_rates = diagnostics_to_json(report, std::nullopt);
    CHECK_MESSAGE(
        schema_subset::validate(load_schema("diagnostics.schema.json"), no_rates, &why), why);
}

TEST_CASE("profile config json round trip") {
    Json j = {{"test_sizes", {100, 1000}},
              {"trials_per_size", 25},
              {"seed", 99},
              {"mode", "float"},
              {"jobs", 2},
              {"sampler",
               {{"prevalence", {"1/4", "3/4"}},
                {"accuracy", {"3/5", "19/20"}},
                {"gamma_cap", "3/20"},
                {"denominator", 20}}}};
    auto config = profile_config_from_json(j);
    CHECK(config.test_sizes == std::vector<std::uint64_t>{100, 1000});
    CHECK(config.trials_per_size == 25);
    CHECK(!config.exact_mode);
    CHECK(config.sampler.gamma_cap == make_rational(3, 20));
    CHECK(config.sampler.denominator == 20);

    auto round = profile_config_from_json(profile_config_to_json(config));
    CHECK(round.test_sizes == config.test_sizes);
    CHECK(round.seed == config.seed);
    CHECK(round.sampler.gamma_cap == config.sampler.gamma_cap);

    Json decreasing = j;
    decreasing["test_sizes"] = {100, 50};
    CHECK_THROWS_AS(profile_config_from_json(decreasing), ParseError);
}

TEST_CASE("csv writers produce one data row per record") {
    ProfileRecord rec;
    rec.test_size = 100;
    rec.trials = 10;
    rec.successes = 7;
    rec.fraction_seemingly_correct = 0.7;
    rec.fraction_never_solvable = 0.2;
    rec.failure_histogram = {1, 1, 1, 0};
    std::ostringstream out;
    write_profile_csv(out, {rec});
    std::string text = out.str();
    CHECK(text.find("test_size,") == 0);
    CHECK(text.find("100,10,7,0.7,0.2,1,1,1,0\n") != std::string::npos);

    ScatterRecord srec;
    srec.test_size = 100;
    srec.trial = 3;
    srec.max_abs_pair_corr = 0.125;
    srec.failure = FailureKind::OutsideUnitCube;
    std::ostringstream sout;
    write_scatter_csv(sout, {srec});
    CHECK(sout.str().find("100,3,0.125,OutsideUnitCube,,\n") != std::string::npos);
}
