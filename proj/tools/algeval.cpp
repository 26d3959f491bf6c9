#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "algeval/io.hpp"

namespace {

using namespace algeval;

constexpr const char* kVersion = "1.0.0";

bool exact_mode_default() {
    const char* env = std::getenv("ALGEVAL_MODE");
    if (env && std::string(env) == "float") return false;
    return true;
}

std::ostream& open_output(std::ofstream& file, const std::string& path) {
    if (path.empty() || path == "-") return std::cout;
    file.open(path);
    if (!file) throw ParseError("cannot open '" + path + "' for writing");
    return file;
}

IngestResult ingest_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open '" + path + "'");
    return ingest_decisions(in);
}

struct DecodeOptions {
    std::string hint;  // "assume-majority-competent" or "assume-prevalence-near=<x>"
};

template <class S>
void append_decode(Json& report, const EvaluationOutcome<S>& outcome,
                   const DecodeOptions& decode) {
    if (decode.hint.empty() || !outcome.has_points()) return;
    report["decode_hint"] = decode.hint;
    const auto& pts = outcome.points();
    if (decode.hint == "assume-majority-competent") {
        auto kept = decode_majority_competent(pts);
        if (kept) report["decoded"] = point_to_json(*kept);
        return;
    }
    const std::string prefix = "assume-prevalence-near=";
    if (decode.hint.rfind(prefix, 0) == 0) {
        double near = std::stod(decode.hint.substr(prefix.size()));
        report["decoded"] = point_to_json(decode_prevalence_near(pts, near));
        return;
    }
    throw ParseError("unknown decode hint '" + decode.hint + "'");
}

template <class S>
int run_eval(const DecisionSketch& sketch, const DecodeOptions& decode, bool diagnose,
             std::ostream& out) {
    auto mv = mv_evaluate<S>(sketch);
    auto outcome = independent_evaluate<S>(sketch);
    Json report = evaluation_report_json(mv, outcome);
    append_decode(report, outcome, decode);
    if (diagnose) report["diagnostics"] = diagnostics_to_json(agreement_report(sketch), {});
    out << report.dump(2) << "\n";
    return 0;
}

int run_project(const DecisionSketch& sketch, const EvaluationPoint<Rational>& point,
                int grid, int refinements, double blind_spot_threshold, std::ostream& out) {
    auto fv = frequencies<double>(sketch);
    auto proj = project(point_to_double(point), fv, grid, refinements);
    auto res = residuals(point_to_double(point), fv);
    auto spots = blind_spot_report(point_to_double(point), fv, blind_spot_threshold);
    out << projection_to_json(proj, res, spots).dump(2) << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"algebraic evaluation of binary classifier trios from decision sketches"};
    app.require_subcommand(1);
    app.fallthrough();

    bool flag_exact = false, flag_float = false;
    app.add_flag("--exact", flag_exact, "exact rational arithmetic (default)");
    app.add_flag("--float", flag_float, "binary64 arithmetic");
    auto version_text = std::string("algeval ") + kVersion + " (prng: " + Rng::kAlgorithm +
                        ", schemas: v" + std::to_string(kSchemaVersion) + ")";
    app.set_version_flag("--version", version_text);

    std::string out_path;
    app.add_option("-o,--out", out_path, "output path (default: stdout)");

    // sketch <decisions.csv>
    auto* cmd_sketch = app.add_subcommand("sketch", "build a sketch from a decisions file");
    std::string sketch_input;
    cmd_sketch->add_option("decisions", sketch_input, "decisions CSV file")->required();

    // eval <sketch.json> [--decode hint] [--diagnose]
    auto* cmd_eval = app.add_subcommand("eval", "evaluate a sketch");
    std::string eval_input;
    DecodeOptions decode;
    bool eval_diagnose = false;
    cmd_eval->add_option("sketch", eval_input, "sketch JSON file")->required();
    cmd_eval->add_option("--decode", decode.hint,
                         "assume-majority-competent | assume-prevalence-near=<x>");
    cmd_eval->add_flag("--diagnose", eval_diagnose, "embed the diagnostics block");

    // synth <truth.json> [--n N]
    auto* cmd_synth = app.add_subcommand("synth", "forward-synthesize frequencies and a sketch");
    std::string synth_input;
    std::uint64_t synth_n = 0;
    cmd_synth->add_option("truth", synth_input, "ground-truth JSON file")->required();
    cmd_synth->add_option("--n", synth_n, "sketch size (default: minimal test size)");

    // stream <truth.json> --n N --seed S [--sample]
    auto* cmd_stream = app.add_subcommand("stream", "materialize or sample a labeled stream");
    std::string stream_input;
    std::uint64_t stream_n = 0, stream_seed = 0;
    bool stream_sample = false;
    cmd_stream->add_option("truth", stream_input, "ground-truth JSON file")->required();
    cmd_stream->add_option("--n", stream_n, "stream length")->required();
    cmd_stream->add_option("--seed", stream_seed, "generator seed")->required();
    cmd_stream->add_flag("--sample", stream_sample,
                         "draw i.i.d. samples instead of the exact construction");

    // project <sketch.json> <point.json> [--grid] [--refinements]
    auto* cmd_project = app.add_subcommand("project", "distance to the containing variety");
    std::string project_sketch, project_point;
    int grid = 512, refinements = 40;
    cmd_project->add_option("sketch", project_sketch, "sketch JSON file")->required();
    cmd_project->add_option("point", project_point, "evaluation-point JSON file")->required();
    cmd_project->add_option("--grid", grid, "outer grid points (default 512)");
    cmd_project->add_option("--refinements", refinements,
                            "golden-section iterations (default 40)");
    double blind_spot_threshold = 0.1;
    cmd_project->add_option("--blind-spot-threshold", blind_spot_threshold,
                            "flag magnitudes below this (default 0.1)");

    // diagnose <sketch.json> [--truth truth.json]
    auto* cmd_diagnose = app.add_subcommand("diagnose", "agreement-equation diagnostics");
    std::string diagnose_sketch, diagnose_truth;
    cmd_diagnose->add_option("sketch", diagnose_sketch, "sketch JSON file")->required();
    cmd_diagnose->add_option("--truth", diagnose_truth,
                             "ground-truth JSON file for stream rates");

    // profile <config.json> / scatter <config.json>
    auto* cmd_profile = app.add_subcommand("profile", "failure-rate profile by test size");
    std::string profile_config;
    bool profile_jsonl = false;
    int profile_jobs = 0;
    cmd_profile->add_option("config", profile_config, "profile config JSON file")->required();
    cmd_profile->add_flag("--jsonl", profile_jsonl, "emit JSON lines instead of CSV");
    cmd_profile->add_option("--jobs", profile_jobs, "worker threads");

    auto* cmd_scatter = app.add_subcommand("scatter", "distance vs correlation scatter");
    std::string scatter_config;
    bool scatter_jsonl = false;
    int scatter_jobs = 0;
    cmd_scatter->add_option("config", scatter_config, "profile config JSON file")->required();
    cmd_scatter->add_flag("--jsonl", scatter_jsonl, "emit JSON lines instead of CSV");
    cmd_scatter->add_option("--jobs", scatter_jobs, "worker threads");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    bool exact = exact_mode_default();
    if (flag_exact) exact = true;
    if (flag_float) exact = false;

    std::ofstream out_file;
    try {
        std::ostream& out = open_output(out_file, out_path);

        if (*cmd_sketch) {
            auto result = ingest_file(sketch_input);
            out << sketch_to_json(result.sketch).dump(2) << "\n";
            return 0;
        }
        if (*cmd_eval) {
            auto sketch = sketch_from_json(load_json_file(eval_input));
            return exact ? run_eval<Rational>(sketch, decode, eval_diagnose, out)
                         : run_eval<double>(sketch, decode, eval_diagnose, out);
        }
        if (*cmd_synth) {
            auto truth = truth_from_json(load_json_file(synth_input));
            auto fv = correlated_trio_frequencies(truth.point, truth.correlations);
            BigInt minimal = minimal_test_size(fv);
            BigInt n = synth_n == 0 ? minimal : BigInt(static_cast<unsigned long>(synth_n));
            Json freqs = Json::object();
            std::array<std::uint64_t, 8> counts{};
            for (int e = 0; e < 8; ++e) {
                Rational count = fv[e] * Rational(n);
                if (count.get_den() != 1)
                    throw IndivisibleTestSize("n=" + n.get_str() +
                                              " is not a multiple of the minimal test size " +
                                              minimal.get_str());
                counts[e] = count.get_num().get_ui();
                freqs[DecisionEvent::from_index(e).pattern()] = scalar_text(fv[e]);
            }
            Json report{{"frequencies", std::move(freqs)},
                        {"minimal_test_size", minimal.get_str()},
                        {"sketch", sketch_to_json(DecisionSketch::from_counts(counts))}};
            out << report.dump(2) << "\n";
            return 0;
        }
        if (*cmd_stream) {
            auto truth = truth_from_json(load_json_file(stream_input));
            LabeledStream stream =
                stream_sample
                    ? sample_stream(truth.point, truth.correlations, stream_n, stream_seed)
                    : materialize_stream(truth.point, truth.correlations, stream_n,
                                         stream_seed);
            std::string note = std::string("generator: ") + Rng::kAlgorithm + " seed=" +
                               std::to_string(stream_seed) +
                               (stream_sample ? " mode=sample" : " mode=materialize");
            write_decisions(out, stream, note);
            return 0;
        }
        if (*cmd_project) {
            auto sketch = sketch_from_json(load_json_file(project_sketch));
            auto point = point_from_json(load_json_file(project_point));
            return run_project(sketch, point, grid, refinements, blind_spot_threshold, out);
        }
        if (*cmd_diagnose) {
            auto sketch = sketch_from_json(load_json_file(diagnose_sketch));
            std::optional<StreamRates<Rational>> rates;
            if (!diagnose_truth.empty()) {
                auto truth = truth_from_json(load_json_file(diagnose_truth));
                rates = stream_rates(truth.point, truth.correlations);
            }
            out << diagnostics_to_json(agreement_report(sketch), rates).dump(2) << "\n";
            return 0;
        }
        if (*cmd_profile || *cmd_scatter) {
            bool is_profile = static_cast<bool>(*cmd_profile);
            auto config = profile_config_from_json(
                load_json_file(is_profile ? profile_config : scatter_config));
            int jobs = is_profile ? profile_jobs : scatter_jobs;
            if (jobs > 0) config.jobs = jobs;
            if (flag_exact) config.exact_mode = true;
            if (flag_float) config.exact_mode = false;
            if (is_profile) {
                auto records = profile_failures(config);
                if (profile_jsonl)
                    write_profile_jsonl(out, records);
                else
                    write_profile_csv(out, records);
            } else {
                auto records = scatter_distance_correlation(config);
                if (scatter_jsonl)
                    write_scatter_jsonl(out, records);
                else
                    write_scatter_csv(out, records);
            }
            return 0;
        }
    } catch (const Error& e) {
        Json err{{"error", e.kind()}, {"detail", e.what()}};
        // error text may quote raw input bytes; never let serialization throw
        std::cerr << err.dump(-1, ' ', false, Json::error_handler_t::replace) << "\n";
        return 1;
    } catch (const std::exception& e) {
        Json err{{"error", "Internal"}, {"detail", e.what()}};
        std::cerr << err.dump(-1, ' ', false, Json::error_handler_t::replace) << "\n";
        return 1;
    }
    return 2;
}
