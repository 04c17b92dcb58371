// frameforge command-line tool.
#include "frameforge/agents/pipeline.hpp"
#include "frameforge/bench.hpp"
#include "frameforge/codegen.hpp"
#include "frameforge/error.hpp"
#include "frameforge/render.hpp"
#include "frameforge/runner.hpp"
#include "frameforge/template_parser.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

namespace fs = std::filesystem;
using namespace frameforge;

namespace {

struct BackendArgs {
    std::string backend = "deterministic";
    std::string config;
    std::string fixtures;
    std::string record;
};

void add_backend_options(CLI::App* cmd, BackendArgs& a) {
    cmd->add_option("--backend", a.backend, "Agent backend: deterministic, remote or mixed")
        ->check(CLI::IsMember({"deterministic", "remote", "mixed"}));
    cmd->add_option("--config", a.config, "JSON config with profiles, role bindings and retry caps");
    cmd->add_option("--fixtures", a.fixtures, "Replay remote exchanges from this directory");
    cmd->add_option("--record", a.record, "Record remote exchanges into this directory");
}

agents::PipelineConfig make_config(const BackendArgs& a) {
    const auto mode = agents::parse_backend_mode(a.backend);
    return a.config.empty() ? agents::config_for_mode(mode) : agents::load_config(a.config, mode);
}

std::shared_ptr<agents::Transport> make_transport(const BackendArgs& a, const agents::PipelineConfig& config) {
    if (!config.uses_remote()) return nullptr;
    std::shared_ptr<agents::Transport> t;
    if (!a.fixtures.empty()) {
        t = std::make_shared<agents::FixtureTransport>(a.fixtures);
    } else {
        t = agents::HttpTransport::from_environment();
    }
    if (!a.record.empty()) t = std::make_shared<agents::RecordingTransport>(t, a.record);
    return t;
}

std::string read_text(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorCode::IoError, "cannot read " + path, {{"path", path}});
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

void write_text(const fs::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(ErrorCode::IoError, "cannot write " + path.string(), {{"path", path.string()}});
    out << text;
}

std::optional<nlohmann::json> as_json(const std::string& text) {
    const auto i = text.find_first_not_of(" \t\r\n");
    if (i == std::string::npos || text[i] != '{') return std::nullopt;
    try {
        return nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& ex) {
        throw Error(ErrorCode::MalformedValue, std::string("input JSON: ") + ex.what());
    }
}

/// Problem spec from a template or problem JSON, without validation.
ProblemSpec read_problem_unchecked(const std::string& path) {
    const auto text = read_text(path);
    if (auto doc = as_json(text)) return problem_from_json(*doc);
    return parse_problem_template_unchecked(text);
}

void throw_if_invalid(const ProblemSpec& spec) {
    const auto violations = validate_problem(spec);
    if (violations.empty()) return;
    nlohmann::json v = nlohmann::json::array();
    for (const auto& x : violations) v.push_back({{"code", x.code}, {"message", x.message}});
    throw Error(ErrorCode::InvariantViolation, violations.front().code + ": " + violations.front().message,
                {{"violations", v}});
}

/// A compiled model document, or a problem run through the deterministic path.
LoadedModel read_model(const std::string& path) {
    const auto text = read_text(path);
    if (auto doc = as_json(text); doc && doc->contains("nodes")) return model_from_json(*doc);
    auto spec = read_problem_unchecked(path);
    throw_if_invalid(spec);
    return oracle_analysis(spec).model;
}

void print(const nlohmann::json& doc) { std::cout << doc.dump(2) << "\n"; }

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"frameforge: textual frame problems to models, scripts, analysis results and diagrams"};
    app.require_subcommand(1);

    BackendArgs backend;
    std::string input;
    std::string out_dir = ".";
    std::string runner;
    double runner_timeout = 300.0;

    auto* run = app.add_subcommand("run", "Full pipeline: model JSON, script, results JSON and SVG diagrams");
    run->add_option("input", input, "Problem template, problem JSON or free text")->required();
    run->add_option("--out", out_dir, "Output directory");
    run->add_option("--runner", runner, "External runner command: CMD <script> <out.json> --timeout S");
    run->add_option("--runner-timeout", runner_timeout, "Runner timeout in seconds");
    add_backend_options(run, backend);

    auto* plan = app.add_subcommand("plan", "Print the construction plan");
    plan->add_option("input", input, "Problem template or problem JSON")->required();

    auto* validate = app.add_subcommand("validate", "Check a problem against every invariant");
    validate->add_option("input", input, "Problem template or problem JSON")->required();

    std::string out_file;
    auto* codegen = app.add_subcommand("codegen", "Emit the analysis script");
    codegen->add_option("input", input, "Problem template, problem JSON or model JSON")->required();
    codegen->add_option("--out", out_file, "Write the script here instead of stdout");

    auto* solve = app.add_subcommand("solve", "Solve with the internal stiffness solver");
    solve->add_option("input", input, "Problem template, problem JSON or model JSON")->required();
    solve->add_option("--out", out_file, "Write the result JSON here instead of stdout");

    std::string result_path;
    auto* render = app.add_subcommand("render", "Write SVG views of a model (and its result)");
    render->add_option("input", input, "Problem template, problem JSON or model JSON")->required();
    render->add_option("--result", result_path, "Result JSON to draw; solved internally when omitted");
    render->add_option("--out", out_dir, "Output directory");

    std::string preset = "paper20";
    int trials = 10;
    std::uint64_t seed = 7;
    auto* bench = app.add_subcommand("bench", "Run a preset over repeated trials and write reports");
    bench->add_option("--preset", preset, "paper20, scalability, all or smoke");
    bench->add_option("--trials", trials, "Trials per case")->check(CLI::PositiveNumber);
    bench->add_option("--seed", seed, "Seed for generated story heights and fill cases");
    bench->add_option("--out", out_dir, "Output directory");
    bench->add_option("--runner", runner, "External runner command for the cross-engine check");
    bench->add_option("--runner-timeout", runner_timeout, "Runner timeout in seconds");
    add_backend_options(bench, backend);

    CLI11_PARSE(app, argc, argv);

    try {
        if (run->parsed()) {
            const auto config = make_config(backend);
            const auto transport = make_transport(backend, config);
            const auto res = agents::run_pipeline(agents::PipelineInput::from_text(read_text(input)), config, transport);
            const fs::path dir(out_dir);
            fs::create_directories(dir);
            const std::string stem = fs::path(input).stem().string();
            nlohmann::json files = nlohmann::json::array();
            auto emit = [&](const std::string& suffix, const std::string& text) {
                const auto p = dir / (stem + suffix);
                write_text(p, text);
                files.push_back(p.string());
                return p;
            };
            emit(".model.json", to_json(res.model).dump(2) + "\n");
            const auto script_path = emit(".ops.py", res.script.full_script);
            emit(".result.json", to_json(res.analysis).dump(2) + "\n");
            for (const auto& [name, svg] : render_svg(res.model, &res.analysis)) emit("." + name + ".svg", svg);
            auto summary = res.summary();
            summary["files"] = files;
            summary["cost"] = agents::compute_cost(res.ledger, config.profiles).to_json();
            if (!runner.empty()) {
                const auto engine_path = dir / (stem + ".engine.json");
                const auto engine =
                    run_external({runner, runner_timeout}, fs::absolute(script_path), fs::absolute(engine_path));
                const auto score = score_trial(engine, res.analysis);
                summary["engine"] = {{"pass", score.pass}, {"max_rel_error", score.max_rel_error}};
                files.push_back(engine_path.string());
                summary["files"] = files;
                if (!score.pass) {
                    print(summary);
                    return 3;
                }
            }
            print(summary);
        } else if (plan->parsed()) {
            auto spec = read_problem_unchecked(input);
            throw_if_invalid(spec);
            auto p = plan_construction(spec);
            auto doc = to_json(p);
            doc["checkpoint"] = check_plan(spec, p).to_json();
            print(doc);
        } else if (validate->parsed()) {
            const auto spec = read_problem_unchecked(input);
            throw_if_invalid(spec);
            print({{"valid", true}, {"total_bays", spec.total_bays}, {"total_stories", spec.total_stories}});
        } else if (codegen->parsed()) {
            const auto script = emit_script(read_model(input));
            if (out_file.empty()) {
                std::cout << script.full_script;
            } else {
                write_text(out_file, script.full_script);
                print({{"script", out_file}, {"digest", script.digest}});
            }
        } else if (solve->parsed()) {
            const auto result = to_json(solve_static(read_model(input)));
            if (out_file.empty()) {
                print(result);
            } else {
                write_text(out_file, result.dump(2) + "\n");
            }
        } else if (render->parsed()) {
            const auto model = read_model(input);
            const auto result = result_path.empty() ? solve_static(model)
                                                    : result_from_json(nlohmann::json::parse(read_text(result_path)));
            fs::create_directories(out_dir);
            nlohmann::json files = nlohmann::json::array();
            for (const auto& [name, svg] : render_svg(model, &result)) {
                const auto p = fs::path(out_dir) / (name + ".svg");
                write_text(p, svg);
                files.push_back(p.string());
            }
            print({{"files", files}});
        } else if (bench->parsed()) {
            BenchOptions opts;
            opts.trials = trials;
            opts.config = make_config(backend);
            opts.transport = make_transport(backend, opts.config);
            opts.out_dir = fs::path(out_dir);
            fs::create_directories(*opts.out_dir);
            if (!runner.empty()) opts.runner = RunnerOptions{runner, runner_timeout};
            const auto report = run_bench(bench_preset(preset, seed), opts);
            int passes = 0;
            for (const auto& t : report.trials) passes += t.pass ? 1 : 0;
            print({{"preset", preset},
                   {"seed", seed},
                   {"trials", report.trials.size()},
                   {"passes", passes},
                   {"accuracy", report.accuracy()},
                   {"reports", {(fs::path(out_dir) / "bench.csv").string(), (fs::path(out_dir) / "bench.md").string(),
                                (fs::path(out_dir) / "bench_runtime.csv").string()}}});
            return passes == static_cast<int>(report.trials.size()) ? 0 : 4;
        }
    } catch (const Error& e) {
        std::cerr << e.to_json().dump(2) << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << nlohmann::json{{"error", "InternalError"}, {"message", e.what()}}.dump(2) << "\n";
        return 1;
    }
    return 0;
}
