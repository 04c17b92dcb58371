// JSON-in, JSON-out bindings; the frameforge package wraps them in dicts.
#include "frameforge/agents/pipeline.hpp"
#include "frameforge/bench.hpp"
#include "frameforge/codegen.hpp"
#include "frameforge/error.hpp"
#include "frameforge/render.hpp"
#include "frameforge/template_parser.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace frameforge;
using nlohmann::json;

namespace {

LoadedModel model_of(const std::string& model_json) { return model_from_json(json::parse(model_json)); }

}  // namespace

PYBIND11_MODULE(_frameforge, m) {
    m.doc() = "frameforge core";

    static py::exception<Error> error(m, "Error");
    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p) std::rethrow_exception(p);
        } catch (const Error& e) {
            py::tuple args = py::make_tuple(std::string(to_string(e.code())), std::string(e.what()), e.details().dump());
            PyErr_SetObject(error.ptr(), args.ptr());
        } catch (const json::exception& e) {
            py::tuple args = py::make_tuple("SchemaViolation", std::string(e.what()), "{}");
            PyErr_SetObject(error.ptr(), args.ptr());
        }
    });

    m.def("parse_problem_template", [](const std::string& text) { return to_json(parse_problem_template(text)).dump(); });
    m.def("parse_problem_template_unchecked",
          [](const std::string& text) { return to_json(parse_problem_template_unchecked(text)).dump(); });
    m.def("serialize_problem_template",
          [](const std::string& problem) { return serialize_problem_template(problem_from_json(json::parse(problem))); });
    m.def("validate_problem", [](const std::string& problem) {
        json out = json::array();
        for (const auto& v : validate_problem(problem_from_json(json::parse(problem)))) {
            out.push_back({{"code", v.code}, {"message", v.message}});
        }
        return out.dump();
    });
    m.def("make_stepped_frame", [](const std::vector<int>& counts, double span, const std::vector<double>& heights) {
        return to_json(make_stepped_frame(counts, span, heights, benchmark_loads())).dump();
    });
    m.def("plan_construction",
          [](const std::string& problem) { return to_json(plan_construction(problem_from_json(json::parse(problem)))).dump(); });
    m.def("check_plan", [](const std::string& problem, const std::string& plan) {
        return check_plan(problem_from_json(json::parse(problem)), plan_from_json(json::parse(plan))).to_json().dump();
    });
    m.def("build_model", [](const std::string& problem) {
        return to_json(oracle_analysis(problem_from_json(json::parse(problem))).model).dump();
    });
    m.def("count_law", [](const std::string& problem) {
        const auto law = count_law(problem_from_json(json::parse(problem)));
        return json{{"nodes", law.nodes}, {"columns", law.columns}, {"girders", law.girders}}.dump();
    });
    m.def(
        "solve_static",
        [](const std::string& model, int stations) { return to_json(solve_static(model_of(model), stations)).dump(); },
        py::arg("model"), py::arg("stations") = kDefaultStations);
    m.def("emit_script", [](const std::string& model) { return emit_script(model_of(model)).full_script; });
    m.def("lint_script", [](const std::string& script) { return lint_script(script).to_json().dump(); });
    m.def(
        "render_svg",
        [](const std::string& model, std::optional<std::string> result) {
            const auto lm = model_of(model);
            std::optional<AnalysisResult> r;
            if (result) r = result_from_json(json::parse(*result));
            std::map<std::string, std::string> out;
            for (auto& [name, svg] : render_svg(lm, r ? &*r : nullptr)) out[name] = svg;
            return out;
        },
        py::arg("model"), py::arg("result") = py::none());
    m.def(
        "score_trial",
        [](const std::string& result, const std::string& oracle, double rel, double abs) {
            const auto s = score_trial(result_from_json(json::parse(result)), result_from_json(json::parse(oracle)),
                                       {rel, abs});
            return json{{"pass", s.pass}, {"max_rel_error", s.max_rel_error}}.dump();
        },
        py::arg("result"), py::arg("oracle"), py::arg("rel") = 1e-6, py::arg("abs") = 1e-12);
    m.def("compute_cost", [](const std::string& usage) {
        agents::UsageLedger ledger;
        for (const auto& u : json::parse(usage)) {
            ledger.record_call(agents::parse_role(u.value("role", std::string("problem_analysis"))),
                               u.at("model").get<std::string>(), u.at("input_tokens").get<std::int64_t>(),
                               u.at("output_tokens").get<std::int64_t>(), 0.0);
        }
        return agents::compute_cost(ledger, agents::default_profiles()).to_json().dump();
    });
    m.def(
        "run_pipeline",
        [](const std::string& text, const std::string& backend, std::optional<std::string> config,
           std::optional<std::string> fixtures) {
            const auto mode = agents::parse_backend_mode(backend);
            const auto cfg = config ? agents::config_from_json(json::parse(*config), mode) : agents::config_for_mode(mode);
            std::shared_ptr<agents::Transport> transport;
            if (cfg.uses_remote()) {
                if (fixtures) {
                    transport = std::make_shared<agents::FixtureTransport>(*fixtures);
                } else {
                    transport = agents::HttpTransport::from_environment();
                }
            }
            py::gil_scoped_release release;
            const auto res = agents::run_pipeline(agents::PipelineInput::from_text(text), cfg, transport);
            json out = res.summary();
            out["problem"] = to_json(res.spec);
            out["plan"] = to_json(res.plan);
            out["model"] = to_json(res.model);
            out["script"] = res.script.full_script;
            out["result"] = to_json(res.analysis);
            out["cost"] = agents::compute_cost(res.ledger, cfg.profiles).to_json();
            return out.dump();
        },
        py::arg("text"), py::arg("backend") = "deterministic", py::arg("config") = py::none(),
        py::arg("fixtures") = py::none());
    m.def(
        "run_bench",
        [](const std::string& preset, int trials, std::uint64_t seed) {
            BenchOptions opts;
            opts.trials = trials;
            BenchReport report;
            {
                py::gil_scoped_release release;
                report = run_bench(bench_preset(preset, seed), opts);
            }
            return json{{"csv", report.csv()}, {"markdown", report.markdown()}, {"accuracy", report.accuracy()}}.dump();
        },
        py::arg("preset") = "paper20", py::arg("trials") = 1, py::arg("seed") = 7);
}
