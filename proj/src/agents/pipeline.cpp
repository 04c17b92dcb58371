#include "frameforge/agents/pipeline.hpp"

#include "frameforge/error.hpp"

#include <algorithm>
#include <exception>
#include <future>
#include <initializer_list>

namespace frameforge::agents {

namespace {

class Agents {
public:
    Agents(const PipelineConfig& config, std::shared_ptr<Transport> transport, UsageLedger& ledger)
        : ledger_(ledger) {
        for (auto r : kAllRoles) {
            const auto b = config.binding(r);
            if (b.kind == BackendKind::deterministic) {
                backends_[r] = std::make_unique<DeterministicBackend>();
                continue;
            }
            if (!transport) {
                throw Error(ErrorCode::ConfigError,
                            "role " + std::string(to_string(r)) + " is remote but no transport is configured",
                            {{"role", to_string(r)}});
            }
            auto it = config.profiles.find(b.profile);
            if (it == config.profiles.end()) {
                throw Error(ErrorCode::UnknownModel, "unknown profile '" + b.profile + "'", {{"model", b.profile}});
            }
            backends_[r] = std::make_unique<LlmBackend>(transport, it->second, config.transport);
        }
    }

    RoleOutput call(AgentRole role, int attempt, nlohmann::json context) {
        auto& backend = *backends_.at(role);
        auto out = backend.run({role, attempt, std::move(context)});
        ledger_.record_call(role, backend.model_key(), out.input_tokens, out.output_tokens, out.seconds);
        return out;
    }

    void retry(AgentRole role) { ledger_.record_retry(role, backends_.at(role)->model_key()); }

private:
    std::map<AgentRole, std::unique_ptr<Backend>> backends_;
    UsageLedger& ledger_;
};

bool one_of(ErrorCode code, std::initializer_list<ErrorCode> codes) {
    return std::find(codes.begin(), codes.end(), code) != codes.end();
}

/// Runs `fn`; errors whose code is in `retryable` become checkpoint failures,
/// everything else propagates.
template <class Fn>
bool guarded(CheckpointReport& report, AgentRole role, std::initializer_list<ErrorCode> retryable, Fn&& fn) {
    try {
        fn();
        return true;
    } catch (const Error& e) {
        if (!one_of(e.code(), retryable)) throw;
        report.fail(std::string(to_string(e.code())), std::string(to_string(role)) + ": " + e.what());
        return false;
    }
}

void merge(CheckpointReport& into, const CheckpointReport& from) {
    for (const auto& f : from.failures) into.fail(f.code, f.message);
}

nlohmann::json reports_json(const std::vector<CheckpointReport>& reports) {
    nlohmann::json out = nlohmann::json::array();
    for (const auto& r : reports) out.push_back(r.to_json());
    return out;
}

nlohmann::json with_feedback(nlohmann::json context, const CheckpointReport* previous) {
    if (previous != nullptr && !previous->passed) context["previous_failures"] = previous->to_json()["failures"];
    return context;
}

const std::initializer_list<ErrorCode> kSchemaOnly{ErrorCode::SchemaViolation};

}  // namespace

CheckpointReport check_and_map_geometry(const std::vector<NodeRecord>& nodes,
                                        const std::vector<ElementRecord>& elements, FrameGraph& graph) {
    CheckpointReport report = check_geometry(nodes, elements);
    if (nodes.empty() || elements.empty()) report.fail("EmptyGeometry", "no nodes or no elements were produced");
    if (std::none_of(nodes.begin(), nodes.end(), [](const NodeRecord& n) { return n.fixed; })) {
        report.fail("NoSupport", "no node carries a support");
    }
    if (!report.passed) return report;
    try {
        graph = FrameGraph{nodes, map_connectivity(nodes, elements)};
    } catch (const Error& e) {
        if (!one_of(e.code(), {ErrorCode::UnmatchedEndpoint, ErrorCode::AmbiguousMatch})) throw;
        report.fail(std::string(to_string(e.code())), e.what());
    }
    return report;
}

CheckpointReport check_geometry_code(const LoadedModel& model, const GeometryBlocks& blocks) {
    CheckpointReport report;
    const auto lint = lint_script(blocks.joined());
    for (const auto& i : lint.issues) report.fail(i.code, "line " + std::to_string(i.line) + ": " + i.message);
    auto expected = expected_counts(model);
    expected.loads = 0;
    expected.ele_loads = 0;
    if (!(lint.counts == expected)) {
        report.fail("CountMismatch", "geometry command counts differ from the model: " + lint.to_json()["counts"].dump());
    }
    return report;
}

CheckpointReport check_full_script(const LoadedModel& model, const GeometryBlocks& blocks, const std::string& script) {
    CheckpointReport report;
    const auto lint = lint_script(script);
    for (const auto& i : lint.issues) report.fail(i.code, "line " + std::to_string(i.line) + ": " + i.message);
    if (!(lint.counts == expected_counts(model))) {
        report.fail("CountMismatch", "script command counts differ from the model: " + lint.to_json()["counts"].dump());
    }
    std::size_t pos = 0;
    for (const auto* block : {&blocks.nodes, &blocks.transformation, &blocks.elements}) {
        const auto at = script.find(*block, pos);
        if (at == std::string::npos) {
            report.fail("GeometryBlocksAltered", "geometry blocks are not reproduced verbatim and in order");
            break;
        }
        pos = at + block->size();
    }
    return report;
}

PipelineResult run_pipeline(const PipelineInput& input, const PipelineConfig& config,
                            std::shared_ptr<Transport> transport) {
    if (!input.text && !input.spec) throw Error(ErrorCode::ConfigError, "pipeline input is empty");
    if (input.spec) {
        const auto violations = validate_problem(*input.spec);
        if (!violations.empty()) {
            nlohmann::json v = nlohmann::json::array();
            for (const auto& x : violations) v.push_back({{"code", x.code}, {"message", x.message}});
            throw Error(ErrorCode::InvariantViolation, violations.front().message, {{"violations", v}});
        }
    }
    PipelineResult res;
    Agents agents(config, std::move(transport), res.ledger);
    const int max_attempts = config.max_retries + 1;

    // Checkpoint A: problem analysis + planning.
    for (int attempt = 1;; ++attempt) {
        const CheckpointReport* prev = res.planning_reports.empty() ? nullptr : &res.planning_reports.back();
        CheckpointReport report;
        std::optional<ProblemSpec> spec = input.spec;
        if (!spec) {
            const auto out = agents.call(AgentRole::problem_analysis, attempt,
                                         with_feedback({{"text", *input.text}}, prev));
            guarded(report, AgentRole::problem_analysis, kSchemaOnly, [&] {
                spec = problem_from_json(extract_json(out.text, AgentRole::problem_analysis));
            });
        }
        if (spec) {
            for (const auto& v : validate_problem(*spec)) report.fail(v.code, v.message);
        }
        if (spec && report.passed) {
            const auto out = agents.call(AgentRole::construction_planning, attempt,
                                         with_feedback({{"problem", to_json(*spec)}}, prev));
            std::optional<ConstructionPlan> plan;
            guarded(report, AgentRole::construction_planning, kSchemaOnly, [&] {
                plan = plan_from_json(extract_json(out.text, AgentRole::construction_planning));
            });
            if (plan) {
                merge(report, check_plan(*spec, *plan));
                plan->source_spec_digest = spec_digest(*spec);
                res.spec = *spec;
                res.plan = *plan;
            }
        }
        res.planning_reports.push_back(report);
        if (report.passed) break;
        if (attempt >= max_attempts) {
            throw Error(ErrorCode::PlanningExhausted,
                        "planning checkpoint still failing after " + std::to_string(config.max_retries) + " retries",
                        {{"attempts", attempt}, {"reports", reports_json(res.planning_reports)}});
        }
        ++res.planning_retries;
        if (!input.spec) agents.retry(AgentRole::problem_analysis);
        agents.retry(AgentRole::construction_planning);
    }

    // Checkpoint B: node and element roles in parallel, then mapping.
    const nlohmann::json problem_json = to_json(res.spec);
    const nlohmann::json plan_json = to_json(res.plan);
    FrameGraph graph;
    for (int attempt = 1;; ++attempt) {
        const CheckpointReport* prev = res.geometry_reports.empty() ? nullptr : &res.geometry_reports.back();
        const auto context = with_feedback({{"problem", problem_json}, {"plan", plan_json}}, prev);
        auto node_future =
            std::async(std::launch::async, [&] { return agents.call(AgentRole::node, attempt, context); });
        auto element_future =
            std::async(std::launch::async, [&] { return agents.call(AgentRole::element, attempt, context); });
        RoleOutput node_out;
        RoleOutput element_out;
        std::exception_ptr node_error;
        std::exception_ptr element_error;
        try {
            node_out = node_future.get();
        } catch (...) {
            node_error = std::current_exception();
        }
        try {
            element_out = element_future.get();
        } catch (...) {
            element_error = std::current_exception();
        }

        CheckpointReport report;
        const std::initializer_list<ErrorCode> retryable{ErrorCode::SchemaViolation, ErrorCode::SharedElevationMismatch,
                                                         ErrorCode::IndexOutOfRange};
        std::optional<std::vector<NodeRecord>> nodes;
        std::optional<std::vector<ElementRecord>> elements;
        guarded(report, AgentRole::node, retryable, [&] {
            if (node_error) std::rethrow_exception(node_error);
            nodes = flatten(node_steps_from_json(extract_json(node_out.text, AgentRole::node)));
        });
        guarded(report, AgentRole::element, retryable, [&] {
            if (element_error) std::rethrow_exception(element_error);
            elements = flatten(element_steps_from_json(extract_json(element_out.text, AgentRole::element)));
        });
        if (nodes && elements) merge(report, check_and_map_geometry(*nodes, *elements, graph));
        res.geometry_reports.push_back(report);
        if (report.passed) break;
        if (attempt >= max_attempts) {
            throw Error(ErrorCode::GeometryExhausted,
                        "geometry checkpoint still failing after " + std::to_string(config.max_retries) + " retries",
                        {{"attempts", attempt}, {"reports", reports_json(res.geometry_reports)}});
        }
        ++res.geometry_retries;
        agents.retry(AgentRole::node);
        agents.retry(AgentRole::element);
    }

    // Load assignment and compilation.
    const nlohmann::json graph_json = to_json(graph);
    std::vector<CheckpointReport> load_reports;
    for (int attempt = 1;; ++attempt) {
        const CheckpointReport* prev = load_reports.empty() ? nullptr : &load_reports.back();
        const auto out = agents.call(AgentRole::load_assignment, attempt,
                                     with_feedback({{"problem", problem_json}, {"graph", graph_json}}, prev));
        CheckpointReport report;
        guarded(report, AgentRole::load_assignment,
                {ErrorCode::SchemaViolation, ErrorCode::DanglingReference, ErrorCode::UnresolvableSelector,
                 ErrorCode::EmptySelection, ErrorCode::UnsupportedLoad},
                [&] {
                    const auto doc = extract_json(out.text, AgentRole::load_assignment);
                    const ResolvedLoads loads = doc.contains("Load_assignments")
                                                    ? resolve_assignments(assignments_from_json(doc), graph, res.spec)
                                                    : loads_from_json(doc);
                    res.model = compile_model(res.spec, graph, loads);
                });
        load_reports.push_back(report);
        if (report.passed) break;
        if (attempt >= max_attempts) {
            throw Error(ErrorCode::SchemaViolation, "load assignment output still invalid after retries",
                        {{"role", "load_assignment"}, {"attempts", attempt}, {"reports", reports_json(load_reports)}});
        }
        ++res.load_retries;
        agents.retry(AgentRole::load_assignment);
    }

    // Two-stage translation.
    const nlohmann::json model_json = to_json(res.model);
    GeometryBlocks blocks;
    std::vector<CheckpointReport> translation_reports;
    for (int attempt = 1;; ++attempt) {
        const CheckpointReport* prev = translation_reports.empty() ? nullptr : &translation_reports.back();
        const auto out =
            agents.call(AgentRole::geometry_translator, attempt, with_feedback({{"model", model_json}}, prev));
        CheckpointReport report;
        guarded(report, AgentRole::geometry_translator, kSchemaOnly, [&] {
            const auto doc = extract_json(out.text, AgentRole::geometry_translator);
            try {
                const auto& g = doc.at("Geometry_code");
                blocks = {g.at("nodes").get<std::string>(), g.at("transformation").get<std::string>(),
                          g.at("elements").get<std::string>()};
            } catch (const nlohmann::json::exception& ex) {
                throw Error(ErrorCode::SchemaViolation, std::string("Geometry_code: ") + ex.what(),
                            {{"role", "geometry_translator"}});
            }
            merge(report, check_geometry_code(res.model, blocks));
        });
        translation_reports.push_back(report);
        if (report.passed) break;
        if (attempt >= max_attempts) {
            throw Error(ErrorCode::ScriptInvalid, "geometry translation still invalid after retries",
                        {{"role", "geometry_translator"}, {"reports", reports_json(translation_reports)}});
        }
        ++res.translation_retries;
        agents.retry(AgentRole::geometry_translator);
    }
    translation_reports.clear();
    const nlohmann::json blocks_json{
        {"nodes", blocks.nodes}, {"transformation", blocks.transformation}, {"elements", blocks.elements}};
    for (int attempt = 1;; ++attempt) {
        const CheckpointReport* prev = translation_reports.empty() ? nullptr : &translation_reports.back();
        const auto out = agents.call(AgentRole::complete_generator, attempt,
                                     with_feedback({{"model", model_json}, {"geometry_code", blocks_json}}, prev));
        CheckpointReport report;
        guarded(report, AgentRole::complete_generator, kSchemaOnly, [&] {
            const auto doc = extract_json(out.text, AgentRole::complete_generator);
            if (!doc.contains("Script") || !doc.at("Script").is_string()) {
                throw Error(ErrorCode::SchemaViolation, "expected a Script string", {{"role", "complete_generator"}});
            }
            res.script.geometry_blocks = blocks;
            res.script.full_script = doc.at("Script").get<std::string>();
            res.script.digest = sha256_hex(res.script.full_script);
            merge(report, check_full_script(res.model, blocks, res.script.full_script));
        });
        translation_reports.push_back(report);
        if (report.passed) break;
        if (attempt >= max_attempts) {
            throw Error(ErrorCode::ScriptInvalid, "complete script still invalid after retries",
                        {{"role", "complete_generator"}, {"reports", reports_json(translation_reports)}});
        }
        ++res.translation_retries;
        agents.retry(AgentRole::complete_generator);
    }

    res.analysis = solve_static(res.model, config.stations);
    return res;
}

nlohmann::json PipelineResult::summary() const {
    return {{"total_bays", spec.total_bays},
            {"total_stories", spec.total_stories},
            {"nodes", model.graph.nodes.size()},
            {"elements", model.graph.elements.size()},
            {"retries",
             {{"planning", planning_retries},
              {"geometry", geometry_retries},
              {"loads", load_retries},
              {"translation", translation_retries}}},
            {"model_digest", model_digest(model)},
            {"script_digest", script.digest},
            {"usage", ledger.to_json()}};
}

}  // namespace frameforge::agents
