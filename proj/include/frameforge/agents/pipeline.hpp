#pragma once

#include "frameforge/agents/backend.hpp"
#include "frameforge/agents/cost.hpp"
#include "frameforge/agents/transport.hpp"
#include "frameforge/codegen.hpp"
#include "frameforge/geometry.hpp"
#include "frameforge/loads.hpp"
#include "frameforge/planner.hpp"
#include "frameforge/problem.hpp"
#include "frameforge/solver.hpp"

#include <nlohmann/json.hpp>

#include <filesystem>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace frameforge::agents {

enum class BackendKind { deterministic, remote };
enum class BackendMode { deterministic, remote, mixed };

BackendMode parse_backend_mode(std::string_view text);

struct RoleBinding {
    BackendKind kind = BackendKind::deterministic;
    std::string profile;  // remote only
};

struct PipelineConfig {
    std::map<std::string, ModelProfile> profiles = default_profiles();
    std::map<AgentRole, RoleBinding> bindings;  // roles absent here run deterministically
    int max_retries = 5;                        // regenerations per checkpoint loop
    RetryPolicy transport;
    int stations = kDefaultStations;

    [[nodiscard]] RoleBinding binding(AgentRole role) const;
    [[nodiscard]] bool uses_remote() const;

    /// Every role deterministic.
    static PipelineConfig deterministic();
    /// Every role remote: reasoning roles on the larger model, mapping and
    /// translation roles on the instruction-following model.
    static PipelineConfig remote_defaults();
};

/// Config document:
///   {"profiles": {NAME: {"model", "price_in", "price_out", "timeout_s"}},
///    "roles": {ROLE: {"backend": "deterministic"|"remote", "profile": NAME}},
///    "max_retries": 5, "transport": {"max_attempts", "backoff_s", "max_backoff_s"},
///    "stations": 21}
/// `mode` deterministic ignores "roles"; remote forces every role remote
/// (profiles from "roles" when given); mixed takes "roles" as written.
/// Throws ConfigError or UnknownModel (binding to an undefined profile).
PipelineConfig config_from_json(const nlohmann::json& doc, BackendMode mode);
PipelineConfig load_config(const std::filesystem::path& path, BackendMode mode);
PipelineConfig config_for_mode(BackendMode mode);

struct PipelineInput {
    std::optional<std::string> text;  // template, problem JSON, or free text
    std::optional<ProblemSpec> spec;  // bypasses problem analysis

    static PipelineInput from_text(std::string t) { return {std::move(t), std::nullopt}; }
    static PipelineInput from_spec(ProblemSpec s) { return {std::nullopt, std::move(s)}; }
};

struct PipelineResult {
    ProblemSpec spec;
    ConstructionPlan plan;
    LoadedModel model;
    ScriptArtifact script;
    AnalysisResult analysis;
    UsageLedger ledger;

    int planning_retries = 0;     // checkpoint A regenerations
    int geometry_retries = 0;     // checkpoint B regenerations
    int load_retries = 0;
    int translation_retries = 0;  // both translator stages together
    std::vector<CheckpointReport> planning_reports;  // one per attempt
    std::vector<CheckpointReport> geometry_reports;

    [[nodiscard]] nlohmann::json summary() const;
};

/// Runs analysis and planning (checkpoint A), node and element roles
/// concurrently (connectivity mapping, checkpoint B), load assignment,
/// compilation, both translator stages and the internal solve.
///
/// Errors: PlanningExhausted, GeometryExhausted, SchemaViolation (load role
/// exhausted), ScriptInvalid (translators exhausted), RemoteTimeout,
/// TransportError, AuthError, ConfigError (remote roles without a transport),
/// and input errors from the deterministic backend.
PipelineResult run_pipeline(const PipelineInput& input, const PipelineConfig& config,
                            std::shared_ptr<Transport> transport = nullptr);

/// Checkpoint B plus connectivity mapping, as run inside the pipeline.
/// On success `graph` holds the mapped frame.
CheckpointReport check_and_map_geometry(const std::vector<NodeRecord>& nodes,
                                        const std::vector<ElementRecord>& elements, FrameGraph& graph);

/// Translator-stage validation: lint, count law against the model, and (for
/// the full script) the geometry blocks appearing verbatim and in order.
CheckpointReport check_geometry_code(const LoadedModel& model, const GeometryBlocks& blocks);
CheckpointReport check_full_script(const LoadedModel& model, const GeometryBlocks& blocks,
                                   const std::string& script);

}  // namespace frameforge::agents
