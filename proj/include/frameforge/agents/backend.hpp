#pragma once

#include "frameforge/agents/cost.hpp"
#include "frameforge/agents/roles.hpp"
#include "frameforge/agents/transport.hpp"

#include <nlohmann/json.hpp>

#include <memory>
#include <string>
#include <string_view>

namespace frameforge::agents {

/// What a role is asked to do. Context keys by role:
///   problem_analysis      {"text"}
///   construction_planning {"problem"}
///   node, element         {"problem", "plan"}
///   load_assignment       {"problem", "graph"}
///   geometry_translator   {"model"}
///   complete_generator    {"model", "geometry_code"}
/// plus "previous_failures" on regeneration attempts.
struct RoleTask {
    AgentRole role = AgentRole::problem_analysis;
    int attempt = 1;
    nlohmann::json context = nlohmann::json::object();
};

struct RoleOutput {
    std::string text;
    std::int64_t input_tokens = 0;
    std::int64_t output_tokens = 0;
    double seconds = 0.0;
};

/// Every backend answers with text in the role's JSON output format, so both
/// backends share the parsing and validation path.
class Backend {
public:
    virtual ~Backend() = default;
    virtual RoleOutput run(const RoleTask& task) = 0;
    /// Ledger key: a profile name, or "deterministic".
    [[nodiscard]] virtual std::string model_key() const = 0;
};

/// Rulebook implementation of every role. Input errors (MissingSection,
/// MalformedValue, InvariantViolation, UnsupportedSupport, ...) propagate;
/// free-form problem text is rejected with ConfigError since only an LLM
/// backend can read it.
class DeterministicBackend final : public Backend {
public:
    RoleOutput run(const RoleTask& task) override;
    [[nodiscard]] std::string model_key() const override { return std::string(kDeterministicModel); }
};

class LlmBackend final : public Backend {
public:
    LlmBackend(std::shared_ptr<Transport> transport, ModelProfile profile, RetryPolicy policy = {});
    RoleOutput run(const RoleTask& task) override;
    [[nodiscard]] std::string model_key() const override { return profile_.name; }

private:
    std::shared_ptr<Transport> transport_;
    ModelProfile profile_;
    RetryPolicy policy_;
};

/// Prompt template compiled in from prompts/<stem>.txt; empty if absent.
std::string_view embedded_prompt(std::string_view name);
std::string_view system_prompt(AgentRole role);
/// User message: the task context as indented JSON under a short heading.
std::string user_prompt(const RoleTask& task);

/// Pulls the JSON object out of a completion (tolerates code fences and
/// surrounding prose). Throws SchemaViolation naming the role.
nlohmann::json extract_json(std::string_view text, AgentRole role);

}  // namespace frameforge::agents
