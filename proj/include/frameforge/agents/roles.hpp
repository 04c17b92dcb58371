#pragma once

#include <array>
#include <string_view>

namespace frameforge::agents {

enum class AgentRole {
    problem_analysis,
    construction_planning,
    node,
    element,
    load_assignment,
    geometry_translator,
    complete_generator,
};

inline constexpr std::array<AgentRole, 7> kAllRoles{
    AgentRole::problem_analysis, AgentRole::construction_planning, AgentRole::node,
    AgentRole::element,          AgentRole::load_assignment,       AgentRole::geometry_translator,
    AgentRole::complete_generator,
};

std::string_view to_string(AgentRole role) noexcept;
/// Throws ConfigError for unknown names.
AgentRole parse_role(std::string_view name);

/// Rule-based reasoning roles; the rest map or translate.
[[nodiscard]] constexpr bool is_reasoning_role(AgentRole role) noexcept {
    return role == AgentRole::problem_analysis || role == AgentRole::construction_planning ||
           role == AgentRole::node || role == AgentRole::element;
}

}  // namespace frameforge::agents
