#pragma once

#include "frameforge/problem.hpp"

#include <string>
#include <string_view>

namespace frameforge {

// Structured problem template. Four sections, each introduced by a header line
// ("Geometry", "Boundary conditions", "Load patterns", "Material properties";
// markdown '#' prefixes, numbering and a trailing ':' are tolerated). Items may
// carry a leading '-' or '*'.
//
//   Geometry
//   - Number of bays: 2
//   - Total stories: 3                       (optional, checked when present)
//   - Bay 1: span 6 m, 2 stories, heights 3, 3 m
//   - Bay 2: span 6 m, 1 story, heights 3 m
//
//   Boundary conditions
//   - Support: fixed at all base nodes
//
//   Load patterns
//   - Distributed load: 10 kN/m, downward, all girders
//   - Point load: 50 kN, rightward, top node of each story at the leftmost bay
//
//   Material properties
//   - E: 200000000.0 kPa
//   - A_col: 0.02 m^2
//   - A_gir: 0.015 m^2
//   - I_col: 0.0002 m^4
//   - I_gir: 0.00015 m^4

inline constexpr std::string_view kSectionGeometry = "Geometry";
inline constexpr std::string_view kSectionBoundary = "Boundary conditions";
inline constexpr std::string_view kSectionLoads = "Load patterns";
inline constexpr std::string_view kSectionMaterial = "Material properties";

/// Parses and validates. Throws MissingSection, MalformedValue, or
/// InvariantViolation (details carry the violation list).
ProblemSpec parse_problem_template(std::string_view text);

/// Same grammar, but returns the spec as written without running
/// validate_problem, so callers can report every violation.
ProblemSpec parse_problem_template_unchecked(std::string_view text);

/// True when all four section headers are present; anything else is treated
/// as free-form text for the problem-analysis agent.
bool looks_like_template(std::string_view text);

/// Canonical template rendering; parse_problem_template inverts it exactly.
std::string serialize_problem_template(const ProblemSpec& spec);

}  // namespace frameforge
