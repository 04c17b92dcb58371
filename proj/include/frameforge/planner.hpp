#pragma once

#include "frameforge/problem.hpp"

#include <nlohmann/json.hpp>

#include <string>
#include <vector>

namespace frameforge {

/// Step types of the construction rulebook:
///   1 base frame (bay 1, story 1)
///   2 further story of bay 1
///   3 first story of a later bay
///   4 later-bay story whose top is at or below the left bay's total height
///   5 later-bay story rising above the left bay
using StepType = int;

struct ConstructionStep {
    int step_number = 0;
    int bay_number = 0;
    int story_number = 0;
    StepType step_type = 0;
    bool operator==(const ConstructionStep&) const = default;
};

struct ConstructionPlan {
    std::vector<ConstructionStep> steps;
    std::string source_spec_digest;
    bool operator==(const ConstructionPlan&) const = default;
};

struct CheckFailure {
    std::string code;
    std::string message;
};

struct CheckpointReport {
    bool passed = true;
    std::vector<CheckFailure> failures;

    void fail(std::string code, std::string message) {
        passed = false;
        failures.push_back({std::move(code), std::move(message)});
    }
    [[nodiscard]] bool has(const std::string& code) const;
    [[nodiscard]] nlohmann::json to_json() const;
};

/// Throws IndexOutOfRange outside 1 <= bay <= total_bays, 1 <= story <= story_count(bay).
StepType classify_step_type(const ProblemSpec& spec, int bay, int story);

/// Bay-major, story-ascending plan over a valid spec.
ConstructionPlan plan_construction(const ProblemSpec& spec);

/// Checkpoint A: max bay number vs Total_bays (MaxBayMismatch) and step count
/// vs Total_stories (StepCountMismatch).
CheckpointReport check_plan(const ProblemSpec& spec, const ConstructionPlan& plan);

/// {"Construction_steps": [{Step_number, Bay_number, Story_number, Step_type}]}
nlohmann::json to_json(const ConstructionPlan& plan);
/// Step_type may be an integer or a numeric string. Throws SchemaViolation.
ConstructionPlan plan_from_json(const nlohmann::json& doc);

/// Parses a Step_type value (3, "3", "Type 3", "step type 3").
StepType parse_step_type(const nlohmann::json& value);

}  // namespace frameforge
