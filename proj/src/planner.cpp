#include "frameforge/planner.hpp"

#include "frameforge/error.hpp"
#include "frameforge/numeric.hpp"

#include <algorithm>
#include <cctype>

namespace frameforge {

bool CheckpointReport::has(const std::string& code) const {
    return std::any_of(failures.begin(), failures.end(), [&](const CheckFailure& f) { return f.code == code; });
}

nlohmann::json CheckpointReport::to_json() const {
    nlohmann::json list = nlohmann::json::array();
    for (const auto& f : failures) {
        list.push_back({{"code", f.code}, {"message", f.message}});
    }
    return {{"passed", passed}, {"failures", list}};
}

StepType classify_step_type(const ProblemSpec& spec, int bay, int story) {
    if (bay < 1 || bay > static_cast<int>(spec.bays.size())) {
        throw Error(ErrorCode::IndexOutOfRange, "bay " + std::to_string(bay) + " out of range", {{"bay", bay}});
    }
    const auto& current = spec.bay(bay);
    if (story < 1 || story > current.story_count || story > static_cast<int>(current.heights.size())) {
        throw Error(ErrorCode::IndexOutOfRange,
                    "story " + std::to_string(story) + " out of range for bay " + std::to_string(bay),
                    {{"bay", bay}, {"story", story}});
    }
    if (bay == 1) {
        return story == 1 ? 1 : 2;
    }
    if (story == 1) {
        return 3;
    }
    // Ties go to type 4.
    const double top = spec.elevation(bay, story);
    const double left_height = spec.bay(bay - 1).total_height();
    return top <= left_height + kCoordTolerance ? 4 : 5;
}

ConstructionPlan plan_construction(const ProblemSpec& spec) {
    ConstructionPlan plan;
    plan.source_spec_digest = spec_digest(spec);
    int step = 0;
    for (const auto& bay : spec.bays) {
        for (int story = 1; story <= bay.story_count; ++story) {
            plan.steps.push_back({++step, bay.index, story, classify_step_type(spec, bay.index, story)});
        }
    }
    return plan;
}

CheckpointReport check_plan(const ProblemSpec& spec, const ConstructionPlan& plan) {
    CheckpointReport report;
    int max_bay = 0;
    for (const auto& s : plan.steps) {
        max_bay = std::max(max_bay, s.bay_number);
    }
    if (max_bay != spec.total_bays) {
        report.fail("MaxBayMismatch", "plan reaches bay " + std::to_string(max_bay) + " but Total_bays=" +
                                          std::to_string(spec.total_bays));
    }
    if (static_cast<int>(plan.steps.size()) != spec.total_stories) {
        report.fail("StepCountMismatch", "plan has " + std::to_string(plan.steps.size()) +
                                             " steps but Total_stories=" + std::to_string(spec.total_stories));
    }
    return report;
}

nlohmann::json to_json(const ConstructionPlan& plan) {
    nlohmann::json steps = nlohmann::json::array();
    for (const auto& s : plan.steps) {
        steps.push_back({{"Step_number", s.step_number},
                         {"Bay_number", s.bay_number},
                         {"Story_number", s.story_number},
                         {"Step_type", std::to_string(s.step_type)}});
    }
    return {{"Construction_steps", steps}};
}

StepType parse_step_type(const nlohmann::json& value) {
    auto in_range = [](int t) { return t >= 1 && t <= 5; };
    if (value.is_number_integer()) {
        if (const int t = value.get<int>(); in_range(t)) return t;
    } else if (value.is_string()) {
        const auto text = value.get<std::string>();
        auto digit = std::find_if(text.begin(), text.end(), [](unsigned char c) { return std::isdigit(c); });
        if (digit != text.end() && std::none_of(digit + 1, text.end(), [](unsigned char c) { return std::isdigit(c); }) &&
            in_range(*digit - '0')) {
            return *digit - '0';
        }
    }
    throw Error(ErrorCode::SchemaViolation, "Step_type must be an integer 1..5", {{"field", "Step_type"}});
}

ConstructionPlan plan_from_json(const nlohmann::json& doc) {
    if (!doc.is_object() || !doc.contains("Construction_steps") || !doc.at("Construction_steps").is_array()) {
        throw Error(ErrorCode::SchemaViolation, "expected Construction_steps array",
                    {{"field", "Construction_steps"}});
    }
    ConstructionPlan plan;
    for (const auto& s : doc.at("Construction_steps")) {
        for (const char* key : {"Step_number", "Bay_number", "Story_number", "Step_type"}) {
            if (!s.is_object() || !s.contains(key)) {
                throw Error(ErrorCode::SchemaViolation, std::string("construction step missing ") + key,
                            {{"field", key}});
            }
        }
        for (const char* key : {"Step_number", "Bay_number", "Story_number"}) {
            if (!s.at(key).is_number_integer()) {
                throw Error(ErrorCode::SchemaViolation, std::string(key) + " must be an integer", {{"field", key}});
            }
        }
        const StepType type = parse_step_type(s.at("Step_type"));
        if (type < 1 || type > 5) {
            throw Error(ErrorCode::SchemaViolation, "Step_type out of range 1..5", {{"field", "Step_type"}});
        }
        plan.steps.push_back({s.at("Step_number").get<int>(), s.at("Bay_number").get<int>(),
                              s.at("Story_number").get<int>(), type});
    }
    return plan;
}

}  // namespace frameforge
