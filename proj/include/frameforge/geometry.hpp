#pragma once

#include "frameforge/numeric.hpp"
#include "frameforge/planner.hpp"
#include "frameforge/problem.hpp"

#include <nlohmann/json.hpp>

#include <optional>
#include <string_view>
#include <vector>

namespace frameforge {

enum class ElementKind { column, girder };

std::string_view to_string(ElementKind kind) noexcept;

struct Point {
    double x = 0.0;
    double y = 0.0;
    bool operator==(const Point&) const = default;
};

[[nodiscard]] bool near(const Point& a, const Point& b, double tol = kCoordTolerance) noexcept;

struct NodeRecord {
    int id = 0;
    double x = 0.0;
    double y = 0.0;
    bool fixed = false;  // fully fixed support
    bool operator==(const NodeRecord&) const = default;
};

struct ElementRecord {
    int id = 0;
    ElementKind kind = ElementKind::column;
    Point coord_i;
    Point coord_j;
    std::optional<int> node_i;  // set by map_connectivity
    std::optional<int> node_j;
    bool operator==(const ElementRecord&) const = default;

    [[nodiscard]] double length() const noexcept;
};

/// Nodes and elements after connectivity mapping and a passing geometric checkpoint.
struct FrameGraph {
    std::vector<NodeRecord> nodes;
    std::vector<ElementRecord> elements;

    [[nodiscard]] const NodeRecord& node(int id) const;
    [[nodiscard]] const ElementRecord& element(int id) const;
    [[nodiscard]] bool has_node(int id) const noexcept;
    [[nodiscard]] bool has_element(int id) const noexcept;
    bool operator==(const FrameGraph&) const = default;
};

/// One plan step's output of the node rulebook.
struct NodeStep {
    ConstructionStep step;
    std::vector<NodeRecord> nodes;
};

/// One plan step's output of the element rulebook.
struct ElementStep {
    ConstructionStep step;
    std::vector<ElementRecord> elements;
};

// Rulebook, with x_b the x of column line b and y_bot/y_top the bottom and top
// elevation of (bay, story):
//
//   type | nodes added                          | elements added
//   -----+--------------------------------------+---------------------------------
//    1   | (x_b-1,0)F (x_b,0)F (x_b-1,top) (x_b,top) | 2 columns + girder
//    2   | (x_b-1,top) (x_b,top)                | 2 columns bot->top + girder
//    3   | (x_b,0)F (x_b,top)                   | right column + girder
//    4   | (x_b,top)                            | right column + girder
//    5   | (x_b-1,top) (x_b,top)                | left column, right column, girder
//
// Girders of types 3/4 end on an existing node of line b-1; no such node is a
// SharedElevationMismatch.

/// Node rulebook. Throws SharedElevationMismatch, UnsupportedSupport (only
/// fixed supports at the base are handled here), IndexOutOfRange for plan
/// steps that do not exist in the spec.
std::vector<NodeStep> node_rulebook(const ProblemSpec& spec, const ConstructionPlan& plan);
/// Element rulebook (coordinates only). Throws IndexOutOfRange on bad steps.
std::vector<ElementStep> element_rulebook(const ProblemSpec& spec, const ConstructionPlan& plan);

std::vector<NodeRecord> flatten(const std::vector<NodeStep>& steps);
std::vector<ElementRecord> flatten(const std::vector<ElementStep>& steps);

inline std::vector<NodeRecord> generate_nodes(const ProblemSpec& spec, const ConstructionPlan& plan) {
    return flatten(node_rulebook(spec, plan));
}
inline std::vector<ElementRecord> generate_elements(const ProblemSpec& spec, const ConstructionPlan& plan) {
    return flatten(element_rulebook(spec, plan));
}

/// Resolves each endpoint to the unique node within kCoordTolerance. Throws
/// UnmatchedEndpoint or AmbiguousMatch.
std::vector<ElementRecord> map_connectivity(const std::vector<NodeRecord>& nodes,
                                            std::vector<ElementRecord> elements);

/// Checkpoint B. Failure codes: DuplicateNode, DuplicateElement,
/// UnmatchedEndpoint, OrphanNode, plus DuplicateNodeId, DuplicateElementId,
/// DegenerateElement and NonOrthogonalElement for malformed records.
CheckpointReport check_geometry(const std::vector<NodeRecord>& nodes, const std::vector<ElementRecord>& elements);

/// Node-agent document layout.
nlohmann::json to_json(const std::vector<NodeStep>& steps);
std::vector<NodeStep> node_steps_from_json(const nlohmann::json& doc);

/// Element-agent document layout.
nlohmann::json to_json(const std::vector<ElementStep>& steps);
std::vector<ElementStep> element_steps_from_json(const nlohmann::json& doc);

/// {"nodes": [...], "elements": [...]} with resolved connectivity.
nlohmann::json to_json(const FrameGraph& graph);
FrameGraph graph_from_json(const nlohmann::json& doc);

}  // namespace frameforge
