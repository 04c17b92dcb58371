#pragma once

#include "frameforge/geometry.hpp"
#include "frameforge/problem.hpp"

#include <nlohmann/json.hpp>

#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace frameforge {

namespace selector {
struct AllGirders {
    bool operator==(const AllGirders&) const = default;
};
/// Girders on the `level`-th distinct girder elevation, counted from the ground (1-based).
struct GirdersAtStory {
    int level = 0;
    bool operator==(const GirdersAtStory&) const = default;
};
/// One node per story level on the leftmost column line.
struct TopNodesLeftmostBay {
    bool operator==(const TopNodesLeftmostBay&) const = default;
};
/// Every column on the leftmost column line.
struct LeftmostColumns {
    bool operator==(const LeftmostColumns&) const = default;
};
enum class Side { left, right };
/// Top node of (bay, story) on the bay's left or right column line.
struct NodesAt {
    int bay = 0;
    int story = 0;
    Side side = Side::left;
    bool operator==(const NodesAt&) const = default;
};
/// Anything outside the closed grammar; only an agent backend can resolve it.
struct Custom {
    std::string text;
    bool operator==(const Custom&) const = default;
};
}  // namespace selector

using LoadSelector = std::variant<selector::AllGirders, selector::GirdersAtStory, selector::TopNodesLeftmostBay,
                                  selector::LeftmostColumns, selector::NodesAt, selector::Custom>;

/// Maps location text onto the closed grammar; unknown phrasing becomes Custom.
LoadSelector parse_selector(std::string_view text);
/// Canonical phrase; parse_selector(canonical_text(s)) == s for non-Custom s.
std::string canonical_text(const LoadSelector& s);

/// A load bound to a closed selector (the load-assignment role's output).
struct LoadAssignment {
    LoadType type = LoadType::point;
    LoadSelector selector;
    Direction direction = Direction::down;
    double magnitude = 0.0;
    bool operator==(const LoadAssignment&) const = default;
};

struct NodalLoad {
    int node = 0;
    double fx = 0.0;  // kN
    double fy = 0.0;  // kN
    double mz = 0.0;  // kN*m
    bool operator==(const NodalLoad&) const = default;
};

/// Uniform load in the member's local y direction (local x runs i -> j).
struct MemberLoad {
    int element = 0;
    double w = 0.0;  // kN/m
    bool operator==(const MemberLoad&) const = default;
};

struct ResolvedLoads {
    std::vector<NodalLoad> nodal;
    std::vector<MemberLoad> member;
    bool operator==(const ResolvedLoads&) const = default;
};

/// Binds each LoadSpec to its parsed selector. Throws UnresolvableSelector for
/// text outside the closed grammar.
std::vector<LoadAssignment> select_loads(const ProblemSpec& spec);

/// Resolves selectors onto graph entities. Throws UnresolvableSelector (Custom,
/// or a point load on an element selector and vice versa), EmptySelection,
/// UnsupportedLoad (distributed load along a member axis).
ResolvedLoads resolve_assignments(const std::vector<LoadAssignment>& assignments, const FrameGraph& graph,
                                  const ProblemSpec& spec);

inline ResolvedLoads assign_loads(const ProblemSpec& spec, const FrameGraph& graph) {
    return resolve_assignments(select_loads(spec), graph, spec);
}

struct Provenance {
    std::string spec_digest;
    std::string graph_digest;
    std::string loads_digest;
    bool operator==(const Provenance&) const = default;
};

struct LoadedModel {
    FrameGraph graph;
    MaterialSpec material;
    ResolvedLoads loads;
    Provenance provenance;
    bool operator==(const LoadedModel&) const = default;

    [[nodiscard]] double area(const ElementRecord& e) const noexcept {
        return e.kind == ElementKind::column ? material.A_col : material.A_gir;
    }
    [[nodiscard]] double inertia(const ElementRecord& e) const noexcept {
        return e.kind == ElementKind::column ? material.I_col : material.I_gir;
    }
};

/// Deterministic merge. Throws DanglingReference(kind, id).
LoadedModel compile_model(const ProblemSpec& spec, const FrameGraph& graph, const ResolvedLoads& loads);

/// {"Load_assignments": [{Type, Selector, Direction, Magnitude}]}
nlohmann::json to_json(const std::vector<LoadAssignment>& assignments);
std::vector<LoadAssignment> assignments_from_json(const nlohmann::json& doc);

/// {"nodal_loads": [...], "member_loads": [...]}
nlohmann::json to_json(const ResolvedLoads& loads);
ResolvedLoads loads_from_json(const nlohmann::json& doc);

/// Compiled model document: nodes, supports, elements, material, nodal_loads,
/// member_loads, provenance.
nlohmann::json to_json(const LoadedModel& model);
LoadedModel model_from_json(const nlohmann::json& doc);
std::string model_digest(const LoadedModel& model);

}  // namespace frameforge
