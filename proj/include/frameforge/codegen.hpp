#pragma once

#include "frameforge/loads.hpp"

#include <nlohmann/json.hpp>

#include <string>
#include <vector>

namespace frameforge {

/// Output of the geometry translator, in script order.
struct GeometryBlocks {
    std::string nodes;           // node(...) lines, then fix(...) lines
    std::string transformation;  // geomTransf('Linear', 1)
    std::string elements;        // element('elasticBeamColumn', ...) lines
    bool operator==(const GeometryBlocks&) const = default;

    [[nodiscard]] std::string joined() const { return nodes + transformation + elements; }
};

struct ScriptArtifact {
    GeometryBlocks geometry_blocks;
    std::string full_script;
    std::string digest;  // sha256 of full_script
};

inline constexpr int kTransformTag = 1;

GeometryBlocks emit_geometry_code(const LoadedModel& model);

/// Header, geometry blocks verbatim, load pattern, analysis configuration and a
/// JSON result dump. The script writes its results to sys.argv[1]
/// (default "result.json").
ScriptArtifact emit_full_script(const LoadedModel& model, const GeometryBlocks& blocks);

inline ScriptArtifact emit_script(const LoadedModel& model) {
    return emit_full_script(model, emit_geometry_code(model));
}

struct CommandCounts {
    int nodes = 0;
    int fixes = 0;
    int transforms = 0;
    int elements = 0;
    int loads = 0;
    int ele_loads = 0;
    bool operator==(const CommandCounts&) const = default;
};

struct LintIssue {
    std::string code;  // UndefinedNode, UndefinedElement, UndefinedTransform,
                       // DuplicateNodeTag, DuplicateElementTag, DuplicateNode,
                       // DuplicateElement, MalformedCommand
    int line = 0;      // 1-based
    std::string message;
};

struct LintReport {
    CommandCounts counts;
    std::vector<LintIssue> issues;

    [[nodiscard]] bool ok() const noexcept { return issues.empty(); }
    [[nodiscard]] bool has(const std::string& code) const;
    [[nodiscard]] nlohmann::json to_json() const;
};

/// Referential closure and uniqueness over node/fix/geomTransf/element/load/
/// eleLoad commands: every referenced tag must be defined on an earlier line.
/// Also flags coincident nodes and elements sharing both end nodes.
LintReport lint_script(const std::string& script);

/// Counts the model implies for a script emitted from it.
CommandCounts expected_counts(const LoadedModel& model);

}  // namespace frameforge
