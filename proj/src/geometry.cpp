#include "frameforge/geometry.hpp"

#include "frameforge/error.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <set>

namespace frameforge {

namespace {

bool base_support_location(const std::string& location) {
    std::string t;
    for (char c : location) t.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
    return t.find("base") != std::string::npos || t.find("ground") != std::string::npos ||
           t.find("bottom") != std::string::npos;
}

nlohmann::json point_json(const Point& p) { return nlohmann::json::array({p.x, p.y}); }

Point point_from_json(const nlohmann::json& v, const std::string& field) {
    // Tolerates the doubly nested [[x, y]] form that appears in hand-written
    // element listings.
    const nlohmann::json* p = &v;
    if (p->is_array() && p->size() == 1 && (*p)[0].is_array()) {
        p = &(*p)[0];
    }
    if (!p->is_array() || p->size() != 2 || !(*p)[0].is_number() || !(*p)[1].is_number()) {
        throw Error(ErrorCode::SchemaViolation, field + " must be [x, y]", {{"field", field}});
    }
    return {(*p)[0].get<double>(), (*p)[1].get<double>()};
}

ElementKind kind_from_geometry(const Point& i, const Point& j, const std::string& description) {
    if (near(i.y, j.y) && !near(i.x, j.x)) return ElementKind::girder;
    if (near(i.x, j.x)) return ElementKind::column;
    std::string d;
    for (char c : description) d.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
    return (d.find("girder") != std::string::npos || d.find("beam") != std::string::npos) ? ElementKind::girder
                                                                                           : ElementKind::column;
}

ConstructionStep step_header_from_json(const nlohmann::json& s) {
    for (const char* key : {"Step_number", "Bay_number", "Story_number", "Step_type"}) {
        if (!s.contains(key)) {
            throw Error(ErrorCode::SchemaViolation, std::string("construction step missing ") + key, {{"field", key}});
        }
    }
    for (const char* key : {"Step_number", "Bay_number", "Story_number"}) {
        if (!s.at(key).is_number_integer()) {
            throw Error(ErrorCode::SchemaViolation, std::string(key) + " must be an integer", {{"field", key}});
        }
    }
    return {s.at("Step_number").get<int>(), s.at("Bay_number").get<int>(), s.at("Story_number").get<int>(),
            parse_step_type(s.at("Step_type"))};
}

nlohmann::json step_header_json(const ConstructionStep& s) {
    return {{"Step_number", s.step_number},
            {"Bay_number", s.bay_number},
            {"Story_number", s.story_number},
            {"Step_type", std::to_string(s.step_type)}};
}

const nlohmann::json& steps_array(const nlohmann::json& doc) {
    if (!doc.is_object() || !doc.contains("Construction_steps") || !doc.at("Construction_steps").is_array()) {
        throw Error(ErrorCode::SchemaViolation, "expected Construction_steps array", {{"field", "Construction_steps"}});
    }
    return doc.at("Construction_steps");
}

struct StepFrame {
    double x_left;
    double x_right;
    double y_bot;
    double y_top;
};

StepFrame step_frame(const ProblemSpec& spec, const ConstructionStep& step) {
    const int bay = step.bay_number;
    return {spec.line_x(bay - 1), spec.line_x(bay), spec.elevation(bay, step.story_number - 1),
            spec.elevation(bay, step.story_number)};
}

}  // namespace

std::string_view to_string(ElementKind kind) noexcept { return kind == ElementKind::column ? "column" : "girder"; }

bool near(const Point& a, const Point& b, double tol) noexcept { return near(a.x, b.x, tol) && near(a.y, b.y, tol); }

double ElementRecord::length() const noexcept { return std::hypot(coord_j.x - coord_i.x, coord_j.y - coord_i.y); }

const NodeRecord& FrameGraph::node(int id) const {
    auto it = std::find_if(nodes.begin(), nodes.end(), [id](const NodeRecord& n) { return n.id == id; });
    if (it == nodes.end()) {
        throw Error(ErrorCode::DanglingReference, "node " + std::to_string(id) + " not in graph",
                    {{"kind", "node"}, {"id", id}});
    }
    return *it;
}

const ElementRecord& FrameGraph::element(int id) const {
    auto it = std::find_if(elements.begin(), elements.end(), [id](const ElementRecord& e) { return e.id == id; });
    if (it == elements.end()) {
        throw Error(ErrorCode::DanglingReference, "element " + std::to_string(id) + " not in graph",
                    {{"kind", "element"}, {"id", id}});
    }
    return *it;
}

bool FrameGraph::has_node(int id) const noexcept {
    return std::any_of(nodes.begin(), nodes.end(), [id](const NodeRecord& n) { return n.id == id; });
}

bool FrameGraph::has_element(int id) const noexcept {
    return std::any_of(elements.begin(), elements.end(), [id](const ElementRecord& e) { return e.id == id; });
}

std::vector<NodeStep> node_rulebook(const ProblemSpec& spec, const ConstructionPlan& plan) {
    if (spec.support.type != SupportType::fixed || !base_support_location(spec.support.location)) {
        throw Error(ErrorCode::UnsupportedSupport,
                    "rulebook handles fixed supports at all base nodes only; got " +
                        std::string(to_string(spec.support.type)) + " at '" + spec.support.location + "'",
                    {{"type", to_string(spec.support.type)}, {"location", spec.support.location}});
    }

    std::vector<NodeStep> out;
    std::vector<NodeRecord> created;
    auto has_node_at = [&created](double x, double y) {
        return std::any_of(created.begin(), created.end(),
                           [&](const NodeRecord& n) { return near(n.x, x) && near(n.y, y); });
    };
    auto mismatch = [](const ConstructionStep& s, const std::string& why) {
        return Error(ErrorCode::SharedElevationMismatch,
                     "bay " + std::to_string(s.bay_number) + " story " + std::to_string(s.story_number) + ": " + why,
                     {{"bay", s.bay_number}, {"story", s.story_number}});
    };

    for (const auto& step : plan.steps) {
        const StepFrame f = step_frame(spec, step);
        NodeStep ns{step, {}};
        auto emit = [&](double x, double y) {
            NodeRecord n{static_cast<int>(created.size()) + 1, x, y, near(y, 0.0)};
            created.push_back(n);
            ns.nodes.push_back(n);
        };
        switch (step.step_type) {
            case 1:
                emit(f.x_left, 0.0);
                emit(f.x_right, 0.0);
                emit(f.x_left, f.y_top);
                emit(f.x_right, f.y_top);
                break;
            case 2:
                emit(f.x_left, f.y_top);
                emit(f.x_right, f.y_top);
                break;
            case 3:
            case 4:
                if (!has_node_at(f.x_left, f.y_top)) {
                    throw mismatch(step, "no node on the shared column line at the girder elevation");
                }
                if (step.step_type == 3) {
                    emit(f.x_right, 0.0);
                }
                emit(f.x_right, f.y_top);
                break;
            case 5: {
                const double left_height = spec.bay(step.bay_number - 1).total_height();
                if (f.y_bot < left_height - kCoordTolerance || !has_node_at(f.x_left, f.y_bot)) {
                    throw mismatch(step, "story does not start at a node on the shared column line");
                }
                emit(f.x_left, f.y_top);
                emit(f.x_right, f.y_top);
                break;
            }
            default:
                throw Error(ErrorCode::IndexOutOfRange, "step type " + std::to_string(step.step_type) + " unknown",
                            {{"step", step.step_number}});
        }
        out.push_back(std::move(ns));
    }
    return out;
}

std::vector<ElementStep> element_rulebook(const ProblemSpec& spec, const ConstructionPlan& plan) {
    std::vector<ElementStep> out;
    int next_id = 1;
    for (const auto& step : plan.steps) {
        const StepFrame f = step_frame(spec, step);
        ElementStep es{step, {}};
        auto column = [&](double x, double y0, double y1) {
            es.elements.push_back({next_id++, ElementKind::column, {x, y0}, {x, y1}, std::nullopt, std::nullopt});
        };
        auto girder = [&] {
            es.elements.push_back(
                {next_id++, ElementKind::girder, {f.x_left, f.y_top}, {f.x_right, f.y_top}, std::nullopt, std::nullopt});
        };
        switch (step.step_type) {
            case 1:
            case 2:
            case 5:
                column(f.x_left, f.y_bot, f.y_top);
                column(f.x_right, f.y_bot, f.y_top);
                girder();
                break;
            case 3:
            case 4:
                column(f.x_right, f.y_bot, f.y_top);
                girder();
                break;
            default:
                throw Error(ErrorCode::IndexOutOfRange, "step type " + std::to_string(step.step_type) + " unknown",
                            {{"step", step.step_number}});
        }
        out.push_back(std::move(es));
    }
    return out;
}

std::vector<NodeRecord> flatten(const std::vector<NodeStep>& steps) {
    std::vector<NodeRecord> out;
    for (const auto& s : steps) out.insert(out.end(), s.nodes.begin(), s.nodes.end());
    return out;
}

std::vector<ElementRecord> flatten(const std::vector<ElementStep>& steps) {
    std::vector<ElementRecord> out;
    for (const auto& s : steps) out.insert(out.end(), s.elements.begin(), s.elements.end());
    return out;
}

std::vector<ElementRecord> map_connectivity(const std::vector<NodeRecord>& nodes, std::vector<ElementRecord> elements) {
    auto resolve = [&nodes](const ElementRecord& e, const Point& p) {
        std::optional<int> found;
        for (const auto& n : nodes) {
            if (near(n.x, p.x) && near(n.y, p.y)) {
                if (found) {
                    throw Error(ErrorCode::AmbiguousMatch,
                                "element " + std::to_string(e.id) + " endpoint matches several nodes",
                                {{"element", e.id}, {"coordinate", point_json(p)}});
                }
                found = n.id;
            }
        }
        if (!found) {
            throw Error(ErrorCode::UnmatchedEndpoint,
                        "element " + std::to_string(e.id) + " endpoint (" + std::to_string(p.x) + ", " +
                            std::to_string(p.y) + ") has no node",
                        {{"element", e.id}, {"coordinate", point_json(p)}});
        }
        return *found;
    };
    for (auto& e : elements) {
        e.node_i = resolve(e, e.coord_i);
        e.node_j = resolve(e, e.coord_j);
    }
    return elements;
}

CheckpointReport check_geometry(const std::vector<NodeRecord>& nodes, const std::vector<ElementRecord>& elements) {
    CheckpointReport report;

    std::set<int> ids;
    for (const auto& n : nodes) {
        if (!ids.insert(n.id).second) {
            report.fail("DuplicateNodeId", "node id " + std::to_string(n.id) + " used twice");
        }
    }
    for (std::size_t a = 0; a < nodes.size(); ++a) {
        for (std::size_t b = a + 1; b < nodes.size(); ++b) {
            if (near(nodes[a].x, nodes[b].x) && near(nodes[a].y, nodes[b].y)) {
                report.fail("DuplicateNode", "nodes " + std::to_string(nodes[a].id) + " and " +
                                                 std::to_string(nodes[b].id) + " share a location");
            }
        }
    }

    ids.clear();
    for (const auto& e : elements) {
        if (!ids.insert(e.id).second) {
            report.fail("DuplicateElementId", "element id " + std::to_string(e.id) + " used twice");
        }
        if (near(e.coord_i, e.coord_j)) {
            report.fail("DegenerateElement", "element " + std::to_string(e.id) + " has coincident ends");
        } else if (!near(e.coord_i.x, e.coord_j.x) && !near(e.coord_i.y, e.coord_j.y)) {
            report.fail("NonOrthogonalElement", "element " + std::to_string(e.id) + " is neither vertical nor horizontal");
        }
    }

    auto same_pair = [](const ElementRecord& a, const ElementRecord& b) {
        if (a.node_i && a.node_j && b.node_i && b.node_j) {
            return (*a.node_i == *b.node_i && *a.node_j == *b.node_j) ||
                   (*a.node_i == *b.node_j && *a.node_j == *b.node_i);
        }
        return (near(a.coord_i, b.coord_i) && near(a.coord_j, b.coord_j)) ||
               (near(a.coord_i, b.coord_j) && near(a.coord_j, b.coord_i));
    };
    for (std::size_t a = 0; a < elements.size(); ++a) {
        for (std::size_t b = a + 1; b < elements.size(); ++b) {
            if (same_pair(elements[a], elements[b])) {
                report.fail("DuplicateElement", "elements " + std::to_string(elements[a].id) + " and " +
                                                    std::to_string(elements[b].id) + " connect the same nodes");
            }
        }
    }

    std::vector<bool> referenced(nodes.size(), false);
    for (const auto& e : elements) {
        for (auto [end, resolved] : {std::pair{e.coord_i, e.node_i}, {e.coord_j, e.node_j}}) {
            bool matched = false;
            for (std::size_t k = 0; k < nodes.size(); ++k) {
                const bool hit = resolved ? nodes[k].id == *resolved : near(nodes[k].x, end.x) && near(nodes[k].y, end.y);
                if (hit) {
                    referenced[k] = true;
                    matched = true;
                }
            }
            if (!matched) {
                report.fail("UnmatchedEndpoint", "element " + std::to_string(e.id) + " endpoint (" +
                                                     format_number(end.x) + ", " + format_number(end.y) +
                                                     ") has no matching node");
            }
        }
    }
    for (std::size_t k = 0; k < nodes.size(); ++k) {
        if (!referenced[k]) {
            report.fail("OrphanNode", "node " + std::to_string(nodes[k].id) + " is not used by any element");
        }
    }
    return report;
}

nlohmann::json to_json(const std::vector<NodeStep>& steps) {
    nlohmann::json out = nlohmann::json::array();
    for (const auto& s : steps) {
        nlohmann::json entry = step_header_json(s.step);
        nlohmann::json nodes = nlohmann::json::array();
        nlohmann::json bcs = nlohmann::json::array();
        for (const auto& n : s.nodes) {
            nodes.push_back({{"ID", n.id}, {"x", n.x}, {"y", n.y}, {"Description", n.fixed ? "base node" : "floor node"}});
            if (n.fixed) {
                bcs.push_back({{"Node_ID", n.id}, {"Constraints", "fixed"}});
            }
        }
        entry["Nodes"] = std::move(nodes);
        entry["Boundary_conditions"] = std::move(bcs);
        out.push_back(std::move(entry));
    }
    return {{"Construction_steps", out}};
}

std::vector<NodeStep> node_steps_from_json(const nlohmann::json& doc) {
    std::vector<NodeStep> out;
    for (const auto& s : steps_array(doc)) {
        NodeStep ns{step_header_from_json(s), {}};
        if (!s.contains("Nodes") || !s.at("Nodes").is_array()) {
            throw Error(ErrorCode::SchemaViolation, "construction step missing Nodes array", {{"field", "Nodes"}});
        }
        for (const auto& n : s.at("Nodes")) {
            if (!n.is_object() || !n.contains("ID") || !n.at("ID").is_number_integer() || !n.contains("x") ||
                !n.at("x").is_number() || !n.contains("y") || !n.at("y").is_number()) {
                throw Error(ErrorCode::SchemaViolation, "node entries need integer ID and numeric x, y",
                            {{"field", "Nodes"}});
            }
            ns.nodes.push_back({n.at("ID").get<int>(), n.at("x").get<double>(), n.at("y").get<double>(), false});
        }
        if (s.contains("Boundary_conditions")) {
            const auto& bcs = s.at("Boundary_conditions");
            if (!bcs.is_array()) {
                throw Error(ErrorCode::SchemaViolation, "Boundary_conditions must be an array",
                            {{"field", "Boundary_conditions"}});
            }
            for (const auto& bc : bcs) {
                if (!bc.is_object() || !bc.contains("Node_ID") || !bc.at("Node_ID").is_number_integer()) {
                    throw Error(ErrorCode::SchemaViolation, "boundary condition needs integer Node_ID",
                                {{"field", "Boundary_conditions"}});
                }
                const int id = bc.at("Node_ID").get<int>();
                for (auto& n : ns.nodes) {
                    if (n.id == id) n.fixed = true;
                }
            }
        }
        out.push_back(std::move(ns));
    }
    return out;
}

nlohmann::json to_json(const std::vector<ElementStep>& steps) {
    nlohmann::json out = nlohmann::json::array();
    for (const auto& s : steps) {
        nlohmann::json entry = step_header_json(s.step);
        nlohmann::json elements = nlohmann::json::array();
        for (const auto& e : s.elements) {
            elements.push_back({{"ID", e.id},
                                {"Coord_i", point_json(e.coord_i)},
                                {"Coord_j", point_json(e.coord_j)},
                                {"Description", to_string(e.kind)}});
        }
        entry["Elements"] = std::move(elements);
        out.push_back(std::move(entry));
    }
    return {{"Construction_steps", out}};
}

std::vector<ElementStep> element_steps_from_json(const nlohmann::json& doc) {
    std::vector<ElementStep> out;
    for (const auto& s : steps_array(doc)) {
        ElementStep es{step_header_from_json(s), {}};
        if (!s.contains("Elements") || !s.at("Elements").is_array()) {
            throw Error(ErrorCode::SchemaViolation, "construction step missing Elements array", {{"field", "Elements"}});
        }
        for (const auto& e : s.at("Elements")) {
            if (!e.is_object() || !e.contains("ID") || !e.at("ID").is_number_integer() || !e.contains("Coord_i") ||
                !e.contains("Coord_j")) {
                throw Error(ErrorCode::SchemaViolation, "element entries need integer ID, Coord_i and Coord_j",
                            {{"field", "Elements"}});
            }
            const Point i = point_from_json(e.at("Coord_i"), "Coord_i");
            const Point j = point_from_json(e.at("Coord_j"), "Coord_j");
            const std::string description =
                e.contains("Description") && e.at("Description").is_string() ? e.at("Description").get<std::string>() : "";
            es.elements.push_back({e.at("ID").get<int>(), kind_from_geometry(i, j, description), i, j, std::nullopt,
                                   std::nullopt});
        }
        out.push_back(std::move(es));
    }
    return out;
}

nlohmann::json to_json(const FrameGraph& graph) {
    nlohmann::json nodes = nlohmann::json::array();
    nlohmann::json supports = nlohmann::json::array();
    for (const auto& n : graph.nodes) {
        nodes.push_back({{"id", n.id}, {"x", n.x}, {"y", n.y}});
        if (n.fixed) {
            supports.push_back({{"node", n.id}, {"constraints", {1, 1, 1}}});
        }
    }
    nlohmann::json elements = nlohmann::json::array();
    for (const auto& e : graph.elements) {
        elements.push_back({{"id", e.id},
                            {"kind", to_string(e.kind)},
                            {"node_i", e.node_i.value_or(0)},
                            {"node_j", e.node_j.value_or(0)}});
    }
    return {{"nodes", nodes}, {"supports", supports}, {"elements", elements}};
}

FrameGraph graph_from_json(const nlohmann::json& doc) {
    auto fail = [](const std::string& what) {
        throw Error(ErrorCode::SchemaViolation, "model graph: " + what, {{"field", what}});
    };
    if (!doc.is_object() || !doc.contains("nodes") || !doc.contains("elements") || !doc.at("nodes").is_array() ||
        !doc.at("elements").is_array()) {
        fail("nodes/elements arrays");
    }
    FrameGraph g;
    try {
        for (const auto& n : doc.at("nodes")) {
            g.nodes.push_back({n.at("id").get<int>(), n.at("x").get<double>(), n.at("y").get<double>(), false});
        }
        if (doc.contains("supports")) {
            for (const auto& s : doc.at("supports")) {
                const int id = s.at("node").get<int>();
                const auto c = s.at("constraints").get<std::vector<int>>();
                if (c != std::vector<int>{1, 1, 1}) {
                    throw Error(ErrorCode::UnsupportedSupport, "only full fixity is supported",
                                {{"node", id}, {"constraints", c}});
                }
                auto it = std::find_if(g.nodes.begin(), g.nodes.end(), [id](const NodeRecord& n) { return n.id == id; });
                if (it == g.nodes.end()) {
                    throw Error(ErrorCode::DanglingReference, "support on unknown node " + std::to_string(id),
                                {{"kind", "node"}, {"id", id}});
                }
                it->fixed = true;
            }
        }
        for (const auto& e : doc.at("elements")) {
            ElementRecord rec;
            rec.id = e.at("id").get<int>();
            rec.kind = e.at("kind").get<std::string>() == "girder" ? ElementKind::girder : ElementKind::column;
            rec.node_i = e.at("node_i").get<int>();
            rec.node_j = e.at("node_j").get<int>();
            g.elements.push_back(rec);
        }
    } catch (const nlohmann::json::exception& ex) {
        fail(ex.what());
    }
    for (auto& e : g.elements) {
        const auto& ni = g.node(*e.node_i);
        const auto& nj = g.node(*e.node_j);
        e.coord_i = {ni.x, ni.y};
        e.coord_j = {nj.x, nj.y};
    }
    return g;
}

}  // namespace frameforge
