#include "frameforge/loads.hpp"

#include "frameforge/error.hpp"
#include "frameforge/numeric.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <regex>
#include <set>
#include <sstream>

namespace frameforge {

namespace {

std::string normalize(std::string_view text) {
    std::string flat;
    for (char c : text) {
        const auto u = static_cast<unsigned char>(c);
        flat.push_back(std::isalnum(u) ? static_cast<char>(std::tolower(u)) : ' ');
    }
    std::istringstream in(flat);
    std::vector<std::string> words;
    for (std::string w; in >> w;) {
        if (w != "the" && w != "a" && w != "an") words.push_back(w);
    }
    static const std::set<std::string> kLeading{"applied", "on", "at", "to", "along", "over", "onto"};
    std::size_t start = 0;
    while (start < words.size() && kLeading.contains(words[start])) ++start;
    std::string out;
    for (std::size_t i = start; i < words.size(); ++i) {
        if (!out.empty()) out.push_back(' ');
        out += words[i];
    }
    return out;
}

int level_number(const std::string& word) {
    static const std::vector<std::string> kOrdinals{"first", "second", "third", "fourth", "fifth",
                                                    "sixth", "seventh", "eighth", "ninth", "tenth"};
    if (!word.empty() && std::all_of(word.begin(), word.end(), [](unsigned char c) { return std::isdigit(c); })) {
        return std::stoi(word);
    }
    if (auto it = std::find(kOrdinals.begin(), kOrdinals.end(), word); it != kOrdinals.end()) {
        return static_cast<int>(it - kOrdinals.begin()) + 1;
    }
    // 1st, 2nd, 3rd, 4th ...
    std::size_t digits = 0;
    while (digits < word.size() && std::isdigit(static_cast<unsigned char>(word[digits]))) ++digits;
    if (digits > 0) {
        const auto suffix = word.substr(digits);
        if (suffix == "st" || suffix == "nd" || suffix == "rd" || suffix == "th") return std::stoi(word.substr(0, digits));
    }
    return -1;
}

struct Vec2 {
    double x;
    double y;
};

Vec2 direction_vector(Direction d) {
    switch (d) {
        case Direction::up: return {0.0, 1.0};
        case Direction::down: return {0.0, -1.0};
        case Direction::left: return {-1.0, 0.0};
        case Direction::right: return {1.0, 0.0};
    }
    return {0.0, -1.0};
}

bool is_node_selector(const LoadSelector& s) {
    return std::holds_alternative<selector::TopNodesLeftmostBay>(s) || std::holds_alternative<selector::NodesAt>(s);
}

[[noreturn]] void unresolvable(const LoadSelector& s, const std::string& why) {
    const auto text = canonical_text(s);
    throw Error(ErrorCode::UnresolvableSelector, "'" + text + "': " + why, {{"selector", text}});
}

[[noreturn]] void empty_selection(const LoadSelector& s) {
    const auto text = canonical_text(s);
    throw Error(ErrorCode::EmptySelection, "'" + text + "' selects nothing", {{"selector", text}});
}

double leftmost_x(const FrameGraph& graph) {
    double x = graph.nodes.empty() ? 0.0 : graph.nodes.front().x;
    for (const auto& n : graph.nodes) x = std::min(x, n.x);
    return x;
}

std::vector<int> select_nodes(const LoadSelector& s, const FrameGraph& graph, const ProblemSpec& spec) {
    std::vector<int> ids;
    if (std::holds_alternative<selector::TopNodesLeftmostBay>(s)) {
        const double x0 = leftmost_x(graph);
        for (const auto& n : graph.nodes) {
            if (near(n.x, x0) && n.y > kCoordTolerance) ids.push_back(n.id);
        }
    } else if (const auto* at = std::get_if<selector::NodesAt>(&s)) {
        if (at->bay < 1 || at->bay > static_cast<int>(spec.bays.size()) || at->story < 1 ||
            at->story > spec.bay(at->bay).story_count) {
            empty_selection(s);
        }
        const double x = spec.line_x(at->side == selector::Side::left ? at->bay - 1 : at->bay);
        const double y = spec.elevation(at->bay, at->story);
        for (const auto& n : graph.nodes) {
            if (near(n.x, x) && near(n.y, y)) ids.push_back(n.id);
        }
    }
    return ids;
}

std::vector<int> select_elements(const LoadSelector& s, const FrameGraph& graph) {
    std::vector<int> ids;
    if (std::holds_alternative<selector::AllGirders>(s)) {
        for (const auto& e : graph.elements) {
            if (e.kind == ElementKind::girder) ids.push_back(e.id);
        }
    } else if (const auto* at = std::get_if<selector::GirdersAtStory>(&s)) {
        std::vector<double> levels;
        for (const auto& e : graph.elements) {
            if (e.kind != ElementKind::girder) continue;
            if (std::none_of(levels.begin(), levels.end(), [&](double y) { return near(y, e.coord_i.y); })) {
                levels.push_back(e.coord_i.y);
            }
        }
        std::sort(levels.begin(), levels.end());
        if (at->level < 1 || at->level > static_cast<int>(levels.size())) {
            empty_selection(s);
        }
        const double y = levels[static_cast<std::size_t>(at->level - 1)];
        for (const auto& e : graph.elements) {
            if (e.kind == ElementKind::girder && near(e.coord_i.y, y)) ids.push_back(e.id);
        }
    } else if (std::holds_alternative<selector::LeftmostColumns>(s)) {
        const double x0 = leftmost_x(graph);
        for (const auto& e : graph.elements) {
            if (e.kind == ElementKind::column && near(e.coord_i.x, x0) && near(e.coord_j.x, x0)) ids.push_back(e.id);
        }
    }
    return ids;
}

}  // namespace

LoadSelector parse_selector(std::string_view text) {
    const std::string t = normalize(text);
    std::smatch m;
    static const std::regex kAllGirders(R"(^(?:(?:all|each|every) )?(?:girders?|beams?)$)");
    static const std::regex kGirderLevel(R"(^(?:(?:all|each|every) )?(?:girders?|beams?) (?:at|of|on|in) (?:story|level|floor) (\w+)$)");
    static const std::regex kLevelGirder(R"(^(?:story|level|floor) (\w+) (?:girders?|beams?)$)");
    static const std::regex kOrdinalGirder(R"(^(\w+) (?:story|level|floor) (?:girders?|beams?)$)");
    static const std::regex kTopNodes(
        R"(^(?:top nodes? (?:of|at) (?:each|every) (?:story|floor|level) (?:at|of|in) leftmost bay|leftmost top nodes? (?:of|at) (?:each|every) (?:story|floor|level))$)");
    static const std::regex kLeftColumns(R"(^(?:(?:all|each|every) )?leftmost columns?$)");
    static const std::regex kNodeAt(R"(^(?:top )?node at bay (\d+) story (\d+) (left|right)$)");
    static const std::regex kSideNode(R"(^(left|right) (?:top )?node (?:of|at) bay (\d+) story (\d+)$)");

    if (std::regex_match(t, kAllGirders)) return selector::AllGirders{};
    if (std::regex_match(t, m, kGirderLevel) || std::regex_match(t, m, kLevelGirder) ||
        std::regex_match(t, m, kOrdinalGirder)) {
        if (const int level = level_number(m[1]); level > 0) return selector::GirdersAtStory{level};
    }
    if (std::regex_match(t, kTopNodes)) return selector::TopNodesLeftmostBay{};
    if (std::regex_match(t, kLeftColumns)) return selector::LeftmostColumns{};
    if (std::regex_match(t, m, kNodeAt)) {
        return selector::NodesAt{std::stoi(m[1]), std::stoi(m[2]),
                                 m[3] == "left" ? selector::Side::left : selector::Side::right};
    }
    if (std::regex_match(t, m, kSideNode)) {
        return selector::NodesAt{std::stoi(m[2]), std::stoi(m[3]),
                                 m[1] == "left" ? selector::Side::left : selector::Side::right};
    }
    return selector::Custom{std::string(text)};
}

std::string canonical_text(const LoadSelector& s) {
    struct Visitor {
        std::string operator()(const selector::AllGirders&) const { return "all girders"; }
        std::string operator()(const selector::GirdersAtStory& g) const {
            return "girders at story " + std::to_string(g.level);
        }
        std::string operator()(const selector::TopNodesLeftmostBay&) const {
            return "top node of each story at the leftmost bay";
        }
        std::string operator()(const selector::LeftmostColumns&) const { return "leftmost columns"; }
        std::string operator()(const selector::NodesAt& n) const {
            return "node at bay " + std::to_string(n.bay) + " story " + std::to_string(n.story) +
                   (n.side == selector::Side::left ? " left" : " right");
        }
        std::string operator()(const selector::Custom& c) const { return c.text; }
    };
    return std::visit(Visitor{}, s);
}

std::vector<LoadAssignment> select_loads(const ProblemSpec& spec) {
    std::vector<LoadAssignment> out;
    for (const auto& load : spec.loads) {
        LoadSelector s = parse_selector(load.location);
        if (std::holds_alternative<selector::Custom>(s)) {
            unresolvable(s, "outside the closed selector grammar; use an agent backend for load assignment");
        }
        out.push_back({load.type, std::move(s), load.direction, load.magnitude});
    }
    return out;
}

ResolvedLoads resolve_assignments(const std::vector<LoadAssignment>& assignments, const FrameGraph& graph,
                                  const ProblemSpec& spec) {
    ResolvedLoads out;
    for (const auto& a : assignments) {
        if (std::holds_alternative<selector::Custom>(a.selector)) {
            unresolvable(a.selector, "outside the closed selector grammar");
        }
        const Vec2 d = direction_vector(a.direction);
        if (a.type == LoadType::point) {
            if (!is_node_selector(a.selector)) {
                unresolvable(a.selector, "point loads need a node selector");
            }
            const auto ids = select_nodes(a.selector, graph, spec);
            if (ids.empty()) empty_selection(a.selector);
            for (int id : ids) {
                out.nodal.push_back({id, a.magnitude * d.x, a.magnitude * d.y, 0.0});
            }
        } else {
            if (is_node_selector(a.selector)) {
                unresolvable(a.selector, "distributed loads need an element selector");
            }
            const auto ids = select_elements(a.selector, graph);
            if (ids.empty()) empty_selection(a.selector);
            for (int id : ids) {
                const auto& e = graph.element(id);
                const double len = e.length();
                // local y = (-sin, cos) of the i -> j axis
                const double transverse = (-(e.coord_j.y - e.coord_i.y) * d.x + (e.coord_j.x - e.coord_i.x) * d.y) / len;
                if (std::abs(transverse) < 0.5) {
                    throw Error(ErrorCode::UnsupportedLoad,
                                "distributed load along the axis of element " + std::to_string(id),
                                {{"element", id}, {"selector", canonical_text(a.selector)}});
                }
                out.member.push_back({id, a.magnitude * transverse});
            }
        }
    }
    return out;
}

LoadedModel compile_model(const ProblemSpec& spec, const FrameGraph& graph, const ResolvedLoads& loads) {
    auto dangling = [](const char* kind, int id) {
        return Error(ErrorCode::DanglingReference, std::string(kind) + " " + std::to_string(id) + " is not in the graph",
                     {{"kind", kind}, {"id", id}});
    };
    for (const auto& e : graph.elements) {
        if (!e.node_i || !e.node_j) {
            throw Error(ErrorCode::DanglingReference, "element " + std::to_string(e.id) + " has no connectivity",
                        {{"kind", "element"}, {"id", e.id}});
        }
        if (!graph.has_node(*e.node_i)) throw dangling("node", *e.node_i);
        if (!graph.has_node(*e.node_j)) throw dangling("node", *e.node_j);
    }
    for (const auto& l : loads.nodal) {
        if (!graph.has_node(l.node)) throw dangling("node", l.node);
    }
    for (const auto& l : loads.member) {
        if (!graph.has_element(l.element)) throw dangling("element", l.element);
    }
    LoadedModel model{graph, spec.material, loads, {}};
    model.provenance = {spec_digest(spec), json_digest(to_json(graph)), json_digest(to_json(loads))};
    return model;
}

nlohmann::json to_json(const std::vector<LoadAssignment>& assignments) {
    nlohmann::json list = nlohmann::json::array();
    for (const auto& a : assignments) {
        list.push_back({{"Type", to_string(a.type)},
                        {"Selector", canonical_text(a.selector)},
                        {"Direction", to_string(a.direction)},
                        {"Magnitude", a.magnitude}});
    }
    return {{"Load_assignments", list}};
}

std::vector<LoadAssignment> assignments_from_json(const nlohmann::json& doc) {
    if (!doc.is_object() || !doc.contains("Load_assignments") || !doc.at("Load_assignments").is_array()) {
        throw Error(ErrorCode::SchemaViolation, "expected Load_assignments array", {{"field", "Load_assignments"}});
    }
    std::vector<LoadAssignment> out;
    for (const auto& a : doc.at("Load_assignments")) {
        if (!a.is_object() || !a.contains("Type") || !a.contains("Selector") || !a.contains("Direction") ||
            !a.contains("Magnitude") || !a.at("Type").is_string() || !a.at("Selector").is_string() ||
            !a.at("Direction").is_string() || !a.at("Magnitude").is_number()) {
            throw Error(ErrorCode::SchemaViolation, "load assignment needs Type, Selector, Direction, Magnitude",
                        {{"field", "Load_assignments"}});
        }
        LoadAssignment la;
        try {
            la.type = parse_load_type(a.at("Type").get<std::string>());
            la.direction = parse_direction(a.at("Direction").get<std::string>());
        } catch (const Error& e) {
            throw Error(ErrorCode::SchemaViolation, e.what(), {{"field", "Load_assignments"}});
        }
        la.selector = parse_selector(a.at("Selector").get<std::string>());
        if (std::holds_alternative<selector::Custom>(la.selector)) {
            throw Error(ErrorCode::SchemaViolation,
                        "selector '" + a.at("Selector").get<std::string>() + "' is outside the closed grammar",
                        {{"field", "Selector"}});
        }
        la.magnitude = a.at("Magnitude").get<double>();
        if (!(la.magnitude > 0.0)) {
            throw Error(ErrorCode::SchemaViolation, "Magnitude must be > 0", {{"field", "Magnitude"}});
        }
        out.push_back(std::move(la));
    }
    return out;
}

nlohmann::json to_json(const ResolvedLoads& loads) {
    nlohmann::json nodal = nlohmann::json::array();
    for (const auto& l : loads.nodal) {
        nodal.push_back({{"node", l.node}, {"Fx", l.fx}, {"Fy", l.fy}, {"Mz", l.mz}});
    }
    nlohmann::json member = nlohmann::json::array();
    for (const auto& l : loads.member) {
        member.push_back({{"element", l.element}, {"type", "beamUniform"}, {"w", l.w}});
    }
    return {{"nodal_loads", nodal}, {"member_loads", member}};
}

ResolvedLoads loads_from_json(const nlohmann::json& doc) {
    ResolvedLoads out;
    try {
        for (const auto& l : doc.at("nodal_loads")) {
            out.nodal.push_back({l.at("node").get<int>(), l.at("Fx").get<double>(), l.at("Fy").get<double>(),
                                 l.value("Mz", 0.0)});
        }
        for (const auto& l : doc.at("member_loads")) {
            out.member.push_back({l.at("element").get<int>(), l.at("w").get<double>()});
        }
    } catch (const nlohmann::json::exception& ex) {
        throw Error(ErrorCode::SchemaViolation, std::string("loads: ") + ex.what(), {{"field", "loads"}});
    }
    return out;
}

nlohmann::json to_json(const LoadedModel& model) {
    nlohmann::json doc = to_json(model.graph);
    const auto& m = model.material;
    doc["material"] = {{"E", m.E}, {"A_col", m.A_col}, {"A_gir", m.A_gir}, {"I_col", m.I_col}, {"I_gir", m.I_gir}};
    const auto loads = to_json(model.loads);
    doc["nodal_loads"] = loads.at("nodal_loads");
    doc["member_loads"] = loads.at("member_loads");
    doc["provenance"] = {{"spec_digest", model.provenance.spec_digest},
                         {"graph_digest", model.provenance.graph_digest},
                         {"loads_digest", model.provenance.loads_digest}};
    return doc;
}

LoadedModel model_from_json(const nlohmann::json& doc) {
    LoadedModel model;
    model.graph = graph_from_json(doc);
    try {
        const auto& m = doc.at("material");
        model.material = {m.at("E").get<double>(), m.at("A_col").get<double>(), m.at("A_gir").get<double>(),
                          m.at("I_col").get<double>(), m.at("I_gir").get<double>()};
        if (doc.contains("provenance")) {
            const auto& p = doc.at("provenance");
            model.provenance = {p.value("spec_digest", ""), p.value("graph_digest", ""), p.value("loads_digest", "")};
        }
    } catch (const nlohmann::json::exception& ex) {
        throw Error(ErrorCode::SchemaViolation, std::string("model: ") + ex.what(), {{"field", "material"}});
    }
    model.loads = loads_from_json(doc);
    for (const auto& l : model.loads.nodal) {
        if (!model.graph.has_node(l.node)) {
            throw Error(ErrorCode::DanglingReference, "nodal load on unknown node " + std::to_string(l.node),
                        {{"kind", "node"}, {"id", l.node}});
        }
    }
    for (const auto& l : model.loads.member) {
        if (!model.graph.has_element(l.element)) {
            throw Error(ErrorCode::DanglingReference, "member load on unknown element " + std::to_string(l.element),
                        {{"kind", "element"}, {"id", l.element}});
        }
    }
    return model;
}

std::string model_digest(const LoadedModel& model) { return json_digest(to_json(model)); }

}  // namespace frameforge
