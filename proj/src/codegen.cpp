#include "frameforge/codegen.hpp"

#include "frameforge/error.hpp"
#include "frameforge/numeric.hpp"

#include <algorithm>
#include <charconv>
#include <map>
#include <optional>
#include <regex>
#include <set>
#include <sstream>

namespace frameforge {

namespace {

std::string tag(int v) { return std::to_string(v); }

constexpr const char* kHeader =
    "import json\n"
    "import sys\n"
    "\n"
    "from openseespy.opensees import *\n"
    "\n"
    "wipe()\n"
    "model('basic', '-ndm', 2, '-ndf', 3)\n"
    "\n";

constexpr const char* kAnalysis =
    "system('BandGeneral')\n"
    "numberer('RCM')\n"
    "constraints('Plain')\n"
    "integrator('LoadControl', 1.0)\n"
    "algorithm('Linear')\n"
    "analysis('Static')\n"
    "ok = analyze(1)\n"
    "if ok != 0:\n"
    "    raise SystemExit('analysis failed with code %d' % ok)\n"
    "\n";

constexpr const char* kEpilogue =
    "reactions()\n"
    "out = {'displacements': [], 'reactions': [], 'member_end_forces': []}\n"
    "for tag in sorted(getNodeTags()):\n"
    "    ux, uy, rz = nodeDisp(tag)[:3]\n"
    "    out['displacements'].append({'node': tag, 'ux': ux, 'uy': uy, 'rz': rz})\n"
    "for tag in FIXED_NODES:\n"
    "    rx, ry, mz = nodeReaction(tag)[:3]\n"
    "    out['reactions'].append({'node': tag, 'Rx': rx, 'Ry': ry, 'Mz': mz})\n"
    "for tag in sorted(getEleTags()):\n"
    "    f = eleResponse(tag, 'localForce')\n"
    "    out['member_end_forces'].append({'element': tag, 'N_i': f[0], 'V_i': f[1], 'M_i': f[2],\n"
    "                                     'N_j': f[3], 'V_j': f[4], 'M_j': f[5]})\n"
    "with open(sys.argv[1] if len(sys.argv) > 1 else 'result.json', 'w') as fh:\n"
    "    json.dump(out, fh)\n";

std::vector<const NodeRecord*> nodes_by_id(const FrameGraph& g) {
    std::vector<const NodeRecord*> v;
    for (const auto& n : g.nodes) v.push_back(&n);
    std::sort(v.begin(), v.end(), [](auto* a, auto* b) { return a->id < b->id; });
    return v;
}

std::vector<const ElementRecord*> elements_by_id(const FrameGraph& g) {
    std::vector<const ElementRecord*> v;
    for (const auto& e : g.elements) v.push_back(&e);
    std::sort(v.begin(), v.end(), [](auto* a, auto* b) { return a->id < b->id; });
    return v;
}

std::optional<long> parse_int(const std::string& s) {
    long v = 0;
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || p != s.data() + s.size()) return std::nullopt;
    return v;
}

std::optional<double> parse_double(const std::string& s) {
    double v = 0;
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || p != s.data() + s.size()) return std::nullopt;
    return v;
}

std::string strip(std::string s) {
    auto issp = [](unsigned char c) { return std::isspace(c) != 0; };
    while (!s.empty() && issp(s.back())) s.pop_back();
    std::size_t i = 0;
    while (i < s.size() && issp(s[i])) ++i;
    s.erase(0, i);
    if (s.size() >= 2 && (s.front() == '\'' || s.front() == '"') && s.back() == s.front()) {
        s = s.substr(1, s.size() - 2);
    }
    return s;
}

std::vector<std::string> split_args(const std::string& body) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : body) {
        if (c == ',') {
            out.push_back(strip(cur));
            cur.clear();
        } else {
            cur.push_back(c);
        }
    }
    if (!strip(cur).empty() || !out.empty()) out.push_back(strip(cur));
    return out;
}

}  // namespace

GeometryBlocks emit_geometry_code(const LoadedModel& model) {
    const auto& g = model.graph;
    GeometryBlocks b;
    std::ostringstream nodes;
    nodes << "# nodes and supports\n";
    const auto ordered = nodes_by_id(g);
    for (const auto* n : ordered) {
        nodes << "node(" << tag(n->id) << ", " << format_number(n->x) << ", " << format_number(n->y) << ")\n";
    }
    for (const auto* n : ordered) {
        if (n->fixed) nodes << "fix(" << tag(n->id) << ", 1, 1, 1)\n";
    }
    b.nodes = nodes.str();
    b.transformation = "# transformation\ngeomTransf('Linear', " + tag(kTransformTag) + ")\n";
    std::ostringstream els;
    els << "# elements\n";
    for (const auto* e : elements_by_id(g)) {
        els << "element('elasticBeamColumn', " << tag(e->id) << ", " << tag(*e->node_i) << ", " << tag(*e->node_j)
            << ", " << format_number(model.area(*e)) << ", " << format_number(model.material.E) << ", "
            << format_number(model.inertia(*e)) << ", " << tag(kTransformTag) << ")\n";
    }
    b.elements = els.str();
    return b;
}

ScriptArtifact emit_full_script(const LoadedModel& model, const GeometryBlocks& blocks) {
    std::ostringstream s;
    s << kHeader << blocks.nodes << blocks.transformation << blocks.elements << "\n";
    s << "# loads\n";
    s << "timeSeries('Linear', 1)\n";
    s << "pattern('Plain', 1, 1)\n";
    for (const auto& l : model.loads.nodal) {
        s << "load(" << tag(l.node) << ", " << format_number(l.fx) << ", " << format_number(l.fy) << ", "
          << format_number(l.mz) << ")\n";
    }
    for (const auto& l : model.loads.member) {
        s << "eleLoad('-ele', " << tag(l.element) << ", '-type', '-beamUniform', " << format_number(l.w) << ")\n";
    }
    s << "\n# analysis\n" << kAnalysis;
    s << "# results\nFIXED_NODES = [";
    bool first = true;
    for (const auto* n : nodes_by_id(model.graph)) {
        if (!n->fixed) continue;
        s << (first ? "" : ", ") << n->id;
        first = false;
    }
    s << "]\n" << kEpilogue;
    ScriptArtifact a;
    a.geometry_blocks = blocks;
    a.full_script = s.str();
    a.digest = sha256_hex(a.full_script);
    return a;
}

CommandCounts expected_counts(const LoadedModel& model) {
    CommandCounts c;
    c.nodes = static_cast<int>(model.graph.nodes.size());
    c.fixes = static_cast<int>(std::count_if(model.graph.nodes.begin(), model.graph.nodes.end(),
                                             [](const NodeRecord& n) { return n.fixed; }));
    c.transforms = 1;
    c.elements = static_cast<int>(model.graph.elements.size());
    c.loads = static_cast<int>(model.loads.nodal.size());
    c.ele_loads = static_cast<int>(model.loads.member.size());
    return c;
}

bool LintReport::has(const std::string& code) const {
    return std::any_of(issues.begin(), issues.end(), [&](const LintIssue& i) { return i.code == code; });
}

nlohmann::json LintReport::to_json() const {
    nlohmann::json issues_json = nlohmann::json::array();
    for (const auto& i : issues) issues_json.push_back({{"code", i.code}, {"line", i.line}, {"message", i.message}});
    return {{"ok", ok()},
            {"counts",
             {{"node", counts.nodes},
              {"fix", counts.fixes},
              {"geomTransf", counts.transforms},
              {"element", counts.elements},
              {"load", counts.loads},
              {"eleLoad", counts.ele_loads}}},
            {"issues", issues_json}};
}

LintReport lint_script(const std::string& script) {
    static const std::regex command(R"(^\s*(node|fix|geomTransf|element|load|eleLoad)\s*\((.*)\)\s*$)");
    LintReport r;
    std::map<long, std::pair<double, double>> nodes;
    std::set<long> transforms;
    std::map<long, std::pair<long, long>> elements;
    std::set<std::pair<long, long>> element_pairs;
    std::istringstream in(script);
    std::string line;
    int lineno = 0;
    auto issue = [&](const char* code, std::string msg) { r.issues.push_back({code, lineno, std::move(msg)}); };
    auto need_node = [&](long t) {
        if (!nodes.contains(t)) issue("UndefinedNode", "node " + std::to_string(t) + " is not defined");
    };
    while (std::getline(in, line)) {
        ++lineno;
        std::smatch m;
        if (!std::regex_match(line, m, command)) continue;
        const std::string name = m[1];
        const auto args = split_args(m[2]);
        auto int_at = [&](std::size_t k) { return k < args.size() ? parse_int(args[k]) : std::nullopt; };
        auto malformed = [&] { issue("MalformedCommand", name + " has malformed arguments"); };
        if (name == "node") {
            auto t = int_at(0);
            auto x = args.size() > 1 ? parse_double(args[1]) : std::nullopt;
            auto y = args.size() > 2 ? parse_double(args[2]) : std::nullopt;
            if (!t || !x || !y) {
                malformed();
                continue;
            }
            ++r.counts.nodes;
            const double xv = *x;
            const double yv = *y;
            if (nodes.contains(*t)) {
                issue("DuplicateNodeTag", "node tag " + std::to_string(*t) + " defined twice");
                continue;
            }
            for (const auto& [other, p] : nodes) {
                if (near(p.first, xv) && near(p.second, yv)) {
                    issue("DuplicateNode",
                          "nodes " + std::to_string(other) + " and " + std::to_string(*t) + " coincide");
                }
            }
            nodes[*t] = {xv, yv};
        } else if (name == "fix") {
            auto t = int_at(0);
            if (!t) {
                malformed();
                continue;
            }
            ++r.counts.fixes;
            need_node(*t);
        } else if (name == "geomTransf") {
            auto t = int_at(1);
            if (!t) {
                malformed();
                continue;
            }
            ++r.counts.transforms;
            transforms.insert(*t);
        } else if (name == "element") {
            auto t = int_at(1);
            auto i = int_at(2);
            auto j = int_at(3);
            auto tr = args.empty() ? std::nullopt : int_at(args.size() - 1);
            if (!t || !i || !j || !tr || args.size() < 8) {
                malformed();
                continue;
            }
            ++r.counts.elements;
            need_node(*i);
            need_node(*j);
            if (!transforms.contains(*tr)) {
                issue("UndefinedTransform", "transformation " + std::to_string(*tr) + " is not defined");
            }
            if (elements.contains(*t)) {
                issue("DuplicateElementTag", "element tag " + std::to_string(*t) + " defined twice");
                continue;
            }
            const auto key = std::minmax(*i, *j);
            if (!element_pairs.insert(key).second) {
                issue("DuplicateElement", "element " + std::to_string(*t) + " repeats nodes " +
                                              std::to_string(key.first) + "-" + std::to_string(key.second));
            }
            elements[*t] = {*i, *j};
        } else if (name == "load") {
            auto t = int_at(0);
            if (!t) {
                malformed();
                continue;
            }
            ++r.counts.loads;
            need_node(*t);
        } else {  // eleLoad('-ele', t1, t2, ..., '-type', ...)
            if (args.empty() || args[0] != "-ele") {
                malformed();
                continue;
            }
            ++r.counts.ele_loads;
            for (std::size_t k = 1; k < args.size(); ++k) {
                auto t = parse_int(args[k]);
                if (!t) break;
                if (!elements.contains(*t)) {
                    issue("UndefinedElement", "element " + std::to_string(*t) + " is not defined");
                }
            }
        }
    }
    return r;
}

}  // namespace frameforge
