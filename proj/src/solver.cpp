#include "frameforge/solver.hpp"

#include "frameforge/error.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

namespace frameforge {

namespace {

struct DofMap {
    std::map<int, int> index;  // node id -> position in node-id order
    std::vector<int> order;    // node ids ascending

    explicit DofMap(const FrameGraph& graph) {
        for (const auto& n : graph.nodes) order.push_back(n.id);
        std::sort(order.begin(), order.end());
        for (std::size_t k = 0; k < order.size(); ++k) index[order[k]] = static_cast<int>(k);
    }
    [[nodiscard]] int base(int node) const { return 3 * index.at(node); }
    [[nodiscard]] int size() const { return 3 * static_cast<int>(order.size()); }
};

std::vector<const ElementRecord*> elements_by_id(const FrameGraph& graph) {
    std::vector<const ElementRecord*> out;
    for (const auto& e : graph.elements) out.push_back(&e);
    std::sort(out.begin(), out.end(), [](auto* a, auto* b) { return a->id < b->id; });
    return out;
}

struct MemberGeometry {
    double L;
    double c;
    double s;
};

MemberGeometry member_geometry(const FrameGraph& graph, const ElementRecord& e) {
    const auto& ni = graph.node(*e.node_i);
    const auto& nj = graph.node(*e.node_j);
    const double dx = nj.x - ni.x;
    const double dy = nj.y - ni.y;
    const double L = std::hypot(dx, dy);
    if (!(L > 0.0)) {
        throw Error(ErrorCode::SingularSystem, "element " + std::to_string(e.id) + " has zero length",
                    {{"element", e.id}});
    }
    return {L, dx / L, dy / L};
}

std::map<int, double> member_load_totals(const LoadedModel& model) {
    std::map<int, double> q;
    for (const auto& l : model.loads.member) q[l.element] += l.w;
    return q;
}

void require_support_paths(const FrameGraph& graph, const DofMap& dofs) {
    const std::size_t n = dofs.order.size();
    std::vector<int> parent(n);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&parent](int a) {
        while (parent[a] != a) a = parent[a] = parent[parent[a]];
        return a;
    };
    for (const auto& e : graph.elements) {
        parent[find(dofs.index.at(*e.node_i))] = find(dofs.index.at(*e.node_j));
    }
    std::vector<bool> supported(n, false);
    for (const auto& node : graph.nodes) {
        if (node.fixed) supported[find(dofs.index.at(node.id))] = true;
    }
    for (const auto& node : graph.nodes) {
        if (!supported[find(dofs.index.at(node.id))]) {
            throw Error(ErrorCode::SingularSystem,
                        "node " + std::to_string(node.id) + " has no load path to a support", {{"node", node.id}});
        }
    }
}

}  // namespace

const NodeDisplacement& AnalysisResult::displacement(int node) const {
    auto it = std::find_if(displacements.begin(), displacements.end(),
                           [node](const NodeDisplacement& d) { return d.node == node; });
    if (it == displacements.end()) {
        throw Error(ErrorCode::TopologyMismatch, "no displacement for node " + std::to_string(node), {{"node", node}});
    }
    return *it;
}

const MemberEndForces& AnalysisResult::end_forces(int element) const {
    auto it = std::find_if(member_end_forces.begin(), member_end_forces.end(),
                           [element](const MemberEndForces& f) { return f.element == element; });
    if (it == member_end_forces.end()) {
        throw Error(ErrorCode::TopologyMismatch, "no end forces for element " + std::to_string(element),
                    {{"element", element}});
    }
    return *it;
}

Eigen::Matrix<double, 6, 6> local_stiffness(double E, double A, double I, double L) {
    const double ea = E * A / L;
    const double k12 = 12.0 * E * I / (L * L * L);
    const double k6 = 6.0 * E * I / (L * L);
    const double k4 = 4.0 * E * I / L;
    const double k2 = 2.0 * E * I / L;
    Eigen::Matrix<double, 6, 6> k;
    // clang-format off
    k <<  ea,    0,    0,  -ea,    0,    0,
           0,  k12,   k6,    0, -k12,   k6,
           0,   k6,   k4,    0,  -k6,   k2,
         -ea,    0,    0,   ea,    0,    0,
           0, -k12,  -k6,    0,  k12,  -k6,
           0,   k6,   k2,    0,  -k6,   k4;
    // clang-format on
    return k;
}

Eigen::Matrix<double, 6, 6> rotation(double c, double s) {
    Eigen::Matrix<double, 6, 6> t = Eigen::Matrix<double, 6, 6>::Zero();
    for (int b = 0; b < 2; ++b) {
        const int o = 3 * b;
        t(o, o) = c;
        t(o, o + 1) = s;
        t(o + 1, o) = -s;
        t(o + 1, o + 1) = c;
        t(o + 2, o + 2) = 1.0;
    }
    return t;
}

Eigen::Matrix<double, 6, 1> fixed_end_forces(double q, double L) {
    Eigen::Matrix<double, 6, 1> f;
    f << 0.0, -q * L / 2.0, -q * L * L / 12.0, 0.0, -q * L / 2.0, q * L * L / 12.0;
    return f;
}

Eigen::MatrixXd assemble_global_stiffness(const LoadedModel& model) {
    const DofMap dofs(model.graph);
    Eigen::MatrixXd K = Eigen::MatrixXd::Zero(dofs.size(), dofs.size());
    for (const auto* e : elements_by_id(model.graph)) {
        const auto g = member_geometry(model.graph, *e);
        const Eigen::Matrix<double, 6, 6> t = rotation(g.c, g.s);
        const Eigen::Matrix<double, 6, 6> kg =
            t.transpose() * local_stiffness(model.material.E, model.area(*e), model.inertia(*e), g.L) * t;
        const std::array<int, 2> base{dofs.base(*e->node_i), dofs.base(*e->node_j)};
        for (int a = 0; a < 6; ++a) {
            for (int b = 0; b < 6; ++b) {
                K(base[a / 3] + a % 3, base[b / 3] + b % 3) += kg(a, b);
            }
        }
    }
    return K;
}

AnalysisResult solve_static(const LoadedModel& model, int stations) {
    const auto& graph = model.graph;
    const DofMap dofs(graph);
    for (const auto& e : graph.elements) {
        if (!e.node_i || !e.node_j || !dofs.index.contains(*e.node_i) || !dofs.index.contains(*e.node_j)) {
            throw Error(ErrorCode::DanglingReference, "element " + std::to_string(e.id) + " references a missing node",
                        {{"kind", "element"}, {"id", e.id}});
        }
    }
    require_support_paths(graph, dofs);

    const int n = dofs.size();
    const Eigen::MatrixXd K = assemble_global_stiffness(model);
    Eigen::VectorXd F = Eigen::VectorXd::Zero(n);
    for (const auto& l : model.loads.nodal) {
        const int b = dofs.base(l.node);
        F(b) += l.fx;
        F(b + 1) += l.fy;
        F(b + 2) += l.mz;
    }
    const auto q = member_load_totals(model);
    for (const auto* e : elements_by_id(graph)) {
        auto it = q.find(e->id);
        if (it == q.end()) continue;
        const auto g = member_geometry(graph, *e);
        const Eigen::Matrix<double, 6, 1> equiv = -(rotation(g.c, g.s).transpose() * fixed_end_forces(it->second, g.L));
        const std::array<int, 2> base{dofs.base(*e->node_i), dofs.base(*e->node_j)};
        for (int a = 0; a < 6; ++a) F(base[a / 3] + a % 3) += equiv(a);
    }

    std::vector<bool> restrained(static_cast<std::size_t>(n), false);
    for (const auto& node : graph.nodes) {
        if (node.fixed) {
            for (int k = 0; k < 3; ++k) restrained[static_cast<std::size_t>(dofs.base(node.id) + k)] = true;
        }
    }
    std::vector<int> free;
    for (int i = 0; i < n; ++i) {
        if (!restrained[static_cast<std::size_t>(i)]) free.push_back(i);
    }

    Eigen::VectorXd d = Eigen::VectorXd::Zero(n);
    if (!free.empty()) {
        const int m = static_cast<int>(free.size());
        Eigen::MatrixXd Kff(m, m);
        Eigen::VectorXd Ff(m);
        for (int a = 0; a < m; ++a) {
            Ff(a) = F(free[a]);
            for (int b = 0; b < m; ++b) Kff(a, b) = K(free[a], free[b]);
        }
        Eigen::LLT<Eigen::MatrixXd> llt(Kff);
        if (llt.info() != Eigen::Success || llt.rcond() < 1e-14) {
            throw Error(ErrorCode::SingularSystem, "reduced stiffness matrix is not positive definite",
                        {{"free_dofs", m}});
        }
        const Eigen::VectorXd df = llt.solve(Ff);
        for (int a = 0; a < m; ++a) d(free[a]) = df(a);
    }
    if (!d.allFinite()) {
        throw Error(ErrorCode::NumericalFailure, "non-finite displacement");
    }

    AnalysisResult result;
    for (int id : dofs.order) {
        const int b = dofs.base(id);
        result.displacements.push_back({id, d(b), d(b + 1), d(b + 2)});
    }

    // Nodal equilibrium: applied + reaction = sum of global member end forces.
    Eigen::VectorXd nodal_sum = Eigen::VectorXd::Zero(n);
    for (const auto* e : elements_by_id(graph)) {
        const auto g = member_geometry(graph, *e);
        const Eigen::Matrix<double, 6, 6> t = rotation(g.c, g.s);
        const std::array<int, 2> base{dofs.base(*e->node_i), dofs.base(*e->node_j)};
        Eigen::Matrix<double, 6, 1> de;
        for (int a = 0; a < 6; ++a) de(a) = d(base[a / 3] + a % 3);
        Eigen::Matrix<double, 6, 1> f =
            local_stiffness(model.material.E, model.area(*e), model.inertia(*e), g.L) * (t * de);
        if (auto it = q.find(e->id); it != q.end()) f += fixed_end_forces(it->second, g.L);
        MemberEndForces mef{e->id, {}};
        for (int a = 0; a < 6; ++a) mef.local[static_cast<std::size_t>(a)] = f(a);
        result.member_end_forces.push_back(mef);
        const Eigen::Matrix<double, 6, 1> fg = t.transpose() * f;
        for (int a = 0; a < 6; ++a) nodal_sum(base[a / 3] + a % 3) += fg(a);
    }
    std::map<int, std::array<double, 3>> applied;
    for (const auto& l : model.loads.nodal) {
        auto& a = applied[l.node];
        a[0] += l.fx;
        a[1] += l.fy;
        a[2] += l.mz;
    }
    for (int id : dofs.order) {
        if (!graph.node(id).fixed) continue;
        const int b = dofs.base(id);
        const auto a = applied.contains(id) ? applied[id] : std::array<double, 3>{};
        result.reactions.push_back({id, nodal_sum(b) - a[0], nodal_sum(b + 1) - a[1], nodal_sum(b + 2) - a[2]});
    }
    for (const auto& r : result.reactions) {
        if (!std::isfinite(r.rx) || !std::isfinite(r.ry) || !std::isfinite(r.mz)) {
            throw Error(ErrorCode::NumericalFailure, "non-finite reaction", {{"node", r.node}});
        }
    }
    result.diagrams = sample_diagrams(model, result, stations);
    return result;
}

std::vector<MemberDiagram> sample_diagrams(const LoadedModel& model, const AnalysisResult& result, int stations) {
    stations = std::max(stations, 2);
    const auto q = member_load_totals(model);
    std::vector<MemberDiagram> out;
    for (const auto* e : elements_by_id(model.graph)) {
        const auto g = member_geometry(model.graph, *e);
        const auto& f = result.end_forces(e->id).local;
        const double w = q.contains(e->id) ? q.at(e->id) : 0.0;
        MemberDiagram dia{e->id, {}, {}, {}, {}};
        for (int k = 0; k < stations; ++k) {
            const double x = g.L * k / (stations - 1);
            dia.x.push_back(x);
            dia.axial.push_back(-f[0]);
            dia.shear.push_back(-f[1] - w * x);
            dia.moment.push_back(-f[2] + f[1] * x + w * x * x / 2.0);
        }
        out.push_back(std::move(dia));
    }
    return out;
}

double EquilibriumResidual::relative() const noexcept {
    if (force_scale == 0.0) return 0.0;
    return std::max(std::max(std::abs(fx), std::abs(fy)) / force_scale, std::abs(mz) / moment_scale);
}

EquilibriumResidual equilibrium_residual(const LoadedModel& model, const AnalysisResult& result) {
    const auto& graph = model.graph;
    EquilibriumResidual r;
    double min_x = 0.0, max_x = 0.0, min_y = 0.0, max_y = 0.0;
    for (const auto& n : graph.nodes) {
        min_x = std::min(min_x, n.x);
        max_x = std::max(max_x, n.x);
        min_y = std::min(min_y, n.y);
        max_y = std::max(max_y, n.y);
    }
    auto add_force = [&r](double x, double y, double fx, double fy, double m) {
        r.fx += fx;
        r.fy += fy;
        r.mz += x * fy - y * fx + m;
    };
    for (const auto& re : result.reactions) {
        const auto& n = graph.node(re.node);
        add_force(n.x, n.y, re.rx, re.ry, re.mz);
    }
    for (const auto& l : model.loads.nodal) {
        const auto& n = graph.node(l.node);
        add_force(n.x, n.y, l.fx, l.fy, l.mz);
        r.force_scale += std::abs(l.fx) + std::abs(l.fy);
    }
    for (const auto& l : model.loads.member) {
        const auto& e = graph.element(l.element);
        const auto& ni = graph.node(*e.node_i);
        const auto& nj = graph.node(*e.node_j);
        const double L = std::hypot(nj.x - ni.x, nj.y - ni.y);
        const double c = (nj.x - ni.x) / L;
        const double s = (nj.y - ni.y) / L;
        const double total = l.w * L;
        add_force((ni.x + nj.x) / 2.0, (ni.y + nj.y) / 2.0, -s * total, c * total, 0.0);
        r.force_scale += std::abs(total);
    }
    r.moment_scale = r.force_scale * std::max(1.0, std::hypot(max_x - min_x, max_y - min_y));
    return r;
}

nlohmann::json to_json(const AnalysisResult& result) {
    nlohmann::json disp = nlohmann::json::array();
    for (const auto& d : result.displacements) {
        disp.push_back({{"node", d.node}, {"ux", d.ux}, {"uy", d.uy}, {"rz", d.rz}});
    }
    nlohmann::json reac = nlohmann::json::array();
    for (const auto& r : result.reactions) {
        reac.push_back({{"node", r.node}, {"Rx", r.rx}, {"Ry", r.ry}, {"Mz", r.mz}});
    }
    nlohmann::json forces = nlohmann::json::array();
    for (const auto& f : result.member_end_forces) {
        const auto& v = f.local;
        forces.push_back({{"element", f.element},
                          {"N_i", v[0]},
                          {"V_i", v[1]},
                          {"M_i", v[2]},
                          {"N_j", v[3]},
                          {"V_j", v[4]},
                          {"M_j", v[5]}});
    }
    nlohmann::json diagrams = nlohmann::json::array();
    for (const auto& d : result.diagrams) {
        diagrams.push_back(
            {{"element", d.element}, {"x", d.x}, {"axial", d.axial}, {"shear", d.shear}, {"moment", d.moment}});
    }
    return {{"displacements", disp}, {"reactions", reac}, {"member_end_forces", forces}, {"diagrams", diagrams}};
}

AnalysisResult result_from_json(const nlohmann::json& doc) {
    AnalysisResult r;
    try {
        for (const auto& d : doc.at("displacements")) {
            r.displacements.push_back(
                {d.at("node").get<int>(), d.at("ux").get<double>(), d.at("uy").get<double>(), d.at("rz").get<double>()});
        }
        std::sort(r.displacements.begin(), r.displacements.end(),
                  [](const auto& a, const auto& b) { return a.node < b.node; });
        if (doc.contains("reactions")) {
            for (const auto& x : doc.at("reactions")) {
                r.reactions.push_back(
                    {x.at("node").get<int>(), x.at("Rx").get<double>(), x.at("Ry").get<double>(), x.at("Mz").get<double>()});
            }
        }
        if (doc.contains("member_end_forces")) {
            for (const auto& f : doc.at("member_end_forces")) {
                r.member_end_forces.push_back(
                    {f.at("element").get<int>(),
                     {f.at("N_i").get<double>(), f.at("V_i").get<double>(), f.at("M_i").get<double>(),
                      f.at("N_j").get<double>(), f.at("V_j").get<double>(), f.at("M_j").get<double>()}});
            }
        }
        if (doc.contains("diagrams")) {
            for (const auto& d : doc.at("diagrams")) {
                r.diagrams.push_back({d.at("element").get<int>(), d.at("x").get<std::vector<double>>(),
                                      d.at("axial").get<std::vector<double>>(), d.at("shear").get<std::vector<double>>(),
                                      d.at("moment").get<std::vector<double>>()});
            }
        }
    } catch (const nlohmann::json::exception& ex) {
        throw Error(ErrorCode::SchemaViolation, std::string("result: ") + ex.what(), {{"field", "result"}});
    }
    return r;
}

}  // namespace frameforge
