#include "frameforge/render.hpp"

#include "frameforge/numeric.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <sstream>

namespace frameforge {

namespace {

struct Xy {
    double x;
    double y;
};

struct Bounds {
    double min_x = std::numeric_limits<double>::infinity();
    double min_y = std::numeric_limits<double>::infinity();
    double max_x = -std::numeric_limits<double>::infinity();
    double max_y = -std::numeric_limits<double>::infinity();

    void add(Xy p, double pad = 0.0) {
        min_x = std::min(min_x, p.x - pad);
        min_y = std::min(min_y, p.y - pad);
        max_x = std::max(max_x, p.x + pad);
        max_y = std::max(max_y, p.y + pad);
    }
};

std::string num(double v) {
    const double r = std::round(v * 1e6) / 1e6;
    return format_number(r == 0.0 ? 0.0 : r);
}

/// Collects primitives in SVG space (y flipped) and tracks their extent so the
/// viewBox always contains every coordinate.
class Canvas {
public:
    Canvas(std::string title, double unit) : title_(std::move(title)), unit_(unit) {}

    static Xy svg(Xy world) { return {world.x, -world.y}; }

    void line(const char* cls, Xy a, Xy b) {
        a = svg(a);
        b = svg(b);
        bounds_.add(a);
        bounds_.add(b);
        body_ << "  <line class=\"" << cls << "\" x1=\"" << num(a.x) << "\" y1=\"" << num(a.y) << "\" x2=\""
              << num(b.x) << "\" y2=\"" << num(b.y) << "\"/>\n";
    }
    void circle(const char* cls, Xy c, double r) {
        c = svg(c);
        bounds_.add(c, r);
        body_ << "  <circle class=\"" << cls << "\" cx=\"" << num(c.x) << "\" cy=\"" << num(c.y) << "\" r=\"" << num(r)
              << "\"/>\n";
    }
    void shape(const char* tag, const char* cls, const std::vector<Xy>& pts) {
        body_ << "  <" << tag << " class=\"" << cls << "\" points=\"";
        for (std::size_t k = 0; k < pts.size(); ++k) {
            const Xy p = svg(pts[k]);
            bounds_.add(p);
            body_ << (k ? " " : "") << num(p.x) << "," << num(p.y);
        }
        body_ << "\"/>\n";
    }

    [[nodiscard]] std::string finish(double width_px) {
        if (!std::isfinite(bounds_.min_x)) bounds_.add({0, 0});
        const double pad = 3.0 * unit_;
        const double x0 = std::floor((bounds_.min_x - pad) * 1e6) / 1e6;
        const double y0 = std::floor((bounds_.min_y - pad) * 1e6) / 1e6;
        const double w = std::ceil((bounds_.max_x + pad - x0) * 1e6) / 1e6;
        const double h = std::ceil((bounds_.max_y + pad - y0) * 1e6) / 1e6;
        std::ostringstream s;
        s << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
          << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"" << num(x0) << " " << num(y0) << " " << num(w)
          << " " << num(h) << "\" width=\"" << num(width_px) << "\" height=\"" << num(width_px * h / w) << "\">\n"
          << "  <title>" << title_ << "</title>\n"
          << "  <style>\n"
          << "    line, polyline, polygon { stroke-width: " << num(unit_ * 0.4) << "; fill: none; }\n"
          << "    .member { stroke: #222; }\n"
          << "    .member-ghost { stroke: #bbb; stroke-dasharray: " << num(unit_) << "; }\n"
          << "    .node { fill: #222; }\n"
          << "    .support { stroke: #06c; fill: #9cf; }\n"
          << "    .load-point, .arrowhead { stroke: #c00; fill: #c00; }\n"
          << "    .load-distributed { stroke: #e60; }\n"
          << "    .deformed { stroke: #c00; }\n"
          << "    .diagram { stroke: #06c; fill: #06c; fill-opacity: 0.25; }\n"
          << "  </style>\n"
          << body_.str() << "</svg>\n";
        return s.str();
    }

private:
    std::string title_;
    double unit_;
    std::ostringstream body_;
    Bounds bounds_;
};

struct Member {
    const ElementRecord* e;
    Xy i;
    Xy j;
    double L;
    double c;
    double s;
};

std::vector<Member> members(const LoadedModel& model) {
    std::vector<Member> out;
    for (const auto& e : model.graph.elements) {
        const auto& ni = model.graph.node(*e.node_i);
        const auto& nj = model.graph.node(*e.node_j);
        const double L = std::hypot(nj.x - ni.x, nj.y - ni.y);
        out.push_back({&e, {ni.x, ni.y}, {nj.x, nj.y}, L, (nj.x - ni.x) / L, (nj.y - ni.y) / L});
    }
    std::sort(out.begin(), out.end(), [](const Member& a, const Member& b) { return a.e->id < b.e->id; });
    return out;
}

void draw_members(Canvas& c, const std::vector<Member>& ms, const char* cls = "member") {
    for (const auto& m : ms) c.line(cls, m.i, m.j);
}

void arrow(Canvas& c, const char* cls, Xy tip, Xy dir, double len, double head) {
    const Xy tail{tip.x - dir.x * len, tip.y - dir.y * len};
    c.line(cls, tail, tip);
    const Xy back{tip.x - dir.x * head, tip.y - dir.y * head};
    const Xy n{-dir.y * head * 0.5, dir.x * head * 0.5};
    c.shape("polygon", "arrowhead", {tip, {back.x + n.x, back.y + n.y}, {back.x - n.x, back.y - n.y}});
}

}  // namespace

double model_diagonal(const LoadedModel& model) {
    Bounds b;
    for (const auto& n : model.graph.nodes) b.add({n.x, n.y});
    if (!std::isfinite(b.min_x)) return 1.0;
    return std::max(1.0, std::hypot(b.max_x - b.min_x, b.max_y - b.min_y));
}

double deformed_scale(const LoadedModel& model, const AnalysisResult& result, double fraction) {
    double max_d = 0.0;
    for (const auto& d : result.displacements) max_d = std::max(max_d, std::hypot(d.ux, d.uy));
    return max_d > 0.0 ? fraction * model_diagonal(model) / max_d : 0.0;
}

std::vector<std::pair<std::string, std::string>> render_svg(const LoadedModel& model, const AnalysisResult* result,
                                                            const RenderOptions& options) {
    const double diag = model_diagonal(model);
    const double unit = diag * 0.005;
    const auto ms = members(model);
    std::vector<std::pair<std::string, std::string>> out;

    {
        Canvas c("geometry", unit);
        draw_members(c, ms);
        std::vector<const NodeRecord*> nodes;
        for (const auto& n : model.graph.nodes) nodes.push_back(&n);
        std::sort(nodes.begin(), nodes.end(), [](auto* a, auto* b) { return a->id < b->id; });
        for (const auto* n : nodes) {
            if (!n->fixed) continue;
            const double h = 3.0 * unit;
            c.shape("polygon", "support", {{n->x, n->y}, {n->x - h, n->y - 1.5 * h}, {n->x + h, n->y - 1.5 * h}});
        }
        for (const auto* n : nodes) c.circle("node", {n->x, n->y}, 1.5 * unit);
        out.emplace_back("geometry", c.finish(options.width_px));
    }

    {
        Canvas c("loads", unit);
        draw_members(c, ms);
        const double len = 0.08 * diag;
        const double head = 2.5 * unit;
        for (const auto& l : model.loads.nodal) {
            const auto& n = model.graph.node(l.node);
            const double f = std::hypot(l.fx, l.fy);
            if (f == 0.0) continue;
            arrow(c, "load-point", {n.x, n.y}, {l.fx / f, l.fy / f}, len, head);
        }
        for (const auto& l : model.loads.member) {
            auto it = std::find_if(ms.begin(), ms.end(), [&](const Member& m) { return m.e->id == l.element; });
            if (it == ms.end() || l.w == 0.0) continue;
            const Member& m = *it;
            const double sign = l.w > 0 ? 1.0 : -1.0;
            const Xy dir{-m.s * sign, m.c * sign};  // load direction (local y times sign of w)
            const double off = 0.04 * diag;
            const Xy a{m.i.x - dir.x * off, m.i.y - dir.y * off};
            const Xy b{m.j.x - dir.x * off, m.j.y - dir.y * off};
            c.line("load-distributed", a, b);
            const int ticks = std::max(2, static_cast<int>(std::round(m.L / (0.03 * diag))) + 1);
            for (int k = 0; k < ticks; ++k) {
                const double t = static_cast<double>(k) / (ticks - 1);
                const Xy p{m.i.x + (m.j.x - m.i.x) * t, m.i.y + (m.j.y - m.i.y) * t};
                c.line("load-distributed", {p.x - dir.x * off, p.y - dir.y * off}, p);
            }
        }
        out.emplace_back("loads", c.finish(options.width_px));
    }

    if (result == nullptr) return out;

    std::map<int, NodeDisplacement> disp;
    for (const auto& d : result->displacements) disp[d.node] = d;

    {
        Canvas c("deformed", unit);
        draw_members(c, ms, "member-ghost");
        const double scale = deformed_scale(model, *result, options.deformed_fraction);
        const int npts = std::max(2, options.deformed_points);
        for (const auto& m : ms) {
            const auto& di = disp.at(*m.e->node_i);
            const auto& dj = disp.at(*m.e->node_j);
            const double u1 = m.c * di.ux + m.s * di.uy;
            const double v1 = -m.s * di.ux + m.c * di.uy;
            const double u2 = m.c * dj.ux + m.s * dj.uy;
            const double v2 = -m.s * dj.ux + m.c * dj.uy;
            std::vector<Xy> pts;
            for (int k = 0; k < npts; ++k) {
                const double t = static_cast<double>(k) / (npts - 1);
                const double u = (1 - t) * u1 + t * u2;
                const double v = (1 - 3 * t * t + 2 * t * t * t) * v1 + (t - 2 * t * t + t * t * t) * m.L * di.rz +
                                 (3 * t * t - 2 * t * t * t) * v2 + (-t * t + t * t * t) * m.L * dj.rz;
                const Xy base{m.i.x + (m.j.x - m.i.x) * t, m.i.y + (m.j.y - m.i.y) * t};
                pts.push_back({base.x + scale * (m.c * u - m.s * v), base.y + scale * (m.s * u + m.c * v)});
            }
            c.shape("polyline", "deformed", pts);
        }
        out.emplace_back("deformed", c.finish(options.width_px));
    }

    std::map<int, const MemberDiagram*> diagrams;
    for (const auto& d : result->diagrams) diagrams[d.element] = &d;
    const std::pair<const char*, int> kinds[] = {{"axial", 0}, {"shear", 1}, {"moment", 2}};
    for (const auto& [name, which] : kinds) {
        auto values = [which = which](const MemberDiagram& d) -> const std::vector<double>& {
            return which == 0 ? d.axial : which == 1 ? d.shear : d.moment;
        };
        double vmax = 0.0;
        for (const auto& d : result->diagrams) {
            for (double v : values(d)) vmax = std::max(vmax, std::abs(v));
        }
        const double scale = vmax > 0.0 ? options.diagram_fraction * diag / vmax : 0.0;
        const double sign = which == 2 ? -1.0 : 1.0;
        Canvas c(name, unit);
        draw_members(c, ms);
        for (const auto& m : ms) {
            auto it = diagrams.find(m.e->id);
            if (it == diagrams.end()) continue;
            const auto& d = *it->second;
            const auto& vals = values(d);
            std::vector<Xy> pts{m.i};
            for (std::size_t k = 0; k < d.x.size(); ++k) {
                const double off = sign * scale * vals[k];
                pts.push_back({m.i.x + m.c * d.x[k] - m.s * off, m.i.y + m.s * d.x[k] + m.c * off});
            }
            pts.push_back(m.j);
            c.shape("polygon", "diagram", pts);
        }
        out.emplace_back(name, c.finish(options.width_px));
    }
    return out;
}

}  // namespace frameforge
