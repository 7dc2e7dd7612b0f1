#include "pairorbit/svg.hpp"
#include "pairorbit/errors.hpp"
#include "pairorbit/io.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace pairorbit {

namespace {

constexpr int view_w = 720;
constexpr int view_h = 720;
constexpr double margin = 48.0;

struct Mapper {
    double xmin, xmax, ymin, ymax;

    double px(double x) const {
        return margin + (x - xmin) / (xmax - xmin) * (view_w - 2 * margin);
    }
    double py(double y) const {
        // SVG y grows downward
        return view_h - margin - (y - ymin) / (ymax - ymin) * (view_h - 2 * margin);
    }
};

std::string svg_open() {
    return "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + std::to_string(view_w) +
           "\" height=\"" + std::to_string(view_h) + "\" viewBox=\"0 0 " +
           std::to_string(view_w) + " " + std::to_string(view_h) +
           "\">\n<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
}

std::string polyline(const std::vector<std::pair<double, double>>& pts, const Mapper& m,
                     const std::string& style) {
    std::string out = "<polyline fill=\"none\" " + style + " points=\"";
    for (size_t i = 0; i < pts.size(); ++i) {
        if (i)
            out += ' ';
        out += fmt_svg(m.px(pts[i].first)) + ',' + fmt_svg(m.py(pts[i].second));
    }
    out += "\"/>\n";
    return out;
}

std::string dot(double x, double y, const Mapper& m, double r, const std::string& fill) {
    return "<circle cx=\"" + fmt_svg(m.px(x)) + "\" cy=\"" + fmt_svg(m.py(y)) +
           "\" r=\"" + fmt_svg(r) + "\" fill=\"" + fill + "\"/>\n";
}

void grow(double& lo, double& hi, double v) {
    lo = std::min(lo, v);
    hi = std::max(hi, v);
}

Mapper square_mapper(double xmin, double xmax, double ymin, double ymax) {
    // equal scale on both axes, padded 8%
    double cx = (xmin + xmax) / 2.0, cy = (ymin + ymax) / 2.0;
    double half = std::max({xmax - xmin, ymax - ymin, 1e-6}) / 2.0 * 1.08;
    return Mapper{cx - half, cx + half, cy - half, cy + half};
}

// caustic arcs parametrized by the free elliptic coordinate, as point lists
std::vector<std::vector<std::pair<double, double>>> caustic_arcs(
    const std::vector<CausticCurve>& curves, const AllowedIntervals& ai,
    const PhysConfig& cfg) {
    double u_max = 1.5;
    for (const auto& iv : ai.u_intervals)
        u_max = std::max(u_max, iv.hi);

    std::vector<std::vector<std::pair<double, double>>> arcs;
    const int nseg = 256;
    for (const auto& c : curves) {
        std::vector<std::pair<double, double>> pts;
        if (c.kind == CausticCurve::Kind::ellipse) {
            const double uc = c.parameter;
            for (int i = 0; i <= 2 * nseg; ++i) {
                // v sweeps -1 -> 1 on the upper half, back on the lower
                const bool upper = i <= nseg;
                const double v = upper ? -1.0 + 2.0 * i / nseg : 3.0 - 2.0 * i / nseg;
                const QPoint q = elliptic_to_q({uc, v, upper ? 1 : -1}, cfg);
                pts.emplace_back(q.q1, q.q2);
            }
        } else {
            const double vc = c.parameter;
            for (int i = 0; i <= 2 * nseg; ++i) {
                const bool lower = i <= nseg;
                const double u =
                    lower ? u_max - (u_max - 1.0) * i / nseg
                          : 1.0 + (u_max - 1.0) * (i - nseg) / nseg;
                const QPoint q = elliptic_to_q({u, vc, lower ? -1 : 1}, cfg);
                pts.emplace_back(q.q1, q.q2);
            }
        }
        arcs.push_back(std::move(pts));
    }
    return arcs;
}

bool inside_allowed(const QPoint& q, const AllowedIntervals& ai, const PhysConfig& cfg) {
    const EllipticPoint e = q_to_elliptic(q, cfg);
    const auto inside = [](double z, const std::vector<Interval>& ivs) {
        for (const auto& iv : ivs)
            if (z >= iv.lo - 1e-9 && z <= iv.hi + 1e-9)
                return true;
        return false;
    };
    return inside(e.u, ai.u_intervals) && inside(e.v, ai.v_intervals);
}

// gray shading of the allowed zone: row-run rectangles on a raster
std::string shade_region(const AllowedIntervals& ai, const PhysConfig& cfg,
                         const Mapper& m) {
    constexpr int cells = 240;
    std::string out = "<g fill=\"#d0d0d0\">\n";
    const double dx = (m.xmax - m.xmin) / cells;
    const double dy = (m.ymax - m.ymin) / cells;
    for (int iy = 0; iy < cells; ++iy) {
        const double y = m.ymin + (iy + 0.5) * dy;
        int run = -1;
        for (int ix = 0; ix <= cells; ++ix) {
            const bool in = ix < cells &&
                            inside_allowed({m.xmin + (ix + 0.5) * dx, y}, ai, cfg);
            if (in && run < 0)
                run = ix;
            if (!in && run >= 0) {
                const double x0 = m.xmin + run * dx;
                const double x1 = m.xmin + ix * dx;
                out += "<rect x=\"" + fmt_svg(m.px(x0)) + "\" y=\"" +
                       fmt_svg(m.py(y + dy / 2.0)) + "\" width=\"" +
                       fmt_svg(m.px(x1) - m.px(x0)) + "\" height=\"" +
                       fmt_svg(m.py(y - dy / 2.0) - m.py(y + dy / 2.0)) + "\"/>\n";
                run = -1;
            }
        }
    }
    out += "</g>\n";
    return out;
}

} // namespace

std::string render_trajectory_svg(const Trajectory& traj) {
    if (traj.samples.empty())
        throw EmptyPlot("empty trajectory");

    double xmin = 1e300, xmax = -1e300, ymin = 1e300, ymax = -1e300;
    std::vector<std::pair<double, double>> p1, p2, cm;
    p1.reserve(traj.samples.size());
    for (const auto& s : traj.samples) {
        p1.emplace_back(s.state.x1, s.state.y1);
        p2.emplace_back(s.state.x2, s.state.y2);
        cm.emplace_back((s.state.x1 + s.state.x2) / 2.0, (s.state.y1 + s.state.y2) / 2.0);
        grow(xmin, xmax, s.state.x1);
        grow(xmin, xmax, s.state.x2);
        grow(ymin, ymax, s.state.y1);
        grow(ymin, ymax, s.state.y2);
    }
    const Mapper m = square_mapper(xmin, xmax, ymin, ymax);

    std::string out = svg_open();
    out += polyline(p1, m, "stroke=\"#1f6fd0\" stroke-width=\"1.2\"");
    out += polyline(p2, m, "stroke=\"#f08c00\" stroke-width=\"1.2\"");
    out += polyline(cm, m, "stroke=\"#d02020\" stroke-width=\"1.0\" stroke-dasharray=\"6,4\"");
    out += dot(p1.front().first, p1.front().second, m, 4.0, "#1f6fd0");
    out += dot(p2.front().first, p2.front().second, m, 4.0, "#f08c00");
    out += dot(p1.back().first, p1.back().second, m, 3.0, "#10407a");
    out += dot(p2.back().first, p2.back().second, m, 3.0, "#8a5200");
    out += "</svg>\n";
    return out;
}

std::string render_relative_svg(const Trajectory& traj, const MotionConstants& mc,
                                const PhysConfig& cfg) {
    if (traj.samples.empty())
        throw EmptyPlot("empty trajectory");

    double xmin = 1e300, xmax = -1e300, ymin = 1e300, ymax = -1e300;
    std::vector<std::pair<double, double>> qs;
    qs.reserve(traj.samples.size());
    for (const auto& s : traj.samples) {
        qs.emplace_back(s.q.q1, s.q.q2);
        grow(xmin, xmax, s.q.q1);
        grow(ymin, ymax, s.q.q2);
    }
    grow(xmin, xmax, -cfg.a);
    grow(xmin, xmax, cfg.a);
    grow(ymin, ymax, 0.0);
    const Mapper m = square_mapper(xmin, xmax, ymin, ymax);

    std::string out = svg_open();
    const AllowedIntervals ai = allowed_intervals(mc, cfg);
    if (!ai.u_intervals.empty() && !ai.v_intervals.empty())
        for (const auto& arc : caustic_arcs(caustics(mc, cfg), ai, cfg))
            out += polyline(arc, m, "stroke=\"black\" stroke-width=\"1.0\"");
    out += polyline(qs, m, "stroke=\"#1f6fd0\" stroke-width=\"1.0\"");
    out += dot(-cfg.a, 0.0, m, 4.0, "#d02020");
    out += "</svg>\n";
    return out;
}

std::string render_region_svg(const MotionConstants& mc, const PhysConfig& cfg) {
    const AllowedIntervals ai = allowed_intervals(mc, cfg);
    if (ai.u_intervals.empty() || ai.v_intervals.empty())
        throw ForbiddenRegion("no allowed region to draw");
    const std::vector<CausticCurve> curves = caustics(mc, cfg);

    double u_max = 1.5;
    for (const auto& iv : ai.u_intervals)
        u_max = std::max(u_max, iv.hi);
    const double hw = 1.1 * cfg.a * u_max;
    const double hh = 1.1 * cfg.a * std::max(std::sqrt(u_max * u_max - 1.0), 0.8);
    const Mapper m = square_mapper(-hw, hw, -hh, hh);

    std::string out = svg_open();
    out += shade_region(ai, cfg, m);
    for (const auto& arc : caustic_arcs(curves, ai, cfg))
        out += polyline(arc, m, "stroke=\"black\" stroke-width=\"1.2\"");
    // oscillator center marker
    out += "<path d=\"M " + fmt_svg(m.px(0.0) - 5) + " " + fmt_svg(m.py(0.0)) + " h 10 M " +
           fmt_svg(m.px(0.0)) + " " + fmt_svg(m.py(0.0) - 5) + " v 10\" stroke=\"black\" "
           "stroke-width=\"1\"/>\n";
    out += dot(-cfg.a, 0.0, m, 4.5, "#d02020");
    out += "</svg>\n";
    return out;
}

std::string render_diagram_svg(const DiagramScan& scan) {
    if (scan.cell_labels.empty())
        throw EmptyPlot("empty diagram scan");

    // diagram plane: lambda_a horizontal, h_a vertical
    const Mapper m{scan.lambda_grid.start, scan.lambda_grid.stop,
                   scan.h_grid.start, scan.h_grid.stop};

    auto fill_of = [](const std::vector<OrbitLabel>& ls) -> const char* {
        if (ls.empty())
            return "#ffffff";
        switch (ls.front()) {
            case OrbitLabel::ts1: return "#ffe0b2";
            case OrbitLabel::ts2: return "#ffcc80";
            case OrbitLabel::ts3: return "#ffb74d";
            case OrbitLabel::tp1: return "#c5e1a5";
            case OrbitLabel::tp2: return "#aed581";
            case OrbitLabel::tm1: return "#b3e5fc";
            case OrbitLabel::tm2: return "#81d4fa";
            case OrbitLabel::forbidden: return "#b0b0b0";
            case OrbitLabel::boundary: return "#606060";
        }
        return "#ffffff";
    };

    std::string out = svg_open();
    const double cw = (m.px(m.xmax) - m.px(m.xmin)) / scan.lambda_grid.count;
    const double ch = (m.py(m.ymin) - m.py(m.ymax)) / scan.h_grid.count;
    out += "<g stroke=\"none\">\n";
    for (int ih = 0; ih < scan.h_grid.count; ++ih) {
        // merge horizontal runs of equal fill into single rects
        int run = 0;
        const char* run_fill = fill_of(scan.at(ih, 0));
        for (int il = 1; il <= scan.lambda_grid.count; ++il) {
            const char* f = il < scan.lambda_grid.count ? fill_of(scan.at(ih, il)) : nullptr;
            if (f == nullptr || std::string(f) != run_fill) {
                out += "<rect x=\"" + fmt_svg(m.px(m.xmin) + run * cw) + "\" y=\"" +
                       fmt_svg(m.py(m.ymin) - (ih + 1) * ch) + "\" width=\"" +
                       fmt_svg((il - run) * cw) + "\" height=\"" + fmt_svg(ch) +
                       "\" fill=\"" + run_fill + "\"/>\n";
                run = il;
                run_fill = f ? f : "";
            }
        }
    }
    out += "</g>\n";

    // L1 (red) and L2 (blue): lambda_a = h_a +- alpha_a
    std::vector<std::pair<double, double>> l1, l2;
    for (int ih = 0; ih < scan.h_grid.count; ++ih) {
        const double ha = scan.h_grid.at(ih);
        l1.emplace_back(ha + scan.alpha_a, ha);
        l2.emplace_back(ha - scan.alpha_a, ha);
    }
    out += polyline(l1, m, "stroke=\"#d02020\" stroke-width=\"1.5\"");
    out += polyline(l2, m, "stroke=\"#1f6fd0\" stroke-width=\"1.5\"");
    for (const auto& [ha, la] : scan.delta_zero)
        out += dot(la, ha, m, 1.5, "#208020");
    out += "</svg>\n";
    return out;
}

} // namespace pairorbit
