#include "pairorbit/classify.hpp"
#include "pairorbit/errors.hpp"

#include <algorithm>
#include <cmath>
#include <thread>

namespace pairorbit {

const char* label_name(OrbitLabel l) {
    switch (l) {
        case OrbitLabel::ts1: return "t_s1";
        case OrbitLabel::ts2: return "t_s2";
        case OrbitLabel::ts3: return "t_s3";
        case OrbitLabel::tp1: return "t_p1";
        case OrbitLabel::tp2: return "t_p2";
        case OrbitLabel::tm1: return "t_m1";
        case OrbitLabel::tm2: return "t_m2";
        case OrbitLabel::forbidden: return "forbidden";
        case OrbitLabel::boundary: return "boundary";
    }
    return "?";
}

double CausticCurve::residual(const QPoint& q) const {
    const double val = c_q1sq * q.q1 * q.q1 + c_q2sq * q.q2 * q.q2 + c_const;
    if (std::fabs(c_const) > 1e-300)
        return std::fabs(val / c_const);
    return std::fabs(val) / std::max(std::fabs(c_q1sq), std::fabs(c_q2sq));
}

namespace {

constexpr double endpoint_snap = 1e-12;

// Maximal subintervals of [lo_bound, hi_bound] on which `sign * P4 <= 0`,
// built from the sorted real roots falling inside the bounds.
std::vector<Interval> sign_intervals(const QuarticParams& qp, const RootSet& roots,
                                     double lo_bound, double hi_bound, double sign) {
    std::vector<double> bps{lo_bound};
    for (double z : roots.real_roots) {
        if (z > lo_bound + endpoint_snap && z < hi_bound - endpoint_snap)
            bps.push_back(z);
    }
    bps.push_back(hi_bound);

    std::vector<Interval> out;
    for (size_t i = 0; i + 1 < bps.size(); ++i) {
        const double mid = 0.5 * (bps[i] + bps[i + 1]);
        if (sign * p4_eval(mid, qp) <= 0.0) {
            if (!out.empty() && out.back().hi == bps[i])
                out.back().hi = bps[i + 1]; // merge across a double root
            else
                out.push_back(Interval{bps[i], bps[i + 1]});
        }
    }
    return out;
}

bool touches(double endpoint, double value) {
    return std::fabs(endpoint - value) <= endpoint_snap;
}

} // namespace

AllowedIntervals allowed_intervals(const MotionConstants& mc, const PhysConfig& cfg) {
    const QuarticParams qp = QuarticParams::from_constants(mc, cfg);
    const RootSet roots = p4_roots(qp);
    AllowedIntervals ai;

    // u-range: P4 <= 0 so that (1-u^2) P4(u) >= 0. P4 -> +inf, so the last
    // breakpoint is the largest root and no unbounded interval can appear.
    double u_hi = 1.0;
    for (double z : roots.real_roots)
        u_hi = std::max(u_hi, z);
    if (u_hi > 1.0)
        ai.u_intervals = sign_intervals(qp, roots, 1.0, u_hi, 1.0);

    ai.v_intervals = sign_intervals(qp, roots, -1.0, 1.0, -1.0);
    return ai;
}

RegionReport classify_point(const MotionConstants& mc, const PhysConfig& cfg) {
    RegionReport rep;
    const QuarticParams qp = QuarticParams::from_constants(mc, cfg);
    rep.roots = p4_roots(qp);
    rep.intervals = allowed_intervals(mc, cfg);
    boundary_lines(mc, cfg, rep.l1, rep.l2);

    const auto& ui = rep.intervals.u_intervals;
    const auto& vi = rep.intervals.v_intervals;

    const bool u_touch_1 = !ui.empty() && touches(ui.front().lo, 1.0);
    bool v_touch_lo = false, v_touch_hi = false;
    for (const auto& iv : vi) {
        v_touch_lo = v_touch_lo || touches(iv.lo, -1.0);
        v_touch_hi = v_touch_hi || touches(iv.hi, 1.0);
    }
    rep.collision_possible = u_touch_1 && v_touch_lo;

    if (std::fabs(rep.l1) < line_band_tol || std::fabs(rep.l2) < line_band_tol ||
        rep.roots.near_multiple) {
        rep.labels = {OrbitLabel::boundary};
        return rep;
    }
    if (ui.empty() || vi.empty()) {
        rep.labels = {OrbitLabel::forbidden};
        return rep;
    }

    const int nreal = static_cast<int>(rep.roots.real_roots.size());
    if (ui.size() == 1 && u_touch_1) {
        if (vi.size() == 1 && v_touch_lo && !v_touch_hi) {
            rep.labels = {nreal == 2 ? OrbitLabel::ts1 : OrbitLabel::ts2};
            return rep;
        }
        if (vi.size() == 2 && v_touch_lo && !v_touch_hi) {
            rep.labels = {OrbitLabel::ts3, OrbitLabel::tm2};
            return rep;
        }
        if (vi.size() == 1 && !v_touch_lo && !v_touch_hi) {
            rep.labels = {OrbitLabel::tm1};
            return rep;
        }
    } else if (ui.size() == 1 && !u_touch_1) {
        if (vi.size() == 1 && v_touch_lo && v_touch_hi) {
            rep.labels = {nreal == 2 ? OrbitLabel::tp1 : OrbitLabel::tp2};
            return rep;
        }
    }
    // interval structures outside the seven generic patterns only occur at
    // degeneracies that slipped past the tolerance bands
    rep.labels = {OrbitLabel::boundary};
    return rep;
}

std::vector<CausticCurve> caustics(const MotionConstants& mc, const PhysConfig& cfg) {
    const AllowedIntervals ai = allowed_intervals(mc, cfg);
    if (ai.u_intervals.empty() || ai.v_intervals.empty())
        throw ForbiddenRegion("no allowed motion at this parameter point");

    const double a2 = cfg.a * cfg.a;
    std::vector<CausticCurve> out;
    for (const auto& iv : ai.u_intervals) {
        for (double uc : {iv.lo, iv.hi}) {
            if (touches(uc, 1.0))
                continue; // fixed endpoint, no curve
            // q1^2 (uc^2-1) + q2^2 uc^2 - a^2 uc^2 (uc^2-1) = 0
            const double u2 = uc * uc;
            out.push_back(CausticCurve{CausticCurve::Kind::ellipse, uc,
                                       u2 - 1.0, u2, -a2 * u2 * (u2 - 1.0)});
        }
    }
    for (const auto& iv : ai.v_intervals) {
        for (double vc : {iv.lo, iv.hi}) {
            if (touches(vc, -1.0) || touches(vc, 1.0))
                continue;
            // q1^2 (1-vc^2) - q2^2 vc^2 - a^2 vc^2 (1-vc^2) = 0
            const double v2 = vc * vc;
            out.push_back(CausticCurve{CausticCurve::Kind::hyperbola, vc,
                                       1.0 - v2, -v2, -a2 * v2 * (1.0 - v2)});
        }
    }
    return out;
}

DiagramScan scan_diagram(double alpha_a, const GridSpec& h_grid,
                         const GridSpec& lambda_grid, unsigned threads) {
    DiagramScan scan;
    scan.alpha_a = alpha_a;
    scan.h_grid = h_grid;
    scan.lambda_grid = lambda_grid;
    scan.cell_labels.resize(static_cast<size_t>(h_grid.count) * lambda_grid.count);

    const PhysConfig cfg = config_from_scaled(alpha_a, 1.0);

    if (threads == 0)
        threads = std::max(1u, std::thread::hardware_concurrency());
    threads = std::min<unsigned>(threads, static_cast<unsigned>(h_grid.count));

    auto worker = [&](int row_begin, int row_end) {
        for (int ih = row_begin; ih < row_end; ++ih) {
            const double h_a = h_grid.at(ih);
            for (int il = 0; il < lambda_grid.count; ++il) {
                const MotionConstants mc =
                    constants_from_scaled(h_a, lambda_grid.at(il), cfg);
                scan.cell_labels[static_cast<size_t>(ih) * lambda_grid.count + il] =
                    classify_point(mc, cfg).labels;
            }
        }
    };
    if (threads <= 1) {
        worker(0, h_grid.count);
    } else {
        std::vector<std::thread> pool;
        const int chunk = (h_grid.count + static_cast<int>(threads) - 1) / threads;
        for (unsigned t = 0; t < threads; ++t) {
            const int b = static_cast<int>(t) * chunk;
            const int e = std::min(h_grid.count, b + chunk);
            if (b < e)
                pool.emplace_back(worker, b, e);
        }
        for (auto& th : pool)
            th.join();
    }

    // discriminant-zero locus: bracket sign changes along lambda_a at each
    // grid h_a and bisect to 1e-8 (handles the folded detail of the diagram)
    for (int ih = 0; ih < h_grid.count; ++ih) {
        const double h_a = h_grid.at(ih);
        auto disc_at = [&](double la) {
            return discriminant(QuarticParams::from_scaled(alpha_a, h_a, la));
        };
        double prev_l = lambda_grid.at(0);
        double prev_d = disc_at(prev_l);
        for (int il = 1; il < lambda_grid.count; ++il) {
            const double cur_l = lambda_grid.at(il);
            const double cur_d = disc_at(cur_l);
            if ((prev_d < 0.0) != (cur_d < 0.0)) {
                double lo = prev_l, hi = cur_l, flo = prev_d;
                while (hi - lo > 1e-8) {
                    const double mid = 0.5 * (lo + hi);
                    const double fm = disc_at(mid);
                    if ((flo < 0.0) != (fm < 0.0))
                        hi = mid;
                    else {
                        lo = mid;
                        flo = fm;
                    }
                }
                scan.delta_zero.emplace_back(h_a, 0.5 * (lo + hi));
            }
            prev_l = cur_l;
            prev_d = cur_d;
        }
    }
    return scan;
}

} // namespace pairorbit
