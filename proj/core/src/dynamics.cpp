#include "pairorbit/dynamics.hpp"
#include "pairorbit/errors.hpp"
#include "pairorbit/ode.hpp"
#include "pairorbit/quartic.hpp"

#include <algorithm>
#include <cmath>

namespace pairorbit {

double MonitorRecord::max_drift() const {
    return std::max({std::fabs(drift_H), std::fabs(drift_Lambda), std::fabs(drift_KX),
                     std::fabs(drift_KY), std::fabs(drift_LZ)});
}

std::array<double, 8> rhs_full(const FullState& s, const PhysConfig& cfg) {
    const double dx = s.x1 - s.x2;
    const double dy = s.y1 - s.y2;
    const double r = std::hypot(dx, dy);
    if (r == 0.0)
        throw CoulombSingularity("zero separation in rhs_full");
    const double c = cfg.alpha / (2.0 * r * r * r);
    return {s.vx1,
            s.vy1,
            s.vx2,
            s.vy2,
            -s.vy1 - c * dx,
            s.vx1 - c * dy,
            s.vy2 + c * dx,
            -s.vx2 + c * dy};
}

namespace {

// center-of-mass / relative representation used by the integrator:
// (X, Y, x, y, VX, VY, vx, vy) with x = x2 - x1, X = (x1 + x2)/2
using Split = std::array<double, 8>;

Split to_split(const FullState& s) {
    return {(s.x1 + s.x2) / 2.0, (s.y1 + s.y2) / 2.0, s.x2 - s.x1, s.y2 - s.y1,
            (s.vx1 + s.vx2) / 2.0, (s.vy1 + s.vy2) / 2.0, s.vx2 - s.vx1, s.vy2 - s.vy1};
}

FullState to_particles(const Split& s) {
    return FullState{s[0] - s[2] / 2.0, s[1] - s[3] / 2.0, s[0] + s[2] / 2.0,
                     s[1] + s[3] / 2.0, s[4] - s[6] / 2.0, s[5] - s[7] / 2.0,
                     s[4] + s[6] / 2.0, s[5] + s[7] / 2.0};
}

MonitorRecord monitors_split(const Split& s, const PhysConfig& cfg) {
    MonitorRecord m{};
    const double X = s[0], Y = s[1], x = s[2], y = s[3];
    const double VX = s[4], VY = s[5], vx = s[6], vy = s[7];

    m.KX = 2.0 * VX - y;
    m.KY = 2.0 * VY + x;

    const double x1 = X - x / 2.0, y1 = Y - y / 2.0, vx1 = VX - vx / 2.0, vy1 = VY - vy / 2.0;
    const double x2 = X + x / 2.0, y2 = Y + y / 2.0, vx2 = VX + vx / 2.0, vy2 = VY + vy / 2.0;
    m.LZ = x1 * vy1 - y1 * vx1 - (x1 * x1 + y1 * y1) / 2.0 +
           x2 * vy2 - y2 * vx2 + (x2 * x2 + y2 * y2) / 2.0;

    const QPoint q = rel_to_q(x, y, cfg);
    double qd1, qd2;
    rel_vel_to_qdot(vx, vy, cfg, qd1, qd2);
    cartesian_invariants(q, qd1, qd2, cfg, m.H_rel, m.Lambda_rel);
    return m;
}

void fill_drift(MonitorRecord& m, const MonitorRecord& m0) {
    auto rel = [](double v, double v0) { return (v - v0) / std::max(1.0, std::fabs(v0)); };
    m.drift_H = rel(m.H_rel, m0.H_rel);
    m.drift_Lambda = rel(m.Lambda_rel, m0.Lambda_rel);
    m.drift_KX = rel(m.KX, m0.KX);
    m.drift_KY = rel(m.KY, m0.KY);
    m.drift_LZ = rel(m.LZ, m0.LZ);
}

TrajectorySample make_sample(double t, const Split& s, const PhysConfig& cfg,
                             const MonitorRecord& m0) {
    TrajectorySample smp;
    smp.t = t;
    smp.state = to_particles(s);
    smp.q = rel_to_q(s[2], s[3], cfg);
    smp.monitors = monitors_split(s, cfg);
    fill_drift(smp.monitors, m0);
    return smp;
}

} // namespace

MonitorRecord monitors(const FullState& state, const PhysConfig& cfg) {
    if (state.separation() == 0.0)
        throw CoulombSingularity("zero separation in monitors");
    MonitorRecord m = monitors_split(to_split(state), cfg);
    fill_drift(m, m);
    return m;
}

Trajectory integrate_full(const FullState& ic, const PhysConfig& cfg,
                          double t_start, double t_end, const IntegrationOptions& opt) {
    if (ic.separation() <= opt.collision_radius)
        throw Error("initial separation below the collision radius");

    const double alpha = cfg.alpha;
    auto rhs = [alpha](double, const Split& s, Split& d) {
        const double x = s[2], y = s[3];
        const double r = std::hypot(x, y);
        const double c = alpha / (r * r * r);
        d[0] = s[4];
        d[1] = s[5];
        d[2] = s[6];
        d[3] = s[7];
        d[4] = s[7] / 2.0;
        d[5] = -s[6] / 2.0;
        d[6] = 2.0 * s[5] - c * x;
        d[7] = -2.0 * s[4] - c * y;
    };

    Dop853<8> solver(rhs, opt.tol);
    // error-weight groups: CM position, relative position, CM and relative
    // velocity pairs; the pair magnitudes keep close approaches resolved
    solver.set_groups({0, 0, 1, 1, 2, 2, 3, 3});

    const Split s0 = to_split(ic);
    const MonitorRecord m0 = monitors_split(s0, cfg);

    Trajectory traj;
    const int nsamp = std::max(opt.samples, 2);
    const double dir = t_end >= t_start ? 1.0 : -1.0;
    auto sample_time = [&](int k) {
        if (k == nsamp - 1)
            return t_end;
        return t_start + (t_end - t_start) * static_cast<double>(k) / (nsamp - 1);
    };

    traj.samples.push_back(make_sample(t_start, s0, cfg, m0));
    int next_k = 1;

    auto on_step = [&](const Dop853<8>& sol) {
        while (next_k < nsamp && dir * (sample_time(next_k) - sol.t_curr()) <= 0.0) {
            const double tk = sample_time(next_k);
            traj.samples.push_back(make_sample(tk, sol.interpolate(tk), cfg, m0));
            ++next_k;
        }
        return true;
    };
    const double rc = opt.collision_radius;
    auto event = [rc](double, const Split& s) { return std::hypot(s[2], s[3]) - rc; };

    const OdeStatus st = solver.drive(t_start, s0, t_end, on_step, event);
    switch (st) {
        case OdeStatus::reached_end:
            traj.termination = Termination::time_limit;
            break;
        case OdeStatus::event: {
            // dense samples up to the event, then the event point itself
            while (next_k < nsamp &&
                   dir * (sample_time(next_k) - solver.t_curr()) < 0.0) {
                const double tk = sample_time(next_k);
                if (dir * (tk - solver.t_prev()) > 0.0)
                    traj.samples.push_back(make_sample(tk, solver.interpolate(tk), cfg, m0));
                ++next_k;
            }
            traj.samples.push_back(make_sample(solver.t_curr(), solver.y_curr(), cfg, m0));
            traj.termination = Termination::collision;
            break;
        }
        case OdeStatus::step_underflow:
            traj.samples.push_back(make_sample(solver.t_curr(), solver.y_curr(), cfg, m0));
            traj.termination = Termination::step_failure;
            break;
    }
    traj.t_end = solver.t_curr();
    return traj;
}

namespace {

// separated state: (u, u', v, v', t) in local time zeta
using Sep = std::array<double, 5>;

double p6_guarded(double z, const QuarticParams& qp, const char* what) {
    double f = p6_eval(z, qp);
    if (f < 0.0) {
        const double scale = std::max({1.0, std::fabs(qp.p), std::fabs(qp.q), std::fabs(qp.r)});
        if (f < -1e-10 * scale)
            throw OutsideAllowedRegion(what);
        f = 0.0;
    }
    return f;
}

SeparatedResult drive_separated(double u0, double du0, double v0, double dv0,
                                const QuarticParams& qp, double tol,
                                double zeta_end, int samples,
                                const std::vector<double>* t_targets) {
    auto rhs = [qp](double, const Sep& s, Sep& d) {
        d[0] = s[1];
        d[1] = 0.5 * p6_deriv(s[0], qp);
        d[2] = s[3];
        d[3] = 0.5 * p6_deriv(s[2], qp);
        d[4] = s[0] * s[0] - s[2] * s[2];
    };
    Dop853<5> solver(rhs, tol);
    const Sep s0{u0, du0, v0, dv0, 0.0};

    SeparatedResult res;
    auto push = [&](double zeta, const Sep& s) {
        SeparatedSample smp;
        smp.zeta = zeta;
        smp.u = s[0];
        smp.v = s[2];
        smp.t = s[4];
        smp.residual_u = std::fabs(s[1] * s[1] - p6_eval(s[0], qp));
        smp.residual_v = std::fabs(s[3] * s[3] - p6_eval(s[2], qp));
        res.samples.push_back(smp);
    };

    if (t_targets) {
        // sample where the monotone t(zeta) component crosses each target
        push(0.0, s0);
        size_t next = 0;
        while (next < t_targets->size() && (*t_targets)[next] <= 0.0)
            ++next;
        auto on_step = [&](const Dop853<5>& sol) {
            while (next < t_targets->size() && (*t_targets)[next] <= sol.y_curr()[4]) {
                const double tk = (*t_targets)[next];
                // bisect zeta on the dense output of the t component
                double lo = sol.t_prev(), hi = sol.t_curr();
                for (int it = 0; it < 200 && hi - lo > 1e-13 * std::max(1.0, hi); ++it) {
                    const double mid = 0.5 * (lo + hi);
                    if (sol.interpolate(mid)[4] < tk)
                        lo = mid;
                    else
                        hi = mid;
                }
                push(hi, sol.interpolate(hi));
                ++next;
            }
            return next < t_targets->size();
        };
        const OdeStatus st = solver.drive(0.0, s0, zeta_end, on_step);
        res.step_failure = (st == OdeStatus::step_underflow);
    } else {
        push(0.0, s0);
        int next_k = 1;
        const int nsamp = std::max(samples, 2);
        auto on_step = [&](const Dop853<5>& sol) {
            while (next_k < nsamp) {
                const double zk = next_k == nsamp - 1
                                      ? zeta_end
                                      : zeta_end * static_cast<double>(next_k) / (nsamp - 1);
                if (zk > sol.t_curr())
                    break;
                push(zk, sol.interpolate(zk));
                ++next_k;
            }
            return true;
        };
        const OdeStatus st = solver.drive(0.0, s0, zeta_end, on_step);
        res.step_failure = (st == OdeStatus::step_underflow);
    }
    return res;
}

} // namespace

SeparatedResult integrate_separated(const EllipticPoint& e0, int sign_u, int sign_v,
                                    const MotionConstants& mc, const PhysConfig& cfg,
                                    double zeta_end, double tol, int samples) {
    const QuarticParams qp = QuarticParams::from_constants(mc, cfg);
    const double Fu = p6_guarded(e0.u, qp, "u0 outside the allowed u-interval");
    const double Gv = p6_guarded(e0.v, qp, "v0 outside the allowed v-interval");
    return drive_separated(e0.u, sign_u * std::sqrt(Fu), e0.v, sign_v * std::sqrt(Gv),
                           qp, tol, zeta_end, samples, nullptr);
}

SeparatedResult integrate_separated_at_times(double u0, double du0, double v0, double dv0,
                                             const MotionConstants& mc, const PhysConfig& cfg,
                                             const std::vector<double>& t_targets,
                                             double tol) {
    const QuarticParams qp = QuarticParams::from_constants(mc, cfg);
    // generous zeta bound: dt/dzeta = u^2 - v^2 <= u_max^2, and the drive stops
    // by callback once every target is consumed
    double t_max = 0.0;
    for (double t : t_targets)
        t_max = std::max(t_max, t);
    const double zeta_cap = 1e6 + 1e3 * t_max;
    return drive_separated(u0, du0, v0, dv0, qp, tol, zeta_cap, 0, &t_targets);
}

CrossCheckReport cross_check(const FullState& ic, const PhysConfig& cfg,
                             const MotionConstants& mc, double t_max,
                             const IntegrationOptions& opt) {
    CrossCheckReport rep;
    const Trajectory traj = integrate_full(ic, cfg, 0.0, t_max, opt);
    rep.full_termination = traj.termination;
    rep.full_terminated_early = traj.termination != Termination::time_limit;

    // elliptic coordinates and zeta-velocities of the initial state
    const Split s0 = to_split(ic);
    const QPoint q0 = rel_to_q(s0[2], s0[3], cfg);
    double qd1, qd2;
    rel_vel_to_qdot(s0[6], s0[7], cfg, qd1, qd2);
    const EllipticPoint e0 = q_to_elliptic(q0, cfg);
    const double a = cfg.a;
    const double r1 = std::hypot(q0.q1 - a, q0.q2);
    const double r2 = std::hypot(q0.q1 + a, q0.q2);
    if (r1 == 0.0 || r2 == 0.0)
        throw CoulombSingularity("cross_check seeded at a focus");
    const double du_dq1 = ((q0.q1 - a) / r1 + (q0.q1 + a) / r2) / (2.0 * a);
    const double du_dq2 = (q0.q2 / r1 + q0.q2 / r2) / (2.0 * a);
    const double dv_dq1 = ((q0.q1 + a) / r2 - (q0.q1 - a) / r1) / (2.0 * a);
    const double dv_dq2 = (q0.q2 / r2 - q0.q2 / r1) / (2.0 * a);
    const double jac = e0.u * e0.u - e0.v * e0.v; // dzeta = dt / (u^2 - v^2)
    const double du0 = (du_dq1 * qd1 + du_dq2 * qd2) * jac;
    const double dv0 = (dv_dq1 * qd1 + dv_dq2 * qd2) * jac;

    std::vector<double> targets;
    targets.reserve(traj.samples.size());
    for (size_t i = 1; i < traj.samples.size(); ++i)
        targets.push_back(traj.samples[i].t);

    const SeparatedResult sep = integrate_separated_at_times(
        e0.u, du0, e0.v, dv0, mc, cfg, targets, opt.tol);

    // sep.samples[0] is zeta = 0; targets line up one-to-one afterwards
    const size_t n = std::min(sep.samples.size() - 1, targets.size());
    for (size_t i = 0; i < n; ++i) {
        const TrajectorySample& fs = traj.samples[i + 1];
        const EllipticPoint ef = q_to_elliptic(fs.q, cfg);
        rep.max_du = std::max(rep.max_du, std::fabs(ef.u - sep.samples[i + 1].u));
        rep.max_dv = std::max(rep.max_dv, std::fabs(ef.v - sep.samples[i + 1].v));
        ++rep.compared;
    }
    return rep;
}

} // namespace pairorbit
