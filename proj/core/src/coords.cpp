#include "pairorbit/coords.hpp"

#include <algorithm>
#include <cmath>

namespace pairorbit {

RelState split_frames(double x1, double y1, double x2, double y2) {
    return RelState{x2 - x1, y2 - y1, (x1 + x2) / 2.0, (y1 + y2) / 2.0};
}

QPoint rel_to_q(double x, double y, const PhysConfig& cfg) {
    return QPoint{(cfg.x0 * x - cfg.y0 * y) / cfg.a - cfg.a,
                  (cfg.y0 * x + cfg.x0 * y) / cfg.a};
}

void q_to_rel(const QPoint& q, const PhysConfig& cfg, double& x, double& y) {
    const double t1 = q.q1 + cfg.a;
    x = (cfg.x0 * t1 + cfg.y0 * q.q2) / cfg.a;
    y = (-cfg.y0 * t1 + cfg.x0 * q.q2) / cfg.a;
}

void rel_vel_to_qdot(double xdot, double ydot, const PhysConfig& cfg,
                     double& qdot1, double& qdot2) {
    qdot1 = (cfg.x0 * xdot - cfg.y0 * ydot) / cfg.a;
    qdot2 = (cfg.y0 * xdot + cfg.x0 * ydot) / cfg.a;
}

void qdot_to_rel_vel(double qdot1, double qdot2, const PhysConfig& cfg,
                     double& xdot, double& ydot) {
    xdot = (cfg.x0 * qdot1 + cfg.y0 * qdot2) / cfg.a;
    ydot = (-cfg.y0 * qdot1 + cfg.x0 * qdot2) / cfg.a;
}

EllipticPoint q_to_elliptic(const QPoint& q, const PhysConfig& cfg) {
    const double a = cfg.a;
    const double r1 = std::hypot(q.q1 - a, q.q2);
    const double r2 = std::hypot(q.q1 + a, q.q2);
    double u = (r1 + r2) / (2.0 * a);
    double v = (r2 - r1) / (2.0 * a);
    // clamp roundoff at the chart boundaries
    if (u < 1.0)
        u = 1.0;
    v = std::clamp(v, -1.0, 1.0);
    if (r1 <= rel_tol * a) {
        u = 1.0;
        v = 1.0;
    } else if (r2 <= rel_tol * a) {
        u = 1.0;
        v = -1.0;
    }
    const int sgn = q.q2 > 0.0 ? 1 : (q.q2 < 0.0 ? -1 : 0);
    return EllipticPoint{u, v, sgn};
}

QPoint elliptic_to_q(const EllipticPoint& e, const PhysConfig& cfg) {
    const double u = std::max(e.u, 1.0);
    const double v = std::clamp(e.v, -1.0, 1.0);
    const double a = cfg.a;
    const double s = (u * u - 1.0) * (1.0 - v * v);
    return QPoint{a * u * v, e.sign_q2 * a * std::sqrt(std::max(s, 0.0))};
}

void reconstruct_particles(double X, double Y, const QPoint& q, const PhysConfig& cfg,
                           double& x1, double& y1, double& x2, double& y2) {
    const double inv2a = 1.0 / (2.0 * cfg.a);
    const double px = (cfg.x0 * (cfg.a + q.q1) + cfg.y0 * q.q2) * inv2a;
    const double py = (cfg.y0 * (cfg.a + q.q1) - cfg.x0 * q.q2) * inv2a;
    x1 = X - px;
    y1 = Y + py;
    x2 = X + px;
    y2 = Y - py;
}

} // namespace pairorbit
