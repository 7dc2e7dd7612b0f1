#pragma once

#include "pairorbit/model.hpp"

namespace pairorbit {

/// Center-of-mass / relative decomposition of the two-particle configuration:
/// X = (x1+x2)/2, Y = (y1+y2)/2, x = x2-x1, y = y2-y1.
struct RelState {
    double x;
    double y;
    double X;
    double Y;
};

/// Point of the rotated/translated relative frame. The harmonic oscillator
/// sits at the origin, the Coulomb center at (-a, 0).
struct QPoint {
    double q1;
    double q2;
};

/// Euler elliptic coordinates relative to the foci (a,0) and (-a,0):
/// u = (r1+r2)/(2a) >= 1, v = (r2-r1)/(2a) in [-1,1]. The (u,v) chart covers
/// each open half-plane q2 > 0 / q2 < 0 once; sign_q2 carries the branch.
struct EllipticPoint {
    double u;
    double v;
    int sign_q2; // -1, 0, +1
};

RelState split_frames(double x1, double y1, double x2, double y2);

/// Affine map q1 = (x0 x - y0 y)/a - a, q2 = (y0 x + x0 y)/a: a rotation
/// followed by a translation, so it preserves Euclidean distances.
QPoint rel_to_q(double x, double y, const PhysConfig& cfg);

/// Exact inverse of rel_to_q.
void q_to_rel(const QPoint& q, const PhysConfig& cfg, double& x, double& y);

/// Same rotation applied to velocities (no translation part).
void rel_vel_to_qdot(double xdot, double ydot, const PhysConfig& cfg,
                     double& qdot1, double& qdot2);
void qdot_to_rel_vel(double qdot1, double qdot2, const PhysConfig& cfg,
                     double& xdot, double& ydot);

/// Points within rel_tol of a focus are clamped to the exact boundary values
/// (u = 1, v = +-1) so downstream square roots never see tiny negatives.
EllipticPoint q_to_elliptic(const QPoint& q, const PhysConfig& cfg);

/// q1 = a u v, q2 = sign_q2 * a sqrt((u^2-1)(1-v^2)); requires u >= 1, |v| <= 1
/// up to rel_tol (inputs are clamped onto the valid ranges).
QPoint elliptic_to_q(const EllipticPoint& e, const PhysConfig& cfg);

/// Reconstructs the two particle positions from center of mass and q-frame
/// point (the paper's initial-condition position formulas, valid at any time).
void reconstruct_particles(double X, double Y, const QPoint& q, const PhysConfig& cfg,
                           double& x1, double& y1, double& x2, double& y2);

} // namespace pairorbit
