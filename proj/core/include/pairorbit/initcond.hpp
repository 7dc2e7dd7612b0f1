#pragma once

#include "pairorbit/coords.hpp"
#include "pairorbit/model.hpp"

#include <vector>

namespace pairorbit {

/// One of the (up to four) q-frame velocity pairs consistent with prescribed
/// (h, lambda) at a given position, with the invariant residuals after polish.
struct VelocityBranch {
    double qdot1;
    double qdot2;
    int branch_index;
    double residual_h;
    double residual_lambda;
};

/// Dimensionless two-particle state in the lab frame.
struct FullState {
    double x1, y1, x2, y2;
    double vx1, vy1, vx2, vy2;

    double separation() const;
};

/// Reduced-system invariants in Cartesian q-frame form:
///   H = (qd1^2 + qd2^2)/2 + (q1^2 + q2^2)/2 - alpha / r2
///   Lambda = (L^2 + qd1^2)/2 + q1^2/2 + alpha q1 / (a r2)
/// with L = q2 qd1 - q1 qd2 and r2 the distance to the Coulomb center (-a, 0).
/// Throws CoulombSingularity at r2 = 0.
void cartesian_invariants(const QPoint& q, double qdot1, double qdot2,
                          const PhysConfig& cfg, double& H, double& Lambda);

/// All real velocity pairs solving the two invariant equations at q.
///
/// The dependence on velocities is quadratic, so elimination gives a
/// biquadratic in qd1; its w = qd1^2 quadratic is solved in closed form,
/// candidates are completed via the linear Lambda relation (or both signs
/// where that relation degenerates), Newton-polished as a pair, filtered by
/// the residual bounds, deduplicated at distance 1e-8 and sorted
/// lexicographically by (qd1, qd2). Empty result means q lies outside the
/// allowed region for (h, lambda).
std::vector<VelocityBranch> velocity_branches(const QPoint& q, const MotionConstants& mc,
                                              const PhysConfig& cfg);

/// Applies the paper's eight initial-condition formulas: particle positions
/// from (X0, Y0, q) and velocities from (q, qdot) plus the center-of-mass
/// relations Xdot = (y + y0)/2, Ydot = (-x + x0)/2.
FullState build_full_state(double X0, double Y0, const QPoint& q,
                           const VelocityBranch& branch, const PhysConfig& cfg);

} // namespace pairorbit
