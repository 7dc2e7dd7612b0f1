#pragma once

#include "pairorbit/classify.hpp"
#include "pairorbit/coords.hpp"
#include "pairorbit/initcond.hpp"
#include "pairorbit/model.hpp"

#include <array>
#include <vector>

namespace pairorbit {

/// Conserved-quantity monitors of the full two-particle system, dimensionless:
///   KX = vx1 + vx2 + (y1 - y2),  KY = vy1 + vy2 + (x2 - x1)
///   LZ = sum_i (x_i vy_i - y_i vx_i) -/+ (x_i^2 + y_i^2)/2  (sign per charge)
/// plus the reduced-system invariants H, Lambda evaluated through the q-frame.
/// Drift fields are deviations from the trajectory-start values scaled by
/// max(1, |start value|).
struct MonitorRecord {
    double H_rel, Lambda_rel, KX, KY, LZ;
    double drift_H, drift_Lambda, drift_KX, drift_KY, drift_LZ;

    double max_drift() const;
};

enum class Termination { time_limit, collision, step_failure };

struct TrajectorySample {
    double t;
    FullState state;
    QPoint q;
    MonitorRecord monitors;
};

struct Trajectory {
    std::vector<TrajectorySample> samples;
    Termination termination = Termination::time_limit;
    double t_end = 0.0;
};

struct IntegrationOptions {
    double tol = 1e-10;
    // radius at which the pair counts as collided; exact r = 0 is numerically
    // unreachable, so this is an artifact parameter
    double collision_radius = 1e-6;
    int samples = 1000;
};

/// The four dimensionless Newton equations of the pair, order-reduced:
/// state (x1,y1,x2,y2,vx1,vy1,vx2,vy2) -> its derivative.
/// Throws CoulombSingularity at zero separation.
std::array<double, 8> rhs_full(const FullState& state, const PhysConfig& cfg);

MonitorRecord monitors(const FullState& state, const PhysConfig& cfg);

/// Adaptive integration of the pair dynamics (embedded RK 8(5,3) pair, dense
/// output at uniform sample times, collision event localized to 1e-10 in t).
/// Internally the equations are advanced in the equivalent center-of-mass /
/// relative form, which keeps the inter-particle separation fully resolved
/// near close approaches; samples are reported in particle coordinates.
/// t_span may be decreasing for backward integration.
Trajectory integrate_full(const FullState& ic, const PhysConfig& cfg,
                          double t_start, double t_end,
                          const IntegrationOptions& opt = {});

struct SeparatedSample {
    double zeta;
    double u;
    double v;
    double t; // accumulated physical time: dt = (u^2 - v^2) dzeta
    double residual_u; // |u'^2 - P6(u)| first-integral residual
    double residual_v;
};

struct SeparatedResult {
    std::vector<SeparatedSample> samples;
    bool step_failure = false;
};

/// Integrates the separated elliptic equations in local time zeta using the
/// differentiated second-order form z'' = P6'(z)/2 (avoids square-root sign
/// bookkeeping at turning points); the first-order quadrature is monitored as
/// a residual. Initial zeta-velocities are sign_u*sqrt(P6(u0)), sign_v*sqrt(P6(v0)).
/// Throws OutsideAllowedRegion if P6(u0) < 0 or P6(v0) < 0.
SeparatedResult integrate_separated(const EllipticPoint& e0, int sign_u, int sign_v,
                                    const MotionConstants& mc, const PhysConfig& cfg,
                                    double zeta_end, double tol = 1e-10,
                                    int samples = 1000);

/// Variant seeded with explicit zeta-velocities and sampled at prescribed
/// physical times (event-localized on the monotone t(zeta) component).
SeparatedResult integrate_separated_at_times(double u0, double du0, double v0, double dv0,
                                             const MotionConstants& mc, const PhysConfig& cfg,
                                             const std::vector<double>& t_targets,
                                             double tol = 1e-10);

struct CrossCheckReport {
    double max_du = 0.0;
    double max_dv = 0.0;
    int compared = 0;
    bool full_terminated_early = false; // collision or step failure of the full run
    Termination full_termination = Termination::time_limit;
};

/// End-to-end validation of the reduction chain: integrates the full pair
/// system, maps every sample to (u, v), independently integrates the separated
/// system reparametrized to physical time, and reports the worst pointwise
/// deviations.
CrossCheckReport cross_check(const FullState& ic, const PhysConfig& cfg,
                             const MotionConstants& mc, double t_max,
                             const IntegrationOptions& opt = {});

} // namespace pairorbit
