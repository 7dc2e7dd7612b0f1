#pragma once

namespace pairorbit {

/// Relative tolerance used for all exact algebraic identities in this library.
inline constexpr double rel_tol = 1e-12;

/// Pairwise root distance below which a parameter point is treated as sitting
/// on a bifurcation boundary (multiple root of the characteristic quartic).
inline constexpr double root_merge_tol = 1e-8;

/// Half-width of the boundary band around the lines h_a +- alpha_a - lambda_a = 0.
inline constexpr double line_band_tol = 1e-10;

/// One problem instance in the paper's dimensionless units (lengths in the
/// magnetic length l = mc/eB, time in 1/omega with omega = eB/mc).
///
/// alpha is the Coulomb-to-oscillator strength ratio, (x0, y0) the oscillator
/// center offsets fixed by the magnetic momenta, a = sqrt(x0^2 + y0^2) the
/// focus half-distance and alpha_a = alpha / a^3 the a-absorbed coupling.
struct PhysConfig {
    double alpha;
    double x0;
    double y0;
    double a;
    double alpha_a;
};

/// A point of the bifurcation diagram: the two constants of motion (h, lambda)
/// together with their a-absorbed forms h_a = h/a^2, lambda_a = lambda/a^2.
struct MotionConstants {
    double h;
    double lambda;
    double h_a;
    double lambda_a;
};

/// Builds a validated PhysConfig from (alpha, x0, y0).
/// Throws NonPositiveCoupling if alpha <= 0, DegenerateMomentum if x0 = y0 = 0
/// (the a = 0 problem needs a different treatment and is not supported).
PhysConfig derive_config(double alpha, double x0, double y0);

/// Scales (h, lambda) into the a-absorbed diagram coordinates.
MotionConstants scale_constants(double h, double lambda, const PhysConfig& cfg);

/// Inverse of scale_constants: recovers (h, lambda) from (h_a, lambda_a).
MotionConstants constants_from_scaled(double h_a, double lambda_a, const PhysConfig& cfg);

/// Convenience for diagram-plane work: builds the config with the Coulomb
/// coupling implied by alpha_a at focus half-distance a (placed at x0 = a).
PhysConfig config_from_scaled(double alpha_a, double a);

/// Documented helper, not a core path: nondimensionalizes a physical problem
/// given in non-rationalized Gaussian units. Inputs are the elementary charge e,
/// field strength B, particle mass m, speed of light c and the conserved total
/// magnetic momenta (KX, KY). Uses omega = eB/(mc), l = mc/(eB), mu = m/2,
/// alpha = e^2/(mu omega^2 l^3), x0 = KY/(m omega l), y0 = KX/(m omega l).
PhysConfig config_from_gaussian(double e, double B, double m, double c,
                                double KX, double KY);

} // namespace pairorbit
