#pragma once

#include "pairorbit/model.hpp"

#include <vector>

namespace pairorbit {

/// Depressed-quartic coefficients of the characteristic polynomial
/// P4(z) = z^4 + p z^2 + q z + r, with p = -(1 + 2 h_a), q = -2 alpha_a,
/// r = 2 lambda_a. The motion polynomial is P6(z) = (1 - z^2) P4(z).
struct QuarticParams {
    double p;
    double q;
    double r;

    static QuarticParams from_scaled(double alpha_a, double h_a, double lambda_a) {
        return QuarticParams{-(1.0 + 2.0 * h_a), -2.0 * alpha_a, 2.0 * lambda_a};
    }
    static QuarticParams from_constants(const MotionConstants& mc, const PhysConfig& cfg) {
        return from_scaled(cfg.alpha_a, mc.h_a, mc.lambda_a);
    }
};

/// Real roots of P4 (sorted ascending, multiplicity-expanded) plus the count
/// of complex-conjugate pairs and the polish residuals |P4(root)|.
struct RootSet {
    std::vector<double> real_roots;
    int n_complex_pairs = 0;
    std::vector<double> residuals;
    bool near_multiple = false; // some pairwise root gap < root_merge_tol
};

double p4_eval(double z, const QuarticParams& qp);
double p4_deriv(double z, const QuarticParams& qp);

/// P6(z) = (1 - z^2) P4(z) and its derivative.
double p6_eval(double z, const QuarticParams& qp);
double p6_deriv(double z, const QuarticParams& qp);

/// Analytic solve (resolvent cubic factorization into two quadratics)
/// followed by a guarded Newton polish of every real root.
RootSet p4_roots(const QuarticParams& qp);

/// Standard discriminant of the depressed quartic:
/// 16 p^4 r - 4 p^3 q^2 - 128 p^2 r^2 + 144 p q^2 r - 27 q^4 + 256 r^3.
/// Positive: four distinct real roots or none; negative: exactly two;
/// zero: a multiple root.
double discriminant(const QuarticParams& qp);

/// Signed distances to the bifurcation lines: l1 = h_a + alpha_a - lambda_a
/// (a root of P4 at +1 when zero) and l2 = h_a - alpha_a - lambda_a (root at
/// -1). Algebraically P4(1) = -2 l1 and P4(-1) = -2 l2.
void boundary_lines(const MotionConstants& mc, const PhysConfig& cfg,
                    double& l1, double& l2);

} // namespace pairorbit
