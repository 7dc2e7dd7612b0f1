#include "pairorbit/quartic.hpp"

#include <algorithm>
#include <cmath>

namespace pairorbit {

double p4_eval(double z, const QuarticParams& qp) {
    // Horner on z^4 + p z^2 + q z + r
    return ((z * z + qp.p) * z + qp.q) * z + qp.r;
}

double p4_deriv(double z, const QuarticParams& qp) {
    return (4.0 * z * z + 2.0 * qp.p) * z + qp.q;
}

double p6_eval(double z, const QuarticParams& qp) {
    return (1.0 - z * z) * p4_eval(z, qp);
}

double p6_deriv(double z, const QuarticParams& qp) {
    return (1.0 - z * z) * p4_deriv(z, qp) - 2.0 * z * p4_eval(z, qp);
}

double discriminant(const QuarticParams& qp) {
    const double p = qp.p, q = qp.q, r = qp.r;
    const double p2 = p * p, q2 = q * q, r2 = r * r;
    return 16.0 * p2 * p2 * r - 4.0 * p2 * p * q2 - 128.0 * p2 * r2 +
           144.0 * p * q2 * r - 27.0 * q2 * q2 + 256.0 * r2 * r;
}

void boundary_lines(const MotionConstants& mc, const PhysConfig& cfg,
                    double& l1, double& l2) {
    l1 = mc.h_a + cfg.alpha_a - mc.lambda_a;
    l2 = mc.h_a - cfg.alpha_a - mc.lambda_a;
}

namespace {

// Largest real root of y^3 + b y^2 + c y + d. Used on the resolvent cubic,
// which always has a real root >= 0 because the cubic is -q^2 <= 0 at y = 0.
double cubic_max_root(double b, double c, double d) {
    const double b3 = b / 3.0;
    const double P = c - b * b3; // depressed: w^3 + P w + q0, y = w - b/3
    const double q0 = 2.0 * b3 * b3 * b3 - b3 * c + d;
    double w;
    const double disc = q0 * q0 / 4.0 + P * P * P / 27.0;
    if (disc > 0.0) {
        const double sq = std::sqrt(disc);
        w = std::cbrt(-q0 / 2.0 + sq) + std::cbrt(-q0 / 2.0 - sq);
    } else {
        // three real roots: take the largest (k = 0 of the trig form)
        const double m = 2.0 * std::sqrt(std::max(-P / 3.0, 0.0));
        double arg = 0.0;
        if (m > 0.0)
            arg = std::clamp(3.0 * q0 / (P * m), -1.0, 1.0);
        const double phi = std::acos(arg) / 3.0;
        w = m * std::cos(phi);
    }
    double y = w - b3;
    // a couple of Newton steps tighten the analytic seed
    for (int it = 0; it < 3; ++it) {
        const double f = ((y + b) * y + c) * y + d;
        const double fp = (3.0 * y + 2.0 * b) * y + c;
        if (fp == 0.0)
            break;
        y -= f / fp;
    }
    return y;
}

// Real roots of z^2 + bz + c appended to out; tiny negative discriminants are
// snapped to a double root. Returns false for a genuine complex pair.
bool quadratic_roots(double b, double c, std::vector<double>& out) {
    double disc = b * b - 4.0 * c;
    const double scale = b * b + 4.0 * std::fabs(c);
    if (disc < 0.0) {
        if (disc < -1e-12 * std::max(scale, 1e-300))
            return false;
        disc = 0.0;
    }
    const double sq = std::sqrt(disc);
    if (b >= 0.0) {
        const double q = -(b + sq) / 2.0;
        out.push_back(q);
        out.push_back(q == 0.0 ? 0.0 : c / q);
    } else {
        const double q = -(b - sq) / 2.0;
        out.push_back(q == 0.0 ? 0.0 : c / q);
        out.push_back(q);
    }
    return true;
}

// Guarded Newton polish on P4; never accepts a step that grows the residual.
double polish_root(double z, const QuarticParams& qp) {
    double best = z;
    double best_f = std::fabs(p4_eval(z, qp));
    for (int it = 0; it < 20; ++it) {
        const double f = p4_eval(z, qp);
        const double fp = p4_deriv(z, qp);
        if (fp == 0.0)
            break;
        const double step = f / fp;
        z -= step;
        const double fz = std::fabs(p4_eval(z, qp));
        if (fz < best_f) {
            best_f = fz;
            best = z;
        }
        if (std::fabs(step) <= 1e-16 * std::max(1.0, std::fabs(z)) || fz == 0.0)
            break;
    }
    return best;
}

} // namespace

RootSet p4_roots(const QuarticParams& qp) {
    const double p = qp.p, q = qp.q, r = qp.r;
    RootSet rs;

    std::vector<double> roots;
    const double qscale = std::max({1.0, std::fabs(p), std::fabs(r)});
    if (std::fabs(q) <= 1e-14 * qscale) {
        // biquadratic z^4 + p z^2 + r
        std::vector<double> ys;
        if (quadratic_roots(p, r, ys)) {
            for (double y : ys) {
                if (y > 1e-14 * qscale) {
                    roots.push_back(-std::sqrt(y));
                    roots.push_back(std::sqrt(y));
                } else if (y >= -1e-14 * qscale) {
                    roots.push_back(0.0);
                    roots.push_back(0.0);
                }
                // y < 0: complex pair
            }
        }
    } else {
        // factor into (z^2 + s z + m)(z^2 - s z + n) via the resolvent cubic
        // y^3 + 2p y^2 + (p^2 - 4r) y - q^2 = 0 with y = s^2
        const double y = std::max(cubic_max_root(2.0 * p, p * p - 4.0 * r, -q * q), 0.0);
        const double s = std::sqrt(y);
        if (s == 0.0) {
            // fully degenerate (p = q = r = 0 up to rounding)
            roots.assign(4, 0.0);
        } else {
            const double m = (p + y - q / s) / 2.0;
            const double n = (p + y + q / s) / 2.0;
            quadratic_roots(s, m, roots);
            quadratic_roots(-s, n, roots);
        }
    }

    for (double& z : roots)
        z = polish_root(z, qp);
    std::sort(roots.begin(), roots.end());

    rs.real_roots = std::move(roots);
    rs.n_complex_pairs = static_cast<int>((4 - rs.real_roots.size()) / 2);
    rs.residuals.reserve(rs.real_roots.size());
    for (double z : rs.real_roots)
        rs.residuals.push_back(std::fabs(p4_eval(z, qp)));
    for (size_t i = 1; i < rs.real_roots.size(); ++i)
        if (rs.real_roots[i] - rs.real_roots[i - 1] < root_merge_tol)
            rs.near_multiple = true;
    return rs;
}

} // namespace pairorbit
