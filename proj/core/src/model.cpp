#include "pairorbit/model.hpp"
#include "pairorbit/errors.hpp"

#include <cmath>

namespace pairorbit {

PhysConfig derive_config(double alpha, double x0, double y0) {
    if (!(alpha > 0.0))
        throw NonPositiveCoupling("alpha must be positive, got " + std::to_string(alpha));
    const double a = std::hypot(x0, y0);
    if (a == 0.0)
        throw DegenerateMomentum("x0 = y0 = 0: vanishing magnetic momentum (a = 0) is unsupported");
    return PhysConfig{alpha, x0, y0, a, alpha / (a * a * a)};
}

MotionConstants scale_constants(double h, double lambda, const PhysConfig& cfg) {
    const double a2 = cfg.a * cfg.a;
    return MotionConstants{h, lambda, h / a2, lambda / a2};
}

MotionConstants constants_from_scaled(double h_a, double lambda_a, const PhysConfig& cfg) {
    const double a2 = cfg.a * cfg.a;
    return MotionConstants{h_a * a2, lambda_a * a2, h_a, lambda_a};
}

PhysConfig config_from_scaled(double alpha_a, double a) {
    return derive_config(alpha_a * a * a * a, a, 0.0);
}

PhysConfig config_from_gaussian(double e, double B, double m, double c,
                                double KX, double KY) {
    const double omega = e * B / (m * c);
    const double l = m * c / (e * B);
    const double mu = m / 2.0;
    const double alpha = e * e / (mu * omega * omega * l * l * l);
    return derive_config(alpha, KY / (m * omega * l), KX / (m * omega * l));
}

} // namespace pairorbit
