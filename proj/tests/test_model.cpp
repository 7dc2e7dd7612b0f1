#include "pairorbit/errors.hpp"
#include "pairorbit/model.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace pairorbit;

TEST_SUITE("model") {

TEST_CASE("derive_config populates a and alpha_a") {
    const PhysConfig c1 = derive_config(1.0 / 3.0, 0.0, 1.0);
    CHECK(c1.a == doctest::Approx(1.0).epsilon(rel_tol));
    CHECK(c1.alpha_a == doctest::Approx(1.0 / 3.0).epsilon(rel_tol));

    const PhysConfig c2 = derive_config(1.0, 3.0, 4.0);
    CHECK(c2.a == doctest::Approx(5.0).epsilon(rel_tol));
    CHECK(c2.alpha_a == doctest::Approx(1.0 / 125.0).epsilon(rel_tol));

    const PhysConfig c3 = derive_config(2.0, 0.0, 1.0);
    CHECK(c3.a == doctest::Approx(1.0).epsilon(rel_tol));
    CHECK(c3.alpha_a == doctest::Approx(2.0).epsilon(rel_tol));
}

TEST_CASE("derive_config rejects degenerate input") {
    CHECK_THROWS_AS(derive_config(1.0, 0.0, 0.0), DegenerateMomentum);
    CHECK_THROWS_AS(derive_config(0.0, 0.0, 1.0), NonPositiveCoupling);
    CHECK_THROWS_AS(derive_config(-2.0, 1.0, 1.0), NonPositiveCoupling);
}

TEST_CASE("config invariants hold") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> d(-5.0, 5.0);
    for (int i = 0; i < 200; ++i) {
        const double x0 = d(rng), y0 = d(rng);
        if (x0 == 0.0 && y0 == 0.0)
            continue;
        const double alpha = std::fabs(d(rng)) + 1e-3;
        const PhysConfig c = derive_config(alpha, x0, y0);
        CHECK(c.a * c.a == doctest::Approx(x0 * x0 + y0 * y0).epsilon(rel_tol));
        CHECK(c.alpha_a * c.a * c.a * c.a == doctest::Approx(alpha).epsilon(rel_tol));
        CHECK(c.alpha > 0.0);
    }
}

TEST_CASE("derive_config depends only on the modulus of (x0, y0)") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> d(0.1, 4.0);
    for (int i = 0; i < 100; ++i) {
        const double r = d(rng), phi = d(rng), alpha = d(rng);
        const PhysConfig a = derive_config(alpha, r, 0.0);
        const PhysConfig b = derive_config(alpha, r * std::cos(phi), r * std::sin(phi));
        CHECK(a.a == doctest::Approx(b.a).epsilon(1e-12));
        CHECK(a.alpha_a == doctest::Approx(b.alpha_a).epsilon(1e-12));
    }
}

TEST_CASE("scale_constants examples") {
    const PhysConfig c1 = derive_config(1.0 / 3.0, 0.0, 1.0);
    const MotionConstants m1 = scale_constants(-1.0, -1.0, c1);
    CHECK(m1.h_a == doctest::Approx(-1.0).epsilon(rel_tol));
    CHECK(m1.lambda_a == doctest::Approx(-1.0).epsilon(rel_tol));

    const MotionConstants m2 = scale_constants(0.0, 0.0, c1);
    CHECK(m2.h_a == 0.0);
    CHECK(m2.lambda_a == 0.0);

    const PhysConfig c2 = derive_config(1.0, 2.0, 0.0);
    const MotionConstants m3 = scale_constants(8.0, 2.0, c2);
    CHECK(m3.h_a == doctest::Approx(2.0).epsilon(rel_tol));
    CHECK(m3.lambda_a == doctest::Approx(0.5).epsilon(rel_tol));
}

TEST_CASE("scaling round trip") {
    std::mt19937_64 rng(13);
    std::uniform_real_distribution<double> d(-10.0, 10.0);
    for (int i = 0; i < 200; ++i) {
        const PhysConfig cfg = derive_config(std::fabs(d(rng)) + 0.01, d(rng), d(rng) + 11.0);
        const double h = d(rng), lambda = d(rng);
        const MotionConstants mc = scale_constants(h, lambda, cfg);
        const MotionConstants back = constants_from_scaled(mc.h_a, mc.lambda_a, cfg);
        CHECK(back.h == doctest::Approx(h).epsilon(rel_tol));
        CHECK(back.lambda == doctest::Approx(lambda).epsilon(rel_tol));
    }
}

TEST_CASE("gaussian-units helper reduces to the dimensionless parameters") {
    // omega = eB/(mc), l = mc/(eB), alpha = e^2/(mu omega^2 l^3) = 2 e^3 B / (m^2 c)
    const double e = 2.0, B = 3.0, m = 5.0, c = 7.0;
    const double omega = e * B / (m * c);
    const double l = m * c / (e * B);
    const PhysConfig cfg = config_from_gaussian(e, B, m, c, 0.3 * m * omega * l, 0.4 * m * omega * l);
    CHECK(cfg.alpha == doctest::Approx(2.0 * e * e * e * B / (m * m * c)).epsilon(1e-12));
    CHECK(cfg.x0 == doctest::Approx(0.4).epsilon(1e-12));
    CHECK(cfg.y0 == doctest::Approx(0.3).epsilon(1e-12));
    CHECK(cfg.a == doctest::Approx(0.5).epsilon(1e-12));
}

} // TEST_SUITE
