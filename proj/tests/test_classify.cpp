#include "oracles.hpp"
#include "pairorbit/classify.hpp"
#include "pairorbit/errors.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <set>

using namespace pairorbit;

namespace {
const PhysConfig cfg13 = derive_config(1.0 / 3.0, 0.0, 1.0);

MotionConstants at(double h_a, double lambda_a) {
    return constants_from_scaled(h_a, lambda_a, cfg13);
}

bool has_label(const RegionReport& r, OrbitLabel l) {
    return std::find(r.labels.begin(), r.labels.end(), l) != r.labels.end();
}
} // namespace

TEST_SUITE("classify") {

TEST_CASE("allowed interval examples") {
    AllowedIntervals ai = allowed_intervals(at(-1.0, -1.0), cfg13);
    REQUIRE(ai.u_intervals.size() == 1);
    REQUIRE(ai.v_intervals.size() == 1);
    CHECK(ai.u_intervals[0].lo == doctest::Approx(1.0));
    CHECK(ai.u_intervals[0].hi == doctest::Approx(1.108).epsilon(5e-4));
    CHECK(ai.v_intervals[0].lo == doctest::Approx(-1.0));
    CHECK(ai.v_intervals[0].hi == doctest::Approx(-0.887).epsilon(5e-4));

    ai = allowed_intervals(at(1.6, 2.2), cfg13);
    REQUIRE(ai.u_intervals.size() == 1);
    REQUIRE(ai.v_intervals.size() == 1);
    CHECK(ai.u_intervals[0].lo == doctest::Approx(1.111).epsilon(5e-4));
    CHECK(ai.u_intervals[0].hi == doctest::Approx(1.788).epsilon(5e-4));
    CHECK(ai.v_intervals[0].lo == doctest::Approx(-1.0));
    CHECK(ai.v_intervals[0].hi == doctest::Approx(1.0));

    ai = allowed_intervals(at(2.0, 0.5), cfg13);
    REQUIRE(ai.u_intervals.size() == 1);
    REQUIRE(ai.v_intervals.size() == 1);
    CHECK(ai.u_intervals[0].lo == doctest::Approx(1.0));
    CHECK(ai.u_intervals[0].hi == doctest::Approx(2.258).epsilon(5e-4));
    CHECK(ai.v_intervals[0].lo == doctest::Approx(-0.537).epsilon(5e-4));
    CHECK(ai.v_intervals[0].hi == doctest::Approx(0.391).epsilon(5e-4));
}

TEST_CASE("figure-caption labels") {
    CHECK(has_label(classify_point(at(-1.0, -1.0), cfg13), OrbitLabel::ts1));
    CHECK(has_label(classify_point(at(0.5, 0.5), cfg13), OrbitLabel::ts1));
    CHECK(has_label(classify_point(at(2.0, 2.0), cfg13), OrbitLabel::ts2));
    CHECK(has_label(classify_point(at(1.6, 2.2), cfg13), OrbitLabel::tp1));
    CHECK(has_label(classify_point(at(2.3, 2.9), cfg13), OrbitLabel::tp2));
    CHECK(has_label(classify_point(at(2.0, 0.5), cfg13), OrbitLabel::tm1));

    const RegionReport shared = classify_point(at(0.3, 0.0), cfg13);
    CHECK(has_label(shared, OrbitLabel::ts3));
    CHECK(has_label(shared, OrbitLabel::tm2));
    CHECK(shared.labels.size() == 2);

    const PhysConfig cfg2 = derive_config(2.0, 0.0, 1.0);
    CHECK(has_label(classify_point(constants_from_scaled(4.0, 1.0, cfg2), cfg2),
                    OrbitLabel::tm1));
}

TEST_CASE("points on the bifurcation lines are boundary") {
    // l1 = 0: h_a + alpha_a - lambda_a = 0
    const RegionReport r1 = classify_point(at(1.0, 1.0 + 1.0 / 3.0), cfg13);
    CHECK(has_label(r1, OrbitLabel::boundary));
    const RegionReport r2 = classify_point(at(1.0, 1.0 - 1.0 / 3.0), cfg13);
    CHECK(has_label(r2, OrbitLabel::boundary));
}

TEST_CASE("deep forbidden point") {
    // very negative energy: no motion anywhere
    const RegionReport r = classify_point(at(-10.0, 5.0), cfg13);
    CHECK(has_label(r, OrbitLabel::forbidden));
    CHECK_FALSE(r.collision_possible);
    CHECK_THROWS_AS(caustics(at(-10.0, 5.0), cfg13), ForbiddenRegion);
}

TEST_CASE("caustic curves per region type") {
    auto count = [](const std::vector<CausticCurve>& cs, CausticCurve::Kind k) {
        return std::count_if(cs.begin(), cs.end(),
                             [&](const CausticCurve& c) { return c.kind == k; });
    };
    // t_s1: one ellipse + one hyperbola
    auto cs = caustics(at(-1.0, -1.0), cfg13);
    CHECK(count(cs, CausticCurve::Kind::ellipse) == 1);
    CHECK(count(cs, CausticCurve::Kind::hyperbola) == 1);
    // t_p1: two ellipses, no hyperbola
    cs = caustics(at(1.6, 2.2), cfg13);
    CHECK(count(cs, CausticCurve::Kind::ellipse) == 2);
    CHECK(count(cs, CausticCurve::Kind::hyperbola) == 0);
    // t_m1: one ellipse + two hyperbolas
    cs = caustics(at(2.0, 0.5), cfg13);
    CHECK(count(cs, CausticCurve::Kind::ellipse) == 1);
    CHECK(count(cs, CausticCurve::Kind::hyperbola) == 2);
}

TEST_CASE("caustic points satisfy their implicit equation") {
    for (auto [h_a, la] : {std::pair{-1.0, -1.0}, {1.6, 2.2}, {2.0, 0.5}, {0.3, 0.0}}) {
        const auto cs = caustics(at(h_a, la), cfg13);
        for (const auto& c : cs) {
            for (double w = -0.9; w <= 0.9; w += 0.3) {
                const QPoint q = c.kind == CausticCurve::Kind::ellipse
                                     ? elliptic_to_q({c.parameter, w, 1}, cfg13)
                                     : elliptic_to_q({1.0 + std::fabs(w), c.parameter, 1}, cfg13);
                CHECK(c.residual(q) < 1e-10);
            }
        }
    }
}

TEST_CASE("interval oracle agreement on random parameters") {
    oracle::ParamGen gen(43);
    for (int i = 0; i < 200; ++i) {
        const double h_a = gen.uniform(-3, 3), la = gen.uniform(-3, 4), aa = gen.uniform(0.05, 3);
        const PhysConfig cfg = derive_config(aa, 1.0, 0.0);
        const MotionConstants mc = constants_from_scaled(h_a, la, cfg);
        const QuarticParams qp = QuarticParams::from_scaled(aa, h_a, la);
        const RootSet roots = p4_roots(qp);
        if (roots.near_multiple)
            continue;
        const AllowedIntervals ai = allowed_intervals(mc, cfg);

        double u_hi = 1.0;
        for (double z : roots.real_roots)
            u_hi = std::max(u_hi, z);
        const auto su = oracle::scan_u(qp, u_hi + 1.0);
        const auto sv = oracle::scan_v(qp);

        // every oracle interval matches an implementation interval within 2e-4
        auto check_match = [](const std::vector<Interval>& got, const std::vector<Interval>& ref) {
            for (const auto& r : ref) {
                bool found = false;
                for (const auto& g : got)
                    found = found || (std::fabs(g.lo - r.lo) < 2e-4 && std::fabs(g.hi - r.hi) < 2e-4);
                CHECK(found);
            }
        };
        check_match(ai.u_intervals, su);
        check_match(ai.v_intervals, sv);
        // and no implementation interval of visible width is missed by the scan
        for (const auto& g : ai.u_intervals)
            if (g.hi - g.lo > 5e-4)
                CHECK(std::any_of(su.begin(), su.end(), [&](const Interval& r) {
                    return std::fabs(g.lo - r.lo) < 2e-4 && std::fabs(g.hi - r.hi) < 2e-4;
                }));
    }
}

TEST_CASE("all allowed motion is bounded") {
    oracle::ParamGen gen(47);
    for (int i = 0; i < 10000; ++i) {
        const double aa = gen.uniform(0.01, 4);
        const PhysConfig cfg = derive_config(aa, 1.0, 0.0);
        const MotionConstants mc =
            constants_from_scaled(gen.uniform(-6, 6), gen.uniform(-6, 6), cfg);
        const AllowedIntervals ai = allowed_intervals(mc, cfg);
        for (const auto& iv : ai.u_intervals) {
            CHECK(std::isfinite(iv.hi));
            CHECK(iv.hi < 1e6);
        }
    }
}

TEST_CASE("satellitary labels coincide with collision_possible") {
    oracle::ParamGen gen(53);
    for (int i = 0; i < 3000; ++i) {
        const double aa = gen.uniform(0.05, 3);
        const PhysConfig cfg = derive_config(aa, 1.0, 0.0);
        const RegionReport r =
            classify_point(constants_from_scaled(gen.uniform(-4, 4), gen.uniform(-4, 4), cfg), cfg);
        if (has_label(r, OrbitLabel::boundary) || has_label(r, OrbitLabel::forbidden))
            continue;
        const bool satellitary = has_label(r, OrbitLabel::ts1) || has_label(r, OrbitLabel::ts2) ||
                                 has_label(r, OrbitLabel::ts3);
        CHECK(satellitary == r.collision_possible);
    }
}

TEST_CASE("scan finds the seven orbit types with t_s3/t_m2 co-occurring") {
    const DiagramScan scan =
        scan_diagram(1.0 / 3.0, GridSpec{-2.0, 3.0, 120}, GridSpec{-2.0, 4.0, 120}, 2);
    std::set<OrbitLabel> seen;
    for (const auto& cell : scan.cell_labels) {
        bool s3 = false, m2 = false;
        for (OrbitLabel l : cell) {
            if (l != OrbitLabel::forbidden && l != OrbitLabel::boundary)
                seen.insert(l);
            s3 = s3 || l == OrbitLabel::ts3;
            m2 = m2 || l == OrbitLabel::tm2;
        }
        CHECK(s3 == m2);
    }
    CHECK(seen.size() == 7);
    CHECK(!scan.delta_zero.empty());
}

TEST_CASE("single-cell scan reproduces classify_point") {
    const DiagramScan scan =
        scan_diagram(1.0 / 3.0, GridSpec{2.0, 2.0, 1}, GridSpec{2.0, 2.0, 1}, 1);
    REQUIRE(scan.cell_labels.size() == 1);
    REQUIRE(scan.at(0, 0).size() == 1);
    CHECK(scan.at(0, 0)[0] == OrbitLabel::ts2);
}

TEST_CASE("cells on the l1 line are boundary") {
    // grid designed so a column lands exactly on lambda_a = h_a + alpha_a
    const double aa = 0.25;
    const DiagramScan scan = scan_diagram(aa, GridSpec{1.0, 1.0, 1}, GridSpec{1.25, 1.25, 1}, 1);
    REQUIRE(scan.at(0, 0).size() == 1);
    CHECK(scan.at(0, 0)[0] == OrbitLabel::boundary);
}

TEST_CASE("scan is deterministic across thread counts") {
    const DiagramScan a = scan_diagram(0.5, GridSpec{-1, 2, 40}, GridSpec{-1, 3, 40}, 1);
    const DiagramScan b = scan_diagram(0.5, GridSpec{-1, 2, 40}, GridSpec{-1, 3, 40}, 4);
    REQUIRE(a.cell_labels.size() == b.cell_labels.size());
    for (size_t i = 0; i < a.cell_labels.size(); ++i)
        CHECK(a.cell_labels[i] == b.cell_labels[i]);
}

} // TEST_SUITE
