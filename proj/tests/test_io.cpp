#include "pairorbit/dynamics.hpp"
#include "pairorbit/errors.hpp"
#include "pairorbit/io.hpp"
#include "pairorbit/svg.hpp"

#include <doctest.h>

#include <cmath>
#include <sstream>

using namespace pairorbit;

namespace {
const PhysConfig cfg13 = derive_config(1.0 / 3.0, 0.0, 1.0);

Trajectory short_run() {
    const MotionConstants mc = scale_constants(1.6, 2.2, cfg13);
    const auto br = velocity_branches(QPoint{0.5, 1.0}, mc, cfg13);
    REQUIRE(!br.empty());
    IntegrationOptions opt;
    opt.samples = 50;
    return integrate_full(build_full_state(0, 0, QPoint{0.5, 1.0}, br[0], cfg13), cfg13,
                          0.0, 2.0, opt);
}
} // namespace

TEST_SUITE("io") {

TEST_CASE("fmt_full round-trips doubles exactly") {
    for (double v : {1.0 / 3.0, -2.2830738662, 1e-17, 0.0, 123456.789, -0.887552}) {
        const std::string s = fmt_full(v);
        CHECK(std::stod(s) == v);
    }
}

TEST_CASE("config parsing: full file with comments") {
    const ConfigFile cf = parse_config(
        "# fig 6\nalpha = 0.3333333333333333\nx0 = 0\ny0 = 1\n\nh = -1\nlambda = -1\n"
        "q1 = -1.04  # start\nq2 = 0.06\n");
    REQUIRE(cf.alpha.has_value());
    CHECK(*cf.alpha == doctest::Approx(1.0 / 3.0));
    CHECK(*cf.y0 == 1.0);
    CHECK(*cf.h == -1.0);
    CHECK(*cf.q1 == -1.04);
    CHECK_FALSE(cf.X0.has_value());
}

TEST_CASE("config parsing rejects malformed input") {
    CHECK_THROWS_AS(parse_config("alpha 0.3\n"), Error);          // no '='
    CHECK_THROWS_AS(parse_config("unknown = 1\n"), Error);        // bad key
    CHECK_THROWS_AS(parse_config("alpha = abc\n"), Error);        // bad number
    CHECK_THROWS_AS(parse_config("alpha = 1\nalpha = 2\n"), Error); // duplicate
    CHECK_THROWS_AS(parse_config("alpha = inf\n"), Error);        // non-finite
}

TEST_CASE("trajectory CSV header and full-precision rows") {
    const Trajectory traj = short_run();
    std::ostringstream ss;
    write_trajectory_csv(ss, traj, cfg13);
    const std::string csv = ss.str();
    CHECK(csv.rfind("t,x1,y1,x2,y2,X,Y,q1,q2,u,v,H,Lambda,KX,KY,LZ\n", 0) == 0);

    // row count = header + samples
    size_t rows = 0;
    for (char c : csv)
        rows += c == '\n';
    CHECK(rows == traj.samples.size() + 1);

    // first data row starts with t = 0 and round-trips x1 exactly
    std::istringstream is(csv);
    std::string header, row;
    std::getline(is, header);
    std::getline(is, row);
    std::istringstream rs(row);
    std::string field;
    std::getline(rs, field, ',');
    CHECK(std::stod(field) == 0.0);
    std::getline(rs, field, ',');
    CHECK(std::stod(field) == traj.samples[0].state.x1);
}

TEST_CASE("diagram CSV has one labeled row per cell") {
    const DiagramScan scan =
        scan_diagram(1.0 / 3.0, GridSpec{-1.0, 2.0, 8}, GridSpec{-1.0, 3.0, 9}, 1);
    std::ostringstream ss;
    write_diagram_csv(ss, scan);
    const std::string csv = ss.str();
    size_t rows = 0;
    for (char c : csv)
        rows += c == '\n';
    CHECK(rows == 8 * 9 + 1);
    CHECK(csv.rfind("h_a,lambda_a,label\n", 0) == 0);
    CHECK(csv.find("t_s") != std::string::npos);
    // the shared region cells carry the joined label
    const DiagramScan shared =
        scan_diagram(1.0 / 3.0, GridSpec{0.3, 0.3, 1}, GridSpec{0.0, 0.0, 1}, 1);
    std::ostringstream s2;
    write_diagram_csv(s2, shared);
    CHECK(s2.str().find("t_s3+t_m2") != std::string::npos);
}

TEST_CASE("json writer emits flat snake_case records") {
    JsonWriter jw;
    jw.begin_object();
    jw.key("branch").value(2);
    jw.key("qdot1").value(0.5);
    jw.key("ok").value(true);
    jw.key("name").value(std::string("t_s1"));
    jw.key("seq").begin_array().value(1.0).value(2.0).end_array();
    jw.end_object();
    CHECK(jw.str() == "{\"branch\":2,\"qdot1\":0.5,\"ok\":true,\"name\":\"t_s1\",\"seq\":[1,2]}");
}

TEST_CASE("svg renders are deterministic") {
    const Trajectory traj = short_run();
    CHECK(render_trajectory_svg(traj) == render_trajectory_svg(traj));

    const DiagramScan scan =
        scan_diagram(1.0 / 3.0, GridSpec{-1.0, 2.0, 16}, GridSpec{-1.0, 3.0, 16}, 3);
    CHECK(render_diagram_svg(scan) == render_diagram_svg(scan));

    const MotionConstants mc = scale_constants(-1.0, -1.0, cfg13);
    const std::string region = render_region_svg(mc, cfg13);
    CHECK(region == render_region_svg(mc, cfg13));
    CHECK(region.find("<svg") == 0);
    CHECK(region.find("#d02020") != std::string::npos); // Coulomb-center dot
}

TEST_CASE("empty plots are rejected") {
    Trajectory empty;
    CHECK_THROWS_AS(render_trajectory_svg(empty), EmptyPlot);
    DiagramScan scan;
    CHECK_THROWS_AS(render_diagram_svg(scan), EmptyPlot);
    const MotionConstants forbidden = scale_constants(-10.0, 5.0, cfg13);
    CHECK_THROWS_AS(render_region_svg(forbidden, cfg13), ForbiddenRegion);
}

} // TEST_SUITE
