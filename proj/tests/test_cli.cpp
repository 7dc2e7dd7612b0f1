#include "pairorbit/cli.hpp"

#include <doctest.h>

#include <atomic>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace fs = std::filesystem;

namespace {

struct CliResult {
    int code;
    std::string out;
    std::string err;
};

CliResult run_cli(const std::vector<std::string>& args) {
    std::vector<const char*> argv{"pairorbit"};
    for (const auto& a : args)
        argv.push_back(a.c_str());
    std::ostringstream out, err;
    const int code =
        pairorbit::cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

struct TempDir {
    fs::path path;
    TempDir() {
        static std::atomic<int> counter{0};
        path = fs::temp_directory_path() /
               ("pairorbit_test_" + std::to_string(counter.fetch_add(1)));
        fs::remove_all(path);
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
    std::string file(const char* name) const { return (path / name).string(); }
};

std::string fig6_cfg(const TempDir& dir) {
    const std::string p = dir.file("fig6.cfg");
    std::ofstream f(p);
    f << "alpha = 0.3333333333333333\nx0 = 0\ny0 = 1\nh = -1\nlambda = -1\n"
         "q1 = -1.04\nq2 = 0.06\n";
    return p;
}

} // namespace

TEST_SUITE("cli") {

TEST_CASE("classify emits the fig-6 labels and caustics") {
    const CliResult r = run_cli({"classify", "--alpha-a", "0.3333333333333333", "--h-a", "-1",
                                 "--lambda-a", "-1"});
    CHECK(r.code == 0);
    CHECK(r.out.find("\"labels\":[\"t_s1\"]") != std::string::npos);
    CHECK(r.out.find("1.1085495") != std::string::npos);
    CHECK(r.out.find("-0.8875524") != std::string::npos);
    CHECK(r.out.find("\"collision_possible\":true") != std::string::npos);
}

TEST_CASE("missing required flags fail with exit 2") {
    const CliResult r = run_cli({"classify", "--alpha-a", "0.33"});
    CHECK(r.code == 2);
    CHECK(!r.err.empty());
}

TEST_CASE("non-finite flag values fail with exit 2") {
    const CliResult r =
        run_cli({"classify", "--alpha-a", "nan", "--h-a", "0", "--lambda-a", "0"});
    CHECK(r.code == 2);
}

TEST_CASE("bad range grammar fails before any file is written") {
    TempDir dir;
    const std::string csv = dir.file("diagram.csv");
    const CliResult r = run_cli({"diagram", "--alpha-a", "0.33", "--h-a", "0:1:notanumber",
                                 "--lambda-a", "0:1:5", "--csv", csv});
    CHECK(r.code == 2);
    CHECK_FALSE(fs::exists(csv));
}

TEST_CASE("diagram writes csv and svg") {
    TempDir dir;
    const std::string csv = dir.file("d.csv"), svg = dir.file("d.svg");
    const CliResult r = run_cli({"diagram", "--alpha-a", "0.3333333333333333", "--h-a",
                                 "-2:3:40", "--lambda-a", "-2:4:40", "--csv", csv, "--svg",
                                 svg, "--threads", "2"});
    CHECK(r.code == 0);
    REQUIRE(fs::exists(csv));
    REQUIRE(fs::exists(svg));
    std::ifstream f(csv);
    std::string header;
    std::getline(f, header);
    CHECK(header == "h_a,lambda_a,label");
    size_t rows = 0;
    std::string line;
    while (std::getline(f, line))
        ++rows;
    CHECK(rows == 40 * 40);
}

TEST_CASE("full-size diagram grid yields 160000 labeled rows") {
    TempDir dir;
    const std::string csv = dir.file("big.csv");
    const CliResult r = run_cli({"diagram", "--alpha-a", "0.3333333333333333", "--h-a",
                                 "-2:3:400", "--lambda-a", "-2:4:400", "--csv", csv});
    CHECK(r.code == 0);
    std::ifstream f(csv);
    std::string line;
    size_t rows = 0;
    std::getline(f, line); // header
    while (std::getline(f, line))
        ++rows;
    CHECK(rows == 160000);
}

TEST_CASE("initcond prints four fig-6 branches") {
    TempDir dir;
    const CliResult r = run_cli({"initcond", "--config", fig6_cfg(dir)});
    CHECK(r.code == 0);
    CHECK(r.out.find("\"branch\":0") != std::string::npos);
    CHECK(r.out.find("\"branch\":3") != std::string::npos);
    CHECK(r.out.find("-2.2830738661") != std::string::npos);
}

TEST_CASE("config file errors exit 2") {
    TempDir dir;
    const std::string bad = dir.file("bad.cfg");
    std::ofstream(bad) << "alpha = 0.3\nbogus_key = 1\n";
    const CliResult r = run_cli({"initcond", "--config", bad, "--q1", "0", "--q2", "1"});
    CHECK(r.code == 2);
    CHECK(r.err.find("bogus_key") != std::string::npos);
}

TEST_CASE("simulate runs fig 6 and writes deterministic outputs") {
    TempDir dir;
    const std::string cfg = fig6_cfg(dir);
    const std::string csv1 = dir.file("t1.csv"), csv2 = dir.file("t2.csv");
    const std::string svg1 = dir.file("o1.svg"), svg2 = dir.file("o2.svg");
    const CliResult r1 = run_cli({"simulate", "--config", cfg, "--branch", "0", "--t-max", "1",
                                  "--samples", "400", "--csv", csv1, "--svg", svg1});
    CHECK(r1.code == 0);
    CHECK(r1.out.find("\"termination\":\"time_limit\"") != std::string::npos);

    const CliResult r2 = run_cli({"simulate", "--config", cfg, "--branch", "0", "--t-max", "1",
                                  "--samples", "400", "--csv", csv2, "--svg", svg2});
    CHECK(r2.code == 0);
    CHECK(r1.out == r2.out);

    auto slurp = [](const std::string& p) {
        std::ifstream f(p, std::ios::binary);
        std::ostringstream ss;
        ss << f.rdbuf();
        return ss.str();
    };
    CHECK(slurp(csv1) == slurp(csv2));
    CHECK(slurp(svg1) == slurp(svg2));

    // drift column stays small end to end
    CHECK(r1.out.find("\"max_monitor_drift\":") != std::string::npos);
    const auto pos = r1.out.find("\"max_monitor_drift\":");
    const double drift = std::stod(r1.out.substr(pos + 21));
    CHECK(drift < 1e-8);
}

TEST_CASE("collision truncation is reported as success") {
    TempDir dir;
    const CliResult r = run_cli({"simulate", "--config", fig6_cfg(dir), "--t-max", "50",
                                 "--collision-radius", "0.01", "--samples", "50"});
    CHECK(r.code == 0);
    CHECK(r.out.find("\"termination\":\"collision\"") != std::string::npos);
}

TEST_CASE("simulate outside the allowed region exits 3") {
    TempDir dir;
    const std::string cfg = dir.file("bad.cfg");
    std::ofstream(cfg) << "alpha = 0.3333333333333333\nx0 = 0\ny0 = 1\nh = -1\nlambda = -1\n"
                          "q1 = 1.5\nq2 = 1.5\n";
    const CliResult r = run_cli({"simulate", "--config", cfg, "--t-max", "1"});
    CHECK(r.code == 3);
    CHECK(!r.err.empty());
}

TEST_CASE("branch index out of range exits 3") {
    TempDir dir;
    const CliResult r =
        run_cli({"simulate", "--config", fig6_cfg(dir), "--branch", "7", "--t-max", "1"});
    CHECK(r.code == 3);
}

TEST_CASE("xcheck reports sub-1e-5 agreement for the planetary case") {
    TempDir dir;
    const std::string cfg = dir.file("tp1.cfg");
    std::ofstream(cfg) << "alpha = 0.3333333333333333\nx0 = 0\ny0 = 1\nh = 1.6\nlambda = 2.2\n"
                          "q1 = 0.5\nq2 = 1\n";
    const CliResult r =
        run_cli({"xcheck", "--config", cfg, "--t-max", "10", "--samples", "300"});
    CHECK(r.code == 0);
    const auto pos = r.out.find("\"max_du\":");
    REQUIRE(pos != std::string::npos);
    CHECK(std::stod(r.out.substr(pos + 9)) < 1e-5);
    CHECK(r.out.find("\"terminated_early\":false") != std::string::npos);
}

TEST_CASE("caustics command renders a region svg") {
    TempDir dir;
    const std::string svg = dir.file("region.svg");
    const CliResult r = run_cli({"caustics", "--alpha-a", "0.3333333333333333", "--h-a", "-1",
                                 "--lambda-a", "-1", "--svg", svg});
    CHECK(r.code == 0);
    CHECK(fs::exists(svg));
    CHECK(r.out.find("\"kind\":\"ellipse\"") != std::string::npos);
    CHECK(r.out.find("\"kind\":\"hyperbola\"") != std::string::npos);
}

TEST_CASE("forbidden point still classifies but cannot render a region") {
    TempDir dir;
    const std::string svg = dir.file("nope.svg");
    const CliResult ok = run_cli({"classify", "--alpha-a", "0.33", "--h-a", "-10",
                                  "--lambda-a", "5"});
    CHECK(ok.code == 0);
    CHECK(ok.out.find("\"labels\":[\"forbidden\"]") != std::string::npos);
    const CliResult r = run_cli({"caustics", "--alpha-a", "0.33", "--h-a", "-10",
                                 "--lambda-a", "5", "--svg", svg});
    CHECK(r.code == 3);
    CHECK_FALSE(fs::exists(svg));
}

} // TEST_SUITE
