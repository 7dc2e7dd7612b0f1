#include "pairorbit/cli.hpp"
#include "pairorbit/classify.hpp"
#include "pairorbit/dynamics.hpp"
#include "pairorbit/errors.hpp"
#include "pairorbit/initcond.hpp"
#include "pairorbit/io.hpp"
#include "pairorbit/svg.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>

namespace pairorbit::cli {

namespace {

GridSpec parse_range(const std::string& spec) {
    GridSpec g{};
    const auto c1 = spec.find(':');
    const auto c2 = spec.find(':', c1 == std::string::npos ? c1 : c1 + 1);
    if (c1 == std::string::npos || c2 == std::string::npos)
        throw CLI::ValidationError("range", "expected start:stop:count, got '" + spec + "'");
    try {
        size_t p = 0;
        g.start = std::stod(spec.substr(0, c1), &p);
        g.stop = std::stod(spec.substr(c1 + 1, c2 - c1 - 1), &p);
        const std::string cnt = spec.substr(c2 + 1);
        g.count = std::stoi(cnt, &p);
        if (p != cnt.size())
            throw std::invalid_argument("trailing");
    } catch (const std::exception&) {
        throw CLI::ValidationError("range", "bad range '" + spec + "'");
    }
    if (!std::isfinite(g.start) || !std::isfinite(g.stop) || g.count < 1)
        throw CLI::ValidationError("range", "bad range '" + spec + "'");
    return g;
}

const CLI::Validator finite_check(
    [](std::string& s) -> std::string {
        try {
            size_t p = 0;
            const double v = std::stod(s, &p);
            if (p != s.size() || !std::isfinite(v))
                return "not a finite number: " + s;
        } catch (const std::exception&) {
            return "not a finite number: " + s;
        }
        return {};
    },
    "FINITE");

void write_file(const std::string& path, const std::string& content) {
    std::ofstream f(path, std::ios::binary);
    if (!f)
        throw Error("cannot open output file: " + path);
    f << content;
    if (!f)
        throw Error("failed writing: " + path);
}

// merged problem description: config file values overridden by flags
struct Problem {
    ConfigFile file;
    std::optional<double> alpha, x0, y0, h, lambda, q1, q2, X0, Y0;

    double need(const char* name, const std::optional<double>& flag,
                const std::optional<double>& from_file) const {
        if (flag)
            return *flag;
        if (from_file)
            return *from_file;
        throw CLI::ValidationError(std::string("missing required value: ") + name);
    }
    double get_or(const std::optional<double>& flag, const std::optional<double>& from_file,
                  double fallback) const {
        return flag ? *flag : (from_file ? *from_file : fallback);
    }

    PhysConfig config() const {
        return derive_config(need("alpha", alpha, file.alpha), need("x0", x0, file.x0),
                             need("y0", y0, file.y0));
    }
    MotionConstants constants(const PhysConfig& cfg) const {
        return scale_constants(need("h", h, file.h), need("lambda", lambda, file.lambda), cfg);
    }
    QPoint qstart() const {
        return QPoint{need("q1", q1, file.q1), need("q2", q2, file.q2)};
    }
    double cmX() const { return get_or(X0, file.X0, 0.0); }
    double cmY() const { return get_or(Y0, file.Y0, 0.0); }
};

void add_problem_flags(CLI::App* cmd, Problem& p, std::string& config_path) {
    cmd->set_help_flag("--help", "print help"); // frees -h for the energy flag
    cmd->add_option("--config", config_path, "problem config file (key = value lines)");
    auto opt = [&](const char* flag, std::optional<double>& slot, const char* desc) {
        cmd->add_option(flag, slot, desc)->check(finite_check);
    };
    opt("--alpha", p.alpha, "Coulomb/oscillator strength ratio");
    opt("--x0", p.x0, "oscillator x offset");
    opt("--y0", p.y0, "oscillator y offset");
    opt("--h", p.h, "reduced energy H");
    opt("--lambda", p.lambda, "second invariant Lambda");
    opt("--q1", p.q1, "initial relative-frame q1");
    opt("--q2", p.q2, "initial relative-frame q2");
    opt("--X0", p.X0, "initial center-of-mass X (default 0)");
    opt("--Y0", p.Y0, "initial center-of-mass Y (default 0)");
}

void classify_json(JsonWriter& jw, const RegionReport& rep, double alpha_a,
                   const MotionConstants& mc, const PhysConfig& cfg) {
    jw.begin_object();
    jw.key("alpha_a").value(alpha_a);
    jw.key("h_a").value(mc.h_a);
    jw.key("lambda_a").value(mc.lambda_a);
    jw.key("a").value(cfg.a);
    jw.key("labels").begin_array();
    for (OrbitLabel l : rep.labels)
        jw.value(std::string(label_name(l)));
    jw.end_array();
    jw.key("collision_possible").value(rep.collision_possible);
    jw.key("l1").value(rep.l1);
    jw.key("l2").value(rep.l2);
    auto intervals = [&](const char* k, const std::vector<Interval>& ivs) {
        jw.key(k).begin_array();
        for (const auto& iv : ivs) {
            jw.begin_array();
            jw.value(iv.lo).value(iv.hi);
            jw.end_array();
        }
        jw.end_array();
    };
    intervals("u_intervals", rep.intervals.u_intervals);
    intervals("v_intervals", rep.intervals.v_intervals);
    jw.key("caustics").begin_array();
    for (const auto& c : rep.caustics) {
        jw.begin_object();
        jw.key("kind").value(std::string(c.kind == CausticCurve::Kind::ellipse
                                             ? "ellipse"
                                             : "hyperbola"));
        jw.key("parameter").value(c.parameter);
        jw.key("c_q1sq").value(c.c_q1sq);
        jw.key("c_q2sq").value(c.c_q2sq);
        jw.key("c_const").value(c.c_const);
        jw.end_object();
    }
    jw.end_array();
    jw.end_object();
}

void branch_json(JsonWriter& jw, const VelocityBranch& b, const FullState& s) {
    jw.begin_object();
    jw.key("branch").value(b.branch_index);
    jw.key("qdot1").value(b.qdot1);
    jw.key("qdot2").value(b.qdot2);
    jw.key("x1").value(s.x1);
    jw.key("y1").value(s.y1);
    jw.key("x2").value(s.x2);
    jw.key("y2").value(s.y2);
    jw.key("vx1").value(s.vx1);
    jw.key("vy1").value(s.vy1);
    jw.key("vx2").value(s.vx2);
    jw.key("vy2").value(s.vy2);
    jw.key("residual_h").value(b.residual_h);
    jw.key("residual_lambda").value(b.residual_lambda);
    jw.end_object();
}

const char* termination_name(Termination t) {
    switch (t) {
        case Termination::time_limit: return "time_limit";
        case Termination::collision: return "collision";
        case Termination::step_failure: return "step_failure";
    }
    return "?";
}

void emit(const std::string& text, const std::string& path, std::ostream& out) {
    if (path.empty())
        out << text << '\n';
    else
        write_file(path, text + "\n");
}

int dispatch(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"electron-positron pair orbits in a constant magnetic field"};
    app.require_subcommand(1);

    // classify / caustics share the scaled-parameter surface
    struct ScaledArgs {
        double alpha_a = 0.0, h_a = 0.0, lambda_a = 0.0, a = 1.0;
        std::string json_path, svg_path;
    };
    ScaledArgs cls, cau;
    auto add_scaled = [&](CLI::App* cmd, ScaledArgs& sa) {
        cmd->add_option("--alpha-a", sa.alpha_a, "alpha_a = alpha/a^3")
            ->required()
            ->check(finite_check);
        cmd->add_option("--h-a", sa.h_a, "h_a = h/a^2")->required()->check(finite_check);
        cmd->add_option("--lambda-a", sa.lambda_a, "lambda_a = lambda/a^2")
            ->required()
            ->check(finite_check);
        cmd->add_option("--a", sa.a, "focus half-distance (default 1)")->check(finite_check);
        cmd->add_option("--json", sa.json_path, "write the JSON report here instead of stdout");
    };
    CLI::App* c_classify = app.add_subcommand("classify", "classify one diagram point");
    add_scaled(c_classify, cls);
    CLI::App* c_caustics = app.add_subcommand("caustics", "caustic curves of one diagram point");
    add_scaled(c_caustics, cau);
    c_caustics->add_option("--svg", cau.svg_path, "render the allowed region to this SVG file");

    // diagram
    struct DiagramArgs {
        double alpha_a = 0.0;
        std::string h_range, lambda_range, csv_path, svg_path;
        unsigned threads = 0;
    } dia;
    CLI::App* c_diagram = app.add_subcommand("diagram", "rasterize a bifurcation diagram");
    c_diagram->add_option("--alpha-a", dia.alpha_a, "alpha_a")->required()->check(finite_check);
    c_diagram->add_option("--h-a", dia.h_range, "h_a grid start:stop:count")->required();
    c_diagram->add_option("--lambda-a", dia.lambda_range, "lambda_a grid start:stop:count")
        ->required();
    c_diagram->add_option("--csv", dia.csv_path, "write cell labels CSV");
    c_diagram->add_option("--svg", dia.svg_path, "render the diagram SVG");
    c_diagram->add_option("--threads", dia.threads, "worker threads (0 = hardware)");

    // initcond / simulate / xcheck share the problem surface
    Problem p_init, p_sim, p_x;
    std::string cfg_init, cfg_sim, cfg_x;
    CLI::App* c_init = app.add_subcommand("initcond", "solve the velocity branches at q(0)");
    add_problem_flags(c_init, p_init, cfg_init);
    std::string init_json;
    c_init->add_option("--json", init_json, "write branch records here instead of stdout");

    struct SimArgs {
        int branch = 0;
        double t_start = 0.0, t_max = 0.0, tol = 1e-10, collision_radius = 1e-6;
        int samples = 1000;
        std::string csv_path, svg_path, rel_svg_path;
    } sim;
    CLI::App* c_sim = app.add_subcommand("simulate", "integrate the pair dynamics");
    add_problem_flags(c_sim, p_sim, cfg_sim);
    c_sim->add_option("--branch", sim.branch, "velocity branch index (default 0)");
    c_sim->add_option("--t-start", sim.t_start, "start time")->check(finite_check);
    c_sim->add_option("--t-max", sim.t_max, "end time")->required()->check(finite_check);
    c_sim->add_option("--samples", sim.samples, "number of output samples")
        ->check(CLI::PositiveNumber);
    c_sim->add_option("--tol", sim.tol, "integrator tolerance")->check(finite_check);
    c_sim->add_option("--collision-radius", sim.collision_radius,
                      "separation at which the pair counts as collided")
        ->check(finite_check);
    c_sim->add_option("--csv", sim.csv_path, "write the trajectory CSV");
    c_sim->add_option("--svg", sim.svg_path, "render the lab-frame orbit SVG");
    c_sim->add_option("--rel-svg", sim.rel_svg_path, "render the relative-orbit SVG");

    struct XArgs {
        int branch = 0;
        double t_max = 0.0, tol = 1e-10;
        int samples = 1000;
        std::string json_path;
    } xc;
    CLI::App* c_x = app.add_subcommand("xcheck", "cross-validate full vs separated integration");
    add_problem_flags(c_x, p_x, cfg_x);
    c_x->add_option("--branch", xc.branch, "velocity branch index (default 0)");
    c_x->add_option("--t-max", xc.t_max, "comparison horizon")->required()->check(finite_check);
    c_x->add_option("--tol", xc.tol, "integrator tolerance")->check(finite_check);
    c_x->add_option("--samples", xc.samples, "comparison points")->check(CLI::PositiveNumber);
    std::string xcheck_json;

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) { // --help
            out << app.help();
            return 0;
        }
        err << "error: " << e.what() << '\n';
        return 2;
    }

    auto load_config = [&](Problem& p, const std::string& path) {
        if (path.empty())
            return;
        try {
            p.file = parse_config_file(path);
        } catch (const Error& e) {
            throw CLI::ValidationError(e.what()); // config problems are input errors
        }
    };

    if (c_classify->parsed() || c_caustics->parsed()) {
        const ScaledArgs& sa = c_classify->parsed() ? cls : cau;
        const PhysConfig cfg = config_from_scaled(sa.alpha_a, sa.a);
        const MotionConstants mc = constants_from_scaled(sa.h_a, sa.lambda_a, cfg);
        RegionReport rep = classify_point(mc, cfg);
        rep.caustics = (rep.intervals.u_intervals.empty() || rep.intervals.v_intervals.empty())
                           ? std::vector<CausticCurve>{}
                           : caustics(mc, cfg);
        std::string svg;
        if (c_caustics->parsed() && !sa.svg_path.empty())
            svg = render_region_svg(mc, cfg); // may throw before any file exists
        JsonWriter jw;
        classify_json(jw, rep, sa.alpha_a, mc, cfg);
        emit(jw.str(), sa.json_path, out);
        if (!svg.empty())
            write_file(sa.svg_path, svg);
        return 0;
    }

    if (c_diagram->parsed()) {
        const GridSpec hg = parse_range(dia.h_range);
        const GridSpec lg = parse_range(dia.lambda_range);
        const DiagramScan scan = scan_diagram(dia.alpha_a, hg, lg, dia.threads);
        if (!dia.csv_path.empty()) {
            std::ostringstream ss;
            write_diagram_csv(ss, scan);
            write_file(dia.csv_path, ss.str());
        }
        if (!dia.svg_path.empty())
            write_file(dia.svg_path, render_diagram_svg(scan));
        JsonWriter jw;
        jw.begin_object();
        jw.key("cells").value(hg.count * lg.count);
        jw.key("delta_zero_points").value(static_cast<int>(scan.delta_zero.size()));
        jw.end_object();
        out << jw.str() << '\n';
        return 0;
    }

    if (c_init->parsed()) {
        load_config(p_init, cfg_init);
        const PhysConfig cfg = p_init.config();
        const MotionConstants mc = p_init.constants(cfg);
        const QPoint q = p_init.qstart();
        const auto branches = velocity_branches(q, mc, cfg);
        JsonWriter jw;
        jw.begin_array();
        for (const auto& b : branches)
            branch_json(jw, b, build_full_state(p_init.cmX(), p_init.cmY(), q, b, cfg));
        jw.end_array();
        emit(jw.str(), init_json, out);
        return 0;
    }

    if (c_sim->parsed()) {
        load_config(p_sim, cfg_sim);
        const PhysConfig cfg = p_sim.config();
        const MotionConstants mc = p_sim.constants(cfg);
        const QPoint q = p_sim.qstart();
        const auto branches = velocity_branches(q, mc, cfg);
        if (branches.empty())
            throw Error("q(0) lies outside the allowed region for (h, lambda): no velocity branch");
        if (sim.branch < 0 || sim.branch >= static_cast<int>(branches.size()))
            throw Error("branch index " + std::to_string(sim.branch) + " out of range (" +
                        std::to_string(branches.size()) + " branches)");
        const FullState ic =
            build_full_state(p_sim.cmX(), p_sim.cmY(), q, branches[sim.branch], cfg);
        IntegrationOptions opt;
        opt.tol = sim.tol;
        opt.collision_radius = sim.collision_radius;
        opt.samples = sim.samples;
        const Trajectory traj = integrate_full(ic, cfg, sim.t_start, sim.t_max, opt);

        if (!sim.csv_path.empty()) {
            std::ostringstream ss;
            write_trajectory_csv(ss, traj, cfg);
            write_file(sim.csv_path, ss.str());
        }
        if (!sim.svg_path.empty())
            write_file(sim.svg_path, render_trajectory_svg(traj));
        if (!sim.rel_svg_path.empty())
            write_file(sim.rel_svg_path, render_relative_svg(traj, mc, cfg));

        double worst = 0.0;
        for (const auto& s : traj.samples)
            worst = std::max(worst, s.monitors.max_drift());
        JsonWriter jw;
        jw.begin_object();
        jw.key("termination").value(std::string(termination_name(traj.termination)));
        jw.key("t_end").value(traj.t_end);
        jw.key("samples").value(static_cast<int>(traj.samples.size()));
        jw.key("max_monitor_drift").value(worst);
        jw.end_object();
        out << jw.str() << '\n';
        return 0;
    }

    if (c_x->parsed()) {
        load_config(p_x, cfg_x);
        const PhysConfig cfg = p_x.config();
        const MotionConstants mc = p_x.constants(cfg);
        const QPoint q = p_x.qstart();
        const auto branches = velocity_branches(q, mc, cfg);
        if (branches.empty())
            throw Error("q(0) lies outside the allowed region for (h, lambda): no velocity branch");
        if (xc.branch < 0 || xc.branch >= static_cast<int>(branches.size()))
            throw Error("branch index out of range");
        const FullState ic = build_full_state(p_x.cmX(), p_x.cmY(), q, branches[xc.branch], cfg);
        IntegrationOptions opt;
        opt.tol = xc.tol;
        opt.samples = xc.samples;
        const CrossCheckReport rep = cross_check(ic, cfg, mc, xc.t_max, opt);
        JsonWriter jw;
        jw.begin_object();
        jw.key("max_du").value(rep.max_du);
        jw.key("max_dv").value(rep.max_dv);
        jw.key("compared").value(rep.compared);
        jw.key("full_termination").value(std::string(termination_name(rep.full_termination)));
        jw.key("terminated_early").value(rep.full_terminated_early);
        jw.end_object();
        emit(jw.str(), xcheck_json, out);
        return 0;
    }

    err << "error: no command\n";
    return 2;
}

} // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    try {
        return dispatch(argc, argv, out, err);
    } catch (const CLI::ValidationError& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return 3;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return 3;
    }
}

} // namespace pairorbit::cli
