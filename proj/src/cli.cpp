#include "stokes/cli.hpp"

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "stokes/bench.hpp"
#include "stokes/format.hpp"
#include "stokes/solvers.hpp"
#include "stokes/verification.hpp"

namespace stokes {

namespace {

struct RunConfig {
    std::string method = "projection";
    std::string scenario = "vesicle";
    int M = 50;
    std::vector<int> Ms;
    int repeats = 10;
    int steps = 1;
    std::optional<double> dt;
    std::string out;
    std::string format = "csv";
    std::string grid = "staggered";
    std::string laplacian = "five-point";
    bool parallel = false;
    std::optional<double> p0, p1, mu, R, L, eps, mu_inside;
    std::optional<long> seed;  // accepted for interface stability; nothing is random
};

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

Scenario build_scenario(const RunConfig& c, Method method)
{
    if (c.scenario == "pipe") {
        if (c.R || c.L || c.eps || c.mu_inside)
            throw UsageError("--R, --L, --eps and --mu-inside apply to the vesicle scenario only");
        PipeParams p;
        p.p0 = c.p0.value_or(method == Method::Decoupling ? 0.0 : 200.0);
        p.p1 = c.p1.value_or(100.0);
        p.mu = c.mu.value_or(2.0);
        return make_pipe(p);
    }
    if (c.scenario == "vesicle") {
        if (c.p0 || c.p1)
            throw UsageError("--p0 and --p1 apply to the pipe scenario only");
        VesicleParams v = VesicleParams::with_radius(c.R.value_or(5.0), c.L.value_or(5.0));
        if (c.eps)
            v.eps = *c.eps;
        v.mu = c.mu.value_or(1.0);
        v.mu_inside = c.mu_inside;
        return make_vesicle(v);
    }
    throw UsageError("unknown scenario '" + c.scenario + "' (expected pipe or vesicle)");
}

void check_viscosity(const Scenario& s, Method m)
{
    if (m != Method::Projection && !s.viscosity.is_constant())
        throw UsageError(std::string(to_string(m)) +
                         " requires constant viscosity; this method cannot be used in that case");
}

/// Writes to the file named by `path`, or to `fallback` when path is empty.
void emit(const std::string& path, std::ostream& fallback, const std::string& text)
{
    if (path.empty()) {
        fallback << text;
        return;
    }
    std::ofstream f(path, std::ios::binary);
    if (!f)
        throw std::runtime_error("cannot open '" + path + "' for writing");
    f << text;
    if (!f)
        throw std::runtime_error("failed writing '" + path + "'");
}

std::string sidecar_path(const std::string& path)
{
    return std::filesystem::path(path).replace_extension(".json").string();
}

int run_solve(const RunConfig& c, std::ostream& out)
{
    const Method method = parse_method(c.method);
    const Scenario sc = build_scenario(c, method);
    check_viscosity(sc, method);
    if (c.grid != "staggered" && c.grid != "collocated")
        throw UsageError("--grid must be staggered or collocated");
    if (c.grid == "collocated" && method != Method::SaddlePoint)
        throw UsageError("--grid collocated is only available for the saddle method");

    Solution sol = [&] {
        switch (method) {
        case Method::SaddlePoint:
            return solve_saddle_point(sc, c.M, c.grid == "collocated" ? GridMode::Collocated
                                                                      : GridMode::Staggered);
        case Method::Decoupling: return solve_decoupling(sc, c.M);
        case Method::Projection:
            return solve_projection(sc, c.M, c.steps,
                                    c.dt ? DtPolicy::fixed(*c.dt) : DtPolicy::dx_squared(),
                                    c.laplacian == "composition" ? PressureLaplacian::Composition
                                                                 : PressureLaplacian::FivePoint);
        }
        throw std::logic_error("unhandled method");
    }();
    const NodalSolution nodal = to_nodal(sol, sc.bcs);

    std::ostringstream s;
    if (c.format == "json") {
        nlohmann::ordered_json j;
        j["method"] = sol.method_tag;
        j["scenario"] = sc.tag;
        j["M"] = sol.M;
        j["layout"] = std::string(to_string(sol.spec().layout()));
        j["note"] = nodal.note;
        j["linear_residuals"] = sol.linear_residuals;
        std::vector<double> x, y;
        for (const Point& q : nodal.xy) {
            x.push_back(q.x);
            y.push_back(q.y);
        }
        j["x"] = x;
        j["y"] = y;
        j["p"] = nodal.p;
        j["u"] = nodal.u;
        j["v"] = nodal.v;
        s << j.dump(2) << '\n';
    } else {
        s << "# method=" << sol.method_tag << " scenario=" << sc.tag << " M=" << sol.M
          << " layout=" << to_string(sol.spec().layout()) << '\n';
        s << "# " << nodal.note << '\n';
        s << "x,y,p,u,v\n";
        for (std::size_t k = 0; k < nodal.xy.size(); ++k)
            s << fmt17(nodal.xy[k].x) << ',' << fmt17(nodal.xy[k].y) << ',' << fmt17(nodal.p[k])
              << ',' << fmt17(nodal.u[k]) << ',' << fmt17(nodal.v[k]) << '\n';
    }
    emit(c.out, out, s.str());
    return 0;
}

int run_converge(const RunConfig& c, std::ostream& out)
{
    const Method method = parse_method(c.method);
    const Scenario sc = build_scenario(c, method);
    check_viscosity(sc, method);
    const std::vector<int> Ms = c.Ms.empty() ? std::vector<int>{25, 50, 75, 100} : c.Ms;
    ConvergenceOptions opt;
    opt.projection_steps = c.steps;
    opt.parallel = c.parallel;
    const ConvergenceReport report = run_convergence(method, sc, Ms, opt);
    if (c.format == "json") {
        emit(c.out, out, convergence_json(report) + "\n");
        return 0;
    }
    std::ostringstream s;
    write_convergence_csv(s, report);
    emit(c.out, out, s.str());
    if (!c.out.empty())
        emit(sidecar_path(c.out), out, convergence_json(report) + "\n");
    return 0;
}

int run_bench(const RunConfig& c, std::ostream& out)
{
    const std::vector<int> Ms =
        c.Ms.empty() ? std::vector<int>{25, 50, 75, 100, 150, 200} : c.Ms;
    std::vector<TimingSample> samples;
    for (int M : Ms)
        for (Method m : {Method::SaddlePoint, Method::Decoupling, Method::Projection}) {
            const Scenario sc = build_scenario(c, m);
            check_viscosity(sc, m);
            samples.push_back(time_solver(m, sc, M, c.repeats));
        }
    const RatioReport ratios = timing_ratios(samples);
    if (c.format == "json") {
        emit(c.out, out, timing_json(samples, ratios) + "\n");
        return 0;
    }
    std::ostringstream s;
    write_timing_csv(s, samples);
    emit(c.out, out, s.str());
    if (!c.out.empty())
        emit(sidecar_path(c.out), out, timing_json(samples, ratios) + "\n");
    return 0;
}

int run_checkerboard(const RunConfig& c, std::ostream& out)
{
    RunConfig pc = c;
    pc.scenario = "pipe";
    const Scenario sc = build_scenario(pc, Method::SaddlePoint);
    const double col = checkerboard_metric(solve_saddle_point(sc, c.M, GridMode::Collocated).p);
    const double stag = checkerboard_metric(solve_saddle_point(sc, c.M, GridMode::Staggered).p);
    std::ostringstream s;
    if (c.format == "json") {
        nlohmann::ordered_json j{{"M", c.M}, {"collocated", col}, {"staggered", stag}};
        s << j.dump(2) << '\n';
    } else {
        s << "M,collocated,staggered\n" << c.M << ',' << fmt17(col) << ',' << fmt17(stag) << '\n';
    }
    emit(c.out, out, s.str());
    return 0;
}

void add_common(CLI::App* app, RunConfig& c)
{
    app->add_option("--scenario", c.scenario, "pipe or vesicle");
    app->add_option("--out", c.out, "output file (stdout when omitted)");
    app->add_option("--format", c.format, "csv or json")
        ->check(CLI::IsMember({"csv", "json"}));
    app->add_option("--p0", c.p0, "pipe: left pressure");
    app->add_option("--p1", c.p1, "pipe: right pressure");
    app->add_option("--mu", c.mu, "viscosity (outside the vesicle)");
    app->add_option("--R", c.R, "vesicle radius");
    app->add_option("--L", c.L, "vesicle distance from the left wall");
    app->add_option("--eps", c.eps, "mollification half-width (default R/2)");
    app->add_option("--mu-inside", c.mu_inside, "vesicle: viscosity inside the membrane");
    app->add_option("--seed", c.seed, "reserved; all algorithms are deterministic");
}

}  // namespace

int parse_and_dispatch(int argc, const char* const* argv, std::ostream& out, std::ostream& err)
{
    RunConfig c;
    CLI::App app{"2D Stokes flow solvers: saddle-point, decoupling and projection"};
    app.require_subcommand(1);

    auto* solve_cmd = app.add_subcommand("solve", "solve once and write the fields");
    add_common(solve_cmd, c);
    solve_cmd->add_option("--method", c.method, "saddle, decoupling or projection");
    solve_cmd->add_option("--M", c.M, "nodes per direction")->check(CLI::Range(3, 100000));
    solve_cmd->add_option("--steps", c.steps, "projection time steps")->check(CLI::PositiveNumber);
    solve_cmd->add_option("--dt", c.dt, "explicit projection time step (default dx^2)")
        ->check(CLI::PositiveNumber);
    solve_cmd->add_option("--grid", c.grid, "saddle grid: staggered or collocated");
    solve_cmd->add_option("--laplacian", c.laplacian, "projection pressure Laplacian")
        ->check(CLI::IsMember({"five-point", "composition"}));

    auto* conv_cmd = app.add_subcommand("converge", "convergence study against the analytic solution");
    add_common(conv_cmd, c);
    conv_cmd->add_option("--method", c.method, "saddle, decoupling or projection");
    conv_cmd->add_option("--Ms", c.Ms, "comma-separated resolutions")->delimiter(',');
    conv_cmd->add_option("--steps", c.steps, "projection time steps")->check(CLI::PositiveNumber);
    conv_cmd->add_flag("--parallel", c.parallel, "solve resolutions concurrently");

    auto* bench_cmd = app.add_subcommand("bench", "time all three methods");
    add_common(bench_cmd, c);
    bench_cmd->add_option("--Ms", c.Ms, "comma-separated resolutions")->delimiter(',');
    bench_cmd->add_option("--repeats", c.repeats, "timed runs per sample")
        ->check(CLI::PositiveNumber);

    auto* cb_cmd = app.add_subcommand("checkerboard", "pipe pressure odd-even contrast");
    add_common(cb_cmd, c);
    cb_cmd->add_option("--M", c.M, "nodes per direction")->check(CLI::Range(3, 100000));

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        std::string msg = e.what();
        for (char& ch : msg)
            if (ch == '\n')
                ch = ' ';
        err << "error: " << msg << '\n';
        return 2;
    }

    try {
        if (cb_cmd->parsed() && cb_cmd->count("--M") == 0)
            c.M = 20;
        if (solve_cmd->parsed())
            return run_solve(c, out);
        if (conv_cmd->parsed())
            return run_converge(c, out);
        if (bench_cmd->parsed())
            return run_bench(c, out);
        return run_checkerboard(c, out);
    } catch (const UsageError& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::string msg = e.what();
        for (char& ch : msg)
            if (ch == '\n')
                ch = ' ';
        err << "error: " << msg << '\n';
        return 1;
    }
}

}  // namespace stokes
