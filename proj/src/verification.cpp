#include "stokes/verification.hpp"

#include <cmath>
#include <future>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

#include "stokes/format.hpp"

namespace stokes {

double l2_error(const ScalarField& numeric, const std::function<double(double, double)>& oracle)
{
    const GridSpec& spec = numeric.spec();
    double sum = 0.0;
    for (int j = 0; j < spec.M(); ++j)
        for (int i = 0; i < spec.M(); ++i) {
            const Point q = node_coords(spec, numeric.role(), i, j);
            const double d = numeric(i, j) - oracle(q.x, q.y);
            sum += d * d;
        }
    return std::sqrt(sum / static_cast<double>(spec.nodes()));
}

double fit_order(const std::vector<std::pair<double, double>>& points)
{
    if (points.size() < 2)
        throw std::invalid_argument("order fit needs at least two points");
    double sx = 0.0, sy = 0.0;
    for (const auto& [dx, err] : points) {
        if (!(dx > 0.0) || !(err > 0.0))
            throw std::invalid_argument("order fit needs positive dx and error values");
        sx += std::log(dx);
        sy += std::log(err);
    }
    const double n = static_cast<double>(points.size());
    const double mx = sx / n;
    const double my = sy / n;
    double sxy = 0.0, sxx = 0.0;
    for (const auto& [dx, err] : points) {
        const double a = std::log(dx) - mx;
        sxy += a * (std::log(err) - my);
        sxx += a * a;
    }
    if (sxx == 0.0)
        throw std::invalid_argument("order fit needs at least two distinct dx values");
    return sxy / sxx;
}

ConvergenceRow solution_errors(const Solution& solution, const Scenario& scenario)
{
    if (!scenario.analytic)
        throw std::invalid_argument("scenario '" + scenario.tag + "' has no analytic solution");
    const auto& a = scenario.analytic;
    ConvergenceRow row;
    row.M = solution.M;
    row.dx = solution.spec().dx();
    row.E_p = l2_error(solution.p, [&](double x, double y) { return a(x, y).p; });
    row.E_u = l2_error(solution.u, [&](double x, double y) { return a(x, y).u; });
    row.E_v = l2_error(solution.v, [&](double x, double y) { return a(x, y).v; });
    return row;
}

void fit_report(ConvergenceReport& report)
{
    auto fit = [&](double ConvergenceRow::*member, bool& exact) {
        std::vector<std::pair<double, double>> pts;
        exact = true;
        bool positive = true;
        for (const ConvergenceRow& r : report.rows) {
            const double e = r.*member;
            exact = exact && e < kExactRegimeThreshold;
            positive = positive && e > 0.0;
            pts.emplace_back(r.dx, e);
        }
        if (!positive || report.rows.size() < 2)
            return std::numeric_limits<double>::quiet_NaN();
        return fit_order(pts);
    };
    report.order_p = fit(&ConvergenceRow::E_p, report.exact_p);
    report.order_u = fit(&ConvergenceRow::E_u, report.exact_u);
    report.order_v = fit(&ConvergenceRow::E_v, report.exact_v);
}

ConvergenceReport run_convergence(Method method, const Scenario& scenario,
                                  const std::vector<int>& Ms, const ConvergenceOptions& options)
{
    if (Ms.size() < 2)
        throw std::invalid_argument("convergence study needs at least two resolutions");
    for (std::size_t k = 1; k < Ms.size(); ++k)
        if (Ms[k] <= Ms[k - 1])
            throw std::invalid_argument("resolutions must be strictly increasing");
    if (!scenario.analytic)
        throw std::invalid_argument("scenario '" + scenario.tag + "' has no analytic solution");

    auto one = [&](int M) {
        try {
            return solution_errors(solve(method, scenario, M, options.projection_steps), scenario);
        } catch (const std::exception& e) {
            throw std::runtime_error("solve failed at M=" + std::to_string(M) + ": " + e.what());
        }
    };

    ConvergenceReport report;
    report.scenario_tag = scenario.tag;
    report.method_tag = std::string(to_string(method));
    if (options.parallel) {
        std::vector<std::future<ConvergenceRow>> jobs;
        for (int M : Ms)
            jobs.push_back(std::async(std::launch::async, one, M));
        for (auto& j : jobs)
            report.rows.push_back(j.get());
    } else {
        for (int M : Ms)
            report.rows.push_back(one(M));
    }
    fit_report(report);
    return report;
}

void write_convergence_csv(std::ostream& out, const ConvergenceReport& report)
{
    out << "M,dx,E_p,E_u,E_v\n";
    for (const ConvergenceRow& r : report.rows)
        out << r.M << ',' << fmt17(r.dx) << ',' << fmt17(r.E_p) << ',' << fmt17(r.E_u) << ','
            << fmt17(r.E_v) << '\n';
}

ConvergenceReport read_convergence_csv(std::istream& in)
{
    ConvergenceReport report;
    std::string line;
    if (!std::getline(in, line) || line != "M,dx,E_p,E_u,E_v")
        throw std::runtime_error("convergence CSV: unexpected header");
    while (std::getline(in, line)) {
        if (line.empty())
            continue;
        const std::vector<std::string> cells = split_csv(line);
        if (cells.size() != 5)
            throw std::runtime_error("convergence CSV: expected 5 columns in '" + line + "'");
        ConvergenceRow r;
        r.M = std::stoi(cells[0]);
        r.dx = parse_real(cells[1]);
        r.E_p = parse_real(cells[2]);
        r.E_u = parse_real(cells[3]);
        r.E_v = parse_real(cells[4]);
        report.rows.push_back(r);
    }
    fit_report(report);
    return report;
}

std::string convergence_json(const ConvergenceReport& report)
{
    nlohmann::ordered_json j;
    j["scenario"] = report.scenario_tag;
    j["method"] = report.method_tag;
    auto rows = nlohmann::ordered_json::array();
    for (const ConvergenceRow& r : report.rows)
        rows.push_back({{"M", r.M}, {"dx", r.dx}, {"E_p", r.E_p}, {"E_u", r.E_u}, {"E_v", r.E_v}});
    j["rows"] = rows;
    auto order = [](double v) { return std::isfinite(v) ? nlohmann::ordered_json(v) : nullptr; };
    j["fitted_order"] = {{"p", order(report.order_p)},
                         {"u", order(report.order_u)},
                         {"v", order(report.order_v)}};
    j["exact_regime"] = {{"p", report.exact_p}, {"u", report.exact_u}, {"v", report.exact_v}};
    return j.dump(2, ' ', false, nlohmann::ordered_json::error_handler_t::replace);
}

}  // namespace stokes
