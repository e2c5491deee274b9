#pragma once

#include <functional>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "stokes/field.hpp"
#include "stokes/scenarios.hpp"
#include "stokes/solvers.hpp"

namespace stokes {

/// sqrt(sum (f_ij - oracle(x_ij, y_ij))^2 / M^2), with the oracle sampled at
/// the field's own node coordinates.
double l2_error(const ScalarField& numeric, const std::function<double(double, double)>& oracle);

/// Least-squares slope of log(error) against log(dx). Throws
/// std::invalid_argument for fewer than two points or non-positive values.
double fit_order(const std::vector<std::pair<double, double>>& points);

/// Errors below this at every resolution mark a variable as exactly reproduced.
inline constexpr double kExactRegimeThreshold = 1e-10;

struct ConvergenceRow {
    int M = 0;
    double dx = 0.0;
    double E_p = 0.0;
    double E_u = 0.0;
    double E_v = 0.0;
};

struct ConvergenceReport {
    std::string scenario_tag;
    std::string method_tag;
    std::vector<ConvergenceRow> rows;  // increasing M, decreasing dx
    // Fitted orders; NaN when a variable is in the exact regime or has a zero error.
    double order_p = 0.0;
    double order_u = 0.0;
    double order_v = 0.0;
    bool exact_p = false;
    bool exact_u = false;
    bool exact_v = false;
};

struct ConvergenceOptions {
    int projection_steps = 1;
    bool parallel = false;  // solve the resolutions concurrently
};

/// Solves at every M and compares against the scenario's analytic solution.
/// Throws std::invalid_argument when Ms has fewer than two entries, is not
/// strictly increasing, or the scenario has no analytic solution. Solver
/// failures are rethrown as std::runtime_error naming the failing M.
ConvergenceReport run_convergence(Method method, const Scenario& scenario,
                                  const std::vector<int>& Ms,
                                  const ConvergenceOptions& options = {});

/// Errors of an existing solution against the scenario's analytic solution.
ConvergenceRow solution_errors(const Solution& solution, const Scenario& scenario);

/// Fills the fitted orders and exact-regime flags from rows.
void fit_report(ConvergenceReport& report);

/// Columns M, dx, E_p, E_u, E_v; reals with 17 significant digits.
void write_convergence_csv(std::ostream& out, const ConvergenceReport& report);
/// Reads rows written by write_convergence_csv; orders are refitted.
ConvergenceReport read_convergence_csv(std::istream& in);
std::string convergence_json(const ConvergenceReport& report);

}  // namespace stokes
