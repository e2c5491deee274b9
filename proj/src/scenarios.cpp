#include "stokes/scenarios.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace stokes {

BoundarySet pipe_bcs(const PipeParams& params)
{
    BoundarySet bc;
    bc.set(VariableRole::P, Edge::Left, Condition::dirichlet(params.p0));
    bc.set(VariableRole::P, Edge::Right, Condition::dirichlet(params.p1));
    bc.set(VariableRole::P, Edge::Bottom, Condition::neumann(0.0));
    bc.set(VariableRole::P, Edge::Top, Condition::neumann(0.0));

    bc.set(VariableRole::U, Edge::Left, Condition::neumann(0.0));
    bc.set(VariableRole::U, Edge::Right, Condition::neumann(0.0));
    bc.set(VariableRole::U, Edge::Bottom, Condition::dirichlet(0.0));
    bc.set(VariableRole::U, Edge::Top, Condition::dirichlet(0.0));

    bc.set_all(VariableRole::V, Condition::dirichlet(0.0));
    return bc;
}

FlowValue pipe_analytic(const PipeParams& params, double x, double y)
{
    const double dp = params.p1 - params.p0;
    return {params.p0 + x * dp, dp * y * (y - 1.0) / (2.0 * params.mu), 0.0};
}

double signed_distance(const VesicleParams& params, double x, double y)
{
    const double dx = x - (params.R + params.L);
    return std::sqrt(dx * dx + y * y) - params.R;
}

ForceValue signed_distance_gradient(const VesicleParams& params, double x, double y)
{
    const double dx = x - (params.R + params.L);
    const double r = std::sqrt(dx * dx + y * y + std::numeric_limits<double>::epsilon());
    return {dx / r, y / r};
}

double mollified_delta(double z, double eps)
{
    if (std::abs(z) > eps)
        return 0.0;
    return (1.0 + std::cos(std::numbers::pi * z / eps)) / (2.0 * eps);
}

ForceValue membrane_force(const VesicleParams& params, double x, double y)
{
    const double d = mollified_delta(signed_distance(params, x, y), params.eps);
    if (d == 0.0)
        return {0.0, 0.0};
    const ForceValue n = signed_distance_gradient(params, x, y);
    const double s = d / params.R;
    return {s * n.f1, s * n.f2};
}

FlowValue vesicle_analytic(const VesicleParams& params, double x, double y)
{
    const double z = signed_distance(params, x, y);
    const double eps = params.eps;
    double p = 0.0;
    if (z < -eps)
        p = -1.0 / params.R;
    else if (z <= eps)
        p = -(1.0 - z / eps - std::sin(std::numbers::pi * z / eps) / std::numbers::pi) /
            (2.0 * params.R);
    return {p, 0.0, 0.0};
}

ViscosityField vesicle_viscosity(const VesicleParams& params)
{
    if (!params.mu_inside || *params.mu_inside == params.mu)
        return ViscosityField::constant(params.mu);
    const double outside = params.mu;
    const double inside = *params.mu_inside;
    return ViscosityField::varying([params, outside, inside](double x, double y) {
        // smoothed indicator of the interior, 1 inside and 0 outside
        const double z = signed_distance(params, x, y);
        const double eps = params.eps;
        double h = 0.0;
        if (z < -eps)
            h = 1.0;
        else if (z <= eps)
            h = 0.5 * (1.0 - z / eps - std::sin(std::numbers::pi * z / eps) / std::numbers::pi);
        return outside + (inside - outside) * h;
    });
}

Scenario make_pipe(const PipeParams& params)
{
    if (!(params.mu > 0.0))
        throw std::invalid_argument("pipe viscosity must be positive");
    Scenario s;
    s.tag = "pipe";
    s.bcs = pipe_bcs(params);
    s.force = [](double, double) { return ForceValue{}; };
    s.viscosity = ViscosityField::constant(params.mu);
    s.analytic = [params](double x, double y) { return pipe_analytic(params, x, y); };
    return s;
}

Scenario make_vesicle(const VesicleParams& params)
{
    if (!(params.R > 0.0) || !(params.L > 0.0))
        throw std::invalid_argument("vesicle R and L must be positive");
    if (!(params.eps > 0.0))
        throw std::invalid_argument("vesicle eps must be positive");
    if (!(params.mu > 0.0) || (params.mu_inside && !(*params.mu_inside > 0.0)))
        throw std::invalid_argument("vesicle viscosity must be positive");

    Scenario s;
    s.tag = "vesicle";
    s.width = 2.0 * (params.R + params.L);
    s.height = s.width;
    s.x0 = 0.0;
    s.y0 = -0.5 * s.height;
    s.bcs = BoundarySet::homogeneous_dirichlet();
    s.force = [params](double x, double y) { return membrane_force(params, x, y); };
    s.viscosity = vesicle_viscosity(params);
    if (s.viscosity.is_constant())
        s.analytic = [params](double x, double y) { return vesicle_analytic(params, x, y); };
    return s;
}

}  // namespace stokes
