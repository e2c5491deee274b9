#pragma once

#include <functional>
#include <optional>
#include <string>

#include "stokes/boundary.hpp"
#include "stokes/stencils.hpp"

namespace stokes {

struct ForceValue {
    double f1 = 0.0;
    double f2 = 0.0;
};

/// Body force density as a function of position.
using ForceField = std::function<ForceValue(double, double)>;

struct FlowValue {
    double p = 0.0;
    double u = 0.0;
    double v = 0.0;
};

using AnalyticSolution = std::function<FlowValue(double, double)>;

/// Pressure-driven channel flow on the unit square.
struct PipeParams {
    double p0 = 200.0;  // pressure on the left edge
    double p1 = 100.0;  // pressure on the right edge
    double mu = 2.0;
};

/// Static circular membrane of radius R whose leftmost point sits L from the
/// left edge; the centre is at (R + L, 0).
struct VesicleParams {
    double R = 5.0;
    double L = 5.0;
    double eps = 2.5;  // mollification half-width, R/2 by default
    double mu = 1.0;   // viscosity outside (and inside unless mu_inside is set)
    std::optional<double> mu_inside;

    static VesicleParams with_radius(double R, double L)
    {
        VesicleParams p;
        p.R = R;
        p.L = L;
        p.eps = R / 2.0;
        return p;
    }
};

struct Scenario {
    std::string tag;
    double x0 = 0.0;
    double y0 = 0.0;
    double width = 1.0;
    double height = 1.0;
    BoundarySet bcs;
    ForceField force;
    ViscosityField viscosity = ViscosityField::constant(1.0);
    AnalyticSolution analytic;  // empty when no closed form is known

    GridSpec grid(int M, Layout layout) const
    {
        return build_grid(M, width, height, layout, x0, y0);
    }
};

/// p: Dirichlet p0 left, p1 right, zero d/dy top and bottom.
/// u: no-slip top and bottom, zero d/dx left and right. v: zero on every edge.
BoundarySet pipe_bcs(const PipeParams& params);

FlowValue pipe_analytic(const PipeParams& params, double x, double y);

double signed_distance(const VesicleParams& params, double x, double y);

/// Regularised gradient of the signed distance; the machine epsilon under the
/// square root keeps it finite at the centre.
ForceValue signed_distance_gradient(const VesicleParams& params, double x, double y);

/// Cosine-mollified delta (1 + cos(pi z / eps)) / (2 eps) on |z| <= eps.
double mollified_delta(double z, double eps);

/// Curvature-weighted surface force (1/R) delta(z) grad z.
ForceValue membrane_force(const VesicleParams& params, double x, double y);

/// Pressure jump across the membrane smoothed by the same mollifier; u = v = 0.
FlowValue vesicle_analytic(const VesicleParams& params, double x, double y);

/// Viscosity field for the vesicle: constant mu, or a smooth blend from mu
/// outside to mu_inside across the mollification band.
ViscosityField vesicle_viscosity(const VesicleParams& params);

/// Throws std::invalid_argument when mu <= 0.
Scenario make_pipe(const PipeParams& params);

/// Domain (0, 20) x (-10, 10) for the default R = L = 5, homogeneous Dirichlet
/// data on every variable. The analytic solution is attached only for constant
/// viscosity. Throws std::invalid_argument for non-positive R, L, eps or mu.
Scenario make_vesicle(const VesicleParams& params);

}  // namespace stokes
