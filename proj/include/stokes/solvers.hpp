#pragma once

#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "stokes/field.hpp"
#include "stokes/scenarios.hpp"
#include "stokes/sparse.hpp"

namespace stokes {

enum class Method { SaddlePoint, Decoupling, Projection };

std::string_view to_string(Method method);
/// Accepts "saddle", "saddle-point", "decoupling", "projection".
Method parse_method(std::string_view text);

/// Layout each method works on.
Layout method_layout(Method method);

struct Solution {
    ScalarField p;
    ScalarField u;
    ScalarField v;
    std::string method_tag;
    int M = 0;
    double wall_time = 0.0;  // seconds, assembly + solve + extraction
    std::vector<double> linear_residuals;

    const GridSpec& spec() const { return p.spec(); }
};

enum class GridMode { Collocated, Staggered };

/// Coupled velocity-pressure solve in one 3M^2 x 3M^2 system.
///
/// Staggered mode uses the MAC layout. Boundary rows replace the momentum or
/// continuity equation of the variable that sits on or next to each wall.
/// Collocated mode keeps the wide centred pressure gradient and exists to show
/// the odd-even pressure mode it admits; its system is singular but
/// consistent, so any solution the backend returns is accepted.
///
/// Throws std::invalid_argument for varying viscosity.
Solution solve_saddle_point(const Scenario& scenario, int M, GridMode mode = GridMode::Staggered,
                            const SolveOptions& options = {});

/// Pressure Poisson solve followed by one Poisson solve per velocity
/// component, all on the collocated grid. Throws std::invalid_argument for
/// varying viscosity.
Solution solve_decoupling(const Scenario& scenario, int M, const SolveOptions& options = {});

/// Pressure Laplacian used in the projection step: the five-point stencil, or
/// the composition of the averaged divergence and gradient.
enum class PressureLaplacian { FivePoint, Composition };

struct DtPolicy {
    enum class Kind { DxSquared, Explicit } kind = Kind::DxSquared;
    double dt = 0.0;

    static DtPolicy dx_squared() { return {}; }
    static DtPolicy fixed(double dt) { return {Kind::Explicit, dt}; }

    /// Throws std::invalid_argument for a non-positive explicit step.
    double resolve(double dx) const;
};

struct ProjectionState {
    ScalarField u;
    ScalarField v;
    ScalarField p;
    double t = 0.0;
    double dt = 0.0;

    /// Zero velocity and pressure at t = 0 on a projection-staggered grid.
    static ProjectionState at_rest(const GridSpec& spec, double dt);
};

/// Advances ProjectionStates by one step:
///   1. u* = u + dt (div(mu (grad u + grad u^T)) + f)   explicit
///   2. Lap p = div(u*) / dt                           one Poisson solve
///   3. u  = u* - dt grad p                            explicit
/// The pressure matrix is factorized once at construction.
class ProjectionStepper {
public:
    ProjectionStepper(const Scenario& scenario, const GridSpec& spec,
                      PressureLaplacian laplacian = PressureLaplacian::FivePoint,
                      const SolveOptions& options = {});
    ~ProjectionStepper();
    ProjectionStepper(ProjectionStepper&&) noexcept;
    ProjectionStepper& operator=(ProjectionStepper&&) noexcept;

    /// Throws std::invalid_argument when dt <= 0 or the state is on another grid.
    ProjectionState step(const ProjectionState& state) const;

    /// Relative residual of the last pressure solve.
    double last_residual() const;

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

/// One step with a freshly assembled stepper; `force` overrides the scenario's.
ProjectionState projection_step(const ProjectionState& state, const Scenario& scenario,
                                 const ForceField& force);

/// Runs n_steps from rest and reports the final state. Throws
/// std::invalid_argument when n_steps < 1.
Solution solve_projection(const Scenario& scenario, int M, int n_steps = 1,
                          DtPolicy dt_policy = DtPolicy::dx_squared(),
                          PressureLaplacian laplacian = PressureLaplacian::FivePoint,
                          const SolveOptions& options = {});

/// Dispatches to the method with its default settings (staggered saddle
/// point, one projection step with dt = dx^2).
Solution solve(Method method, const Scenario& scenario, int M, int projection_steps = 1);

/// Odd-even contrast of a pressure field, in [0, 1].
///
/// The field's least-squares plane in (i, j) is removed first. For each of the
/// parity splits (i + j), i and j the absolute difference between the mean of
/// the even class and the mean of the odd class is taken; the largest one is
/// divided by the raw value range (0 when the range is 0).
double checkerboard_metric(const ScalarField& p);

/// Max-norm of the discrete divergence of (u, v) at the nodes where the
/// layout's divergence stencil needs no boundary data.
double divergence_max_norm(const ScalarField& u, const ScalarField& v);

/// A solution resampled to one shared set of output nodes: velocity nodes on
/// the projection grid (p averaged from its four neighbours), cell centres on
/// the MAC grid (u and v averaged from the two bounding faces), the nodes
/// themselves on the collocated grid. Ghost values come from `bc`.
struct NodalSolution {
    std::vector<Point> xy;
    std::vector<double> p;
    std::vector<double> u;
    std::vector<double> v;
    std::string note;  // which quantities were interpolated
};

NodalSolution to_nodal(const Solution& solution, const BoundarySet& bc);

/// Bilinear interpolation of a collocated field at (x, y) inside the domain.
double interpolate_collocated(const ScalarField& f, double x, double y);

}  // namespace stokes
