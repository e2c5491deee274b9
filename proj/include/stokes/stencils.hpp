#pragma once

#include <array>
#include <functional>
#include <utility>
#include <vector>

#include "stokes/boundary.hpp"
#include "stokes/field.hpp"
#include "stokes/grid.hpp"

namespace stokes {

// ---------------------------------------------------------------------------
// 1D difference formulas
// ---------------------------------------------------------------------------

/// Three-point formula: f'(t) or f''(t) ~ sum_k weights[k] * f(t + offsets[k] * h).
struct Coeffs3 {
    std::array<int, 3> offsets{};
    std::array<double, 3> weights{};
    double h = 1.0;

    double apply(const std::function<double(double)>& f, double t) const
    {
        double s = 0.0;
        for (std::size_t k = 0; k < 3; ++k)
            s += weights[k] * f(t + offsets[k] * h);
        return s;
    }
};

enum class Direction { Forward, Backward };

Coeffs3 centered_first(double h);
Coeffs3 centered_second(double h);
Coeffs3 onesided_first(double h, Direction direction);

// ---------------------------------------------------------------------------
// Stencil rows
// ---------------------------------------------------------------------------

struct NodeRef {
    VariableRole role = VariableRole::P;
    int i = 0;
    int j = 0;

    friend bool operator==(const NodeRef&, const NodeRef&) = default;
};

struct StencilEntry {
    NodeRef node;
    double coeff = 0.0;
};

/// One discrete equation centred on `target`.
///
/// Applied to fields the row evaluates to sum(coeff * value) + rhs_shift, where
/// rhs_shift collects known boundary data. Operator rows approximate a
/// derivative at the target. Constraint rows (boundary conditions on nodes that
/// sit on a wall) evaluate to zero exactly when the condition holds.
struct StencilRow {
    NodeRef target;
    std::vector<StencilEntry> entries;
    double rhs_shift = 0.0;
    bool constraint = false;
};

/// Field lookup for applying rows; unset roles must not be referenced.
struct Fields {
    const ScalarField* p = nullptr;
    const ScalarField* u = nullptr;
    const ScalarField* v = nullptr;

    const ScalarField& get(VariableRole role) const;
};

double apply_row(const StencilRow& row, const Fields& fields);

/// Applies operator rows and scatters the results into a field of the target role.
ScalarField apply_rows(const std::vector<StencilRow>& rows, const Fields& fields,
                       const GridSpec& spec, VariableRole target_role);

/// Linear combination of stored nodes plus a constant, used to express ghost
/// and unstored wall values in terms of unknowns.
struct LinearExpr {
    std::vector<StencilEntry> terms;
    double constant = 0.0;

    void add(const LinearExpr& other, double scale);
};

/// Value at lattice index (i, j) of `role`, which may lie one layer outside the
/// stored range, expressed through stored nodes and boundary data.
///
/// Half-cell walls use quadratic ghost extrapolation for Dirichlet data,
/// ghost = (8 g - 6 x0 + x1) / 3, and the centred wall derivative for Neumann
/// data. Unstored wall nodes take the Dirichlet value or are eliminated with
/// the one-sided three-point derivative. Corner ghosts resolve the x direction
/// first. Throws std::logic_error for indices no rule covers.
LinearExpr resolve_node(const GridSpec& spec, VariableRole role, const BoundarySet& bc, int i,
                        int j);

/// Nodes of `role` stored on a wall; these carry constraint rows.
bool on_stored_wall(const GridSpec& spec, VariableRole role, int i, int j);

/// Constraint row for a stored wall node. At corners a Dirichlet edge wins,
/// ties go left, right, bottom, top.
StencilRow boundary_constraint_row(const GridSpec& spec, VariableRole role,
                                   const BoundarySet& bc, int i, int j);

struct GradientRows {
    std::vector<StencilRow> x;  // d/dx, targets on U nodes
    std::vector<StencilRow> y;  // d/dy, targets on V nodes
};

/// Half-cell pressure differences p_x = (p_{i+1,j} - p_{i,j}) / dx at U nodes
/// (and the y analogue at V nodes) for every velocity node not on the high wall.
GradientRows mac_gradient_rows(const GridSpec& spec);

/// u_x + v_y at P cells from the two bounding faces per direction. Without
/// boundary data only cells whose faces are all stored (i, j >= 1) get rows.
std::vector<StencilRow> mac_divergence_rows(const GridSpec& spec);
std::vector<StencilRow> mac_divergence_rows(const GridSpec& spec, const BoundarySet& velocity_bc);

/// Four-point averaged pressure gradient at velocity nodes of the projection
/// grid. Velocity node (i, j) is surrounded by p_{i-1,j-1}, p_{i,j-1},
/// p_{i-1,j}, p_{i,j}; the low-wall pressures (index -1) come from `pressure_bc`.
/// Without boundary data only nodes with i, j >= 1 get rows.
GradientRows proj_gradient_rows(const GridSpec& spec);
GradientRows proj_gradient_rows(const GridSpec& spec, const BoundarySet& pressure_bc);

/// Four-point averaged divergence at P nodes of the projection grid. Without
/// boundary data only P nodes off the high walls get rows.
std::vector<StencilRow> proj_divergence_rows(const GridSpec& spec);
std::vector<StencilRow> proj_divergence_rows(const GridSpec& spec, const BoundarySet& velocity_bc);

/// Wide centred pressure gradient (p_{i+1} - p_{i-1}) / 2dx at interior nodes of
/// a collocated grid. Connects only every other node, which is what lets the
/// collocated saddle-point system develop odd-even pressure modes.
GradientRows centered_gradient_rows(const GridSpec& spec);

/// Centred divergence at interior nodes of a collocated grid.
std::vector<StencilRow> centered_divergence_rows(const GridSpec& spec);

/// Five-point Laplacian for every node of `role`; stored wall nodes get
/// constraint rows instead. Throws std::invalid_argument when an edge
/// condition for the role is missing.
std::vector<StencilRow> laplacian_rows(const GridSpec& spec, VariableRole role,
                                       const BoundarySet& bc);

// ---------------------------------------------------------------------------
// Variable viscosity
// ---------------------------------------------------------------------------

class ViscosityField {
public:
    static ViscosityField constant(double mu);
    static ViscosityField varying(std::function<double(double, double)> fn);

    double operator()(double x, double y) const { return fn_(x, y); }
    bool is_constant() const { return constant_; }
    /// The constant value; throws std::logic_error for varying fields.
    double constant_value() const;

private:
    std::function<double(double, double)> fn_;
    bool constant_ = true;
    double value_ = 1.0;
};

/// Conservative discretisation of div(mu (grad u + grad u^T)) at the velocity
/// nodes of a grid where u and v share a lattice (projection-staggered or
/// collocated interior):
///
///   a1 = (2 mu u_x)_x + (mu (u_y + v_x))_y
///   a2 = (mu (u_y + v_x))_x + (2 mu v_y)_y
///
/// Fluxes live on half-node midpoints where mu is sampled; the outer derivative
/// is a centred difference of the fluxes. Cross derivatives at a midpoint
/// average the two neighbouring centred differences. Ghost values come from
/// `velocity_bc`. Collocated wall nodes are left at zero.
///
/// Throws std::domain_error if mu <= 0 at any sampled midpoint.
std::pair<ScalarField, ScalarField> stress_divergence(const ScalarField& u, const ScalarField& v,
                                                      const ViscosityField& mu,
                                                      const GridSpec& spec,
                                                      const BoundarySet& velocity_bc);

}  // namespace stokes
