#include "stokes/stencils.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace stokes {

Coeffs3 centered_first(double h)
{
    return {{-1, 0, 1}, {-0.5 / h, 0.0, 0.5 / h}, h};
}

Coeffs3 centered_second(double h)
{
    const double s = 1.0 / (h * h);
    return {{-1, 0, 1}, {s, -2.0 * s, s}, h};
}

Coeffs3 onesided_first(double h, Direction direction)
{
    if (direction == Direction::Forward)
        return {{0, 1, 2}, {-1.5 / h, 2.0 / h, -0.5 / h}, h};
    return {{0, -1, -2}, {1.5 / h, -2.0 / h, 0.5 / h}, h};
}

const ScalarField& Fields::get(VariableRole role) const
{
    const ScalarField* f = role == VariableRole::P ? p : role == VariableRole::U ? u : v;
    if (!f)
        throw std::invalid_argument("stencil references field " + std::string(to_string(role)) +
                                    " which was not supplied");
    return *f;
}

double apply_row(const StencilRow& row, const Fields& fields)
{
    double s = row.rhs_shift;
    for (const StencilEntry& e : row.entries)
        s += e.coeff * fields.get(e.node.role)(e.node.i, e.node.j);
    return s;
}

ScalarField apply_rows(const std::vector<StencilRow>& rows, const Fields& fields,
                       const GridSpec& spec, VariableRole target_role)
{
    ScalarField out(spec, target_role);
    for (const StencilRow& row : rows)
        if (row.target.role == target_role)
            out(row.target.i, row.target.j) = apply_row(row, fields);
    return out;
}

namespace {

void accumulate(std::vector<StencilEntry>& entries, NodeRef node, double coeff)
{
    for (StencilEntry& e : entries)
        if (e.node == node) {
            e.coeff += coeff;
            return;
        }
    entries.push_back({node, coeff});
}

void add_expr(StencilRow& row, const LinearExpr& expr, double scale)
{
    for (const StencilEntry& t : expr.terms)
        accumulate(row.entries, t.node, scale * t.coeff);
    row.rhs_shift += scale * expr.constant;
}

LinearExpr single(VariableRole role, int i, int j)
{
    return {{{{role, i, j}, 1.0}}, 0.0};
}

void require_layout(const GridSpec& spec, Layout layout, const char* what)
{
    if (spec.layout() != layout)
        throw std::invalid_argument(std::string(what) + " requires a " +
                                    std::string(to_string(layout)) + " grid, got " +
                                    std::string(to_string(spec.layout())));
}

// Adds coeff * value(role, i, j) to the row, resolving ghosts when bc is given.
void add_term(StencilRow& row, const GridSpec& spec, VariableRole role, const BoundarySet* bc,
              int i, int j, double coeff)
{
    if (spec.in_range(i, j)) {
        accumulate(row.entries, {role, i, j}, coeff);
        return;
    }
    if (!bc)
        throw std::logic_error("stencil reaches outside the grid without boundary data");
    add_expr(row, resolve_node(spec, role, *bc, i, j), coeff);
}

}  // namespace

void LinearExpr::add(const LinearExpr& other, double scale)
{
    for (const StencilEntry& t : other.terms)
        accumulate(terms, t.node, scale * t.coeff);
    constant += scale * other.constant;
}

LinearExpr resolve_node(const GridSpec& spec, VariableRole role, const BoundarySet& bc, int i,
                        int j)
{
    const int M = spec.M();
    if (spec.in_range(i, j))
        return single(role, i, j);

    const bool along_x = i < 0 || i >= M;
    const int k = along_x ? i : j;
    const bool low = k < 0;
    const AxisPlacement placement = along_x ? spec.x_placement(role) : spec.y_placement(role);
    const Edge edge = along_x ? (low ? Edge::Left : Edge::Right) : (low ? Edge::Bottom : Edge::Top);
    const Condition& cond = bc.at(role, edge);

    Point wall = spec.lattice_point(role, i, j);
    if (along_x)
        wall.x = low ? spec.x0() : spec.x0() + spec.width();
    else
        wall.y = low ? spec.y0() : spec.y0() + spec.height();
    const double g = cond.value(wall.x, wall.y);
    const double h = along_x ? spec.dx() : spec.dy();

    auto inner = [&](int kk) {
        return along_x ? resolve_node(spec, role, bc, kk, j) : resolve_node(spec, role, bc, i, kk);
    };

    LinearExpr out;
    switch (placement) {
    case AxisPlacement::CellCentred: {
        if (k != -1 && k != M)
            break;
        const LinearExpr n0 = inner(low ? 0 : M - 1);
        const LinearExpr n1 = inner(low ? 1 : M - 2);
        if (cond.kind == ConditionKind::Dirichlet) {
            out.add(n0, -2.0);
            out.add(n1, 1.0 / 3.0);
            out.constant += 8.0 * g / 3.0;
        } else {
            out.add(n0, 1.0);
            out.constant += (low ? -h : h) * g;
        }
        return out;
    }
    case AxisPlacement::ShiftedNodes: {
        if (k != -1)
            break;
        if (cond.kind == ConditionKind::Dirichlet) {
            out.constant = g;
        } else {
            out.add(inner(0), 4.0 / 3.0);
            out.add(inner(1), -1.0 / 3.0);
            out.constant += -2.0 * h * g / 3.0;
        }
        return out;
    }
    case AxisPlacement::WallNodes: break;
    }
    throw std::logic_error("no ghost rule for " + std::string(to_string(role)) + " node (" +
                           std::to_string(i) + ", " + std::to_string(j) + ") on a " +
                           std::string(to_string(spec.layout())) + " grid");
}

bool on_stored_wall(const GridSpec& spec, VariableRole role, int i, int j)
{
    const int last = spec.M() - 1;
    auto on_axis = [last](AxisPlacement p, int k) {
        switch (p) {
        case AxisPlacement::WallNodes: return k == 0 || k == last;
        case AxisPlacement::ShiftedNodes: return k == last;
        case AxisPlacement::CellCentred: return false;
        }
        return false;
    };
    return on_axis(spec.x_placement(role), i) || on_axis(spec.y_placement(role), j);
}

StencilRow boundary_constraint_row(const GridSpec& spec, VariableRole role,
                                   const BoundarySet& bc, int i, int j)
{
    const int last = spec.M() - 1;
    std::vector<Edge> edges;
    const AxisPlacement px = spec.x_placement(role);
    const AxisPlacement py = spec.y_placement(role);
    if (px == AxisPlacement::WallNodes && i == 0)
        edges.push_back(Edge::Left);
    if (px != AxisPlacement::CellCentred && i == last)
        edges.push_back(Edge::Right);
    if (py == AxisPlacement::WallNodes && j == 0)
        edges.push_back(Edge::Bottom);
    if (py != AxisPlacement::CellCentred && j == last)
        edges.push_back(Edge::Top);
    if (edges.empty())
        throw std::logic_error("boundary_constraint_row on a node that is not on a wall");

    Edge chosen = edges.front();
    for (Edge e : edges)
        if (bc.at(role, e).kind == ConditionKind::Dirichlet) {
            chosen = e;
            break;
        }
    const Condition& cond = bc.at(role, chosen);
    const Point q = spec.lattice_point(role, i, j);

    StencilRow row;
    row.target = {role, i, j};
    row.constraint = true;
    row.rhs_shift = -cond.value(q.x, q.y);
    if (cond.kind == ConditionKind::Dirichlet) {
        row.entries.push_back({{role, i, j}, 1.0});
        return row;
    }
    const bool along_x = chosen == Edge::Left || chosen == Edge::Right;
    const bool low = chosen == Edge::Left || chosen == Edge::Bottom;
    const Coeffs3 c = onesided_first(along_x ? spec.dx() : spec.dy(),
                                     low ? Direction::Forward : Direction::Backward);
    for (std::size_t k = 0; k < 3; ++k) {
        const int ii = along_x ? i + c.offsets[k] : i;
        const int jj = along_x ? j : j + c.offsets[k];
        accumulate(row.entries, {role, ii, jj}, c.weights[k]);
    }
    return row;
}

GradientRows mac_gradient_rows(const GridSpec& spec)
{
    require_layout(spec, Layout::SaddleStaggered, "mac_gradient_rows");
    const int M = spec.M();
    const double h = spec.dx();
    GradientRows out;
    for (int j = 0; j < M; ++j)
        for (int i = 0; i + 1 < M; ++i) {
            StencilRow r;
            r.target = {VariableRole::U, i, j};
            r.entries = {{{VariableRole::P, i + 1, j}, 1.0 / h}, {{VariableRole::P, i, j}, -1.0 / h}};
            out.x.push_back(std::move(r));
        }
    for (int j = 0; j + 1 < M; ++j)
        for (int i = 0; i < M; ++i) {
            StencilRow r;
            r.target = {VariableRole::V, i, j};
            r.entries = {{{VariableRole::P, i, j + 1}, 1.0 / h}, {{VariableRole::P, i, j}, -1.0 / h}};
            out.y.push_back(std::move(r));
        }
    return out;
}

namespace {

std::vector<StencilRow> mac_divergence_impl(const GridSpec& spec, const BoundarySet* bc)
{
    require_layout(spec, Layout::SaddleStaggered, "mac_divergence_rows");
    const int M = spec.M();
    const double h = spec.dx();
    std::vector<StencilRow> rows;
    for (int j = 0; j < M; ++j)
        for (int i = 0; i < M; ++i) {
            if (!bc && (i == 0 || j == 0))
                continue;
            StencilRow r;
            r.target = {VariableRole::P, i, j};
            add_term(r, spec, VariableRole::U, bc, i, j, 1.0 / h);
            add_term(r, spec, VariableRole::U, bc, i - 1, j, -1.0 / h);
            add_term(r, spec, VariableRole::V, bc, i, j, 1.0 / h);
            add_term(r, spec, VariableRole::V, bc, i, j - 1, -1.0 / h);
            rows.push_back(std::move(r));
        }
    return rows;
}

GradientRows proj_gradient_impl(const GridSpec& spec, const BoundarySet* bc)
{
    require_layout(spec, Layout::ProjectionStaggered, "proj_gradient_rows");
    const int M = spec.M();
    const double c = 0.5 / spec.dx();
    const auto P = VariableRole::P;
    GradientRows out;
    for (int j = 0; j < M; ++j)
        for (int i = 0; i < M; ++i) {
            if (!bc && (i == 0 || j == 0))
                continue;
            StencilRow rx;
            rx.target = {VariableRole::U, i, j};
            add_term(rx, spec, P, bc, i, j, c);
            add_term(rx, spec, P, bc, i - 1, j, -c);
            add_term(rx, spec, P, bc, i, j - 1, c);
            add_term(rx, spec, P, bc, i - 1, j - 1, -c);
            out.x.push_back(std::move(rx));

            StencilRow ry;
            ry.target = {VariableRole::V, i, j};
            add_term(ry, spec, P, bc, i, j, c);
            add_term(ry, spec, P, bc, i, j - 1, -c);
            add_term(ry, spec, P, bc, i - 1, j, c);
            add_term(ry, spec, P, bc, i - 1, j - 1, -c);
            out.y.push_back(std::move(ry));
        }
    return out;
}

std::vector<StencilRow> proj_divergence_impl(const GridSpec& spec, const BoundarySet* bc)
{
    require_layout(spec, Layout::ProjectionStaggered, "proj_divergence_rows");
    const int M = spec.M();
    const double c = 0.5 / spec.dx();
    const auto U = VariableRole::U;
    const auto V = VariableRole::V;
    std::vector<StencilRow> rows;
    for (int j = 0; j < M; ++j)
        for (int i = 0; i < M; ++i) {
            if (!bc && (i == M - 1 || j == M - 1))
                continue;
            StencilRow r;
            r.target = {VariableRole::P, i, j};
            add_term(r, spec, U, bc, i + 1, j + 1, c);
            add_term(r, spec, U, bc, i, j + 1, -c);
            add_term(r, spec, U, bc, i + 1, j, c);
            add_term(r, spec, U, bc, i, j, -c);
            add_term(r, spec, V, bc, i + 1, j + 1, c);
            add_term(r, spec, V, bc, i + 1, j, -c);
            add_term(r, spec, V, bc, i, j + 1, c);
            add_term(r, spec, V, bc, i, j, -c);
            rows.push_back(std::move(r));
        }
    return rows;
}

}  // namespace

std::vector<StencilRow> mac_divergence_rows(const GridSpec& spec)
{
    return mac_divergence_impl(spec, nullptr);
}

std::vector<StencilRow> mac_divergence_rows(const GridSpec& spec, const BoundarySet& velocity_bc)
{
    return mac_divergence_impl(spec, &velocity_bc);
}

GradientRows proj_gradient_rows(const GridSpec& spec)
{
    return proj_gradient_impl(spec, nullptr);
}

GradientRows proj_gradient_rows(const GridSpec& spec, const BoundarySet& pressure_bc)
{
    return proj_gradient_impl(spec, &pressure_bc);
}

std::vector<StencilRow> proj_divergence_rows(const GridSpec& spec)
{
    return proj_divergence_impl(spec, nullptr);
}

std::vector<StencilRow> proj_divergence_rows(const GridSpec& spec, const BoundarySet& velocity_bc)
{
    return proj_divergence_impl(spec, &velocity_bc);
}

GradientRows centered_gradient_rows(const GridSpec& spec)
{
    require_layout(spec, Layout::Collocated, "centered_gradient_rows");
    const int M = spec.M();
    const double c = 0.5 / spec.dx();
    GradientRows out;
    for (int j = 1; j + 1 < M; ++j)
        for (int i = 1; i + 1 < M; ++i) {
            StencilRow rx;
            rx.target = {VariableRole::U, i, j};
            rx.entries = {{{VariableRole::P, i + 1, j}, c}, {{VariableRole::P, i - 1, j}, -c}};
            out.x.push_back(std::move(rx));
            StencilRow ry;
            ry.target = {VariableRole::V, i, j};
            ry.entries = {{{VariableRole::P, i, j + 1}, c}, {{VariableRole::P, i, j - 1}, -c}};
            out.y.push_back(std::move(ry));
        }
    return out;
}

std::vector<StencilRow> centered_divergence_rows(const GridSpec& spec)
{
    require_layout(spec, Layout::Collocated, "centered_divergence_rows");
    const int M = spec.M();
    const double c = 0.5 / spec.dx();
    std::vector<StencilRow> rows;
    for (int j = 1; j + 1 < M; ++j)
        for (int i = 1; i + 1 < M; ++i) {
            StencilRow r;
            r.target = {VariableRole::P, i, j};
            r.entries = {{{VariableRole::U, i + 1, j}, c},
                         {{VariableRole::U, i - 1, j}, -c},
                         {{VariableRole::V, i, j + 1}, c},
                         {{VariableRole::V, i, j - 1}, -c}};
            rows.push_back(std::move(r));
        }
    return rows;
}

std::vector<StencilRow> laplacian_rows(const GridSpec& spec, VariableRole role,
                                       const BoundarySet& bc)
{
    for (Edge e : kAllEdges)
        (void)bc.at(role, e);
    const int M = spec.M();
    const double s = 1.0 / (spec.dx() * spec.dx());
    std::vector<StencilRow> rows;
    rows.reserve(spec.nodes());
    for (int j = 0; j < M; ++j)
        for (int i = 0; i < M; ++i) {
            if (on_stored_wall(spec, role, i, j)) {
                rows.push_back(boundary_constraint_row(spec, role, bc, i, j));
                continue;
            }
            StencilRow r;
            r.target = {role, i, j};
            r.entries.reserve(8);
            accumulate(r.entries, {role, i, j}, -4.0 * s);
            add_term(r, spec, role, &bc, i - 1, j, s);
            add_term(r, spec, role, &bc, i + 1, j, s);
            add_term(r, spec, role, &bc, i, j - 1, s);
            add_term(r, spec, role, &bc, i, j + 1, s);
            rows.push_back(std::move(r));
        }
    return rows;
}

ViscosityField ViscosityField::constant(double mu)
{
    if (!(mu > 0.0))
        throw std::domain_error("viscosity must be positive");
    ViscosityField f;
    f.fn_ = [mu](double, double) { return mu; };
    f.constant_ = true;
    f.value_ = mu;
    return f;
}

ViscosityField ViscosityField::varying(std::function<double(double, double)> fn)
{
    ViscosityField f;
    f.fn_ = std::move(fn);
    f.constant_ = false;
    return f;
}

double ViscosityField::constant_value() const
{
    if (!constant_)
        throw std::logic_error("viscosity field is not constant");
    return value_;
}

std::pair<ScalarField, ScalarField> stress_divergence(const ScalarField& u, const ScalarField& v,
                                                      const ViscosityField& mu,
                                                      const GridSpec& spec,
                                                      const BoundarySet& velocity_bc)
{
    if (u.role() != VariableRole::U || v.role() != VariableRole::V)
        throw std::invalid_argument("stress_divergence expects u and v fields");
    if (spec.layout() != Layout::ProjectionStaggered && spec.layout() != Layout::Collocated)
        throw std::invalid_argument("stress_divergence needs u and v on a shared lattice");
    if (u.M() != spec.M() || v.M() != spec.M())
        throw std::invalid_argument("stress_divergence: field size does not match grid");

    const int M = spec.M();
    const int W = M + 2;
    const double h = spec.dx();
    const bool ghosts = spec.layout() == Layout::ProjectionStaggered;

    // Values on indices -1..M, stored at (i + 1, j + 1).
    auto extend = [&](const ScalarField& f) {
        std::vector<double> e(static_cast<std::size_t>(W) * W, 0.0);
        for (int j = -1; j <= M; ++j)
            for (int i = -1; i <= M; ++i) {
                double val = 0.0;
                if (spec.in_range(i, j)) {
                    val = f(i, j);
                } else if (ghosts) {
                    const LinearExpr ex = resolve_node(spec, f.role(), velocity_bc, i, j);
                    val = ex.constant;
                    for (const StencilEntry& t : ex.terms)
                        val += t.coeff * f(t.node.i, t.node.j);
                }
                e[static_cast<std::size_t>(j + 1) * W + static_cast<std::size_t>(i + 1)] = val;
            }
        return e;
    };
    const std::vector<double> ue = extend(u);
    const std::vector<double> ve = extend(v);
    auto U = [&](int i, int j) { return ue[static_cast<std::size_t>(j + 1) * W + (i + 1)]; };
    auto V = [&](int i, int j) { return ve[static_cast<std::size_t>(j + 1) * W + (i + 1)]; };

    auto mu_at = [&](double x, double y) {
        const double m = mu(x, y);
        if (!(m > 0.0))
            throw std::domain_error("viscosity must be positive, got " + std::to_string(m) +
                                    " at (" + std::to_string(x) + ", " + std::to_string(y) + ")");
        return m;
    };

    ScalarField a1(spec, VariableRole::U);
    ScalarField a2(spec, VariableRole::V);
    const int lo = ghosts ? 0 : 1;
    const int hi = ghosts ? M : M - 1;
    const double half = 0.5 * h;
    for (int j = lo; j < hi; ++j)
        for (int i = lo; i < hi; ++i) {
            const Point q = spec.lattice_point(VariableRole::U, i, j);
            const double mu_e = mu_at(q.x + half, q.y);
            const double mu_w = mu_at(q.x - half, q.y);
            const double mu_n = mu_at(q.x, q.y + half);
            const double mu_s = mu_at(q.x, q.y - half);

            // shear rate u_y + v_x on the four midpoints
            const double shear_n = (U(i, j + 1) - U(i, j)) / h +
                                   (V(i + 1, j) + V(i + 1, j + 1) - V(i - 1, j) - V(i - 1, j + 1)) /
                                       (4.0 * h);
            const double shear_s = (U(i, j) - U(i, j - 1)) / h +
                                   (V(i + 1, j - 1) + V(i + 1, j) - V(i - 1, j - 1) - V(i - 1, j)) /
                                       (4.0 * h);
            const double shear_e = (V(i + 1, j) - V(i, j)) / h +
                                   (U(i, j + 1) + U(i + 1, j + 1) - U(i, j - 1) - U(i + 1, j - 1)) /
                                       (4.0 * h);
            const double shear_w = (V(i, j) - V(i - 1, j)) / h +
                                   (U(i - 1, j + 1) + U(i, j + 1) - U(i - 1, j - 1) - U(i, j - 1)) /
                                       (4.0 * h);

            a1(i, j) = (2.0 * mu_e * (U(i + 1, j) - U(i, j)) - 2.0 * mu_w * (U(i, j) - U(i - 1, j))) /
                           (h * h) +
                       (mu_n * shear_n - mu_s * shear_s) / h;
            a2(i, j) = (mu_e * shear_e - mu_w * shear_w) / h +
                       (2.0 * mu_n * (V(i, j + 1) - V(i, j)) - 2.0 * mu_s * (V(i, j) - V(i, j - 1))) /
                           (h * h);
        }
    return {std::move(a1), std::move(a2)};
}

}  // namespace stokes
