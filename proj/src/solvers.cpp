#include "stokes/solvers.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <stdexcept>
#include <string>

namespace stokes {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start)
{
    return std::chrono::duration<double>(Clock::now() - start).count();
}

double require_constant_viscosity(const Scenario& scenario, const char* method)
{
    if (!scenario.viscosity.is_constant())
        throw std::invalid_argument(std::string(method) +
                                    " requires constant viscosity; this method cannot be used in "
                                    "that case");
    return scenario.viscosity.constant_value();
}

void require_M(int M)
{
    if (M < 3)
        throw std::invalid_argument("M must be at least 3, got " + std::to_string(M));
}

/// Collects matrix rows for the unknowns of an IndexMap. Every equation is
/// keyed by the linear index of its target node.
class Assembler {
public:
    explicit Assembler(const IndexMap& map)
        : map_(map), b_(map.size(), 0.0), constraint_(map.size(), 0)
    {
    }

    std::size_t equation(const NodeRef& target) const
    {
        return map_.index(target.role, target.i, target.j);
    }

    /// Adds scale * row to the equation of row.target, moving its known part
    /// to the right-hand side.
    void add(const StencilRow& row, double scale)
    {
        const std::size_t eq = equation(row.target);
        for (const StencilEntry& e : row.entries)
            triplets_.push_back({eq, map_.index(e.node.role, e.node.i, e.node.j), scale * e.coeff});
        b_[eq] -= scale * row.rhs_shift;
        if (row.constraint)
            constraint_[eq] = 1;
    }

    void add_rhs(std::size_t eq, double value) { b_[eq] += value; }
    bool is_constraint(std::size_t eq) const { return constraint_[eq] != 0; }

    SparseMatrix matrix() const { return from_triplets(triplets_, map_.size(), map_.size()); }
    const std::vector<double>& rhs() const { return b_; }

private:
    const IndexMap& map_;
    std::vector<Triplet> triplets_;
    std::vector<double> b_;
    std::vector<char> constraint_;
};

ScalarField extract(const GridSpec& spec, const IndexMap& map, VariableRole role,
                    const std::vector<double>& x)
{
    const auto first = x.begin() + static_cast<std::ptrdiff_t>(map.block_offset(role));
    return {spec, role, std::vector<double>(first, first + static_cast<std::ptrdiff_t>(spec.nodes()))};
}

ScalarField sample_force(const GridSpec& spec, VariableRole role, const ForceField& force)
{
    const bool first = role == VariableRole::U;
    return ScalarField::sample(spec, role, [&](double x, double y) {
        const ForceValue f = force(x, y);
        return first ? f.f1 : f.f2;
    });
}

/// Pressure row for a MAC cell next to a wall: the quadratic through the
/// three cells nearest the wall matches the boundary data there. Dirichlet
/// data is the extrapolated wall value, Neumann data its wall derivative.
StencilRow mac_pressure_wall_row(const GridSpec& spec, const BoundarySet& bc, int i, int j)
{
    const int last = spec.M() - 1;
    std::vector<Edge> edges;
    if (i == 0)
        edges.push_back(Edge::Left);
    if (i == last)
        edges.push_back(Edge::Right);
    if (j == 0)
        edges.push_back(Edge::Bottom);
    if (j == last)
        edges.push_back(Edge::Top);
    Edge chosen = edges.front();
    for (Edge e : edges)
        if (bc.at(VariableRole::P, e).kind == ConditionKind::Dirichlet) {
            chosen = e;
            break;
        }
    const Condition& cond = bc.at(VariableRole::P, chosen);
    const bool along_x = chosen == Edge::Left || chosen == Edge::Right;
    const bool low = chosen == Edge::Left || chosen == Edge::Bottom;

    Point wall = spec.lattice_point(VariableRole::P, i, j);
    if (along_x)
        wall.x = low ? spec.x0() : spec.x0() + spec.width();
    else
        wall.y = low ? spec.y0() : spec.y0() + spec.height();

    const double h = spec.dx();
    std::array<double, 3> w{};
    if (cond.kind == ConditionKind::Dirichlet)
        w = {15.0 / 8.0, -10.0 / 8.0, 3.0 / 8.0};
    else if (low)
        w = {-2.0 / h, 3.0 / h, -1.0 / h};
    else
        w = {2.0 / h, -3.0 / h, 1.0 / h};

    StencilRow row;
    row.target = {VariableRole::P, i, j};
    row.constraint = true;
    row.rhs_shift = -cond.value(wall.x, wall.y);
    const int step = low ? 1 : -1;
    for (int k = 0; k < 3; ++k) {
        const int ii = along_x ? i + step * k : i;
        const int jj = along_x ? j : j + step * k;
        row.entries.push_back({{VariableRole::P, ii, jj}, w[static_cast<std::size_t>(k)]});
    }
    return row;
}

/// Nodal derivative of a collocated field: centred inside, one-sided three
/// point at the walls.
ScalarField collocated_derivative(const ScalarField& f, bool along_x)
{
    const GridSpec& spec = f.spec();
    const int M = spec.M();
    const double h = spec.dx();
    const Coeffs3 centred = centered_first(h);
    const Coeffs3 forward = onesided_first(h, Direction::Forward);
    const Coeffs3 backward = onesided_first(h, Direction::Backward);
    ScalarField d(spec, f.role());
    for (int j = 0; j < M; ++j)
        for (int i = 0; i < M; ++i) {
            const int k = along_x ? i : j;
            const Coeffs3& c = k == 0 ? forward : k == M - 1 ? backward : centred;
            double s = 0.0;
            for (std::size_t q = 0; q < 3; ++q)
                s += c.weights[q] *
                     (along_x ? f(i + c.offsets[q], j) : f(i, j + c.offsets[q]));
            d(i, j) = s;
        }
    return d;
}

Solution saddle_staggered(const Scenario& scenario, int M, const SolveOptions& options)
{
    const double mu = require_constant_viscosity(scenario, "saddle-point");
    const auto start = Clock::now();
    const GridSpec spec = scenario.grid(M, Layout::SaddleStaggered);
    const IndexMap map = build_index_map(spec, kAllRoles);
    Assembler A(map);

    for (VariableRole role : {VariableRole::U, VariableRole::V}) {
        const ScalarField f = sample_force(spec, role, scenario.force);
        for (const StencilRow& row : laplacian_rows(spec, role, scenario.bcs)) {
            if (row.constraint) {
                A.add(row, 1.0);
                continue;
            }
            A.add(row, mu);
            A.add_rhs(A.equation(row.target), -f(row.target.i, row.target.j));
        }
    }
    // -grad p completes every momentum row that is not a boundary constraint
    const GradientRows grad = mac_gradient_rows(spec);
    for (const auto* rows : {&grad.x, &grad.y})
        for (const StencilRow& row : *rows)
            if (!A.is_constraint(A.equation(row.target)))
                A.add(row, -1.0);

    for (int j = 0; j < M; ++j)
        for (int i = 0; i < M; ++i)
            if (i == 0 || j == 0 || i == M - 1 || j == M - 1)
                A.add(mac_pressure_wall_row(spec, scenario.bcs, i, j), 1.0);
    for (const StencilRow& row : mac_divergence_rows(spec))
        if (row.target.i < M - 1 && row.target.j < M - 1)
            A.add(row, 1.0);

    const SparseMatrix K = A.matrix();
    const SolveReport rep = solve_linear(K, A.rhs(), options);
    Solution s{extract(spec, map, VariableRole::P, rep.solution),
               extract(spec, map, VariableRole::U, rep.solution),
               extract(spec, map, VariableRole::V, rep.solution),
               "saddle-point/staggered",
               M,
               0.0,
               {rep.relative_residual}};
    s.wall_time = seconds_since(start);
    return s;
}

Solution saddle_collocated(const Scenario& scenario, int M, const SolveOptions& options)
{
    const double mu = require_constant_viscosity(scenario, "saddle-point");
    const auto start = Clock::now();
    const GridSpec spec = scenario.grid(M, Layout::Collocated);
    const IndexMap map = build_index_map(spec, kAllRoles);
    Assembler A(map);

    for (VariableRole role : {VariableRole::U, VariableRole::V}) {
        const ScalarField f = sample_force(spec, role, scenario.force);
        for (const StencilRow& row : laplacian_rows(spec, role, scenario.bcs)) {
            if (row.constraint) {
                A.add(row, 1.0);
                continue;
            }
            A.add(row, mu);
            A.add_rhs(A.equation(row.target), -f(row.target.i, row.target.j));
        }
    }
    const GradientRows grad = centered_gradient_rows(spec);
    for (const auto* rows : {&grad.x, &grad.y})
        for (const StencilRow& row : *rows)
            A.add(row, -1.0);

    for (int j = 0; j < M; ++j)
        for (int i = 0; i < M; ++i)
            if (on_stored_wall(spec, VariableRole::P, i, j))
                A.add(boundary_constraint_row(spec, VariableRole::P, scenario.bcs, i, j), 1.0);
    for (const StencilRow& row : centered_divergence_rows(spec))
        A.add(row, 1.0);

    const SparseMatrix K = A.matrix();
    const SolveReport rep = solve_linear(K, A.rhs(), options);
    Solution s{extract(spec, map, VariableRole::P, rep.solution),
               extract(spec, map, VariableRole::U, rep.solution),
               extract(spec, map, VariableRole::V, rep.solution),
               "saddle-point/collocated",
               M,
               0.0,
               {rep.relative_residual}};
    s.wall_time = seconds_since(start);
    return s;
}

}  // namespace

std::string_view to_string(Method method)
{
    switch (method) {
    case Method::SaddlePoint: return "saddle";
    case Method::Decoupling: return "decoupling";
    case Method::Projection: return "projection";
    }
    return "?";
}

Method parse_method(std::string_view text)
{
    if (text == "saddle" || text == "saddle-point")
        return Method::SaddlePoint;
    if (text == "decoupling")
        return Method::Decoupling;
    if (text == "projection")
        return Method::Projection;
    throw std::invalid_argument("unknown method '" + std::string(text) +
                                "' (expected saddle, decoupling or projection)");
}

Layout method_layout(Method method)
{
    switch (method) {
    case Method::SaddlePoint: return Layout::SaddleStaggered;
    case Method::Decoupling: return Layout::Collocated;
    case Method::Projection: return Layout::ProjectionStaggered;
    }
    return Layout::Collocated;
}

Solution solve_saddle_point(const Scenario& scenario, int M, GridMode mode,
                            const SolveOptions& options)
{
    require_M(M);
    return mode == GridMode::Staggered ? saddle_staggered(scenario, M, options)
                                       : saddle_collocated(scenario, M, options);
}

Solution solve_decoupling(const Scenario& scenario, int M, const SolveOptions& options)
{
    require_M(M);
    const double mu = require_constant_viscosity(scenario, "decoupling");
    const auto start = Clock::now();
    const GridSpec spec = scenario.grid(M, Layout::Collocated);
    std::vector<double> residuals;

    // One scalar Poisson problem scale * Lap(q) = rhs with q's boundary rows.
    auto poisson = [&](VariableRole role, double scale, const ScalarField& rhs) {
        const std::array<VariableRole, 1> roles{role};
        const IndexMap map = build_index_map(spec, roles);
        Assembler A(map);
        for (const StencilRow& row : laplacian_rows(spec, role, scenario.bcs)) {
            if (row.constraint) {
                A.add(row, 1.0);
                continue;
            }
            A.add(row, scale);
            A.add_rhs(A.equation(row.target), rhs(row.target.i, row.target.j));
        }
        const SparseMatrix K = A.matrix();
        const SolveReport rep = solve_linear(K, A.rhs(), options);
        residuals.push_back(rep.relative_residual);
        return extract(spec, map, role, rep.solution);
    };

    const ScalarField f1 = sample_force(spec, VariableRole::U, scenario.force);
    const ScalarField f2 = sample_force(spec, VariableRole::V, scenario.force);

    ScalarField div_f(spec, VariableRole::P);
    {
        const ScalarField d1 = collocated_derivative(f1, true);
        const ScalarField d2 = collocated_derivative(f2, false);
        for (int j = 0; j < M; ++j)
            for (int i = 0; i < M; ++i)
                div_f(i, j) = d1(i, j) + d2(i, j);
    }
    ScalarField p = poisson(VariableRole::P, 1.0, div_f);

    const ScalarField px = collocated_derivative(p, true);
    const ScalarField py = collocated_derivative(p, false);
    ScalarField rhs_u(spec, VariableRole::U);
    ScalarField rhs_v(spec, VariableRole::V);
    for (int j = 0; j < M; ++j)
        for (int i = 0; i < M; ++i) {
            rhs_u(i, j) = px(i, j) - f1(i, j);
            rhs_v(i, j) = py(i, j) - f2(i, j);
        }
    ScalarField u = poisson(VariableRole::U, mu, rhs_u);
    ScalarField v = poisson(VariableRole::V, mu, rhs_v);

    Solution s{std::move(p), std::move(u), std::move(v), "decoupling", M, 0.0, std::move(residuals)};
    s.wall_time = seconds_since(start);
    return s;
}

double DtPolicy::resolve(double dx) const
{
    if (kind == Kind::DxSquared)
        return dx * dx;
    if (!(dt > 0.0))
        throw std::invalid_argument("time step must be positive");
    return dt;
}

ProjectionState ProjectionState::at_rest(const GridSpec& spec, double dt)
{
    return {ScalarField(spec, VariableRole::U), ScalarField(spec, VariableRole::V),
            ScalarField(spec, VariableRole::P), 0.0, dt};
}

struct ProjectionStepper::Impl {
    Scenario scenario;
    GridSpec spec;
    ScalarField f1;
    ScalarField f2;
    IndexMap map;
    SparseMatrix K;
    std::vector<double> b_known;  // boundary data part of the right-hand side
    std::vector<StencilRow> divergence;
    GradientRows gradient;
    std::unique_ptr<LinearSolver> solver;
    mutable double residual = 0.0;

    Impl(const Scenario& s, const GridSpec& g)
        : scenario(s),
          spec(g),
          f1(sample_force(g, VariableRole::U, s.force)),
          f2(sample_force(g, VariableRole::V, s.force)),
          map(build_index_map(g, std::array<VariableRole, 1>{VariableRole::P}))
    {
    }
};

namespace {

/// D(G p) with G carrying the pressure boundary data; rows replace the
/// five-point interior rows. Gradient rows are ordered j-major, one per node.
std::vector<StencilRow> composed_laplacian_rows(const GridSpec& spec, const BoundarySet& bc,
                                                const std::vector<StencilRow>& divergence,
                                                const GradientRows& gradient)
{
    const int M = spec.M();
    std::vector<StencilRow> rows;
    for (int j = 0; j < M; ++j)
        for (int i = 0; i < M; ++i)
            if (on_stored_wall(spec, VariableRole::P, i, j))
                rows.push_back(boundary_constraint_row(spec, VariableRole::P, bc, i, j));
    for (const StencilRow& d : divergence) {
        LinearExpr acc;
        for (const StencilEntry& e : d.entries) {
            const auto& g = e.node.role == VariableRole::U ? gradient.x : gradient.y;
            const StencilRow& gr = g[static_cast<std::size_t>(e.node.j * M + e.node.i)];
            acc.add({gr.entries, gr.rhs_shift}, e.coeff);
        }
        StencilRow r;
        r.target = d.target;
        r.entries = std::move(acc.terms);
        r.rhs_shift = acc.constant;
        rows.push_back(std::move(r));
    }
    return rows;
}

}  // namespace

ProjectionStepper::ProjectionStepper(const Scenario& scenario, const GridSpec& spec,
                                     PressureLaplacian laplacian, const SolveOptions& options)
{
    if (spec.layout() != Layout::ProjectionStaggered)
        throw std::invalid_argument("projection method needs a projection-staggered grid");
    impl_ = std::make_unique<Impl>(scenario, spec);
    Impl& s = *impl_;
    s.divergence = proj_divergence_rows(spec);
    s.gradient = proj_gradient_rows(spec, scenario.bcs);

    const std::vector<StencilRow> rows =
        laplacian == PressureLaplacian::FivePoint
            ? laplacian_rows(spec, VariableRole::P, scenario.bcs)
            : composed_laplacian_rows(spec, scenario.bcs, s.divergence, s.gradient);
    Assembler A(s.map);
    for (const StencilRow& row : rows)
        A.add(row, 1.0);
    s.K = A.matrix();
    s.b_known = A.rhs();
    s.solver = std::make_unique<LinearSolver>(s.K, options);
}

ProjectionStepper::~ProjectionStepper() = default;
ProjectionStepper::ProjectionStepper(ProjectionStepper&&) noexcept = default;
ProjectionStepper& ProjectionStepper::operator=(ProjectionStepper&&) noexcept = default;

double ProjectionStepper::last_residual() const
{
    return impl_->residual;
}

ProjectionState ProjectionStepper::step(const ProjectionState& state) const
{
    const Impl& s = *impl_;
    const double dt = state.dt;
    if (!(dt > 0.0))
        throw std::invalid_argument("time step must be positive");
    if (state.u.M() != s.spec.M() || state.u.spec().layout() != Layout::ProjectionStaggered)
        throw std::invalid_argument("projection state does not match the stepper's grid");
    const int M = s.spec.M();

    // 1. explicit viscous update
    auto [a1, a2] = stress_divergence(state.u, state.v, s.scenario.viscosity, s.spec,
                                      s.scenario.bcs);
    ScalarField us(s.spec, VariableRole::U);
    ScalarField vs(s.spec, VariableRole::V);
    for (int j = 0; j < M; ++j)
        for (int i = 0; i < M; ++i) {
            us(i, j) = state.u(i, j) + dt * (a1(i, j) + s.f1(i, j));
            vs(i, j) = state.v(i, j) + dt * (a2(i, j) + s.f2(i, j));
        }

    // 2. pressure Poisson solve
    std::vector<double> b = s.b_known;
    const Fields star{nullptr, &us, &vs};
    for (const StencilRow& row : s.divergence)
        b[s.map.index(VariableRole::P, row.target.i, row.target.j)] += apply_row(row, star) / dt;
    const SolveReport rep = s.solver->solve(b);
    s.residual = rep.relative_residual;
    ScalarField p(s.spec, VariableRole::P, rep.solution);

    // 3. correction; no velocity node lies on a wall in this layout, so the
    // velocity boundary data lives in the ghosts and needs no re-imposition.
    const Fields pf{&p, nullptr, nullptr};
    for (const StencilRow& row : s.gradient.x)
        us(row.target.i, row.target.j) -= dt * apply_row(row, pf);
    for (const StencilRow& row : s.gradient.y)
        vs(row.target.i, row.target.j) -= dt * apply_row(row, pf);

    return {std::move(us), std::move(vs), std::move(p), state.t + dt, dt};
}

ProjectionState projection_step(const ProjectionState& state, const Scenario& scenario,
                                 const ForceField& force)
{
    Scenario s = scenario;
    s.force = force;
    return ProjectionStepper(s, state.u.spec()).step(state);
}

Solution solve_projection(const Scenario& scenario, int M, int n_steps, DtPolicy dt_policy,
                          PressureLaplacian laplacian, const SolveOptions& options)
{
    require_M(M);
    if (n_steps < 1)
        throw std::invalid_argument("projection needs at least one time step");
    const auto start = Clock::now();
    const GridSpec spec = scenario.grid(M, Layout::ProjectionStaggered);
    const double dt = dt_policy.resolve(spec.dx());
    const ProjectionStepper stepper(scenario, spec, laplacian, options);
    ProjectionState state = ProjectionState::at_rest(spec, dt);
    std::vector<double> residuals;
    for (int n = 0; n < n_steps; ++n) {
        state = stepper.step(state);
        residuals.push_back(stepper.last_residual());
    }
    Solution s{std::move(state.p), std::move(state.u), std::move(state.v), "projection", M, 0.0,
               std::move(residuals)};
    s.wall_time = seconds_since(start);
    return s;
}

Solution solve(Method method, const Scenario& scenario, int M, int projection_steps)
{
    switch (method) {
    case Method::SaddlePoint: return solve_saddle_point(scenario, M);
    case Method::Decoupling: return solve_decoupling(scenario, M);
    case Method::Projection: return solve_projection(scenario, M, projection_steps);
    }
    throw std::logic_error("unhandled method");
}

double checkerboard_metric(const ScalarField& p)
{
    const int M = p.M();
    const auto values = p.values();
    const auto [lo, hi] = std::minmax_element(values.begin(), values.end());
    const double range = *hi - *lo;
    if (range == 0.0)
        return 0.0;

    // Least-squares plane a + b (i - c) + c' (j - c); the centred index
    // columns are orthogonal on a square lattice.
    const double centre = 0.5 * (M - 1);
    double mean = 0.0, si = 0.0, sj = 0.0, ss = 0.0;
    for (int j = 0; j < M; ++j)
        for (int i = 0; i < M; ++i) {
            const double q = p(i, j);
            mean += q;
            si += (i - centre) * q;
            sj += (j - centre) * q;
        }
    for (int i = 0; i < M; ++i)
        ss += (i - centre) * (i - centre);
    ss *= M;
    mean /= static_cast<double>(M) * M;
    const double bi = si / ss;
    const double bj = sj / ss;

    double best = 0.0;
    for (int split = 0; split < 3; ++split) {
        double sum[2] = {0.0, 0.0};
        double count[2] = {0.0, 0.0};
        for (int j = 0; j < M; ++j)
            for (int i = 0; i < M; ++i) {
                const double r = p(i, j) - mean - bi * (i - centre) - bj * (j - centre);
                const int key = split == 0 ? i + j : split == 1 ? i : j;
                sum[key % 2] += r;
                count[key % 2] += 1.0;
            }
        best = std::max(best, std::abs(sum[0] / count[0] - sum[1] / count[1]));
    }
    return best / range;
}

double divergence_max_norm(const ScalarField& u, const ScalarField& v)
{
    const GridSpec& spec = u.spec();
    std::vector<StencilRow> rows;
    switch (spec.layout()) {
    case Layout::ProjectionStaggered: rows = proj_divergence_rows(spec); break;
    case Layout::SaddleStaggered: rows = mac_divergence_rows(spec); break;
    case Layout::Collocated: rows = centered_divergence_rows(spec); break;
    }
    const Fields f{nullptr, &u, &v};
    double m = 0.0;
    for (const StencilRow& row : rows)
        m = std::max(m, std::abs(apply_row(row, f)));
    return m;
}

namespace {

double ghosted_value(const ScalarField& f, const BoundarySet& bc, int i, int j)
{
    const LinearExpr e = resolve_node(f.spec(), f.role(), bc, i, j);
    double s = e.constant;
    for (const StencilEntry& t : e.terms)
        s += t.coeff * f(t.node.i, t.node.j);
    return s;
}

}  // namespace

NodalSolution to_nodal(const Solution& sol, const BoundarySet& bc)
{
    const GridSpec& spec = sol.spec();
    const int M = spec.M();
    NodalSolution out;
    out.xy.reserve(spec.nodes());
    for (int j = 0; j < M; ++j)
        for (int i = 0; i < M; ++i) {
            switch (spec.layout()) {
            case Layout::Collocated:
                out.xy.push_back(spec.lattice_point(VariableRole::P, i, j));
                out.p.push_back(sol.p(i, j));
                out.u.push_back(sol.u(i, j));
                out.v.push_back(sol.v(i, j));
                break;
            case Layout::ProjectionStaggered:
                out.xy.push_back(spec.lattice_point(VariableRole::U, i, j));
                out.p.push_back(0.25 * (ghosted_value(sol.p, bc, i, j) +
                                        ghosted_value(sol.p, bc, i - 1, j) +
                                        ghosted_value(sol.p, bc, i, j - 1) +
                                        ghosted_value(sol.p, bc, i - 1, j - 1)));
                out.u.push_back(sol.u(i, j));
                out.v.push_back(sol.v(i, j));
                break;
            case Layout::SaddleStaggered:
                out.xy.push_back(spec.lattice_point(VariableRole::P, i, j));
                out.p.push_back(sol.p(i, j));
                out.u.push_back(0.5 * (sol.u(i, j) + ghosted_value(sol.u, bc, i - 1, j)));
                out.v.push_back(0.5 * (sol.v(i, j) + ghosted_value(sol.v, bc, i, j - 1)));
                break;
            }
        }
    switch (spec.layout()) {
    case Layout::Collocated: out.note = "all variables at shared nodes"; break;
    case Layout::ProjectionStaggered:
        out.note = "velocity nodes; p averaged from the four surrounding pressure nodes";
        break;
    case Layout::SaddleStaggered:
        out.note = "cell centres; u and v averaged from the two bounding faces";
        break;
    }
    return out;
}

double interpolate_collocated(const ScalarField& f, double x, double y)
{
    const GridSpec& spec = f.spec();
    if (spec.layout() != Layout::Collocated)
        throw std::invalid_argument("interpolate_collocated needs a collocated field");
    const int M = spec.M();
    const double sx = (x - spec.x0()) / spec.dx();
    const double sy = (y - spec.y0()) / spec.dy();
    const int i = std::clamp(static_cast<int>(std::floor(sx)), 0, M - 2);
    const int j = std::clamp(static_cast<int>(std::floor(sy)), 0, M - 2);
    const double tx = sx - i;
    const double ty = sy - j;
    return (1 - tx) * (1 - ty) * f(i, j) + tx * (1 - ty) * f(i + 1, j) +
           (1 - tx) * ty * f(i, j + 1) + tx * ty * f(i + 1, j + 1);
}

}  // namespace stokes
