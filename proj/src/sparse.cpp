#include "stokes/sparse.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <optional>

#include <Eigen/IterativeLinearSolvers>
#include <Eigen/SparseLU>

namespace stokes {

namespace {

using Vec = Eigen::VectorXd;

Eigen::Map<const Vec> as_eigen(std::span<const double> v)
{
    return {v.data(), static_cast<Eigen::Index>(v.size())};
}

double relative_residual(const SparseMatrix::Storage& A, const Vec& x, const Vec& b)
{
    if (!x.allFinite())
        return std::numeric_limits<double>::infinity();
    return (A * x - b).norm() / std::max(b.norm(), kTinyNorm);
}

std::string fmt_residual(double r)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.3e", r);
    return buf;
}

}  // namespace

double SparseMatrix::coeff(std::size_t row, std::size_t col) const
{
    return mat_.coeff(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(col));
}

std::vector<double> SparseMatrix::multiply(std::span<const double> x) const
{
    if (x.size() != cols())
        throw std::invalid_argument("matrix-vector product: dimension mismatch");
    std::vector<double> y(rows());
    Eigen::Map<Vec>(y.data(), static_cast<Eigen::Index>(y.size())) = mat_ * as_eigen(x);
    return y;
}

SparseMatrix from_triplets(std::span<const Triplet> triplets, std::size_t n_rows,
                           std::size_t n_cols)
{
    std::vector<Eigen::Triplet<double, int>> entries;
    entries.reserve(triplets.size());
    for (const Triplet& t : triplets) {
        if (t.row >= n_rows || t.col >= n_cols)
            throw std::out_of_range("triplet (" + std::to_string(t.row) + ", " +
                                    std::to_string(t.col) + ") outside " +
                                    std::to_string(n_rows) + "x" + std::to_string(n_cols) +
                                    " matrix");
        entries.emplace_back(static_cast<int>(t.row), static_cast<int>(t.col), t.value);
    }
    SparseMatrix m;
    m.mat_.resize(static_cast<Eigen::Index>(n_rows), static_cast<Eigen::Index>(n_cols));
    m.mat_.setFromTriplets(entries.begin(), entries.end());
    m.mat_.prune(0.0);
    m.mat_.makeCompressed();
    return m;
}

double residual_norm(const SparseMatrix& A, std::span<const double> x, std::span<const double> b)
{
    if (x.size() != A.cols() || b.size() != A.rows())
        throw std::invalid_argument("residual_norm: dimension mismatch (" +
                                    std::to_string(A.rows()) + "x" + std::to_string(A.cols()) +
                                    " matrix, x " + std::to_string(x.size()) + ", b " +
                                    std::to_string(b.size()) + ")");
    return (A.storage() * as_eigen(x) - as_eigen(b)).norm();
}

struct LinearSolver::Impl {
    const SparseMatrix::Storage* A = nullptr;
    SolveOptions options;
    std::optional<Eigen::SparseLU<SparseMatrix::Storage, Eigen::COLAMDOrdering<int>>> lu;
    std::optional<Eigen::BiCGSTAB<SparseMatrix::Storage, Eigen::IncompleteLUT<double>>> krylov;
    bool lu_failed = false;

    void setup_krylov()
    {
        krylov.emplace();
        krylov->setTolerance(options.tol * 0.1);
        krylov->setMaxIterations(options.max_iterations);
        krylov->compute(*A);
    }

    SolveReport iterate(const Vec& b, const Vec* guess) const
    {
        Vec x = guess ? Vec(krylov->solveWithGuess(b, *guess)) : Vec(krylov->solve(b));
        const double r = relative_residual(*A, x, b);
        if (!(r <= options.tol))
            throw SolveError(SolveFailure::NoConvergence, r,
                             "iterative solve stopped at relative residual " + fmt_residual(r) +
                                 " after " + std::to_string(krylov->iterations()) +
                                 " iterations");
        return {std::vector<double>(x.data(), x.data() + x.size()), r, "bicgstab-ilut"};
    }
};

LinearSolver::LinearSolver(const SparseMatrix& A, const SolveOptions& options)
    : impl_(std::make_unique<Impl>())
{
    if (A.rows() != A.cols())
        throw std::invalid_argument("solve_linear: matrix is not square");
    if (!(options.tol > 0.0))
        throw std::invalid_argument("solve_linear: tolerance must be positive");
    impl_->A = &A.storage();
    impl_->options = options;
    if (options.backend == SolveBackend::Iterative) {
        impl_->setup_krylov();
        return;
    }
    impl_->lu.emplace();
    impl_->lu->analyzePattern(A.storage());
    impl_->lu->factorize(A.storage());
    if (impl_->lu->info() != Eigen::Success) {
        impl_->lu_failed = true;
        impl_->lu.reset();
    }
}

LinearSolver::~LinearSolver() = default;
LinearSolver::LinearSolver(LinearSolver&&) noexcept = default;
LinearSolver& LinearSolver::operator=(LinearSolver&&) noexcept = default;

SolveReport LinearSolver::solve(std::span<const double> b_in) const
{
    Impl& s = *impl_;
    if (b_in.size() != static_cast<std::size_t>(s.A->rows()))
        throw std::invalid_argument("solve_linear: right-hand side length mismatch");
    const Vec b = as_eigen(b_in);

    if (s.options.backend == SolveBackend::Iterative)
        return s.iterate(b, nullptr);

    if (s.lu_failed)
        throw SolveError(SolveFailure::SingularMatrix, std::numeric_limits<double>::quiet_NaN(),
                         "sparse LU hit a zero pivot; matrix is singular");

    Vec x = s.lu->solve(b);
    double r = relative_residual(*s.A, x, b);
    for (int sweep = 0; sweep < 3 && std::isfinite(r) && r > s.options.tol; ++sweep) {
        x += s.lu->solve(b - *s.A * x);
        r = relative_residual(*s.A, x, b);
    }
    if (r <= s.options.tol)
        return {std::vector<double>(x.data(), x.data() + x.size()), r, "sparse-lu"};

    if (s.options.backend == SolveBackend::Direct || !std::isfinite(r))
        throw SolveError(SolveFailure::SingularMatrix, r,
                         "sparse LU residual " + fmt_residual(r) +
                             " exceeds tolerance; matrix is numerically singular");

    if (!s.krylov)
        s.setup_krylov();
    return s.iterate(b, &x);
}

SolveReport solve_linear(const SparseMatrix& A, std::span<const double> b,
                         const SolveOptions& options)
{
    return LinearSolver(A, options).solve(b);
}

}  // namespace stokes
