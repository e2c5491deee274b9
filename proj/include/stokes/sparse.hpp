#pragma once

#include <cstddef>
#include <memory>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/SparseCore>

namespace stokes {

struct Triplet {
    std::size_t row;
    std::size_t col;
    double value;
};

/// Compressed sparse operator, immutable after assembly.
class SparseMatrix {
public:
    using Storage = Eigen::SparseMatrix<double, Eigen::ColMajor, int>;

    std::size_t rows() const { return static_cast<std::size_t>(mat_.rows()); }
    std::size_t cols() const { return static_cast<std::size_t>(mat_.cols()); }
    std::size_t nonzeros() const { return static_cast<std::size_t>(mat_.nonZeros()); }

    /// Stored coefficient, 0 when the entry is structurally absent.
    double coeff(std::size_t row, std::size_t col) const;

    std::vector<double> multiply(std::span<const double> x) const;

    const Storage& storage() const { return mat_; }

    friend SparseMatrix from_triplets(std::span<const Triplet>, std::size_t, std::size_t);

private:
    Storage mat_;
};

/// Duplicate (row, col) entries are summed; explicit zeros are dropped.
/// Throws std::out_of_range naming the first offending triplet.
SparseMatrix from_triplets(std::span<const Triplet> triplets, std::size_t n_rows,
                           std::size_t n_cols);

struct SolveReport {
    std::vector<double> solution;
    double relative_residual = 0.0;
    std::string method_tag;
};

enum class SolveFailure { SingularMatrix, NoConvergence };

class SolveError : public std::runtime_error {
public:
    SolveError(SolveFailure kind, double achieved_residual, const std::string& what)
        : std::runtime_error(what), kind_(kind), residual_(achieved_residual)
    {
    }

    SolveFailure kind() const { return kind_; }
    /// Relative residual reached before giving up (NaN when no iterate exists).
    double achieved_residual() const { return residual_; }

private:
    SolveFailure kind_;
    double residual_;
};

enum class SolveBackend {
    Auto,       // sparse LU, iterative refinement, then BiCGSTAB fallback
    Direct,     // sparse LU with refinement only
    Iterative   // ILUT-preconditioned BiCGSTAB only
};

inline constexpr double kDefaultSolveTol = 1e-10;

struct SolveOptions {
    double tol = kDefaultSolveTol;
    SolveBackend backend = SolveBackend::Auto;
    int max_iterations = 2000;
};

/// Factorizes once and solves for any number of right-hand sides. Each solve
/// carries the same residual guarantee as solve_linear. A must outlive the
/// solver.
class LinearSolver {
public:
    explicit LinearSolver(const SparseMatrix& A, const SolveOptions& options = {});
    ~LinearSolver();
    LinearSolver(LinearSolver&&) noexcept;
    LinearSolver& operator=(LinearSolver&&) noexcept;
    LinearSolver(const LinearSolver&) = delete;
    LinearSolver& operator=(const LinearSolver&) = delete;

    SolveReport solve(std::span<const double> b) const;

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

/// Solves A x = b. The returned relative residual ||Ax - b|| / max(||b||, tiny)
/// is recomputed here rather than taken from the backend, and is guaranteed to
/// be <= options.tol; otherwise SolveError is thrown.
SolveReport solve_linear(const SparseMatrix& A, std::span<const double> b,
                         const SolveOptions& options = {});

/// ||A x - b||_2. Throws std::invalid_argument on dimension mismatch.
double residual_norm(const SparseMatrix& A, std::span<const double> x, std::span<const double> b);

/// Denominator floor for relative residuals when b is (near) zero.
inline constexpr double kTinyNorm = 1e-300;

}  // namespace stokes
