#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>
#include <vector>

#include "stokes/sparse.hpp"

using namespace stokes;

namespace {

std::vector<Triplet> random_triplets(std::mt19937& rng, std::size_t n, std::size_t count,
                                     bool dominant)
{
    std::uniform_int_distribution<std::size_t> idx(0, n - 1);
    std::uniform_real_distribution<double> val(-1.0, 1.0);
    std::vector<Triplet> t;
    for (std::size_t k = 0; k < count; ++k)
        t.push_back({idx(rng), idx(rng), val(rng)});
    if (dominant)
        for (std::size_t k = 0; k < n; ++k)
            t.push_back({k, k, 2.0 * static_cast<double>(count)});
    return t;
}

std::vector<double> random_vector(std::mt19937& rng, std::size_t n)
{
    std::uniform_real_distribution<double> val(-1.0, 1.0);
    std::vector<double> v(n);
    for (double& x : v)
        x = val(rng);
    return v;
}

double norm(const std::vector<double>& v)
{
    double s = 0;
    for (double x : v)
        s += x * x;
    return std::sqrt(s);
}

}  // namespace

TEST_CASE("assembly from triplets")
{
    const std::vector<Triplet> id{{0, 0, 1.0}, {1, 1, 1.0}};
    const SparseMatrix I = from_triplets(id, 2, 2);
    CHECK(I.rows() == 2);
    CHECK(I.cols() == 2);
    CHECK(I.coeff(0, 0) == 1.0);
    CHECK(I.coeff(0, 1) == 0.0);
    CHECK(I.coeff(1, 1) == 1.0);

    const std::vector<Triplet> dup{{0, 0, 1.0}, {0, 0, 2.0}};
    const SparseMatrix D = from_triplets(dup, 1, 1);
    CHECK(D.coeff(0, 0) == 3.0);
    CHECK(D.nonzeros() == 1);
    CHECK(D.nonzeros() <= dup.size());
}

TEST_CASE("assembly rejects out-of-range triplets")
{
    const std::vector<Triplet> bad{{0, 5, 1.0}};
    try {
        (void)from_triplets(bad, 2, 2);
        FAIL("expected out_of_range");
    } catch (const std::out_of_range& e) {
        CHECK(std::string(e.what()).find("(0, 5)") != std::string::npos);
    }
}

TEST_CASE("solve small systems")
{
    const std::vector<Triplet> id{{0, 0, 1}, {1, 1, 1}, {2, 2, 1}};
    const std::vector<double> b{1, 2, 3};
    const SolveReport r = solve_linear(from_triplets(id, 3, 3), b);
    CHECK(r.solution == b);
    CHECK(r.relative_residual <= kDefaultSolveTol);
    CHECK(r.method_tag == "sparse-lu");

    const std::vector<Triplet> dg{{0, 0, 2}, {1, 1, 4}};
    const std::vector<double> b2{2, 4};
    const SolveReport r2 = solve_linear(from_triplets(dg, 2, 2), b2);
    CHECK(r2.solution[0] == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(r2.solution[1] == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("rank-deficient matrix reports SingularMatrix")
{
    const std::vector<Triplet> t{{0, 0, 1}, {0, 1, 1}, {1, 0, 1}, {1, 1, 1}};
    const SparseMatrix A = from_triplets(t, 2, 2);
    const std::vector<double> b{1, 0};
    for (SolveBackend be : {SolveBackend::Auto, SolveBackend::Direct}) {
        SolveOptions o;
        o.backend = be;
        try {
            (void)solve_linear(A, b, o);
            FAIL("expected SolveError");
        } catch (const SolveError& e) {
            CHECK(e.kind() == SolveFailure::SingularMatrix);
        }
    }
}

TEST_CASE("iterative backend reports NoConvergence on an inconsistent system")
{
    const std::vector<Triplet> t{{0, 0, 1}, {0, 1, 1}, {1, 0, 1}, {1, 1, 1}};
    SolveOptions o;
    o.backend = SolveBackend::Iterative;
    o.max_iterations = 20;
    const std::vector<double> b{1, 0};
    try {
        (void)solve_linear(from_triplets(t, 2, 2), b, o);
        FAIL("expected SolveError");
    } catch (const SolveError& e) {
        CHECK(e.kind() == SolveFailure::NoConvergence);
        CHECK(e.achieved_residual() > o.tol);
    }
}

TEST_CASE("solve preconditions")
{
    const std::vector<Triplet> t{{0, 0, 1}};
    const std::vector<double> b{1, 2};
    CHECK_THROWS_AS(solve_linear(from_triplets(t, 1, 2), b), std::invalid_argument);
    CHECK_THROWS_AS(solve_linear(from_triplets(t, 2, 2), std::vector<double>{1}),
                    std::invalid_argument);
    SolveOptions o;
    o.tol = 0.0;
    CHECK_THROWS_AS(solve_linear(from_triplets(t, 1, 1), std::vector<double>{1}, o),
                    std::invalid_argument);
}

TEST_CASE("residual_norm")
{
    const std::vector<Triplet> id{{0, 0, 1}, {1, 1, 1}};
    const SparseMatrix I = from_triplets(id, 2, 2);
    const std::vector<double> zero{0, 0};
    const std::vector<double> b{3, 4};
    CHECK(residual_norm(I, zero, b) == doctest::Approx(5.0).epsilon(1e-15));
    CHECK(residual_norm(I, b, b) <= 1e-14);
    CHECK_THROWS_AS(residual_norm(I, std::vector<double>{1}, b), std::invalid_argument);
}

TEST_CASE("random well-conditioned systems meet the residual bound")
{
    std::mt19937 rng(7);
    for (int trial = 0; trial < 20; ++trial) {
        const std::size_t n = 5;
        const SparseMatrix A = from_triplets(random_triplets(rng, n, 12, true), n, n);
        const std::vector<double> b = random_vector(rng, n);
        for (SolveBackend be : {SolveBackend::Auto, SolveBackend::Direct, SolveBackend::Iterative}) {
            SolveOptions o;
            o.backend = be;
            const SolveReport r = solve_linear(A, b, o);
            CHECK(residual_norm(A, r.solution, b) <= o.tol * std::max(norm(b), kTinyNorm));
        }
    }
}

TEST_CASE("a factorization serves many right-hand sides")
{
    std::mt19937 rng(11);
    const std::size_t n = 30;
    const SparseMatrix A = from_triplets(random_triplets(rng, n, 90, true), n, n);
    const LinearSolver s(A);
    for (int k = 0; k < 5; ++k) {
        const std::vector<double> b = random_vector(rng, n);
        const SolveReport r = s.solve(b);
        CHECK(r.relative_residual <= kDefaultSolveTol);
        CHECK(r.solution == solve_linear(A, b).solution);  // deterministic
    }
}

TEST_CASE("assembly is independent of triplet order")
{
    std::mt19937 rng(3);
    for (int trial = 0; trial < 10; ++trial) {
        std::vector<Triplet> t = random_triplets(rng, 10, 40, false);
        const SparseMatrix A = from_triplets(t, 10, 10);
        std::shuffle(t.begin(), t.end(), rng);
        const SparseMatrix B = from_triplets(t, 10, 10);
        const std::vector<double> x = random_vector(rng, 10);
        const std::vector<double> ya = A.multiply(x);
        const std::vector<double> yb = B.multiply(x);
        for (std::size_t k = 0; k < 10; ++k)
            CHECK(ya[k] == doctest::Approx(yb[k]).epsilon(1e-14));
    }
}

TEST_CASE("matrix-vector product agrees with a dense reference")
{
    std::mt19937 rng(5);
    for (int trial = 0; trial < 10; ++trial) {
        const std::size_t n = 20;
        const std::vector<Triplet> t = random_triplets(rng, n, 120, false);
        std::vector<double> dense(n * n, 0.0);
        for (const Triplet& e : t)
            dense[e.row * n + e.col] += e.value;
        const SparseMatrix A = from_triplets(t, n, n);
        const std::vector<double> x = random_vector(rng, n);
        const std::vector<double> y = A.multiply(x);
        for (std::size_t r = 0; r < n; ++r) {
            double s = 0.0;
            for (std::size_t c = 0; c < n; ++c)
                s += dense[r * n + c] * x[c];
            CHECK(std::abs(y[r] - s) <= 1e-14);
        }
    }
}
