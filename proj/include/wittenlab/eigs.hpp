#pragma once

#include <Eigen/Core>
#include <Eigen/SparseCore>
#include <cstdint>

namespace wittenlab {

struct EigOptions {
    // Convergence target for ||A v - lambda v|| / ||A||_1, per requested pair.
    double tol = 1e-8;
    int max_iterations = 500;
    // Subspace is k + block_extra vectors wide; the extra vectors absorb
    // eigenvalue clusters straddling position k.
    int block_extra = 8;
    std::uint64_t seed = 0x9e3779b97f4a7c15ull;
};

struct EigResult {
    Eigen::VectorXd values;     // ascending
    Eigen::MatrixXd vectors;    // one column per value
    Eigen::VectorXd residuals;  // per pair, relative to ||A||_1
    int iterations = 0;
    double max_residual = 0.0;
};

// k smallest eigenpairs of a sparse symmetric positive semidefinite matrix,
// by blocked shift-invert subspace iteration with Rayleigh-Ritz projection.
// Deterministic for a fixed seed. Throws solver_failure when the residual
// target is not reached within max_iterations. An initial subspace (columns,
// from a nearby problem) replaces the random start when supplied.
EigResult smallest_eigenpairs(const Eigen::SparseMatrix<double>& A, int k,
                              const EigOptions& opt = {},
                              const Eigen::MatrixXd* initial = nullptr);

// All eigenvalues of a dense symmetric matrix, ascending.
Eigen::VectorXd dense_symmetric_spectrum(const Eigen::MatrixXd& A);

double operator_one_norm(const Eigen::SparseMatrix<double>& A);

}  // namespace wittenlab
