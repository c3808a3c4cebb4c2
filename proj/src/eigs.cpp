#include "wittenlab/eigs.hpp"

#include <Eigen/Dense>
#include <Eigen/SparseCholesky>
#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "wittenlab/errors.hpp"

namespace wittenlab {

double operator_one_norm(const Eigen::SparseMatrix<double>& A) {
    double norm = 0.0;
    for (int j = 0; j < A.outerSize(); ++j) {
        double col = 0.0;
        for (Eigen::SparseMatrix<double>::InnerIterator it(A, j); it; ++it)
            col += std::abs(it.value());
        norm = std::max(norm, col);
    }
    return norm;
}

Eigen::VectorXd dense_symmetric_spectrum(const Eigen::MatrixXd& A) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(A, Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success)
        throw Error(ErrorCode::solver_failure, "dense symmetric eigensolve failed");
    return es.eigenvalues();
}

EigResult smallest_eigenpairs(const Eigen::SparseMatrix<double>& A, int k, const EigOptions& opt,
                              const Eigen::MatrixXd* initial) {
    const int n = int(A.rows());
    if (A.rows() != A.cols()) throw Error(ErrorCode::invalid_argument, "matrix is not square");
    if (k < 1 || k >= n)
        throw Error(ErrorCode::invalid_argument,
                    "requested " + std::to_string(k) + " eigenpairs of a " + std::to_string(n) +
                        "-dimensional operator");

    const double norm1 = operator_one_norm(A);
    if (norm1 == 0.0) {
        EigResult r;
        r.values = Eigen::VectorXd::Zero(k);
        r.vectors = Eigen::MatrixXd::Identity(n, k);
        r.residuals = Eigen::VectorXd::Zero(k);
        return r;
    }

    // Small positive shift keeps the factorization of a PSD matrix definite;
    // grow it if the factorization still fails.
    Eigen::SparseMatrix<double> I(n, n);
    I.setIdentity();
    double shift = 1e-6 * norm1;
    Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> solver;
    for (int attempt = 0;; ++attempt) {
        Eigen::SparseMatrix<double> shifted = A + shift * I;
        solver.compute(shifted);
        if (solver.info() == Eigen::Success) break;
        if (attempt == 2)
            throw Error(ErrorCode::solver_failure, "sparse factorization failed at shift " +
                                                       std::to_string(shift));
        shift *= 1e3;
    }

    const int m = std::min(n, k + opt.block_extra);
    std::mt19937_64 rng(opt.seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    Eigen::MatrixXd X(n, m);
    for (int j = 0; j < m; ++j)
        for (int i = 0; i < n; ++i) X(i, j) = gauss(rng);
    if (initial && initial->rows() == n) {
        const int c = std::min<int>(m, int(initial->cols()));
        X.leftCols(c) = initial->leftCols(c);
    }

    EigResult result;
    Eigen::VectorXd values;
    Eigen::MatrixXd vectors;
    Eigen::VectorXd residuals = Eigen::VectorXd::Zero(k);
    double rel = std::numeric_limits<double>::infinity();
    int it = 0;
    for (; it < opt.max_iterations; ++it) {
        Eigen::MatrixXd Y = solver.solve(X);
        Eigen::HouseholderQR<Eigen::MatrixXd> qr(Y);
        Eigen::MatrixXd Q = qr.householderQ() * Eigen::MatrixXd::Identity(n, m);

        Eigen::MatrixXd AQ = A * Q;
        Eigen::MatrixXd T = Q.transpose() * AQ;
        T = 0.5 * (T + T.transpose()).eval();
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(T);
        if (es.info() != Eigen::Success)
            throw Error(ErrorCode::solver_failure, "projected eigensolve failed");

        vectors = Q * es.eigenvectors();
        values = es.eigenvalues();

        rel = 0.0;
        Eigen::MatrixXd R = A * vectors.leftCols(k) -
                            vectors.leftCols(k) * values.head(k).asDiagonal();
        for (int j = 0; j < k; ++j) {
            residuals[j] = R.col(j).norm() / norm1;
            rel = std::max(rel, residuals[j]);
        }
        if (rel <= opt.tol) {
            ++it;
            break;
        }
        X = vectors;
    }

    if (rel > opt.tol) {
        std::ostringstream msg;
        msg << "eigensolver stalled: residual " << rel << " above tol " << opt.tol << " after "
            << opt.max_iterations << " iterations (n=" << n << ", k=" << k << ")";
        throw Error(ErrorCode::solver_failure, msg.str());
    }

    result.values = values.head(k);
    result.vectors = vectors.leftCols(k);
    result.residuals = residuals;
    result.iterations = it;
    result.max_residual = rel;
    return result;
}

}  // namespace wittenlab
