#include <cmath>
#include <random>
#include <vector>

#include "doctest.h"
#include "wittenlab/complex.hpp"
#include "wittenlab/eigs.hpp"
#include "wittenlab/errors.hpp"

using namespace wittenlab;

namespace {

SpMat sparse_diag(const std::vector<double>& entries) {
    const int n = int(entries.size());
    SpMat A(n, n);
    for (int i = 0; i < n; ++i) A.insert(i, i) = entries[i];
    A.makeCompressed();
    return A;
}

// Random sparse symmetric PSD matrix B' B with a fixed seed.
SpMat random_psd(int n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::uniform_int_distribution<int> pick(0, n - 1);
    SpMat B(n, n);
    std::vector<Eigen::Triplet<double>> trip;
    for (int i = 0; i < n; ++i) {
        trip.emplace_back(i, i, gauss(rng));
        for (int j = 0; j < 3; ++j) trip.emplace_back(pick(rng), i, 0.5 * gauss(rng));
    }
    B.setFromTriplets(trip.begin(), trip.end());
    SpMat A = SpMat(B.transpose()) * B;
    A.makeCompressed();
    return A;
}

}  // namespace

TEST_CASE("diagonal matrix eigenvalues come back sorted") {
    const SpMat A = sparse_diag({3.0, 1.0, 2.0});
    const EigResult r = smallest_eigenpairs(A, 2);
    REQUIRE(r.values.size() == 2);
    CHECK(r.values[0] == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(r.values[1] == doctest::Approx(2.0).epsilon(1e-10));
    CHECK(r.max_residual <= 1e-8);
}

TEST_CASE("argument validation") {
    const SpMat A = sparse_diag({1.0, 2.0, 3.0});
    CHECK_THROWS_AS(smallest_eigenpairs(A, 0), Error);
    CHECK_THROWS_AS(smallest_eigenpairs(A, 3), Error);
    CHECK_THROWS_AS(smallest_eigenpairs(A, -1), Error);
}

TEST_CASE("zero matrix yields zero eigenvalues with unit vectors") {
    SpMat A(5, 5);
    A.makeCompressed();
    const EigResult r = smallest_eigenpairs(A, 3);
    for (int i = 0; i < 3; ++i) {
        CHECK(r.values[i] == 0.0);
        CHECK(r.vectors.col(i).norm() == doctest::Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("results are bitwise deterministic for a fixed seed") {
    const SpMat A = random_psd(60, 7u);
    const EigResult a = smallest_eigenpairs(A, 5);
    const EigResult b = smallest_eigenpairs(A, 5);
    for (int i = 0; i < 5; ++i) {
        CHECK(a.values[i] == b.values[i]);  // exact double equality
        CHECK((a.vectors.col(i) - b.vectors.col(i)).norm() == 0.0);
    }
}

TEST_CASE("residual certificates hold against the matrix") {
    const SpMat A = random_psd(80, 11u);
    const double norm = operator_one_norm(A);
    const EigResult r = smallest_eigenpairs(A, 6);
    for (int i = 0; i < 6; ++i) {
        const double res = (A * r.vectors.col(i) - r.values[i] * r.vectors.col(i)).norm() / norm;
        CHECK(res <= 1.0000001 * r.residuals[i] + 1e-15);
        CHECK(r.residuals[i] <= 1e-8);
    }
}

TEST_CASE("sparse results agree with a dense factorization") {
    const SpMat A = random_psd(50, 3u);
    const Eigen::VectorXd dense = dense_symmetric_spectrum(Eigen::MatrixXd(A));
    const EigResult r = smallest_eigenpairs(A, 8);
    const double scale = 1.0 + std::abs(dense[dense.size() - 1]);
    for (int i = 0; i < 8; ++i)
        CHECK(std::abs(r.values[i] - dense[i]) <= 1e-7 * scale);
}

TEST_CASE("a warm start from a nearby matrix converges") {
    const SpMat A = random_psd(60, 21u);
    const EigResult cold = smallest_eigenpairs(A, 4);
    SpMat B = A;
    for (int i = 0; i < 60; ++i) B.coeffRef(i, i) += 1e-3 * (i % 5);
    const Eigen::MatrixXd init = cold.vectors;
    const EigResult warm = smallest_eigenpairs(B, 4, {}, &init);
    const Eigen::VectorXd dense = dense_symmetric_spectrum(Eigen::MatrixXd(B));
    for (int i = 0; i < 4; ++i)
        CHECK(warm.values[i] == doctest::Approx(dense[i]).epsilon(1e-7));
}

TEST_CASE("one norm of a sparse matrix") {
    SpMat A(2, 2);
    A.insert(0, 0) = 1.0;
    A.insert(1, 0) = -3.0;
    A.insert(1, 1) = 2.0;
    A.makeCompressed();
    CHECK(operator_one_norm(A) == doctest::Approx(4.0));
}
