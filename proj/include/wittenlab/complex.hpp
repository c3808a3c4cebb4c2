#pragma once

#include <Eigen/Core>
#include <Eigen/SparseCore>
#include <array>
#include <vector>

#include "wittenlab/mesh.hpp"

namespace wittenlab {

using SpMat = Eigen::SparseMatrix<double>;

// Cochain complex of a model mesh: integer incidence coboundaries, diagonal
// Hodge masses (circumcentric dual volume / primal volume), and simplex
// barycenters in model coordinates (used to evaluate scalar fields).
struct CochainComplex {
    ModelKind kind = ModelKind::circle;
    int dim = 1;
    int coord_dim = 1;
    double radius = 0.0;
    double L1 = 0.0, L2 = 0.0;
    int n1 = 0, n2 = 0;

    std::vector<int> dims;                                       // dim+1 entries
    std::vector<SpMat> d;                                        // d[p]: dims[p+1] x dims[p]
    std::vector<Eigen::VectorXd> mass;                           // positive, dim+1 entries
    std::vector<std::vector<std::array<double, 3>>> barycenter;  // model coords, dim+1 entries

    double max_edge_length = 0.0;
    double length_scale = 1.0;

    int euler_characteristic() const {
        int chi = 0, sign = 1;
        for (int n : dims) { chi += sign * n; sign = -sign; }
        return chi;
    }
};

CochainComplex build_complex(const Mesh& mesh);

// Mass-normalized Hodge Laplacian in degree p,
//   A_p = M^-1/2 d_p' M d_p M^-1/2 + M^1/2 d_{p-1} M^-1 d_{p-1}' M^1/2,
// similar to the usual Laplacian and symmetric positive semidefinite.
// The coboundaries default to the complex's own d; the deformed complex
// passes its conjugated ones.
SpMat normalized_laplacian(const CochainComplex& complex, int p,
                           const SpMat* d_up = nullptr, const SpMat* d_down = nullptr);

// Number of eigenvalues counted as zero at the spectral gap threshold
// 1e-8 * (1 + lambda_max) with lambda_max the largest computed eigenvalue.
int gap_kernel_count(const Eigen::VectorXd& values);

// Betti numbers b_0..b_dim via kernel counts of the normalized Laplacians.
std::vector<int> betti(const CochainComplex& complex);

}  // namespace wittenlab
