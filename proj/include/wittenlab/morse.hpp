#pragma once

#include <Eigen/Core>
#include <array>
#include <vector>

#include "wittenlab/fields.hpp"
#include "wittenlab/mesh.hpp"

namespace wittenlab {

struct CriticalPoint {
    std::array<double, 3> location{};  // model coordinates
    Eigen::VectorXd xi;                // metric Hessian eigenvalues, ascending
    int index = 0;                     // number of negative eigenvalues
};

struct MorseData {
    int dim = 1;
    std::vector<CriticalPoint> points;
};

// Newton search for the zeros of the metric gradient, seeded from every mesh
// vertex, deduplicated and classified by the Hessian in arc-length units.
// Surface fields are analyzed on the smooth unit sphere that the mesh
// triangulates. Throws not_morse when a root has a near-zero Hessian
// eigenvalue.
MorseData find_critical_points(const ScalarField& field, const Mesh& mesh);

// C_p = number of critical points of index p, p = 0..dim.
std::vector<int> morse_counts(const MorseData& data);

}  // namespace wittenlab
