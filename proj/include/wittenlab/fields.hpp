#pragma once

#include <Eigen/Core>
#include <array>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "wittenlab/mesh.hpp"

namespace wittenlab {

// Closed-form scalar field with analytic derivatives, evaluated in model
// coordinates: angles for circle and torus fields, embedding coordinates for
// surface fields. Derivatives are with respect to those same coordinates;
// metric rescaling (angle to arc length) happens where the metric lives.
struct ScalarField {
    ModelKind domain = ModelKind::circle;
    std::string name;
    double scale = 1.0;  // magnitude scale of f, used for gradient tolerances
    std::function<double(const std::array<double, 3>&)> value;
    std::function<std::array<double, 3>(const std::array<double, 3>&)> gradient;
    std::function<std::array<double, 9>(const std::array<double, 3>&)> hessian;  // row-major
};

// Catalog lookup. Parameters: "k" for cos-k-theta (positive integer),
// "epsilon" for tilted. A missing required parameter is a config error.
ScalarField make_field(const std::string& name, const std::map<std::string, double>& params = {});

// Field values at the given model points (vertices, barycenters).
Eigen::VectorXd evaluate_field(const ScalarField& field,
                               const std::vector<std::array<double, 3>>& points);

// Same, with a domain check against the mesh model.
Eigen::VectorXd evaluate_field(const ScalarField& field, const Mesh& mesh);

void check_domain(const ScalarField& field, ModelKind kind);

}  // namespace wittenlab
