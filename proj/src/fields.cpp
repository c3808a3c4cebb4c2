#include "wittenlab/fields.hpp"

#include <cmath>

#include "wittenlab/errors.hpp"

namespace wittenlab {

namespace {

using P = std::array<double, 3>;

double require_param(const std::map<std::string, double>& params, const std::string& key,
                     const std::string& field) {
    auto it = params.find(key);
    if (it == params.end())
        throw Error(ErrorCode::config_error,
                    "field \"" + field + "\" requires parameter \"" + key + "\"");
    return it->second;
}

ScalarField circle_cos(int k) {
    ScalarField f;
    f.domain = ModelKind::circle;
    f.scale = double(k);
    f.value = [k](const P& p) { return std::cos(k * p[0]); };
    f.gradient = [k](const P& p) { return P{-k * std::sin(k * p[0]), 0.0, 0.0}; };
    f.hessian = [k](const P& p) {
        return std::array<double, 9>{-double(k) * k * std::cos(k * p[0]), 0, 0, 0, 0, 0, 0, 0, 0};
    };
    return f;
}

ScalarField torus_cos_pair(int k1, double c2) {
    // f = cos(k1 theta1) + c2 cos(theta2)
    ScalarField f;
    f.domain = ModelKind::flat_torus;
    f.scale = std::max(double(k1), std::abs(c2)) + 1.0;
    f.value = [k1, c2](const P& p) { return std::cos(k1 * p[0]) + c2 * std::cos(p[1]); };
    f.gradient = [k1, c2](const P& p) {
        return P{-k1 * std::sin(k1 * p[0]), -c2 * std::sin(p[1]), 0.0};
    };
    f.hessian = [k1, c2](const P& p) {
        return std::array<double, 9>{-double(k1) * k1 * std::cos(k1 * p[0]), 0, 0,
                                     0, -c2 * std::cos(p[1]), 0,
                                     0, 0, 0};
    };
    return f;
}

}  // namespace

ScalarField make_field(const std::string& name, const std::map<std::string, double>& params) {
    ScalarField f;
    if (name == "cos-theta") {
        f = circle_cos(1);
    } else if (name == "cos-k-theta") {
        const double k = require_param(params, "k", name);
        if (!(k > 0) || std::abs(k - std::round(k)) > 1e-9)
            throw Error(ErrorCode::config_error, "parameter k must be a positive integer");
        f = circle_cos(int(std::lround(k)));
    } else if (name == "sum-cos") {
        f = torus_cos_pair(1, 1.0);
    } else if (name == "cos2-plus-cos") {
        f = torus_cos_pair(2, 1.0);
    } else if (name == "tilted") {
        const double eps = require_param(params, "epsilon", name);
        if (!std::isfinite(eps))
            throw Error(ErrorCode::config_error, "parameter epsilon must be finite");
        f = torus_cos_pair(1, eps);
    } else if (name == "height") {
        f.domain = ModelKind::surface;
        f.value = [](const P& p) { return p[2]; };
        f.gradient = [](const P&) { return P{0.0, 0.0, 1.0}; };
        f.hessian = [](const P&) { return std::array<double, 9>{}; };
    } else {
        throw Error(ErrorCode::config_error, "unknown field \"" + name + "\"");
    }
    f.name = name;
    return f;
}

Eigen::VectorXd evaluate_field(const ScalarField& field,
                               const std::vector<std::array<double, 3>>& points) {
    Eigen::VectorXd out(points.size());
    for (size_t i = 0; i < points.size(); ++i) out[i] = field.value(points[i]);
    return out;
}

Eigen::VectorXd evaluate_field(const ScalarField& field, const Mesh& mesh) {
    check_domain(field, mesh.kind);
    return evaluate_field(field, mesh.vertices);
}

void check_domain(const ScalarField& field, ModelKind kind) {
    if (field.domain != kind)
        throw Error(ErrorCode::domain_mismatch, "field \"" + field.name + "\" is defined on " +
                                                    std::string(model_kind_name(field.domain)) +
                                                    ", not " + model_kind_name(kind));
}

}  // namespace wittenlab
