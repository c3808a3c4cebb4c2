#include "wittenlab/morse.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>

#include "wittenlab/errors.hpp"

namespace wittenlab {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;
constexpr int kNewtonMaxIter = 50;
constexpr double kNewtonTol = 1e-12;      // on the metric gradient, times field scale
constexpr double kDedupeFactor = 1e-6;    // times model diameter
constexpr double kNondegeneracy = 1e-8;   // relative floor on |xi|

double wrap_angle(double theta) {
    double w = std::fmod(theta, kTwoPi);
    if (w < 0) w += kTwoPi;
    return w;
}

double angle_distance(double a, double b) {
    const double d = std::abs(wrap_angle(a - b));
    return std::min(d, kTwoPi - d);
}

struct Candidate {
    std::array<double, 3> location{};
    Eigen::VectorXd xi;
};

// Circle of radius R: metric derivative is (1/R) d/dtheta.
bool newton_circle(const ScalarField& f, double R, double theta, Candidate& out) {
    const double tol = kNewtonTol * f.scale * R;  // on f'(theta)
    for (int it = 0; it < kNewtonMaxIter; ++it) {
        const std::array<double, 3> p{theta, 0.0, 0.0};
        const double g = f.gradient(p)[0];
        if (std::abs(g) <= tol) {
            out.location = {wrap_angle(theta), 0.0, 0.0};
            out.xi = Eigen::VectorXd::Constant(1, f.hessian(p)[0] / (R * R));
            return true;
        }
        const double h = f.hessian(p)[0];
        if (std::abs(h) < 1e-14 * f.scale) return false;
        theta -= g / h;
    }
    return false;
}

bool newton_torus(const ScalarField& f, double L1, double L2, double th1, double th2,
                  Candidate& out) {
    const double s1 = kTwoPi / L1, s2 = kTwoPi / L2;  // d theta / d arc length
    const double tol = kNewtonTol * f.scale;
    for (int it = 0; it < kNewtonMaxIter; ++it) {
        const std::array<double, 3> p{th1, th2, 0.0};
        const auto g = f.gradient(p);
        // Metric gradient components rescale by 2pi/L_i.
        if (std::hypot(g[0] * s1, g[1] * s2) <= tol) {
            const auto h = f.hessian(p);
            Eigen::Matrix2d H;
            H << h[0] * s1 * s1, h[1] * s1 * s2, h[3] * s1 * s2, h[4] * s2 * s2;
            Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> es(0.5 * (H + H.transpose()));
            out.location = {wrap_angle(th1), wrap_angle(th2), 0.0};
            out.xi = es.eigenvalues();
            return true;
        }
        const auto h = f.hessian(p);
        Eigen::Matrix2d H;
        H << h[0], h[1], h[3], h[4];
        if (std::abs(H.determinant()) < 1e-14 * f.scale * f.scale) return false;
        const Eigen::Vector2d step = H.partialPivLu().solve(Eigen::Vector2d(g[0], g[1]));
        th1 -= step[0];
        th2 -= step[1];
    }
    return false;
}

// Surface fields are read on the unit sphere: Newton in the tangent plane of
// the current unit normal, with the restricted Hessian e_i' (d2f) e_j -
// (grad f . n) delta_ij.
bool newton_sphere(const ScalarField& f, Eigen::Vector3d n, Candidate& out) {
    n.normalize();
    const double tol = kNewtonTol * f.scale;
    for (int it = 0; it < kNewtonMaxIter; ++it) {
        const std::array<double, 3> p{n.x(), n.y(), n.z()};
        const auto ga = f.gradient(p);
        const Eigen::Vector3d grad(ga[0], ga[1], ga[2]);
        const double gn = grad.dot(n);
        const Eigen::Vector3d gt = grad - gn * n;

        Eigen::Vector3d e1 = n.unitOrthogonal();
        Eigen::Vector3d e2 = n.cross(e1);
        const auto ha = f.hessian(p);
        Eigen::Matrix3d D2;
        D2 << ha[0], ha[1], ha[2], ha[3], ha[4], ha[5], ha[6], ha[7], ha[8];
        Eigen::Matrix2d H;
        H << e1.dot(D2 * e1) - gn, e1.dot(D2 * e2), e2.dot(D2 * e1), e2.dot(D2 * e2) - gn;
        H = 0.5 * (H + H.transpose()).eval();

        if (gt.norm() <= tol) {
            Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> es(H);
            out.location = {n.x(), n.y(), n.z()};
            out.xi = es.eigenvalues();
            return true;
        }
        if (std::abs(H.determinant()) < 1e-14 * f.scale * f.scale) return false;
        const Eigen::Vector2d step =
            H.partialPivLu().solve(Eigen::Vector2d(e1.dot(gt), e2.dot(gt)));
        n = (n - step[0] * e1 - step[1] * e2).normalized();
    }
    return false;
}

double candidate_distance(ModelKind kind, const std::array<double, 3>& a,
                          const std::array<double, 3>& b) {
    switch (kind) {
        case ModelKind::circle:
            return angle_distance(a[0], b[0]);
        case ModelKind::flat_torus:
            return std::hypot(angle_distance(a[0], b[0]), angle_distance(a[1], b[1]));
        case ModelKind::surface:
            return std::hypot(a[0] - b[0], std::hypot(a[1] - b[1], a[2] - b[2]));
    }
    return 0.0;
}

}  // namespace

MorseData find_critical_points(const ScalarField& field, const Mesh& mesh) {
    check_domain(field, mesh.kind);
    MorseData data;
    data.dim = mesh.dim();

    std::vector<Candidate> found;
    int failed_seeds = 0;
    const double dedupe = kDedupeFactor *
                          (mesh.kind == ModelKind::surface ? mesh.length_scale() : kTwoPi);
    for (const auto& v : mesh.vertices) {
        Candidate cand;
        bool ok = false;
        switch (mesh.kind) {
            case ModelKind::circle:
                ok = newton_circle(field, mesh.radius, v[0], cand);
                break;
            case ModelKind::flat_torus:
                ok = newton_torus(field, mesh.L1, mesh.L2, v[0], v[1], cand);
                break;
            case ModelKind::surface:
                ok = newton_sphere(field, Eigen::Vector3d(v[0], v[1], v[2]), cand);
                break;
        }
        if (!ok) {
            ++failed_seeds;
            continue;
        }
        bool duplicate = false;
        for (const auto& seen : found)
            if (candidate_distance(mesh.kind, cand.location, seen.location) < dedupe) {
                duplicate = true;
                break;
            }
        if (!duplicate) found.push_back(std::move(cand));
    }

    if (found.empty())
        std::fprintf(stderr,
                     "warning: no critical point converged for field %s (%d seeds failed); "
                     "search may be incomplete\n",
                     field.name.c_str(), failed_seeds);

    // Order on quantized coordinates so that Newton jitter far below the
    // dedupe radius cannot reshuffle points that share a coordinate.
    const auto key = [](double x) { return std::llround(x * 1e8); };
    std::sort(found.begin(), found.end(), [&key](const Candidate& a, const Candidate& b) {
        for (int i = 0; i < 3; ++i)
            if (key(a.location[i]) != key(b.location[i]))
                return key(a.location[i]) < key(b.location[i]);
        return false;
    });

    const double diameter = mesh.length_scale();
    for (const auto& cand : found) {
        const double floor_xi = field.scale / (diameter * diameter);
        const double max_xi = std::max(cand.xi.cwiseAbs().maxCoeff(), 0.0);
        const double tol_xi = kNondegeneracy * std::max(max_xi, floor_xi);
        CriticalPoint cp;
        cp.location = cand.location;
        cp.xi = cand.xi;
        cp.index = 0;
        for (Eigen::Index j = 0; j < cand.xi.size(); ++j) {
            if (std::abs(cand.xi[j]) < tol_xi)
                throw Error(ErrorCode::not_morse,
                            "degenerate Hessian eigenvalue " + std::to_string(cand.xi[j]) +
                                " at a critical point of " + field.name);
            if (cand.xi[j] < 0) ++cp.index;
        }
        data.points.push_back(std::move(cp));
    }
    return data;
}

std::vector<int> morse_counts(const MorseData& data) {
    std::vector<int> counts(data.dim + 1, 0);
    for (const auto& cp : data.points) ++counts[cp.index];
    return counts;
}

}  // namespace wittenlab
