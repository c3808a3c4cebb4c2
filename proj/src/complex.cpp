#include "wittenlab/complex.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

#include "wittenlab/eigs.hpp"
#include "wittenlab/errors.hpp"

namespace wittenlab {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

// Near-degenerate dual edges (circumcenter on the edge itself) are rescued
// with a small multiple of the barycentric dual length instead of an exact
// zero, keeping the stiffness matrix nondegenerate without distorting the
// low spectrum.
constexpr double kDegenerateEdgePatch = 1e-2;

int64_t pair_key(int a, int b, int n) { return int64_t(a) * n + b; }

// Shortest representative of an angular offset, in (-pi, pi].
double wrap_delta(double delta) {
    double w = delta - kTwoPi * std::round(delta / kTwoPi);
    if (w <= -kTwoPi / 2) w += kTwoPi;
    return w;
}

double wrap_angle(double theta) {
    double w = std::fmod(theta, kTwoPi);
    if (w < 0) w += kTwoPi;
    return w;
}

SpMat vertex_to_edge_incidence(const Mesh& mesh) {
    std::vector<Eigen::Triplet<double>> trip;
    trip.reserve(2 * mesh.edges.size());
    for (int e = 0; e < int(mesh.edges.size()); ++e) {
        trip.emplace_back(e, mesh.edges[e][0], -1.0);
        trip.emplace_back(e, mesh.edges[e][1], 1.0);
    }
    SpMat d0(int(mesh.edges.size()), int(mesh.vertices.size()));
    d0.setFromTriplets(trip.begin(), trip.end());
    return d0;
}

CochainComplex build_circle_complex(const Mesh& mesh) {
    CochainComplex c;
    c.kind = mesh.kind;
    c.dim = 1;
    c.coord_dim = mesh.coord_dim;
    c.radius = mesh.radius;
    c.length_scale = mesh.length_scale();

    const int n = int(mesh.vertices.size());
    c.dims = {n, n};
    c.d.push_back(vertex_to_edge_incidence(mesh));

    const double h = kTwoPi * mesh.radius / n;
    c.mass.push_back(Eigen::VectorXd::Constant(n, h));
    c.mass.push_back(Eigen::VectorXd::Constant(n, 1.0 / h));
    c.max_edge_length = h;

    c.barycenter.resize(2);
    c.barycenter[0].reserve(n);
    for (const auto& v : mesh.vertices) c.barycenter[0].push_back(v);
    c.barycenter[1].reserve(n);
    for (const auto& e : mesh.edges) {
        const double a = mesh.vertices[e[0]][0];
        const double b = a + wrap_delta(mesh.vertices[e[1]][0] - a);
        c.barycenter[1].push_back({wrap_angle(0.5 * (a + b)), 0.0, 0.0});
    }
    return c;
}

struct TrianglePoints {
    Eigen::Vector3d p[3];
};

// Triangle corners as Euclidean points. Torus triangles are unwrapped around
// their first vertex so periodic wraparound never stretches them.
TrianglePoints triangle_points(const Mesh& mesh, const std::array<int, 3>& tri) {
    TrianglePoints out;
    if (mesh.kind == ModelKind::flat_torus) {
        const double sx = mesh.L1 / kTwoPi, sy = mesh.L2 / kTwoPi;
        const auto& ref = mesh.vertices[tri[0]];
        for (int i = 0; i < 3; ++i) {
            const auto& v = mesh.vertices[tri[i]];
            out.p[i] = Eigen::Vector3d((ref[0] + wrap_delta(v[0] - ref[0])) * sx,
                                       (ref[1] + wrap_delta(v[1] - ref[1])) * sy, 0.0);
        }
    } else {
        for (int i = 0; i < 3; ++i) {
            const auto& v = mesh.vertices[tri[i]];
            out.p[i] = Eigen::Vector3d(v[0], v[1], v[2]);
        }
    }
    return out;
}

CochainComplex build_triangulated_complex(const Mesh& mesh) {
    CochainComplex c;
    c.kind = mesh.kind;
    c.dim = 2;
    c.coord_dim = mesh.coord_dim;
    c.L1 = mesh.L1;
    c.L2 = mesh.L2;
    c.n1 = mesh.n1;
    c.n2 = mesh.n2;
    c.length_scale = mesh.length_scale();

    const int nv = int(mesh.vertices.size());
    const int ne = int(mesh.edges.size());
    const int nt = int(mesh.triangles.size());
    c.dims = {nv, ne, nt};
    c.d.push_back(vertex_to_edge_incidence(mesh));

    std::unordered_map<int64_t, int> edge_index;
    edge_index.reserve(2 * ne);
    for (int e = 0; e < ne; ++e) edge_index[pair_key(mesh.edges[e][0], mesh.edges[e][1], nv)] = e;

    // Boundary of the ordered triangle [a,b,c] is [b,c] - [a,c] + [a,b].
    std::vector<Eigen::Triplet<double>> trip;
    trip.reserve(3 * nt);
    for (int t = 0; t < nt; ++t) {
        const auto& tr = mesh.triangles[t];
        trip.emplace_back(t, edge_index.at(pair_key(tr[1], tr[2], nv)), 1.0);
        trip.emplace_back(t, edge_index.at(pair_key(tr[0], tr[2], nv)), -1.0);
        trip.emplace_back(t, edge_index.at(pair_key(tr[0], tr[1], nv)), 1.0);
    }
    SpMat d1(nt, ne);
    d1.setFromTriplets(trip.begin(), trip.end());
    c.d.push_back(d1);

    Eigen::VectorXd vertex_area = Eigen::VectorXd::Zero(nv);
    Eigen::VectorXd cotan_weight = Eigen::VectorXd::Zero(ne);
    Eigen::VectorXd barycentric_weight = Eigen::VectorXd::Zero(ne);
    Eigen::VectorXd triangle_area(nt);
    c.barycenter.assign(3, {});
    c.barycenter[2].reserve(nt);

    const double scale = c.length_scale;
    for (int t = 0; t < nt; ++t) {
        const auto& tr = mesh.triangles[t];
        const TrianglePoints P = triangle_points(mesh, tr);
        const Eigen::Vector3d centroid = (P.p[0] + P.p[1] + P.p[2]) / 3.0;
        const double area = 0.5 * (P.p[1] - P.p[0]).cross(P.p[2] - P.p[0]).norm();
        if (area <= 1e-14 * scale * scale)
            throw Error(ErrorCode::degenerate_mesh,
                        "triangle " + std::to_string(t) + " has vanishing area");
        triangle_area[t] = area;

        for (int i = 0; i < 3; ++i) {
            // Corner i faces the edge {j,k}; its cotangent weights that edge
            // and, with the two adjacent squared edge lengths, the
            // circumcentric corner area at i.
            const int j = (i + 1) % 3, k = (i + 2) % 3;
            const Eigen::Vector3d u = P.p[j] - P.p[i];
            const Eigen::Vector3d v = P.p[k] - P.p[i];
            const int e_jk = edge_index.at(pair_key(std::min(tr[j], tr[k]), std::max(tr[j], tr[k]), nv));
            cotan_weight[e_jk] += 0.5 * u.dot(v) / (2.0 * area);
            const double cot_j = (u.squaredNorm() - u.dot(v)) / (2.0 * area);
            const double cot_k = (v.squaredNorm() - u.dot(v)) / (2.0 * area);
            vertex_area[tr[i]] += 0.125 * (u.squaredNorm() * cot_k + v.squaredNorm() * cot_j);
            const Eigen::Vector3d mid = 0.5 * (P.p[j] + P.p[k]);
            barycentric_weight[e_jk] += (centroid - mid).norm() / (P.p[k] - P.p[j]).norm();
        }

        if (mesh.kind == ModelKind::flat_torus) {
            // Centroid back in angle coordinates, wrapped to [0, 2pi).
            const auto& ref = mesh.vertices[tr[0]];
            double a0 = 0.0, a1 = 0.0;
            for (int i = 0; i < 3; ++i) {
                a0 += ref[0] + wrap_delta(mesh.vertices[tr[i]][0] - ref[0]);
                a1 += ref[1] + wrap_delta(mesh.vertices[tr[i]][1] - ref[1]);
            }
            c.barycenter[2].push_back({wrap_angle(a0 / 3.0), wrap_angle(a1 / 3.0), 0.0});
        } else {
            c.barycenter[2].push_back({centroid.x(), centroid.y(), centroid.z()});
        }
    }

    for (int v = 0; v < nv; ++v)
        if (!(vertex_area[v] > 0))
            throw Error(ErrorCode::degenerate_mesh,
                        "vertex " + std::to_string(v) + " has non-positive dual area");

    Eigen::VectorXd edge_mass(ne);
    for (int e = 0; e < ne; ++e) {
        const double w = cotan_weight[e];
        const double bary = barycentric_weight[e];
        if (mesh.kind == ModelKind::flat_torus && std::abs(w) <= 1e-9 * bary) {
            edge_mass[e] = kDegenerateEdgePatch * bary;
        } else if (!(w > 0)) {
            throw Error(ErrorCode::degenerate_mesh,
                        "edge " + std::to_string(e) + " has non-positive dual weight");
        } else {
            edge_mass[e] = w;
        }
    }

    c.mass.push_back(vertex_area);
    c.mass.push_back(edge_mass);
    c.mass.push_back(triangle_area.cwiseInverse());

    c.barycenter[0].reserve(nv);
    for (const auto& v : mesh.vertices) c.barycenter[0].push_back(v);
    c.barycenter[1].reserve(ne);
    double max_len = 0.0;
    for (int e = 0; e < ne; ++e) {
        const auto& a = mesh.vertices[mesh.edges[e][0]];
        const auto& b = mesh.vertices[mesh.edges[e][1]];
        if (mesh.kind == ModelKind::flat_torus) {
            const double d0 = wrap_delta(b[0] - a[0]);
            const double d1 = wrap_delta(b[1] - a[1]);
            c.barycenter[1].push_back({wrap_angle(a[0] + 0.5 * d0), wrap_angle(a[1] + 0.5 * d1), 0.0});
            max_len = std::max(max_len, std::hypot(d0 * mesh.L1 / kTwoPi, d1 * mesh.L2 / kTwoPi));
        } else {
            c.barycenter[1].push_back(
                {0.5 * (a[0] + b[0]), 0.5 * (a[1] + b[1]), 0.5 * (a[2] + b[2])});
            max_len = std::max(max_len,
                               std::hypot(b[0] - a[0], std::hypot(b[1] - a[1], b[2] - a[2])));
        }
    }
    c.max_edge_length = max_len;
    return c;
}

}  // namespace

CochainComplex build_complex(const Mesh& mesh) {
    if (mesh.kind == ModelKind::circle) return build_circle_complex(mesh);
    return build_triangulated_complex(mesh);
}

SpMat normalized_laplacian(const CochainComplex& c, int p, const SpMat* d_up, const SpMat* d_down) {
    if (p < 0 || p > c.dim) throw Error(ErrorCode::invalid_argument, "degree out of range");
    const int n = c.dims[p];
    const Eigen::VectorXd half = c.mass[p].cwiseSqrt();
    const Eigen::VectorXd half_inv = half.cwiseInverse();

    SpMat A(n, n);
    if (p < c.dim) {
        const SpMat& D = d_up ? *d_up : c.d[p];
        SpMat B = D * SpMat(half_inv.asDiagonal());
        SpMat MB = SpMat(c.mass[p + 1].asDiagonal()) * B;
        A = SpMat(B.transpose()) * MB;
    }
    if (p > 0) {
        const SpMat& D = d_down ? *d_down : c.d[p - 1];
        SpMat E = SpMat(half.asDiagonal()) * D;
        SpMat EM = E * SpMat(c.mass[p - 1].cwiseInverse().asDiagonal());
        SpMat down = EM * SpMat(E.transpose());
        A = (p < c.dim) ? SpMat(A + down) : down;
    }
    SpMat At = A.transpose();
    return 0.5 * (A + At);
}

int gap_kernel_count(const Eigen::VectorXd& values) {
    if (values.size() == 0) return 0;
    const double threshold = 1e-8 * (1.0 + values[values.size() - 1]);
    int count = 0;
    for (Eigen::Index i = 0; i < values.size(); ++i)
        if (values[i] < threshold) ++count;
    return count;
}

std::vector<int> betti(const CochainComplex& c) {
    std::vector<int> b;
    b.reserve(c.dim + 1);
    for (int p = 0; p <= c.dim; ++p) {
        const SpMat A = normalized_laplacian(c, p);
        const int k = std::min(c.dims[p] - 1, 8);
        EigOptions opt;
        const EigResult r = smallest_eigenpairs(A, k, opt);
        b.push_back(gap_kernel_count(r.values));
    }
    return b;
}

}  // namespace wittenlab
