#pragma once

#include <array>
#include <iosfwd>
#include <string>
#include <vector>

namespace wittenlab {

enum class ModelKind { circle, flat_torus, surface };

const char* model_kind_name(ModelKind kind);

// Simplicial model mesh. Circle and torus vertices are stored in angle
// coordinates (theta in [0,2pi), one or two components); metric lengths come
// from `radius` resp. `L1`,`L2`. Surface vertices are embedded xyz.
// Edges and triangles hold vertex ids sorted increasingly; incidence signs
// elsewhere are taken from this ordering.
struct Mesh {
    ModelKind kind = ModelKind::circle;
    int coord_dim = 1;
    std::vector<std::array<double, 3>> vertices;
    std::vector<std::array<int, 2>> edges;
    std::vector<std::array<int, 3>> triangles;

    double radius = 0.0;       // circle only
    double L1 = 0.0, L2 = 0.0; // torus only
    int n1 = 0, n2 = 0;        // torus grid shape

    // Intrinsic dimension of the model (1 for circle, else 2).
    int dim() const { return kind == ModelKind::circle ? 1 : 2; }

    // Length scale used for dedupe radii and tolerance scaling.
    double length_scale() const;

    // Physical (metric) coordinates of a vertex: arc length on the circle,
    // rectangle coordinates on the torus, xyz on a surface.
    std::array<double, 3> metric_position(int vertex) const;
};

// Uniform n-gon model of the circle of circumference 2*pi*radius. n >= 3.
Mesh build_circle(int n, double radius);

// Flat torus [0,L1) x [0,L2) on an n1 x n2 grid of right triangles
// (each grid cell split along its up-right diagonal). n1, n2 >= 3.
Mesh build_flat_torus(int n1, int n2, double L1, double L2);

// OFF triangle mesh loader. Header "OFF", counts "V F E", vertex lines
// "x y z", face lines "3 i j k". Throws parse_error / non_manifold /
// degenerate_mesh with the offending line or simplex named.
Mesh load_mesh(const std::string& path);
Mesh load_mesh_stream(std::istream& in, const std::string& origin);

}  // namespace wittenlab
