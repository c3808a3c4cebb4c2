#include "wittenlab/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <numbers>
#include <sstream>

#include "wittenlab/errors.hpp"

namespace wittenlab {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

std::array<int, 2> sorted_pair(int a, int b) {
    return a < b ? std::array<int, 2>{a, b} : std::array<int, 2>{b, a};
}

std::array<int, 3> sorted_triple(int a, int b, int c) {
    std::array<int, 3> t{a, b, c};
    std::sort(t.begin(), t.end());
    return t;
}

}  // namespace

const char* model_kind_name(ModelKind kind) {
    switch (kind) {
        case ModelKind::circle: return "circle";
        case ModelKind::flat_torus: return "torus";
        case ModelKind::surface: return "surface";
    }
    return "?";
}

double Mesh::length_scale() const {
    switch (kind) {
        case ModelKind::circle: return kTwoPi * radius;
        case ModelKind::flat_torus: return std::max(L1, L2);
        case ModelKind::surface: {
            double r = 0.0;
            for (const auto& v : vertices)
                r = std::max(r, std::abs(v[0]) + std::abs(v[1]) + std::abs(v[2]));
            return std::max(r, 1e-300);
        }
    }
    return 1.0;
}

std::array<double, 3> Mesh::metric_position(int vertex) const {
    const auto& v = vertices[vertex];
    switch (kind) {
        case ModelKind::circle: return {radius * v[0], 0.0, 0.0};
        case ModelKind::flat_torus:
            return {v[0] * L1 / kTwoPi, v[1] * L2 / kTwoPi, 0.0};
        case ModelKind::surface: return v;
    }
    return {0.0, 0.0, 0.0};
}

Mesh build_circle(int n, double radius) {
    if (n < 3)
        throw Error(ErrorCode::invalid_argument,
                    "build_circle: need n >= 3 vertices, got " + std::to_string(n));
    if (!(radius > 0.0))
        throw Error(ErrorCode::invalid_argument, "build_circle: radius must be positive");
    Mesh m;
    m.kind = ModelKind::circle;
    m.coord_dim = 1;
    m.radius = radius;
    m.vertices.resize(n);
    for (int i = 0; i < n; ++i) m.vertices[i] = {kTwoPi * i / n, 0.0, 0.0};
    m.edges.reserve(n);
    for (int i = 0; i < n; ++i) m.edges.push_back(sorted_pair(i, (i + 1) % n));
    return m;
}

Mesh build_flat_torus(int n1, int n2, double L1, double L2) {
    if (n1 < 3 || n2 < 3)
        throw Error(ErrorCode::invalid_argument, "build_flat_torus: need n1, n2 >= 3, got " +
                                                     std::to_string(n1) + " x " + std::to_string(n2));
    if (!(L1 > 0.0) || !(L2 > 0.0))
        throw Error(ErrorCode::invalid_argument, "build_flat_torus: side lengths must be positive");
    Mesh m;
    m.kind = ModelKind::flat_torus;
    m.coord_dim = 2;
    m.L1 = L1;
    m.L2 = L2;
    m.n1 = n1;
    m.n2 = n2;
    m.vertices.resize(static_cast<size_t>(n1) * n2);
    for (int j = 0; j < n2; ++j)
        for (int i = 0; i < n1; ++i)
            m.vertices[static_cast<size_t>(j) * n1 + i] = {kTwoPi * i / n1, kTwoPi * j / n2, 0.0};

    auto vid = [&](int i, int j) {
        return ((j % n2 + n2) % n2) * n1 + ((i % n1 + n1) % n1);
    };
    // Per base vertex: one horizontal, one vertical and one diagonal edge, and
    // the two triangles of the cell whose lower-left corner it is.
    m.edges.reserve(m.vertices.size() * 3);
    m.triangles.reserve(m.vertices.size() * 2);
    for (int j = 0; j < n2; ++j) {
        for (int i = 0; i < n1; ++i) {
            int v = vid(i, j), r = vid(i + 1, j), u = vid(i, j + 1), d = vid(i + 1, j + 1);
            m.edges.push_back(sorted_pair(v, r));
            m.edges.push_back(sorted_pair(v, u));
            m.edges.push_back(sorted_pair(v, d));
            m.triangles.push_back(sorted_triple(v, r, d));
            m.triangles.push_back(sorted_triple(v, d, u));
        }
    }
    return m;
}

Mesh load_mesh_stream(std::istream& in, const std::string& origin) {
    auto fail = [&](const std::string& what) {
        throw Error(ErrorCode::parse_error, origin + ": " + what);
    };
    auto next_line = [&](std::string& out) {
        while (std::getline(in, out)) {
            auto pos = out.find('#');
            if (pos != std::string::npos) out.erase(pos);
            if (out.find_first_not_of(" \t\r\n") != std::string::npos) return true;
        }
        return false;
    };

    std::string line;
    if (!next_line(line)) fail("empty file");
    {
        std::istringstream ss(line);
        std::string magic;
        ss >> magic;
        if (magic != "OFF") fail("missing OFF header");
    }
    if (!next_line(line)) fail("missing count line");
    long nv = -1, nf = -1, ne = -1;
    {
        std::istringstream ss(line);
        if (!(ss >> nv >> nf >> ne) || nv < 0 || nf < 0) fail("bad count line '" + line + "'");
    }

    Mesh m;
    m.kind = ModelKind::surface;
    m.coord_dim = 3;
    m.vertices.resize(nv);
    for (long i = 0; i < nv; ++i) {
        if (!next_line(line)) fail("truncated vertex list at vertex " + std::to_string(i));
        std::istringstream ss(line);
        if (!(ss >> m.vertices[i][0] >> m.vertices[i][1] >> m.vertices[i][2]))
            fail("bad vertex line '" + line + "'");
    }

    std::map<std::array<int, 2>, int> edge_use;
    m.triangles.reserve(nf);
    for (long f = 0; f < nf; ++f) {
        if (!next_line(line)) fail("truncated face list at face " + std::to_string(f));
        std::istringstream ss(line);
        int cnt, a, b, c;
        if (!(ss >> cnt >> a >> b >> c)) fail("bad face line '" + line + "'");
        if (cnt != 3) fail("face " + std::to_string(f) + " has " + std::to_string(cnt) +
                           " vertices, only triangles are supported");
        if (a < 0 || b < 0 || c < 0 || a >= nv || b >= nv || c >= nv)
            fail("face " + std::to_string(f) + " references a vertex out of range");
        if (a == b || b == c || a == c)
            fail("face " + std::to_string(f) + " repeats a vertex");
        m.triangles.push_back(sorted_triple(a, b, c));
        for (auto e : {sorted_pair(a, b), sorted_pair(b, c), sorted_pair(a, c)}) {
            int uses = ++edge_use[e];
            if (uses > 2)
                throw Error(ErrorCode::non_manifold,
                            origin + ": edge (" + std::to_string(e[0]) + "," +
                                std::to_string(e[1]) + ") lies in more than two triangles");
        }
    }

    double scale = 0.0;
    for (const auto& v : m.vertices)
        scale = std::max({scale, std::abs(v[0]), std::abs(v[1]), std::abs(v[2])});
    for (size_t f = 0; f < m.triangles.size(); ++f) {
        const auto& t = m.triangles[f];
        const auto &A = m.vertices[t[0]], &B = m.vertices[t[1]], &C = m.vertices[t[2]];
        double ux = B[0] - A[0], uy = B[1] - A[1], uz = B[2] - A[2];
        double vx = C[0] - A[0], vy = C[1] - A[1], vz = C[2] - A[2];
        double cx = uy * vz - uz * vy, cy = uz * vx - ux * vz, cz = ux * vy - uy * vx;
        double area2 = std::sqrt(cx * cx + cy * cy + cz * cz);
        if (!(area2 > 1e-14 * scale * scale))
            throw Error(ErrorCode::degenerate_mesh,
                        origin + ": triangle " + std::to_string(f) + " has vanishing area");
    }

    m.edges.reserve(edge_use.size());
    for (const auto& [e, uses] : edge_use) m.edges.push_back(e);
    return m;
}

Mesh load_mesh(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::parse_error, "cannot open mesh file '" + path + "'");
    return load_mesh_stream(in, path);
}

}  // namespace wittenlab
