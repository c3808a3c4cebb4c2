#include <cmath>
#include <sstream>

#include "doctest.h"
#include "wittenlab/errors.hpp"
#include "wittenlab/mesh.hpp"

using namespace wittenlab;

namespace {
constexpr double kTwoPi = 6.283185307179586476925286766559;
}

TEST_CASE("circle mesh enumerates a closed ring") {
    const Mesh m = build_circle(8, 1.0);
    CHECK(m.vertices.size() == 8);
    CHECK(m.edges.size() == 8);
    CHECK(m.vertices[3][0] == doctest::Approx(3.0 * kTwoPi / 8).epsilon(1e-15));
    // Each vertex appears in exactly two edges.
    std::vector<int> degree(8, 0);
    for (const auto& e : m.edges) {
        ++degree[e[0]];
        ++degree[e[1]];
    }
    for (int d : degree) CHECK(d == 2);
    CHECK_THROWS_AS(build_circle(2, 1.0), Error);
    CHECK_THROWS_AS(build_circle(8, 0.0), Error);
}

TEST_CASE("flat torus mesh has the product counts") {
    const Mesh m = build_flat_torus(5, 7, kTwoPi, kTwoPi);
    CHECK(m.vertices.size() == 35);
    CHECK(m.edges.size() == 3 * 35);
    CHECK(m.triangles.size() == 2 * 35);
    // Euler characteristic of the torus.
    CHECK(int(m.vertices.size()) - int(m.edges.size()) + int(m.triangles.size()) == 0);
    CHECK_THROWS_AS(build_flat_torus(2, 7, kTwoPi, kTwoPi), Error);
}

TEST_CASE("octahedron file loads with sphere counts") {
    const Mesh m = load_mesh(std::string(WITTENLAB_DATA_DIR) + "/octahedron.off");
    CHECK(m.kind == ModelKind::surface);
    CHECK(m.vertices.size() == 6);
    CHECK(m.edges.size() == 12);
    CHECK(m.triangles.size() == 8);
    CHECK(int(m.vertices.size()) - int(m.edges.size()) + int(m.triangles.size()) == 2);
}

TEST_CASE("malformed OFF input is rejected") {
    std::istringstream bad_magic("FFO\n3 1 3\n0 0 0\n1 0 0\n0 1 0\n3 0 1 2\n");
    CHECK_THROWS_WITH_AS(load_mesh_stream(bad_magic, "test"),
                         doctest::Contains("OFF"), Error);

    std::istringstream quad("OFF\n4 1 4\n0 0 0\n1 0 0\n1 1 0\n0 1 0\n4 0 1 2 3\n");
    CHECK_THROWS_AS(load_mesh_stream(quad, "test"), Error);

    // Three triangles sharing one edge.
    std::istringstream pinched(
        "OFF\n5 3 7\n0 0 0\n1 0 0\n0 1 0\n0 -1 0\n0 0 1\n3 0 1 2\n3 0 1 3\n3 0 1 4\n");
    try {
        load_mesh_stream(pinched, "test");
        FAIL("expected non_manifold");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::non_manifold);
    }

    // Two coincident vertices make a zero-area triangle.
    std::istringstream flat("OFF\n3 1 3\n0 0 0\n0 0 0\n0 1 0\n3 0 1 2\n");
    try {
        load_mesh_stream(flat, "test");
        FAIL("expected degenerate_mesh");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::degenerate_mesh);
    }
}

TEST_CASE("comments and blank lines are ignored") {
    std::istringstream ok(
        "OFF\n# comment\n\n4 2 5\n0 0 0\n1 0 0 # trailing note\n1 1 0\n0 1 0\n"
        "3 0 1 2\n3 0 2 3\n");
    const Mesh m = load_mesh_stream(ok, "test");
    CHECK(m.vertices.size() == 4);
    CHECK(m.triangles.size() == 2);
    CHECK(m.edges.size() == 5);
}
