#include <cmath>
#include <string>

#include "doctest.h"
#include "wittenlab/errors.hpp"
#include "wittenlab/fields.hpp"
#include "wittenlab/mesh.hpp"
#include "wittenlab/morse.hpp"

using namespace wittenlab;

namespace {
constexpr double kPi = 3.1415926535897932384626433832795;

bool near_point(const CriticalPoint& p, double x, double y, double tol = 1e-8) {
    auto wrap = [](double d) {
        d = std::fmod(d, 2.0 * kPi);
        if (d > kPi) d -= 2.0 * kPi;
        if (d < -kPi) d += 2.0 * kPi;
        return std::abs(d);
    };
    return wrap(p.location[0] - x) < tol && wrap(p.location[1] - y) < tol;
}
}  // namespace

TEST_CASE("catalog fields evaluate to their closed forms") {
    const ScalarField f = make_field("cos-theta");
    CHECK(f.value({0.0, 0.0, 0.0}) == doctest::Approx(1.0));
    const Mesh circle4 = build_circle(4, 1.0);
    const Eigen::VectorXd v = evaluate_field(f, circle4);
    REQUIRE(v.size() == 4);
    CHECK(v[0] == doctest::Approx(1.0));
    CHECK(std::abs(v[1]) < 1e-15);
    CHECK(v[2] == doctest::Approx(-1.0));
    CHECK(std::abs(v[3]) < 1e-15);

    const ScalarField g = make_field("sum-cos");
    CHECK(g.value({0.0, 0.0, 0.0}) == doctest::Approx(2.0));
    CHECK(g.value({kPi, kPi, 0.0}) == doctest::Approx(-2.0));

    const ScalarField h = make_field("cos-k-theta", {{"k", 3.0}});
    CHECK(h.value({kPi / 3.0, 0.0, 0.0}) == doctest::Approx(-1.0));
    CHECK_THROWS_AS(make_field("cos-k-theta"), Error);
    CHECK_THROWS_AS(make_field("cos-k-theta", {{"k", 2.5}}), Error);
    CHECK_THROWS_AS(make_field("tilted"), Error);
    CHECK_THROWS_AS(make_field("no-such-field"), Error);
}

TEST_CASE("field and mesh domains must agree") {
    const ScalarField f = make_field("sum-cos");
    const Mesh circle = build_circle(8, 1.0);
    try {
        evaluate_field(f, circle);
        FAIL("expected domain_mismatch");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::domain_mismatch);
    }
}

TEST_CASE("cos-theta has one maximum and one minimum on the circle") {
    const MorseData md = find_critical_points(make_field("cos-theta"), build_circle(16, 1.0));
    REQUIRE(md.points.size() == 2);
    // Sorted by coordinate: the maximum at 0, the minimum at pi.
    CHECK(std::abs(md.points[0].location[0]) < 1e-10);
    CHECK(md.points[0].index == 1);
    CHECK(md.points[0].xi[0] == doctest::Approx(-1.0));
    CHECK(md.points[1].location[0] == doctest::Approx(kPi));
    CHECK(md.points[1].index == 0);
    CHECK(md.points[1].xi[0] == doctest::Approx(1.0));

    const std::vector<int> counts = morse_counts(md);
    CHECK(counts == std::vector<int>{1, 1});
}

TEST_CASE("radius rescales the circle Hessian eigenvalues") {
    const MorseData md = find_critical_points(make_field("cos-theta"), build_circle(16, 2.0));
    REQUIRE(md.points.size() == 2);
    // Arc-length second derivative is f'' / R^2.
    CHECK(md.points[1].xi[0] == doctest::Approx(0.25));
}

TEST_CASE("sum of cosines has the four torus critical points") {
    const MorseData md =
        find_critical_points(make_field("sum-cos"), build_flat_torus(24, 24, 2.0 * kPi, 2.0 * kPi));
    REQUIRE(md.points.size() == 4);
    CHECK(morse_counts(md) == std::vector<int>{1, 2, 1});
    bool found_min = false;
    for (const CriticalPoint& p : md.points) {
        if (near_point(p, kPi, kPi)) {
            found_min = true;
            CHECK(p.index == 0);
            REQUIRE(p.xi.size() == 2);
            CHECK(p.xi[0] == doctest::Approx(1.0));
            CHECK(p.xi[1] == doctest::Approx(1.0));
        }
    }
    CHECK(found_min);
}

TEST_CASE("doubled first frequency splits into eight critical points") {
    const MorseData md = find_critical_points(make_field("cos2-plus-cos"),
                                              build_flat_torus(24, 24, 2.0 * kPi, 2.0 * kPi));
    CHECK(md.points.size() == 8);
    CHECK(morse_counts(md) == std::vector<int>{2, 4, 2});
}

TEST_CASE("torus periods rescale the metric Hessian") {
    // On a torus with periods (4pi, 2pi) the first angle advances half as fast
    // per unit length, so that Hessian entry shrinks by 4.
    const MorseData md =
        find_critical_points(make_field("sum-cos"), build_flat_torus(24, 24, 4.0 * kPi, 2.0 * kPi));
    REQUIRE(md.points.size() == 4);
    for (const CriticalPoint& p : md.points) {
        if (near_point(p, kPi, kPi)) {
            CHECK(p.xi[0] == doctest::Approx(0.25));
            CHECK(p.xi[1] == doctest::Approx(1.0));
        }
    }
}

TEST_CASE("height function on the octahedron sphere") {
    const Mesh m = load_mesh(std::string(WITTENLAB_DATA_DIR) + "/octahedron.off");
    const MorseData md = find_critical_points(make_field("height"), m);
    REQUIRE(md.points.size() == 2);
    CHECK(morse_counts(md) == std::vector<int>{1, 0, 1});
    // Poles of the unit sphere.
    CHECK(std::abs(std::abs(md.points[0].location[2]) - 1.0) < 1e-8);
    CHECK(std::abs(std::abs(md.points[1].location[2]) - 1.0) < 1e-8);
}

TEST_CASE("critical point search is independent of the seeding density") {
    const ScalarField f = make_field("cos2-plus-cos");
    const MorseData a = find_critical_points(f, build_flat_torus(16, 16, 2.0 * kPi, 2.0 * kPi));
    const MorseData b = find_critical_points(f, build_flat_torus(40, 40, 2.0 * kPi, 2.0 * kPi));
    REQUIRE(a.points.size() == b.points.size());
    for (size_t i = 0; i < a.points.size(); ++i) {
        CHECK(near_point(a.points[i], b.points[i].location[0], b.points[i].location[1], 1e-7));
        CHECK(a.points[i].index == b.points[i].index);
    }
}

TEST_CASE("alternating sums of counts recover the Euler characteristic") {
    const MorseData md =
        find_critical_points(make_field("cos2-plus-cos"), build_flat_torus(24, 24, 2.0 * kPi, 2.0 * kPi));
    const std::vector<int> c = morse_counts(md);
    CHECK(c[0] - c[1] + c[2] == 0);

    const Mesh m = load_mesh(std::string(WITTENLAB_DATA_DIR) + "/octahedron.off");
    const std::vector<int> cs = morse_counts(find_critical_points(make_field("height"), m));
    CHECK(cs[0] - cs[1] + cs[2] == 2);
}
