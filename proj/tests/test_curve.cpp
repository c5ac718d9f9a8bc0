#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "multibord/geom/curve.hpp"
#include "multibord/geom/fold.hpp"
#include "multibord/mp/assemble.hpp"

using namespace multibord;

namespace {

// Brute-force oracle: identical predicate over all pairs, no pruning paths.
std::size_t geometric_crossings_bruteforce(const ImmersedPolyCurve& c) {
    std::size_t n = c.vertices.size(), count = 0;
    auto orient = [](const Vec2Q& a, const Vec2Q& b, const Vec2Q& p) {
        return rat_sign((b[0] - a[0]) * (p[1] - a[1]) - (b[1] - a[1]) * (p[0] - a[0]));
    };
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 2; j < n; ++j) {
            if (i == 0 && j == n - 1) continue;
            const Vec2Q &p0 = c.vertices[i], &p1 = c.vertices[(i + 1) % n];
            const Vec2Q &q0 = c.vertices[j], &q1 = c.vertices[(j + 1) % n];
            if (orient(p0, p1, q0) * orient(p0, p1, q1) < 0 &&
                orient(q0, q1, p0) * orient(q0, q1, p1) < 0)
                ++count;
        }
    return count;
}

}  // namespace

TEST_CASE("convex polygon has no crossings") {
    ImmersedPolyCurve c = builtin_curve("circle", 64);
    CHECK(segment_crossings(c).empty());
}

TEST_CASE("figure eight: one geometric crossing, opposite ordered signs") {
    ImmersedPolyCurve c = builtin_curve("figure8", 256);
    auto recs = segment_crossings(c);
    REQUIRE(recs.size() == 2);  // two ordered records
    CHECK(recs[0].sign == -recs[1].sign);
    CHECK(recs[0].sign != 0);
    CHECK(recs[0].ambient == recs[1].ambient);
    CHECK(geometric_crossings_bruteforce(c) == 1);
    SignedCount sc = signed_count_curve(recs);
    CHECK(sc.ordered_total == 0);
    CHECK(sc.geometric_points == 1);
    CHECK(check_orbit_signs_curve(recs).empty());
}

TEST_CASE("limacon inner loop crossing") {
    ImmersedPolyCurve c = builtin_curve("limacon", 256);
    auto recs = segment_crossings(c);
    REQUIRE(recs.size() == 2);
    CHECK(geometric_crossings_bruteforce(c) == 1);
    CHECK(recs[0].sign == -recs[1].sign);
}

TEST_CASE("crossings match the brute-force oracle on perturbed curves") {
    for (std::uint64_t seed : {7ull, 8ull, 9ull}) {
        ImmersedPolyCurve c = perturb_generic(builtin_curve("figure8", 128), seed, Rat(1, 500));
        auto recs = segment_crossings(c);
        CHECK(recs.size() == 2 * geometric_crossings_bruteforce(c));
    }
}

TEST_CASE("perturbation is deterministic and validated") {
    ImmersedPolyCurve c = builtin_curve("circle", 32);
    ImmersedPolyCurve p1 = perturb_generic(c, 424242, Rat(1, 100));
    ImmersedPolyCurve p2 = perturb_generic(c, 424242, Rat(1, 100));
    CHECK(p1.vertices == p2.vertices);  // bitwise identical
    ImmersedPolyCurve p3 = perturb_generic(c, 424243, Rat(1, 100));
    CHECK(p1.vertices != p3.vertices);
    CHECK_THROWS_AS(perturb_generic(c, 1, Rat(0)), InputError);
}

TEST_CASE("non-generic contact detected") {
    // Two segments touching at an endpoint of one of them.
    ImmersedPolyCurve c;
    c.vertices = {{Rat(0), Rat(0)}, {Rat(4), Rat(0)}, {Rat(4), Rat(4)},
                  {Rat(2), Rat(0)}, {Rat(0), Rat(4)}};
    CHECK_THROWS_AS(segment_crossings(c), GenericityError);
}

TEST_CASE("curve tangent points: circle and figure eight") {
    auto circle = builtin_parametric_curve("circle");
    CurveTangentResult r = curve_tangent_points(circle, {0.31, 0.87});
    CHECK(r.params.size() == 2);
    CHECK(r.signed_total == 0);
    auto fig8 = builtin_parametric_curve("figure8");
    CurveTangentResult r8 = curve_tangent_points(fig8, {0.31, 0.87});
    CHECK(r8.params.size() == 4);
    CHECK(r8.params.size() % 2 == 0);
    CHECK(r8.signed_total == 0);
}
