#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <iostream>

#include "multibord/geom/tri_intersect.hpp"
#include "multibord/mp/assemble.hpp"

using namespace multibord;

TEST_CASE("embedded torus has an empty double locus") {
    ImmersedTriMesh m = torus_mesh(12);
    CHECK(mesh_double_locus_r3(m).empty());
    CHECK(mesh_triple_points_r3(m).empty());
}

TEST_CASE("crossing tori: closed double curves with conserved pieces") {
    ImmersedTriMesh m = perturb_generic(crossing_tori_mesh(16), 99, Rat(1, 4096));
    auto segs = mesh_double_locus_r3(m);
    REQUIRE(!segs.empty());
    CHECK(segs.size() % 2 == 0);  // total segment count even
    auto curves = assemble_preimage_curves(m, segs);
    REQUIRE(!curves.empty());
    std::size_t pieces = 0;
    for (const auto& c : curves) pieces += c.piece_count;
    CHECK(pieces == 2 * segs.size());  // every sheet piece used exactly once
    std::cout << "[crossing-tori] segments=" << segs.size() << " curves=" << curves.size() << "\n";
}

TEST_CASE("whitney mesh: double pair with equal signs") {
    ImmersedTriMesh m = perturb_generic(whitney_mesh(10), 20240809, Rat(1, 2048));
    auto recs = mesh_double_points_r4(m);
    REQUIRE(recs.size() == 2);  // one geometric point, two ordered records
    CHECK(recs[0].sign == recs[1].sign);
    CHECK(recs[0].sign != 0);
    CHECK(recs[0].ambient == recs[1].ambient);
    SignedCount sc = signed_count_r4(recs);
    CHECK((sc.ordered_total == 2 || sc.ordered_total == -2));
    CHECK(sc.geometric_points == 1);
    CHECK(check_orbit_signs_r4(recs).empty());
    std::cout << "[whitney] ordered signed doubles = " << sc.ordered_total.str() << "\n";
    // The double point sits near the image of the poles, close to the origin.
    for (int k = 0; k < 4; ++k) CHECK(abs(recs[0].ambient[k].convert_to<double>()) < 0.1);
}

TEST_CASE("whitney double count stable across seeds and resolutions") {
    Int reference;
    bool first = true;
    for (unsigned n : {9u, 13u}) {
        for (std::uint64_t seed : {1ull, 2ull}) {
            ImmersedTriMesh m = perturb_generic(whitney_mesh(n), seed, Rat(1, 2048));
            SignedCount sc = signed_count_r4(mesh_double_points_r4(m));
            if (first) {
                reference = sc.ordered_total;
                first = false;
            }
            CHECK(sc.ordered_total == reference);
        }
    }
}

TEST_CASE("sign behaviour under reversal and mirroring") {
    ImmersedTriMesh m = perturb_generic(whitney_mesh(9), 5, Rat(1, 2048));
    SignedCount a = signed_count_r4(mesh_double_points_r4(m));
    // Flipping the domain orientation negates both tangent frames of every
    // record, so the determinant signs cancel and nothing changes.
    SignedCount b = signed_count_r4(mesh_double_points_r4(m.reversed()));
    CHECK(a.ordered_total == b.ordered_total);
    // The ambient mirror flips every sign.
    SignedCount c = signed_count_r4(mesh_double_points_r4(m.mirrored()));
    CHECK(a.ordered_total == -c.ordered_total);
}

TEST_CASE("embedded sphere in a 3-plane of R^4") {
    ImmersedTriMesh m = sphere_mesh(8, 4);
    CHECK(mesh_double_points_r4(m).empty());
    PushoffResult p = pushoff_euler_number(m, 31337);
    CHECK(p.signed_count == 0);
}

TEST_CASE("pushoff equals the ordered double count on the whitney sphere") {
    ImmersedTriMesh m = perturb_generic(whitney_mesh(10), 777, Rat(1, 2048));
    SignedCount sc = signed_count_r4(mesh_double_points_r4(m));
    PushoffResult p1 = pushoff_euler_number(m, 1001);
    PushoffResult p2 = pushoff_euler_number(m, 2002);
    CHECK(Int(p1.signed_count) == sc.ordered_total);
    CHECK(p1.signed_count == p2.signed_count);  // seed independence
    std::cout << "[whitney] pushoff = " << p1.signed_count << "\n";
}

TEST_CASE("boy mesh: double curves and exactly one triple point") {
    ImmersedTriMesh m = perturb_generic(boy_mesh(14), 4242, Rat(1, 8192));
    auto segs = mesh_double_locus_r3(m);
    REQUIRE(!segs.empty());
    auto triples = triple_points_from_segments(m, segs);
    CHECK(triples.size() == 1);
    SignedCount ts = signed_count_triples(triples);
    CHECK(ts.unordered_total == 1);
    CHECK(ts.ordered_total == 6);
    // The double-locus preimage is the nonzero class of H_1(RP^2; F2).
    CycleClass cls = double_locus_preimage_class(m, segs);
    REQUIRE(cls.coords.size() == 1);
    CHECK(cls.coords[0] == 1);
    std::cout << "[boy] segments=" << segs.size() << " triples=" << triples.size()
              << " class=" << cls.to_string() << "\n";
}

TEST_CASE("three plane-like patches meet in one triple point") {
    auto tri = [](long x0, long y0, long z0, long x1, long y1, long z1, long x2, long y2, long z2) {
        return std::array<VecQ, 3>{VecQ{Rat(x0), Rat(y0), Rat(z0)}, VecQ{Rat(x1), Rat(y1), Rat(z1)},
                                   VecQ{Rat(x2), Rat(y2), Rat(z2)}};
    };
    // Plane-like patches spanning z=0, x=0 and y=2; common point (0,2,0).
    auto A = tri(-9, -7, 0, 11, -8, 0, 1, 13, 0);
    auto B = tri(0, -11, -9, 0, 12, -10, 0, 3, 14);
    auto C = tri(-10, 2, -12, 12, 2, -11, -1, 2, 15);
    auto q = triple_point_of_triangles(A, B, C);
    REQUIRE(q.has_value());
    CHECK((*q)[0] == 0);
    CHECK((*q)[1] == 2);
    CHECK((*q)[2] == 0);
    // Permutation invariance of the geometric point.
    auto q2 = triple_point_of_triangles(B, C, A);
    REQUIRE(q2.has_value());
    CHECK(*q2 == *q);
    // A far-away third patch yields nothing.
    auto far = tri(-10, 50, -12, 12, 50, -11, -1, 50, 15);
    CHECK(!triple_point_of_triangles(A, B, far).has_value());
}

TEST_CASE("mesh JSON round trip") {
    ImmersedTriMesh m = torus_mesh(6);
    save_mesh_json(m, "/tmp/multibord_mesh_test.json");
    ImmersedTriMesh back = load_mesh_json("/tmp/multibord_mesh_test.json");
    CHECK(back.coords == m.coords);
    CHECK(back.domain.tris == m.domain.tris);
}

TEST_CASE("degenerate meshes are rejected or perturbed") {
    ImmersedTriMesh m = torus_mesh(8);
    // Collapse one vertex onto a neighbor: degenerate triangle.
    ImmersedTriMesh bad = m;
    bad.coords[1] = bad.coords[0];
    CHECK_THROWS_AS(bad.validate_basic(), GenericityError);
    // perturb_generic repairs it.
    ImmersedTriMesh fixed = perturb_generic(bad, 7, Rat(1, 1024));
    CHECK_NOTHROW(fixed.validate_basic());
}
