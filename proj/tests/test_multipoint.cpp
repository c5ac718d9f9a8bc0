#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <iostream>

#include "multibord/mp/verify.hpp"

using namespace multibord;

namespace {
VerifyOptions quick() {
    VerifyOptions o;
    o.mesh_n = 12;
    o.grid_n = 48;
    return o;
}
}  // namespace

TEST_CASE("assemble_curves rejects mismatched segments") {
    ImmersedTriMesh m = perturb_generic(crossing_tori_mesh(12), 3, Rat(1, 4096));
    auto segs = mesh_double_locus_r3(m);
    REQUIRE(!segs.empty());
    CHECK_NOTHROW(assemble_preimage_curves(m, segs));
    auto broken = segs;
    broken.pop_back();  // drop one segment: an open chain must remain
    CHECK_THROWS_AS(assemble_preimage_curves(m, broken), GenericityError);
    CHECK(assemble_preimage_curves(m, {}).empty());
}

TEST_CASE("lemma verdict: circle in the plane") {
    VerdictReport r = verify_lemma_double("circle-r2", quick());
    CHECK(r.pass);
    CHECK(r.data.at("lhs_ordered") == "0");
}

TEST_CASE("lemma verdict: figure eight") {
    VerdictReport r = verify_lemma_double("figure8-r2", quick());
    CHECK(r.pass);
}

TEST_CASE("lemma verdict: embedded torus in R^3") {
    VerdictReport r = verify_lemma_double("torus-r3", quick());
    CHECK_MESSAGE(r.pass, r.lhs << " vs " << r.rhs);
    CHECK(r.data.at("lhs_class") == "(0,0)");
}

TEST_CASE("lemma verdict: embedded sphere in R^3") {
    VerdictReport r = verify_lemma_double("sphere-r3", quick());
    CHECK(r.pass);
}

TEST_CASE("lemma verdict: boy surface mod 2") {
    VerifyOptions o = quick();
    o.mesh_n = 14;
    VerdictReport r = verify_lemma_double("boy", o);
    CHECK_MESSAGE(r.pass, r.lhs << " vs " << r.rhs);
    CHECK(r.data.at("lhs_class") == "(1)");
    CHECK(r.data.at("rhs_class") == "(1)");
    CHECK(r.data.at("lhs_triples") == "1");
}

TEST_CASE("lemma verdict: whitney sphere in R^4") {
    VerdictReport r = verify_lemma_double("whitney", quick());
    CHECK_MESSAGE(r.pass, r.lhs << " vs " << r.rhs);
}

TEST_CASE("lemma verdicts are direction independent") {
    VerifyOptions o = quick();
    o.mesh_n = 10;
    for (auto dir : {std::array<double, 4>{0.9, 0.2, 0.38, 0.44}, std::array<double, 4>{-0.3, 0.7, 0.64, -0.2},
                     std::array<double, 4>{0.15, -0.52, 0.84, 0.3}}) {
        o.direction = dir;
        CHECK(verify_lemma_double("whitney", o).pass);
        CHECK(verify_lemma_double("torus-r3", o).pass);
    }
}

TEST_CASE("euler verdict: whitney, mirrored whitney, unknotted sphere") {
    VerifyOptions o = quick();
    VerdictReport a = verify_euler_corollary("whitney", o);
    CHECK_MESSAGE(a.pass, a.lhs << " | " << a.rhs << " | " << a.detail);
    CHECK((a.data.at("pushoff") == "2" || a.data.at("pushoff") == "-2"));
    VerdictReport b = verify_euler_corollary("whitney-reversed", o);
    CHECK_MESSAGE(b.pass, b.lhs << " | " << b.rhs);
    CHECK(a.data.at("pushoff") != b.data.at("pushoff"));  // signs flipped
    VerdictReport c = verify_euler_corollary("s2-unknot", o);
    CHECK(c.pass);
    CHECK(c.data.at("pushoff") == "0");
}

TEST_CASE("unknown case names rejected") {
    CHECK_THROWS_AS(verify_lemma_double("klein", quick()), InputError);
    CHECK_THROWS_AS(verify_euler_corollary("klein", quick()), InputError);
}

TEST_CASE("verdicts are deterministic given the seed") {
    VerifyOptions o = quick();
    VerdictReport r1 = verify_lemma_double("whitney", o);
    VerdictReport r2 = verify_lemma_double("whitney", o);
    CHECK(r1.data == r2.data);
    o.seed = 999;
    VerdictReport r3 = verify_lemma_double("whitney", o);
    CHECK(r3.pass);  // values stable across seeds even if perturbations differ
    CHECK(r1.data.at("lhs_ordered") == r3.data.at("lhs_ordered"));
}
