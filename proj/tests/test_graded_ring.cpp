#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "multibord/algebra/manifold.hpp"
#include "support/simplicial_oracle.hpp"

using namespace multibord;
using namespace multibord::testsupport;

namespace {
RingPtr torus_ring() { return builtin_manifold("torus(2)", CoeffSystem::integers())->ring(); }
}  // namespace

TEST_CASE("cup unit law and degree bookkeeping") {
    auto R = torus_ring();
    Element one = unit_element(R);
    Element alpha = basis_element(R, 1, 0);
    Element beta = basis_element(R, 1, 1);
    CHECK(cup(one, alpha) == alpha);
    CHECK(cup(alpha, one) == alpha);
    CHECK(cup(alpha, beta).degree == 2);
    Element top = cup(alpha, beta);
    CHECK_THROWS_AS(cup(top, alpha), DegreeError);  // degree 3 on a surface
}

TEST_CASE("torus ring against the simplicial cup oracle") {
    auto sysz = CoeffSystem::integers();
    SurfaceCohomology torus(torus_18(), sysz);
    REQUIRE(torus.h1.free_rank() == 2);
    REQUIRE(torus.h2.free_rank() == 1);
    CHECK(torus.h1.torsion().empty());

    RatVec h1 = torus.h1.representative(0);
    RatVec h2 = torus.h1.representative(1);
    // Cup pairing in the oracle basis: graded-antisymmetric and unimodular.
    Rat p11 = torus.cup_h2_coords(h1, h1)[0];
    Rat p12 = torus.cup_h2_coords(h1, h2)[0];
    Rat p21 = torus.cup_h2_coords(h2, h1)[0];
    Rat p22 = torus.cup_h2_coords(h2, h2)[0];
    CHECK(p11 == 0);
    CHECK(p22 == 0);
    CHECK(p12 == -p21);
    CHECK((p12 == 1 || p12 == -1));

    // Same structure constants as the built-in ring after normalizing the
    // generator pair so that the pairing is [[0,1],[-1,0]].
    auto R = torus_ring();
    Element alpha = basis_element(R, 1, 0), beta = basis_element(R, 1, 1);
    Element top = basis_element(R, 2, 0);
    CHECK(cup(alpha, beta) == top);
    CHECK(cup(beta, alpha) == scale(Rat(-1), top));
    CHECK(cup(alpha, alpha).is_zero());
    CHECK(cup(beta, beta).is_zero());
}

TEST_CASE("projective plane ring against the simplicial oracle over F2") {
    auto f2 = CoeffSystem::prime_field(2);
    SurfaceCohomology rp2(rp2_10(), f2);
    REQUIRE(rp2.h1.free_rank() == 1);
    REQUIRE(rp2.h2.free_rank() == 1);
    RatVec a = rp2.h1.representative(0);
    CHECK(rp2.cup_h2_coords(a, a)[0] == 1);  // a cup a generates H^2

    auto R = builtin_manifold("projective_plane", f2)->ring();
    Element gen = basis_element(R, 1, 0);
    CHECK(cup(gen, gen) == basis_element(R, 2, 0));
}

TEST_CASE("scale_add basics") {
    auto R = torus_ring();
    Element alpha = basis_element(R, 1, 0);
    Element beta = basis_element(R, 1, 1);
    CHECK(scale_add(Rat(1), alpha, Rat(-1), alpha).is_zero());
    CHECK(scale_add(Rat(2), alpha, Rat(0), beta) == scale(Rat(2), alpha));
    CHECK_THROWS_AS(scale_add(Rat(1), alpha, Rat(1), basis_element(R, 2, 0)), DegreeError);

    auto Rf2 = builtin_manifold("projective_plane", CoeffSystem::prime_field(2))->ring();
    Element a = basis_element(Rf2, 1, 0);
    CHECK(scale_add(Rat(1), a, Rat(1), a).is_zero());  // characteristic 2
}

TEST_CASE("cup bilinearity property") {
    auto R = torus_ring();
    Element a = basis_element(R, 1, 0), a2 = basis_element(R, 1, 1), b = basis_element(R, 1, 1);
    Element lhs = cup(scale_add(Rat(3), a, Rat(-2), a2), b);
    Element rhs = scale_add(Rat(3), cup(a, b), Rat(-2), cup(a2, b));
    CHECK(lhs == rhs);
}

TEST_CASE("validate_ring on builtins is clean") {
    auto sysz = CoeffSystem::integers();
    for (const char* name : {"sphere(2)", "sphere(3)", "torus(2)", "torus(3)", "surface(2)",
                             "complex_projective(2)", "euclidean(4)", "product(sphere(2),sphere(2))"}) {
        auto m = builtin_manifold(name, sysz);
        CHECK_MESSAGE(validate_ring(*m->ring()).empty(), name);
    }
    auto rp2 = builtin_manifold("projective_plane", CoeffSystem::prime_field(2));
    CHECK(validate_ring(*rp2->ring()).empty());
}

TEST_CASE("corrupted cup table is pinpointed") {
    // Copy the torus ring but flip the sign of alpha cup beta.
    auto good = torus_ring();
    GradedRing bad("bad", good->coeffs(), 2, {1, 2, 1});
    for (unsigned p = 0; p <= 2; ++p)
        for (unsigned q = 0; p + q <= 2; ++q)
            for (std::size_t i = 0; i < good->rank(p); ++i)
                for (std::size_t j = 0; j < good->rank(q); ++j) bad.set_cup(p, q, i, j, good->cup_basis(p, q, i, j));
    bad.set_cup(1, 1, 0, 1, {Rat(-1)});  // was +1

    auto violations = validate_ring(bad);
    REQUIRE(violations.size() == 2);
    for (const auto& v : violations) {
        CHECK(v.kind == "commutativity");
        CHECK(v.p == 1);
        CHECK(v.q == 1);
    }
}

TEST_CASE("F2 ring with symmetric tables has no commutativity violations") {
    auto rp2 = builtin_manifold("projective_plane", CoeffSystem::prime_field(2));
    for (const auto& v : validate_ring(*rp2->ring())) CHECK(v.kind != "commutativity");
}

TEST_CASE("ring mismatch rejected") {
    auto R1 = torus_ring();
    auto R2 = builtin_manifold("sphere(2)", CoeffSystem::integers())->ring();
    CHECK_THROWS_AS(cup(basis_element(R1, 1, 0), basis_element(R2, 2, 0)), InputError);
}
