#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "multibord/algebra/manifold.hpp"

using namespace multibord;

TEST_CASE("builtin ranks") {
    auto sysz = CoeffSystem::integers();
    auto s2 = builtin_manifold("sphere(2)", sysz);
    CHECK(s2->ring()->rank(0) == 1);
    CHECK(s2->ring()->rank(1) == 0);
    CHECK(s2->ring()->rank(2) == 1);
    auto t2 = builtin_manifold("torus(2)", sysz);
    CHECK(t2->ring()->rank(1) == 2);
    auto e4 = builtin_manifold("euclidean(4)", sysz);
    for (unsigned d = 0; d < 4; ++d) CHECK(e4->ring()->rank(d) == 0);
    CHECK(e4->ring()->rank(4) == 1);
    auto p = builtin_manifold("product(sphere(2),sphere(2))", sysz);
    CHECK(p->ring()->rank(2) == 2);
    CHECK(p->ring()->rank(4) == 1);
    auto cp2 = builtin_manifold("complex_projective(2)", sysz);
    CHECK(cp2->ring()->rank(2) == 1);
    CHECK(cp2->ring()->rank(3) == 0);
}

TEST_CASE("validate_manifold clean on all builtins") {
    auto sysz = CoeffSystem::integers();
    for (const char* name : {"sphere(2)", "sphere(4)", "torus(2)", "torus(3)", "surface(2)",
                             "complex_projective(2)", "euclidean(3)", "euclidean(4)",
                             "product(torus(2),sphere(2))"}) {
        auto m = builtin_manifold(name, sysz);
        auto v = validate_manifold(m);
        CHECK_MESSAGE(v.empty(), name << ": " << (v.empty() ? "" : v[0].kind + " " + v[0].detail));
    }
    auto rp2 = builtin_manifold("projective_plane", CoeffSystem::prime_field(2));
    auto v = validate_manifold(rp2);
    CHECK_MESSAGE(v.empty(), (v.empty() ? "" : v[0].kind));
}

TEST_CASE("pd of fundamental class is the unit") {
    auto t2 = builtin_manifold("torus(2)", CoeffSystem::integers());
    CHECK(pd(t2, fundamental_class(t2)) == unit_element(t2->ring()));
}

TEST_CASE("sphere pd sends the point class to the top generator") {
    auto s2 = builtin_manifold("sphere(2)", CoeffSystem::integers());
    CHECK(pd(s2, point_class(s2)) == basis_element(s2->ring(), 2, 0));
}

TEST_CASE("pd and pd_inverse compose to the identity") {
    auto sysz = CoeffSystem::integers();
    for (const char* name : {"torus(2)", "surface(3)", "complex_projective(2)"}) {
        auto m = builtin_manifold(name, sysz);
        for (unsigned d = 0; d <= m->dim(); ++d)
            for (std::size_t i = 0; i < m->homology_rank(d); ++i) {
                HomologyElement x = basis_homology(m, d, i);
                CHECK(pd_inverse(m, pd(m, x)) == x);
            }
    }
}

TEST_CASE("torus duality matches the intersection form") {
    // <pd(x), y> must be the winding determinant det[x, y].
    auto t2 = builtin_manifold("torus(2)", CoeffSystem::integers());
    auto cycle = [&](long p, long q) {
        HomologyElement x = zero_homology(t2, 1);
        x.coords = {Rat(p), Rat(q)};
        return x;
    };
    for (long p = -2; p <= 2; ++p)
        for (long q = -2; q <= 2; ++q)
            for (long r = -2; r <= 2; ++r)
                for (long s = -2; s <= 2; ++s)
                    CHECK(kronecker(pd(t2, cycle(p, q)), cycle(r, s)) == Rat(p * s - q * r));
    // In particular pd of the (1,0) cycle is the generator dual to (0,1).
    Element d = pd(t2, cycle(1, 0));
    CHECK(kronecker(d, cycle(0, 1)) == 1);
    CHECK(kronecker(d, cycle(1, 0)) == 0);
}

TEST_CASE("cap product basics") {
    auto t2 = builtin_manifold("torus(2)", CoeffSystem::integers());
    Element one = unit_element(t2->ring());
    Element alpha = basis_element(t2->ring(), 1, 0);
    HomologyElement fc = fundamental_class(t2);
    for (unsigned d = 0; d <= 2; ++d)
        for (std::size_t i = 0; i < t2->homology_rank(d); ++i) {
            HomologyElement x = basis_homology(t2, d, i);
            CHECK(cap(t2, one, x) == x);
        }
    CHECK(cap(t2, alpha, fc) == pd_inverse(t2, alpha));
    // cap(alpha, [T^2]) is the (0,1)-type cycle up to sign.
    HomologyElement c = cap(t2, alpha, fc);
    CHECK(c.degree == 1);
    CHECK((c.coords == RatVec{Rat(0), Rat(1)} || c.coords == RatVec{Rat(0), Rat(-1)}));
    CHECK_THROWS_AS(cap(t2, basis_element(t2->ring(), 2, 0), pd_inverse(t2, alpha)), DegreeError);
}

TEST_CASE("cup pairing is unimodular over Z for oriented builtins") {
    auto sysz = CoeffSystem::integers();
    for (const char* name : {"sphere(2)", "torus(2)", "torus(4)", "surface(3)", "complex_projective(3)"}) {
        auto m = builtin_manifold(name, sysz);
        for (unsigned d = 0; d <= m->dim(); ++d) {
            if (m->ring()->rank(d) == 0) continue;
            Rat dd = det(m->pairing_matrix(d));
            CHECK_MESSAGE((dd == 1 || dd == -1), name << " degree " << d);
        }
    }
}

TEST_CASE("euclidean target model") {
    auto e4 = builtin_manifold("euclidean(4)", CoeffSystem::integers());
    CHECK(!e4->compact());
    CHECK(e4->homology_rank(0) == 1);
    for (unsigned d = 1; d <= 4; ++d) CHECK(e4->homology_rank(d) == 0);
    Element u = pd(e4, point_class(e4));
    CHECK(u == basis_element(e4->ring(), 4, 0));
    CHECK_THROWS_AS(evaluate_top(e4, u), ModeError);           // no fundamental class
    CHECK_THROWS_AS(unit_element(e4->ring()), ModeError);      // non-unital ring
}

TEST_CASE("builtin errors") {
    CHECK_THROWS_AS(builtin_manifold("klein_bottle", CoeffSystem::integers()), InputError);
    CHECK_THROWS_AS(builtin_manifold("projective_plane", CoeffSystem::integers()), ModeError);
    CHECK_THROWS_AS(builtin_manifold("projective_plane", CoeffSystem::rationals()), ModeError);
}

TEST_CASE("unoriented duality needs F2") {
    auto rp2 = builtin_manifold("projective_plane", CoeffSystem::prime_field(2));
    CHECK(pd(rp2, point_class(rp2)) == basis_element(rp2->ring(), 2, 0));  // fine over F2
}
