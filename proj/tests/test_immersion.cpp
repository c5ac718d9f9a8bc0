#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "multibord/algebra/immersion.hpp"

using namespace multibord;

TEST_CASE("builtin immersions validate cleanly") {
    for (const auto& name : builtin_immersion_names()) {
        auto F = builtin_immersion(name);
        auto v = validate_immersion(F);
        CHECK_MESSAGE(v.empty(), name << ": " << (v.empty() ? "" : v[0].kind + " " + v[0].detail));
    }
}

TEST_CASE("gysin map of the CP^1 embedding") {
    auto F = builtin_immersion("cp1-in-cp2");
    // f_!(1) is the hyperplane class h.
    Element f1 = gysin_shriek(F, unit_element(F->source->ring()));
    CHECK(f1 == basis_element(F->target->ring(), 2, 0));
    // f_! of the top class pushes the point class forward: h^2.
    Element ftop = gysin_shriek(F, basis_element(F->source->ring(), 2, 0));
    CHECK(ftop == basis_element(F->target->ring(), 4, 0));
}

TEST_CASE("phi vanishes on embeddings: e = f^* f_!(1)") {
    auto F = builtin_immersion("cp1-in-cp2");
    Element p1 = phi(F, unit_element(F->source->ring()), 1);
    CHECK(p1.is_zero());
}

TEST_CASE("vk_scaled on the embedding vanishes for k >= 2") {
    auto F = builtin_immersion("cp1-in-cp2");
    ScaledClass v1 = vk_scaled(F, 1);
    CHECK(v1.value == unit_element(F->source->ring()));
    for (unsigned k = 2; k <= 4; ++k) {
        ScaledClass v = vk_scaled(F, k);
        CHECK(v.value.is_zero());
        ScaledClass m = mk_scaled(F, k);
        CHECK(m.value.is_zero());
    }
}

TEST_CASE("euclidean target forces f_!(1) = 0") {
    auto F = builtin_immersion("whitney-s2-r4");
    CHECK(gysin_shriek(F, unit_element(F->source->ring())).is_zero());
    // phi_1(1) = -e.
    Element p1 = phi(F, unit_element(F->source->ring()), 1);
    CHECK(p1 == scale(Rat(-1), F->euler));
}

TEST_CASE("whitney fixture: v_2 = -e with pairing -+2") {
    auto F = builtin_immersion("whitney-s2-r4");
    ScaledClass v2 = vk_scaled(F, 2);
    CHECK(v2.value == scale(Rat(-1), F->euler));
    Rat pairing = evaluate_top(F->source, v2.value);
    CHECK((pairing == 2 || pairing == -2));
    CHECK(pairing == -evaluate_top(F->source, F->euler));
    // 2 m_2 = f_!(v_2): the double point class downstairs.
    ScaledClass m2 = mk_scaled(F, 2);
    CHECK(m2.value.degree == 4);
    CHECK(m2.value.coords[0] == -evaluate_top(F->source, F->euler));
    // mk vanishes when k(m-n) < m.
    CHECK(mk_scaled(F, 1).value.is_zero());
}

TEST_CASE("herbert_step reproduces v_2 = f^* f_!(1) - e") {
    auto F = builtin_immersion("cp1-in-cp2");
    Element v1 = unit_element(F->source->ring());
    Element m1 = gysin_shriek(F, v1);
    Element v2 = herbert_step(F, v1, m1);
    CHECK(v2.is_zero());  // embedding
    CHECK_THROWS_AS(herbert_step(F, v1, basis_element(F->target->ring(), 4, 0)), DegreeError);
}

TEST_CASE("embedding chain stays zero once v_2 = 0") {
    auto F = builtin_immersion("cp1-in-cp2");
    HerbertChain chain = herbert_chain(F, 4);
    REQUIRE(chain.entries.size() == 4);
    CHECK(!chain.ambiguous);
    for (const auto& e : chain.entries)
        if (e.k >= 2) CHECK(e.v.is_zero());
}

TEST_CASE("F2 chain for RP^2 in R^3: v_2 = a, v_3 = a^2") {
    auto F = builtin_immersion("rp2-in-r3");
    HerbertChain chain = herbert_chain(F, 3);
    REQUIRE(chain.entries.size() == 3);
    CHECK(!chain.ambiguous);
    auto R = F->source->ring();
    CHECK(chain.entries[1].v == basis_element(R, 1, 0));       // v_2 = a = w_1
    CHECK(chain.entries[2].v == basis_element(R, 2, 0));       // v_3 = a^2 != 0
    // Triple-point count mod 2 is the pairing of v_3 with the fundamental class.
    CHECK(evaluate_top(F->source, chain.entries[2].v) == 1);
}

TEST_CASE("rational consistency of every shipped fixture") {
    for (const auto& name : builtin_immersion_names()) {
        auto F = builtin_immersion(name);
        if (F->coeffs().kind == CoeffKind::PrimeField) continue;  // Z fixtures only
        auto report = rational_consistency(F, 4);
        CHECK_MESSAGE(report.passed, name << (report.mismatches.empty() ? "" : ": " + report.mismatches[0]));
    }
}

TEST_CASE("projection formula holds on shipped fixtures and detects corruption") {
    for (const auto& name : builtin_immersion_names()) {
        auto F = builtin_immersion(name);
        auto report = projection_formula_check(F);
        CHECK_MESSAGE(report.passed, name);
    }
    // Corrupt one pushforward entry.
    auto F = builtin_immersion("cp1-in-cp2");
    auto bad = std::make_shared<ImmersionAlgebraic>(*F);
    bad->pushforward[0].set(0, 0, Rat(2));
    CHECK(!projection_formula_check(bad).passed);
}

TEST_CASE("euler_from_double_class shapes") {
    auto F = builtin_immersion("whitney-s2-r4");
    // D of value c predicts pairing (+1)*c.
    for (long c : {-2L, 0L, 2L, 5L}) {
        HomologyElement D = zero_homology(F->source, 0);
        D.coords[0] = Rat(c);
        Element e = euler_from_double_class(F, D);
        CHECK(evaluate_top(F->source, e) == Rat(c));
    }
    HomologyElement bad = zero_homology(F->source, 1);
    CHECK_THROWS_AS(euler_from_double_class(F, bad), DegreeError);

    // Embedding rearrangement: D = 0 must reproduce e exactly.
    auto E = builtin_immersion("cp1-in-cp2");
    CHECK(euler_from_double_class(E, zero_homology(E->source, 0)) == E->euler);
}

TEST_CASE("degree laws") {
    auto F = builtin_immersion("whitney-s2-r4");
    for (unsigned k = 1; k <= 2; ++k) {
        ScaledClass v = vk_scaled(F, k);
        if (!v.zero_by_dimension) CHECK(v.value.degree == (k - 1) * F->codim());
    }
    CHECK(vk_scaled(F, 3).zero_by_dimension);  // (3-1)*2 = 4 > dim V
}

TEST_CASE("odd codimension needs the unoriented extension flag") {
    auto F = builtin_immersion("rp2-in-r3");
    auto bad = std::make_shared<ImmersionAlgebraic>(*F);
    bad->unoriented_extension = false;
    bool flagged = false;
    for (const auto& v : validate_immersion(bad)) flagged |= v.kind == "mode";
    CHECK(flagged);
}

TEST_CASE("gysin override is cross-checked") {
    auto F = builtin_immersion("cp1-in-cp2");
    auto with = std::make_shared<ImmersionAlgebraic>(*F);
    // Correct override in degree 0: f_!(1) = h, a single column.
    ExactMatrix good(F->coeffs(), 1, 1);
    good.set(0, 0, Rat(1));
    with->gysin_override.assign(3, std::nullopt);
    with->gysin_override[0] = good;
    CHECK(validate_immersion(with).empty());
    ExactMatrix wrong(F->coeffs(), 1, 1);
    wrong.set(0, 0, Rat(-1));
    with->gysin_override[0] = wrong;
    CHECK(!validate_immersion(with).empty());
}

TEST_CASE("mode conversion Z to Q and F2") {
    auto F = builtin_immersion("whitney-s2-r4");
    auto Fq = convert_mode(F, CoeffSystem::rationals());
    CHECK(Fq->coeffs().kind == CoeffKind::Rationals);
    CHECK(validate_immersion(Fq).empty());
    CHECK(evaluate_top(Fq->source, vk_scaled(Fq, 2).value) == -evaluate_top(Fq->source, Fq->euler));
}
