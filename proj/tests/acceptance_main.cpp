// Acceptance suite: one pass/fail line per criterion.
#include <chrono>
#include <iostream>
#include <sstream>
#include <vector>

#include <json.hpp>

#include "multibord/geom/fold.hpp"
#include "multibord/io/fixture.hpp"
#include "multibord/mp/verify.hpp"

using namespace multibord;

namespace {

int failures = 0;

class Criterion {
  public:
    Criterion(int number, std::string title)
        : number_(number), title_(std::move(title)), start_(std::chrono::steady_clock::now()) {}

    void check(bool ok, const std::string& what) {
        if (!ok) {
            pass_ = false;
            notes_ += (notes_.empty() ? "" : "; ") + what;
        }
    }
    void note(const std::string& s) { notes_ += (notes_.empty() ? "" : "; ") + s; }

    ~Criterion() {
        double secs =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
        std::ostringstream os;
        os.setf(std::ios::fixed);
        os.precision(1);
        os << (pass_ ? "[PASS]" : "[FAIL]") << " criterion " << number_ << ": " << title_ << " ("
           << secs << "s" << (notes_.empty() ? "" : "; " + notes_) << ")";
        std::cout << os.str() << std::endl;
        if (!pass_) ++failures;
    }

  private:
    int number_;
    std::string title_;
    bool pass_ = true;
    std::string notes_;
    std::chrono::steady_clock::time_point start_;
};

ImmersedTriMesh perturbed(const ImmersedTriMesh& base, std::uint64_t seed) {
    return perturb_generic(base, seed, Rat(1, 2048));
}

void criterion_1_algebra_coherence() {
    Criterion c(1, "algebra coherence (recursion vs scaled classes, projection formula)");
    for (const auto& name : builtin_immersion_names()) {
        ImmersionPtr F = builtin_immersion(name);
        if (F->coeffs().kind != CoeffKind::PrimeField) {
            auto rc = rational_consistency(F, 4);
            c.check(rc.passed, name + " rational consistency");
        }
        auto pf = projection_formula_check(F);
        c.check(pf.passed, name + " projection formula");
    }
}

void criterion_2_embedding_vanishing() {
    Criterion c(2, "embedding vanishing (CP^1 in CP^2)");
    ImmersionPtr F = builtin_immersion("cp1-in-cp2");
    Element ff1 = pullback_apply(F, gysin_shriek(F, unit_element(F->source->ring())));
    c.check(ff1 == F->euler, "e = f^* f_!(1_V)");
    for (unsigned k = 2; k <= 4; ++k) {
        ScaledClass v = vk_scaled(F, k);
        c.check(v.value.is_zero(), "v_" + std::to_string(k) + " = 0");
    }
}

void criterion_3_whitney_triangle() {
    Criterion c(3, "whitney triangle: pushoff = ordered doubles = -tangent, |.| = 2");
    std::vector<Int> doubles;
    std::vector<long> pushoffs;
    for (unsigned n : {13u, 26u}) {
        ImmersedTriMesh base = whitney_mesh(n);
        for (std::uint64_t seed : {20240809ull, 424242ull}) {
            ImmersedTriMesh mesh = perturbed(base, seed);
            SignedCount sc = signed_count_r4(mesh_double_points_r4(mesh));
            doubles.push_back(sc.ordered_total);
            PushoffResult p = pushoff_euler_number(mesh, seed);
            pushoffs.push_back(p.signed_count);
        }
    }
    for (const auto& d : doubles) c.check(d == doubles[0], "double count stability");
    c.check(doubles[0] == 2 || doubles[0] == -2, "double count magnitude");
    for (long p : pushoffs) c.check(Int(p) == doubles[0], "pushoff equals ordered doubles");

    TangentOptions topts;
    topts.grid_n = 48;
    ParametricSurface whitney = builtin_surface("whitney");
    for (auto dir : {std::array<double, 4>{0.3171893, 0.5494621, 0.7736219, 0.4123107},
                     std::array<double, 4>{0.6198347, -0.4487911, 0.5279113, 0.4131071},
                     std::array<double, 4>{-0.2881743, 0.7123981, 0.5523719, -0.3178213}}) {
        double len = std::sqrt(dir[0] * dir[0] + dir[1] * dir[1] + dir[2] * dir[2] + dir[3] * dir[3]);
        for (auto& x : dir) x /= len;
        TangentResult t = tangent_direction_points(whitney, dir, topts);
        c.check(Int(-t.signed_total) == doubles[0], "tangent total is minus the double count");
    }
    c.note("ordered doubles = " + doubles[0].str());
}

void criterion_4_boy_lemma() {
    Criterion c(4, "lemma mod 2 on the boy surface (~4k triangles, 3 directions)");
    ImmersedTriMesh mesh = perturb_generic(boy_mesh(26), 20240809, Rat(1, 8192));
    auto segs = mesh_double_locus_r3(mesh);
    CycleClass lhs = double_locus_preimage_class(mesh, segs);
    c.check(lhs.coords.size() == 1 && lhs.coords[0] == 1, "preimage class is the generator");
    FoldOptions fopts;
    fopts.grid_n = 64;
    ParametricSurface boy = builtin_surface("boy");
    for (auto dir : {std::array<double, 3>{0.3171893, 0.5494621, 0.7736219},
                     std::array<double, 3>{0.8198347, 0.3187911, 0.4679113},
                     std::array<double, 3>{-0.4088743, 0.7212981, 0.5593719}}) {
        FoldResult fold = fold_locus(boy, dir, fopts);
        c.check(fold.total_class.coords == lhs.coords, "fold class equals preimage class");
        c.check(!fold.total_class.is_zero(), "fold class is the nonzero element");
    }
}

void criterion_5_trivial_lemma_cases() {
    Criterion c(5, "lemma trivial cases: embedded torus in R^3, round circle in R^2");
    VerifyOptions opts;
    opts.mesh_n = 20;
    opts.grid_n = 64;
    VerdictReport torus = verify_lemma_double("torus-r3", opts);
    c.check(torus.pass, "torus verdict");
    c.check(torus.data.at("lhs_class") == "(0,0)", "torus class zero");
    VerdictReport circle = verify_lemma_double("circle-r2", opts);
    c.check(circle.pass, "circle verdict");
    c.check(circle.data.at("lhs_ordered") == "0", "circle ordered signed doubles vanish");
    c.check(std::stoul(circle.data.at("rhs_count")) % 2 == 0, "tangent count even");
}

void criterion_6_triple_cross_check() {
    Criterion c(6, "boy triple point count matches the F2 algebra chain");
    ImmersedTriMesh mesh = perturb_generic(boy_mesh(26), 20240809, Rat(1, 8192));
    auto triples = mesh_triple_points_r3(mesh);
    c.check(triples.size() == 1, "exactly one geometric triple point, got " +
                                     std::to_string(triples.size()));
    ImmersionPtr F = builtin_immersion("rp2-in-r3");
    HerbertChain chain = herbert_chain(F, 3);
    c.check(!chain.ambiguous && chain.entries.size() == 3, "chain computed");
    const Element& v3 = chain.entries[2].v;
    c.check(v3 == basis_element(F->source->ring(), 2, 0), "v_3 = a^2 != 0");
    Rat pairing = evaluate_top(F->source, v3);
    c.check(pairing == Rat(triples.size() % 2), "triple count mod 2 equals <v_3, [RP^2]>");
}

void criterion_7_determinism() {
    Criterion c(7, "determinism: identical seeds and thread counts agree exactly");
    VerifyOptions opts;
    opts.mesh_n = 13;
    opts.grid_n = 40;
    VerdictReport r1 = verify_lemma_double("whitney", opts);
    VerdictReport r2 = verify_lemma_double("whitney", opts);
    nlohmann::json j1, j2;
    for (const auto& [k, v] : r1.data) j1[k] = v;
    for (const auto& [k, v] : r2.data) j2[k] = v;
    c.check(j1.dump() == j2.dump(), "same-seed reports byte-identical");

    ImmersedTriMesh mesh = perturbed(whitney_mesh(13), 20240809);
    auto seq = mesh_double_points_r4(mesh, 1);
    auto par = mesh_double_points_r4(mesh, 4);
    bool equal = seq.size() == par.size();
    for (std::size_t i = 0; equal && i < seq.size(); ++i)
        equal = seq[i].tri_a == par[i].tri_a && seq[i].tri_b == par[i].tri_b &&
                seq[i].sign == par[i].sign && seq[i].ambient == par[i].ambient;
    c.check(equal, "single-threaded and parallel double enumerations identical");
    PushoffResult p1 = pushoff_euler_number(mesh, 7, 1);
    PushoffResult p4 = pushoff_euler_number(mesh, 7, 4);
    c.check(p1.signed_count == p4.signed_count, "pushoff thread independence");
}

void criterion_8_sign_parity_laws() {
    Criterion c(8, "ordered-record sign laws within Sigma_2 orbits");
    for (unsigned n : {13u, 26u}) {
        ImmersedTriMesh mesh = perturbed(whitney_mesh(n), 20240809);
        auto recs = mesh_double_points_r4(mesh);
        c.check(check_orbit_signs_r4(recs).empty(), "equal signs in even codimension");
    }
    for (const char* name : {"circle", "figure8", "limacon"}) {
        ImmersedPolyCurve curve = perturb_generic(builtin_curve(name, 256), 20240809, Rat(1, 2048));
        auto recs = segment_crossings(curve);
        c.check(check_orbit_signs_curve(recs).empty(), std::string(name) + ": opposite signs");
        SignedCount sc = signed_count_curve(recs);
        c.check(sc.ordered_total == 0, std::string(name) + ": ordered total vanishes");
    }
}

}  // namespace

int main() {
    std::cout << "multibord acceptance suite" << std::endl;
    criterion_1_algebra_coherence();
    criterion_2_embedding_vanishing();
    criterion_3_whitney_triangle();
    criterion_4_boy_lemma();
    criterion_5_trivial_lemma_cases();
    criterion_6_triple_cross_check();
    criterion_7_determinism();
    criterion_8_sign_parity_laws();
    if (failures) {
        std::cout << failures << " criterion(s) failed" << std::endl;
        return 1;
    }
    std::cout << "all criteria passed" << std::endl;
    return 0;
}
