// multibord: multiple-point invariants of immersions, two ways.
//   algebra   exact cohomology engine (Gysin maps, Euler class, v_k chain)
//   geometry  PL/parametric engine (double/triple loci, pushoff, folds)
//   verify    cross-checks between the two engines
#include <CLI11.hpp>

#include <fstream>
#include <iostream>

#include "multibord/geom/fold.hpp"
#include "multibord/io/fixture.hpp"
#include "multibord/io/report.hpp"
#include "multibord/mp/verify.hpp"
#include "multibord/util/parallel.hpp"

using namespace multibord;
using nlohmann::json;

namespace {

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitInput = 2;
constexpr int kExitDegree = 3;
constexpr int kExitGenericity = 4;

json element_json(const Element& e) {
    json j;
    j["degree"] = e.degree;
    json coords = json::array();
    for (const auto& c : e.coords) coords.push_back(rat_to_string(c));
    j["coords"] = coords;
    j["pretty"] = element_to_string(e);
    return j;
}

void emit(ReportDocument& report, const std::string& out_path) {
    report.finish();
    if (out_path.empty())
        std::cout << report.serialize();
    else
        report.write_file(out_path);
}

std::array<double, 4> parse_direction(const std::string& csv, unsigned want) {
    std::array<double, 4> d{0, 0, 0, 0};
    std::stringstream ss(csv);
    std::string tok;
    unsigned k = 0;
    while (std::getline(ss, tok, ',') && k < 4) d[k++] = std::stod(tok);
    if (k != want) throw InputError("direction needs " + std::to_string(want) + " components");
    return d;
}

int cmd_algebra(const std::string& fixture_path, const std::string& immersion_name, unsigned k_max,
                const std::string& mode, const std::string& out_path) {
    FixtureDocument doc = fixture_path.empty() ? builtin_fixture() : load_fixture(fixture_path);
    auto it = doc.immersions.find(immersion_name);
    if (it == doc.immersions.end()) throw FixtureError("unknown immersion fixture: " + immersion_name);
    ImmersionPtr F = it->second;
    if (!mode.empty()) {
        CoeffSystem want = coeff_from_name(mode);
        if (!(F->coeffs() == want)) F = convert_mode(F, want);
    }

    ReportDocument report("algebra " + immersion_name);
    json& body = report.body();
    body["immersion"] = immersion_name;
    body["mode"] = F->coeffs().name();
    body["source"] = F->source->name();
    body["target"] = F->target->name();
    body["codim"] = F->codim();
    body["codim_parity"] = F->codim_even() ? "even" : "odd";
    body["euler"] = element_json(F->euler);

    json ladder = json::array();
    for (unsigned k = 1; k <= k_max; ++k) {
        json row;
        row["k"] = k;
        ScaledClass v = vk_scaled(F, k);
        row["vk_scaled"] = element_json(v.value);
        row["vk_zero_by_dimension"] = v.zero_by_dimension;
        ScaledClass m = mk_scaled(F, k);
        row["mk_scaled"] = element_json(m.value);
        row["mk_zero_by_dimension"] = m.zero_by_dimension;
        ladder.push_back(row);
    }
    body["scaled_classes"] = ladder;

    HerbertChain chain = herbert_chain(F, k_max);
    json jchain = json::array();
    for (const auto& e : chain.entries) {
        json row;
        row["k"] = e.k;
        row["v"] = element_json(e.v);
        row["v_zero_by_dimension"] = e.v_zero_by_dimension;
        if (e.m && !e.m_undetermined) row["m"] = element_json(*e.m);
        row["m_undetermined"] = e.m_undetermined;
        if (e.v.degree == F->source->dim() && F->source->has_fundamental())
            row["v_pairing"] = rat_to_string(evaluate_top(F->source, e.v));
        jchain.push_back(row);
    }
    body["herbert_chain"] = jchain;
    body["herbert_chain_ambiguous"] = chain.ambiguous;
    if (chain.ambiguous) body["herbert_chain_note"] = chain.note;

    if (F->coeffs().kind != CoeffKind::PrimeField) {
        ConsistencyReport rc = rational_consistency(F, k_max);
        body["rational_consistency"] = rc.passed;
        if (!rc.passed) body["rational_consistency_mismatches"] = rc.mismatches;
    } else {
        body["rational_consistency"] = "n/a (prime field mode)";
    }
    ConsistencyReport pf = projection_formula_check(F);
    body["projection_formula"] = pf.passed;
    if (!pf.passed) body["projection_formula_mismatches"] = pf.mismatches;

    emit(report, out_path);
    bool ok = pf.passed &&
              (F->coeffs().kind == CoeffKind::PrimeField || body["rational_consistency"] == true);
    return ok ? kExitPass : kExitFail;
}

void write_curve_svg(const ImmersedPolyCurve& c, const std::vector<CurveCrossing>& recs,
                     const std::string& path) {
    std::ofstream out(path);
    out << "<svg xmlns='http://www.w3.org/2000/svg' viewBox='-2 -2 4 4'>\n<polygon points='";
    for (const auto& v : c.vertices)
        out << v[0].convert_to<double>() << "," << v[1].convert_to<double>() << " ";
    out << "' fill='none' stroke='black' stroke-width='0.01'/>\n";
    for (const auto& r : recs)
        out << "<circle cx='" << r.ambient[0].convert_to<double>() << "' cy='"
            << r.ambient[1].convert_to<double>() << "' r='0.03' fill='red'/>\n";
    out << "</svg>\n";
}

void write_fold_svg(const FoldResult& fold, const std::string& path) {
    std::ofstream out(path);
    out << "<svg xmlns='http://www.w3.org/2000/svg' viewBox='-1.2 -1.2 15 3'>\n";
    for (const auto& poly : fold.polylines) {
        out << "<polyline points='";
        for (const auto& p : poly) out << (p[0] * 2.5 + p[1]) << "," << p[2] << " ";
        out << "' fill='none' stroke='blue' stroke-width='0.01'/>\n";
    }
    out << "</svg>\n";
}

int cmd_geometry(const std::string& input, const std::string& builtin, unsigned n, std::uint64_t seed,
                 const std::string& perturb, bool want_double, bool want_triple, bool want_pushoff,
                 const std::string& fold_dir, const std::string& tangent_dir, unsigned grid_n,
                 const std::string& svg_path, const std::string& out_path) {
    GeometryCase g;
    if (!input.empty()) {
        g.kind = "mesh-file";
        g.path = input;
    } else {
        FixtureDocument doc = builtin_fixture();
        auto it = doc.geometry.find(builtin);
        if (it == doc.geometry.end()) throw InputError("unknown geometry case: " + builtin);
        g = it->second;
        if (n) g.n = n;
    }
    g.seed = seed;

    ReportDocument report("geometry " + (input.empty() ? builtin : input));
    json& body = report.body();
    body["seed"] = seed;
    body["n"] = g.n;
    body["threads"] = thread_budget();

    if (g.kind == "curve-builtin") {
        ImmersedPolyCurve curve = build_geometry_curve(g);
        if (!perturb.empty()) curve = perturb_generic(curve, seed, rat_from_string(perturb));
        body["kind"] = "curve";
        body["vertices"] = curve.vertices.size();
        if (want_double) {
            auto recs = segment_crossings(curve);
            SignedCount sc = signed_count_curve(recs);
            json jr = json::array();
            for (const auto& r : recs) {
                json rec;
                rec["param_a"] = rat_to_string(r.param_a);
                rec["param_b"] = rat_to_string(r.param_b);
                rec["sign"] = r.sign;
                jr.push_back(rec);
            }
            body["double_records"] = jr;
            body["ordered_signed_total"] = sc.ordered_total.str();
            body["geometric_points"] = sc.geometric_points;
            body["mode"] = "Z (ordered records), F2 (unordered)";
            body["provenance"] = "pl_geometry.segment_crossings";
            if (!svg_path.empty()) write_curve_svg(curve, recs, svg_path);
        }
        if (!tangent_dir.empty()) {
            auto d = parse_direction(tangent_dir, 2);
            CurveTangentResult t = curve_tangent_points(builtin_parametric_curve(g.builtin), {d[0], d[1]});
            body["tangent_count"] = t.params.size();
            body["tangent_signed_total"] = t.signed_total;
            body["provenance_tangent"] = "pl_geometry.curve_tangent_points";
        }
        emit(report, out_path);
        return kExitPass;
    }

    ImmersedTriMesh mesh = build_geometry_mesh(g);
    if (!perturb.empty()) mesh = perturb_generic(mesh, seed, rat_from_string(perturb));
    body["kind"] = "mesh";
    body["ambient_dim"] = mesh.ambient_dim;
    body["triangles"] = mesh.domain.tris.size();

    try {

    if (want_double && mesh.ambient_dim == 3) {
        auto segs = mesh_double_locus_r3(mesh);
        body["double_segments"] = segs.size();
        auto curves = assemble_preimage_curves(mesh, segs);
        body["double_curves"] = curves.size();
        if (!mesh.domain.cocycles.empty()) {
            CycleClass cls = double_locus_preimage_class(mesh, segs);
            body["double_preimage_class"] = cls.to_string();
            body["class_basis"] = mesh.domain.cocycle_names;
        }
        body["mode"] = "F2";
        body["provenance"] = "pl_geometry.mesh_double_locus_r3";
        if (want_triple) {
            auto triples = triple_points_from_segments(mesh, segs);
            SignedCount ts = signed_count_triples(triples);
            body["triple_points"] = triples.size();
            body["triple_ordered_records"] = ts.ordered_total.str();
            body["triple_mod2"] = ts.unordered_total.str();
        }
    } else if (want_triple && mesh.ambient_dim == 3) {
        auto triples = mesh_triple_points_r3(mesh);
        body["triple_points"] = triples.size();
    }
    if (want_double && mesh.ambient_dim == 4) {
        auto recs = mesh_double_points_r4(mesh);
        SignedCount sc = signed_count_r4(recs);
        body["double_ordered_records"] = recs.size();
        body["ordered_signed_total"] = sc.ordered_total.str();
        body["geometric_points"] = sc.geometric_points;
        body["mode"] = "Z";
        body["provenance"] = "pl_geometry.mesh_double_points_r4";
    }
    if (want_pushoff) {
        if (mesh.ambient_dim != 4) throw ModeError("--pushoff needs an R^4 mesh");
        PushoffResult p = pushoff_euler_number(mesh, seed);
        body["pushoff"] = p.signed_count;
        body["pushoff_delta"] = rat_to_string(p.delta);
        body["provenance_pushoff"] = "pl_geometry.pushoff_euler_number";
    }
    if (!fold_dir.empty()) {
        auto d3 = parse_direction(fold_dir, 3);
        std::string surf_name = g.builtin == "sphere-r3" ? "sphere" : g.builtin;
        FoldOptions fopts;
        fopts.grid_n = grid_n;
        FoldResult fold = fold_locus(builtin_surface(surf_name), {d3[0], d3[1], d3[2]}, fopts);
        body["fold_loops"] = fold.loops.size();
        body["fold_total_class"] = fold.total_class.to_string();
        json per = json::array();
        for (const auto& cls : fold.loop_classes) per.push_back(cls.to_string());
        body["fold_loop_classes"] = per;
        body["provenance_fold"] = "pl_geometry.fold_locus";
        if (!svg_path.empty()) write_fold_svg(fold, svg_path);
    }
    if (!tangent_dir.empty()) {
        auto d4 = parse_direction(tangent_dir, 4);
        TangentOptions topts;
        topts.grid_n = grid_n;
        TangentResult t = tangent_direction_points(builtin_surface(g.builtin), d4, topts);
        body["tangent_points"] = t.points.size();
        body["tangent_signed_total"] = t.signed_total;
        body["provenance_tangent"] = "pl_geometry.tangent_direction_points";
    }
    } catch (const GenericityError& e) {
        // Report carries the offending simplex pair; exit code signals it.
        body["genericity_error"] = e.what();
        emit(report, out_path);
        return kExitGenericity;
    }
    emit(report, out_path);
    return kExitPass;
}

json verdict_json(const VerdictReport& r) {
    json j;
    j["case"] = r.case_name;
    j["kind"] = r.kind;
    j["mode"] = r.mode;
    j["lhs"] = r.lhs;
    j["rhs"] = r.rhs;
    j["verdict"] = r.pass ? "PASS" : "FAIL";
    j["detail"] = r.detail;
    for (const auto& [k, v] : r.data) j["data"][k] = v;
    j["seed"] = r.options.seed;
    j["mesh_n"] = r.options.mesh_n;
    j["grid_n"] = r.options.grid_n;
    return j;
}

int cmd_verify(const std::string& what, const std::string& case_name, const VerifyOptions& opts,
               const std::string& out_path) {
    VerdictReport r;
    try {
        if (what == "lemma2")
            r = verify_lemma_double(case_name, opts);
        else if (what == "euler")
            r = verify_euler_corollary(case_name, opts);
        else
            throw InputError("verify expects 'lemma2' or 'euler'");
    } catch (const InputError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInput;
    }
    ReportDocument report("verify " + what + " " + case_name);
    report.body()["result"] = verdict_json(r);
    emit(report, out_path);
    return r.pass ? kExitPass : kExitFail;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"multibord: multiple-point invariants of immersions, symbolic and geometric"};
    app.require_subcommand(1);

    // algebra
    auto* alg = app.add_subcommand("algebra", "evaluate the cohomological invariants of a fixture");
    std::string fixture_path, immersion_name, mode, out_path;
    unsigned k_max = 4;
    alg->add_option("--fixture", fixture_path, "fixture JSON (default: built-in library)");
    alg->add_option("--immersion", immersion_name, "immersion fixture name")->required();
    alg->add_option("--k", k_max, "maximal multiplicity (default 4)");
    alg->add_option("--mode", mode, "coefficient mode: z, q, or f2");
    alg->add_option("--out", out_path, "write the report to a file instead of stdout");

    // geometry
    auto* geo = app.add_subcommand("geometry", "enumerate self-intersection data of a concrete shape");
    std::string input, builtin, perturb, fold_dir, tangent_dir, svg_path, geo_out;
    unsigned n = 0, grid_n = 64;
    std::uint64_t seed = 20240809;
    bool want_double = false, want_triple = false, want_pushoff = false;
    geo->add_option("--input", input, "mesh file (.off or .json)");
    geo->add_option("--builtin", builtin, "built-in case name");
    geo->add_option("--n", n, "resolution override for built-ins");
    geo->add_option("--seed", seed, "seed for perturbation/pushoff");
    geo->add_option("--perturb", perturb, "perturbation magnitude (rational, e.g. 1/2048)");
    geo->add_flag("--double", want_double, "enumerate the double locus");
    geo->add_flag("--triple", want_triple, "enumerate triple points");
    geo->add_flag("--pushoff", want_pushoff, "pushoff self-pairing count (R^4)");
    geo->add_option("--fold", fold_dir, "fold locus for direction ux,uy,uz");
    geo->add_option("--tangent", tangent_dir, "tangent-direction points for a direction");
    geo->add_option("--grid", grid_n, "fold/tangent grid resolution");
    geo->add_option("--svg", svg_path, "best-effort SVG dump of curves/fold loci");
    geo->add_option("--out", geo_out, "write the report to a file instead of stdout");

    // verify
    auto* ver = app.add_subcommand("verify", "run a cross-engine verdict");
    std::string what, case_name, direction, ver_out;
    VerifyOptions vopts;
    ver->add_option("what", what, "lemma2 or euler")->required();
    ver->add_option("--case", case_name, "case name")->required();
    ver->add_option("--seed", vopts.seed, "seed");
    ver->add_option("--mesh-n", vopts.mesh_n, "mesh resolution");
    ver->add_option("--grid-n", vopts.grid_n, "fold/tangent grid resolution");
    ver->add_option("--direction", direction, "direction components, comma separated");
    ver->add_option("--out", ver_out, "write the report to a file instead of stdout");

    try {
        app.parse(argc, argv);
        if (alg->parsed()) return cmd_algebra(fixture_path, immersion_name, k_max, mode, out_path);
        if (geo->parsed()) {
            if (input.empty() == builtin.empty())
                throw InputError("geometry needs exactly one of --input or --builtin");
            return cmd_geometry(input, builtin, n, seed, perturb, want_double, want_triple,
                                want_pushoff, fold_dir, tangent_dir, grid_n, svg_path, geo_out);
        }
        if (ver->parsed()) {
            if (!direction.empty()) {
                auto d = parse_direction(direction + ",0,0,0", 4);
                vopts.direction = d;
            }
            return cmd_verify(what, case_name, vopts, ver_out);
        }
    } catch (const CLI::ParseError& e) {
        return app.exit(e) ? kExitInput : kExitPass;
    } catch (const GenericityError& e) {
        std::cerr << "genericity error: " << e.what() << "\n";
        return kExitGenericity;
    } catch (const DegreeError& e) {
        std::cerr << "degree error: " << e.what() << "\n";
        return kExitDegree;
    } catch (const ModeError& e) {
        std::cerr << "mode error: " << e.what() << "\n";
        return kExitDegree;
    } catch (const InputError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kExitInput;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInput;
    }
    return kExitInput;
}
