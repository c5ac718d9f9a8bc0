#include "multibord/io/fixture.hpp"

#include <json.hpp>

#include <fstream>

#include "multibord/geom/mesh.hpp"

namespace multibord {

using nlohmann::json;

namespace {

json matrix_to_json(const ExactMatrix& m) {
    json rows = json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(rat_to_string(m.at(i, j)));
        rows.push_back(row);
    }
    json out;
    out["rows"] = m.rows();
    out["cols"] = m.cols();
    out["entries"] = rows;
    return out;
}

ExactMatrix matrix_from_json(const json& j, const CoeffSystem& sys) {
    std::size_t rows = j.at("rows").get<std::size_t>();
    std::size_t cols = j.at("cols").get<std::size_t>();
    ExactMatrix m(sys, rows, cols);
    const json& entries = j.at("entries");
    if (entries.size() != rows) throw FixtureError("matrix row count mismatch");
    for (std::size_t i = 0; i < rows; ++i) {
        if (entries[i].size() != cols) throw FixtureError("matrix column count mismatch");
        for (std::size_t jj = 0; jj < cols; ++jj)
            m.set(i, jj, rat_from_string(entries[i][jj].get<std::string>()));
    }
    return m;
}

json ring_to_json(const GradedRing& r) {
    json out;
    out["coeffs"] = r.coeffs().name();
    out["top_degree"] = r.top_degree();
    json ranks = json::array();
    for (unsigned d = 0; d <= r.top_degree(); ++d) ranks.push_back(r.rank(d));
    out["ranks"] = ranks;
    out["unital"] = r.unital();
    out["name"] = r.name();
    json cup = json::array();
    for (unsigned p = 0; p <= r.top_degree(); ++p)
        for (unsigned q = 0; p + q <= r.top_degree(); ++q)
            for (std::size_t i = 0; i < r.rank(p); ++i)
                for (std::size_t j = 0; j < r.rank(q); ++j) {
                    RatVec c = r.cup_basis(p, q, i, j);
                    if (vec_is_zero(c)) continue;
                    json item;
                    item["p"] = p;
                    item["q"] = q;
                    item["i"] = i;
                    item["j"] = j;
                    json coords = json::array();
                    for (const auto& x : c) coords.push_back(rat_to_string(x));
                    item["coords"] = coords;
                    cup.push_back(item);
                }
    out["cup"] = cup;
    json labels = json::object();
    for (unsigned d = 0; d <= r.top_degree(); ++d)
        for (std::size_t i = 0; i < r.rank(d); ++i)
            labels[std::to_string(d) + ":" + std::to_string(i)] = r.basis_label(d, i);
    out["labels"] = labels;
    return out;
}

std::shared_ptr<GradedRing> ring_from_json(const json& j) {
    CoeffSystem sys = coeff_from_name(j.at("coeffs").get<std::string>());
    unsigned top = j.at("top_degree").get<unsigned>();
    std::vector<std::size_t> ranks;
    for (const auto& r : j.at("ranks")) ranks.push_back(r.get<std::size_t>());
    auto ring = std::make_shared<GradedRing>(j.value("name", std::string("ring")), sys, top, ranks,
                                             j.value("unital", true));
    for (const auto& item : j.at("cup")) {
        RatVec coords;
        for (const auto& c : item.at("coords")) coords.push_back(rat_from_string(c.get<std::string>()));
        ring->set_cup(item.at("p").get<unsigned>(), item.at("q").get<unsigned>(),
                      item.at("i").get<std::size_t>(), item.at("j").get<std::size_t>(), coords);
    }
    if (j.contains("labels"))
        for (auto it = j["labels"].begin(); it != j["labels"].end(); ++it) {
            auto key = it.key();
            auto colon = key.find(':');
            ring->set_basis_label(static_cast<unsigned>(std::stoul(key.substr(0, colon))),
                                  std::stoul(key.substr(colon + 1)), it.value().get<std::string>());
        }
    return ring;
}

json manifold_to_json(const ManifoldModel& m) {
    json out;
    out["dim"] = m.dim();
    out["oriented"] = m.oriented();
    out["compact"] = m.compact();
    out["ring"] = ring_to_json(*m.ring());
    if (m.has_fundamental()) {
        json fc = json::array();
        for (const auto& x : m.fundamental_coords()) fc.push_back(rat_to_string(x));
        out["fundamental"] = fc;
    }
    json pd = json::array();
    for (unsigned d = 0; d <= m.dim(); ++d) pd.push_back(matrix_to_json(m.pd_matrix(d)));
    out["pd"] = pd;
    return out;
}

ManifoldPtr manifold_from_json(const std::string& name, const json& j) {
    if (j.contains("builtin")) {
        CoeffSystem sys = coeff_from_name(j.value("coeffs", std::string("Z")));
        return builtin_manifold(j["builtin"].get<std::string>(), sys);
    }
    auto ring = ring_from_json(j.at("ring"));
    std::optional<RatVec> fc;
    if (j.contains("fundamental")) {
        RatVec v;
        for (const auto& x : j["fundamental"]) v.push_back(rat_from_string(x.get<std::string>()));
        fc = v;
    }
    auto man = std::make_shared<ManifoldModel>(name, j.at("dim").get<unsigned>(),
                                               j.at("oriented").get<bool>(), ring, fc,
                                               j.value("compact", true));
    if (j.contains("pd") && j["pd"].is_array()) {
        const json& pd = j["pd"];
        for (unsigned d = 0; d <= man->dim(); ++d)
            man->set_pd_matrix(d, matrix_from_json(pd.at(d), ring->coeffs()));
    } else {
        man->derive_pd_matrices();
    }
    auto violations = validate_manifold(man);
    if (!violations.empty())
        throw FixtureError("manifold " + name + " invalid: " + violations[0].kind + " " +
                           violations[0].detail);
    return man;
}

json immersion_to_json(const ImmersionAlgebraic& F, const FixtureDocument& doc) {
    json out;
    std::string src_name, tgt_name;
    for (const auto& [n, m] : doc.manifolds) {
        if (m->same_as(*F.source)) src_name = n;
        if (m->same_as(*F.target)) tgt_name = n;
    }
    if (src_name.empty() || tgt_name.empty())
        throw FixtureError("immersion " + F.name + " references manifolds missing from the fixture");
    out["source"] = src_name;
    out["target"] = tgt_name;
    json pb = json::array(), pf = json::array();
    for (const auto& m : F.pullback) pb.push_back(matrix_to_json(m));
    for (const auto& m : F.pushforward) pf.push_back(matrix_to_json(m));
    out["pullback"] = pb;
    out["pushforward"] = pf;
    json euler;
    euler["degree"] = F.euler.degree;
    json coords = json::array();
    for (const auto& x : F.euler.coords) coords.push_back(rat_to_string(x));
    euler["coords"] = coords;
    out["euler"] = euler;
    out["unoriented_extension"] = F.unoriented_extension;
    json overrides = json::object();
    for (std::size_t d = 0; d < F.gysin_override.size(); ++d)
        if (F.gysin_override[d]) overrides[std::to_string(d)] = matrix_to_json(*F.gysin_override[d]);
    if (!overrides.empty()) out["gysin_override"] = overrides;
    return out;
}

ImmersionPtr immersion_from_json(const std::string& name, const json& j, const FixtureDocument& doc) {
    auto F = std::make_shared<ImmersionAlgebraic>();
    F->name = name;
    auto src = doc.manifolds.find(j.at("source").get<std::string>());
    auto tgt = doc.manifolds.find(j.at("target").get<std::string>());
    if (src == doc.manifolds.end() || tgt == doc.manifolds.end())
        throw FixtureError("immersion " + name + ": unresolved manifold reference");
    F->source = src->second;
    F->target = tgt->second;
    const CoeffSystem& sys = F->source->coeffs();
    for (const auto& m : j.at("pullback")) F->pullback.push_back(matrix_from_json(m, sys));
    for (const auto& m : j.at("pushforward")) F->pushforward.push_back(matrix_from_json(m, sys));
    RatVec coords;
    for (const auto& x : j.at("euler").at("coords")) coords.push_back(rat_from_string(x.get<std::string>()));
    F->euler = Element{F->source->ring(), j.at("euler").at("degree").get<unsigned>(), coords};
    F->unoriented_extension = j.value("unoriented_extension", false);
    if (j.contains("gysin_override")) {
        F->gysin_override.assign(F->source->dim() + 1, std::nullopt);
        for (auto it = j["gysin_override"].begin(); it != j["gysin_override"].end(); ++it)
            F->gysin_override[std::stoul(it.key())] = matrix_from_json(it.value(), sys);
    }
    auto violations = validate_immersion(F);
    if (!violations.empty())
        throw FixtureError("immersion " + name + " invalid: " + violations[0].kind + " " +
                           violations[0].detail);
    return F;
}

GeometryCase geometry_from_json(const json& j) {
    GeometryCase g;
    g.kind = j.at("kind").get<std::string>();
    g.builtin = j.value("builtin", std::string());
    g.path = j.value("path", std::string());
    g.n = j.value("n", 16u);
    g.seed = j.value("seed", static_cast<std::uint64_t>(20240809));
    return g;
}

json geometry_to_json(const GeometryCase& g) {
    json j;
    j["kind"] = g.kind;
    if (!g.builtin.empty()) j["builtin"] = g.builtin;
    if (!g.path.empty()) j["path"] = g.path;
    j["n"] = g.n;
    j["seed"] = g.seed;
    return j;
}

}  // namespace

FixtureDocument load_fixture(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw FixtureError("cannot open fixture: " + path);
    json j;
    try {
        in >> j;
    } catch (const std::exception& e) {
        throw FixtureError(std::string("fixture JSON parse error: ") + e.what());
    }
    FixtureDocument doc;
    doc.version = j.value("version", std::string("multibord-fixture-1"));
    if (doc.version != "multibord-fixture-1")
        throw FixtureError("unsupported fixture version: " + doc.version);
    if (j.contains("manifolds"))
        for (auto it = j["manifolds"].begin(); it != j["manifolds"].end(); ++it) {
            auto m = manifold_from_json(it.key(), it.value());
            auto violations = validate_manifold(m);
            if (!violations.empty())
                throw FixtureError("manifold " + it.key() + ": " + violations[0].kind);
            doc.manifolds[it.key()] = m;
        }
    if (j.contains("immersions"))
        for (auto it = j["immersions"].begin(); it != j["immersions"].end(); ++it)
            doc.immersions[it.key()] = immersion_from_json(it.key(), it.value(), doc);
    if (j.contains("geometry"))
        for (auto it = j["geometry"].begin(); it != j["geometry"].end(); ++it)
            doc.geometry[it.key()] = geometry_from_json(it.value());
    return doc;
}

void save_fixture(const FixtureDocument& doc, const std::string& path) {
    json j;
    j["version"] = doc.version;
    json manifolds = json::object();
    for (const auto& [name, m] : doc.manifolds) manifolds[name] = manifold_to_json(*m);
    j["manifolds"] = manifolds;
    json immersions = json::object();
    for (const auto& [name, f] : doc.immersions) immersions[name] = immersion_to_json(*f, doc);
    j["immersions"] = immersions;
    json geometry = json::object();
    for (const auto& [name, g] : doc.geometry) geometry[name] = geometry_to_json(g);
    j["geometry"] = geometry;
    std::ofstream out(path);
    if (!out) throw FixtureError("cannot write fixture: " + path);
    out << j.dump(1) << "\n";
}

FixtureDocument builtin_fixture() {
    FixtureDocument doc;
    auto z = CoeffSystem::integers();
    auto f2 = CoeffSystem::prime_field(2);
    doc.manifolds["cp1"] = builtin_manifold("complex_projective(1)", z);
    doc.manifolds["cp2"] = builtin_manifold("complex_projective(2)", z);
    doc.manifolds["s2"] = builtin_manifold("sphere(2)", z);
    doc.manifolds["t2"] = builtin_manifold("torus(2)", z);
    doc.manifolds["r3-f2"] = builtin_manifold("euclidean(3)", f2);
    doc.manifolds["r4"] = builtin_manifold("euclidean(4)", z);
    doc.manifolds["rp2-f2"] = builtin_manifold("projective_plane", f2);
    for (const auto& name : builtin_immersion_names()) doc.immersions[name] = builtin_immersion(name);

    doc.geometry["whitney"] = {"mesh-builtin", "whitney", "", 16, 20240809};
    doc.geometry["torus"] = {"mesh-builtin", "torus", "", 20, 20240809};
    doc.geometry["sphere-r3"] = {"mesh-builtin", "sphere-r3", "", 16, 20240809};
    doc.geometry["sphere-r4"] = {"mesh-builtin", "sphere-r4", "", 16, 20240809};
    doc.geometry["boy"] = {"mesh-builtin", "boy", "", 26, 20240809};
    doc.geometry["crossing-tori"] = {"mesh-builtin", "crossing-tori", "", 16, 20240809};
    doc.geometry["circle"] = {"curve-builtin", "circle", "", 256, 20240809};
    doc.geometry["figure8"] = {"curve-builtin", "figure8", "", 256, 20240809};
    doc.geometry["limacon"] = {"curve-builtin", "limacon", "", 256, 20240809};
    return doc;
}

ImmersedTriMesh build_geometry_mesh(const GeometryCase& g) {
    if (g.kind == "mesh-file") {
        if (g.path.size() > 4 && g.path.substr(g.path.size() - 4) == ".off") return load_mesh_off(g.path);
        return load_mesh_json(g.path);
    }
    if (g.kind != "mesh-builtin") throw InputError("geometry case is not a mesh");
    if (g.builtin == "whitney") return whitney_mesh(g.n);
    if (g.builtin == "torus") return torus_mesh(g.n);
    if (g.builtin == "sphere-r3") return sphere_mesh(g.n, 3);
    if (g.builtin == "sphere-r4") return sphere_mesh(g.n, 4);
    if (g.builtin == "boy") return boy_mesh(g.n);
    if (g.builtin == "crossing-tori") return crossing_tori_mesh(g.n);
    throw InputError("unknown builtin mesh: " + g.builtin);
}

ImmersedPolyCurve build_geometry_curve(const GeometryCase& g) {
    if (g.kind != "curve-builtin") throw InputError("geometry case is not a curve");
    return builtin_curve(g.builtin, g.n);
}

}  // namespace multibord
