#include "multibord/geom/mesh.hpp"

#include <json.hpp>

#include <cmath>
#include <fstream>
#include <sstream>

#include "multibord/errors.hpp"
#include "multibord/geom/parametric.hpp"
#include "multibord/geom/prng.hpp"

namespace multibord {

void ImmersedTriMesh::validate_basic() const {
    if (ambient_dim != 3 && ambient_dim != 4) throw InputError("mesh ambient dimension must be 3 or 4");
    if (coords.size() != domain.n_vertices) throw InputError("mesh coordinate count mismatch");
    if (domain.edges.empty() && !domain.tris.empty())
        throw InputError("mesh domain complex not finalized");
    for (const auto& p : coords)
        if (p.size() != ambient_dim) throw InputError("mesh point dimension mismatch");
    for (std::size_t t = 0; t < domain.tris.size(); ++t) {
        VecQ u = vq_sub(corner(t, 1), corner(t, 0));
        VecQ v = vq_sub(corner(t, 2), corner(t, 0));
        Rat gram = vq_dot(u, u) * vq_dot(v, v) - vq_dot(u, v) * vq_dot(u, v);
        if (gram == 0) throw GenericityError("degenerate mapped triangle " + std::to_string(t));
    }
}

std::pair<VecQ, VecQ> ImmersedTriMesh::tangent_basis(std::size_t tri) const {
    VecQ u = vq_sub(corner(tri, 1), corner(tri, 0));
    VecQ v = vq_sub(corner(tri, 2), corner(tri, 0));
    if (domain.tri_orientation[tri] < 0) std::swap(u, v);
    return {u, v};
}

ImmersedTriMesh ImmersedTriMesh::reversed() const {
    ImmersedTriMesh out = *this;
    for (auto& o : out.domain.tri_orientation) o = -o;
    return out;
}

ImmersedTriMesh ImmersedTriMesh::mirrored() const {
    ImmersedTriMesh out = *this;
    for (auto& p : out.coords) p[0] = -p[0];
    return out;
}

Rat mesh_bbox_extent(const ImmersedTriMesh& m) {
    Rat ext = 0;
    for (unsigned k = 0; k < m.ambient_dim; ++k) {
        Rat lo = m.coords[0][k], hi = m.coords[0][k];
        for (const auto& p : m.coords) {
            lo = std::min(lo, p[k]);
            hi = std::max(hi, p[k]);
        }
        ext = std::max(ext, Rat(hi - lo));
    }
    return ext;
}

ImmersedTriMesh perturb_generic(const ImmersedTriMesh& m, std::uint64_t seed, const Rat& magnitude) {
    if (magnitude <= 0) throw InputError("perturbation magnitude must be positive");
    Rat scale = magnitude * mesh_bbox_extent(m);
    const int max_attempts = 8;
    for (int attempt = 0; attempt < max_attempts; ++attempt) {
        Prng rng(Prng::derive(seed, static_cast<std::uint64_t>(attempt)));
        ImmersedTriMesh out = m;
        for (auto& p : out.coords)
            for (auto& x : p) x += rng.next_signed_unit() * scale;
        try {
            out.validate_basic();
            return out;
        } catch (const Error&) {
            continue;
        }
    }
    throw GenericityError("mesh perturbation failed to reach general position");
}

ImmersedTriMesh mesh_from_complex(SurfaceComplex domain, unsigned ambient_dim, const ChartEvaluator& f,
                                  unsigned snap_bits) {
    ImmersedTriMesh m;
    m.ambient_dim = ambient_dim;
    m.coords.assign(domain.n_vertices, VecQ());
    std::vector<bool> done(domain.n_vertices, false);
    for (std::size_t t = 0; t < domain.tris.size(); ++t)
        for (int k = 0; k < 3; ++k) {
            std::size_t v = domain.tris[t][k];
            if (done[v]) continue;
            done[v] = true;
            double u = domain.tri_uv[t][k][0].convert_to<double>();
            double w = domain.tri_uv[t][k][1].convert_to<double>();
            auto p = f(domain.tri_chart[t], u, w);
            VecQ q;
            for (unsigned d = 0; d < ambient_dim; ++d) q.push_back(snap_to_rational(p[d], snap_bits));
            m.coords[v] = q;
        }
    m.domain = std::move(domain);
    m.validate_basic();
    return m;
}

ImmersedTriMesh whitney_mesh(unsigned n) {
    SurfaceComplex dom = make_cube_sphere_complex(n);
    ImmersedTriMesh m;
    m.ambient_dim = 4;
    m.coords.assign(dom.n_vertices, VecQ());
    std::vector<bool> done(dom.n_vertices, false);
    for (std::size_t t = 0; t < dom.tris.size(); ++t)
        for (int k = 0; k < 3; ++k) {
            std::size_t v = dom.tris[t][k];
            if (done[v]) continue;
            done[v] = true;
            VecQ c = cube_chart_point(dom.tri_chart[t], dom.tri_uv[t][k]);
            m.coords[v] = {c[0] * c[2], c[1] * c[2], c[0], c[1]};
        }
    m.domain = std::move(dom);
    m.validate_basic();
    return m;
}

ImmersedTriMesh torus_mesh(unsigned n, double R, double r) {
    auto eval = [R, r](int, double s, double t) -> std::array<double, 4> {
        const double tau = 6.283185307179586476925286766559;
        double cs = std::cos(tau * s), sn = std::sin(tau * s);
        double ct = std::cos(tau * t), st = std::sin(tau * t);
        return {(R + r * ct) * cs, (R + r * ct) * sn, r * st, 0.0};
    };
    return mesh_from_complex(make_torus_complex(n), 3, eval, 20);
}

ImmersedTriMesh sphere_mesh(unsigned n, unsigned ambient_dim) {
    auto eval = [](int chart, double u, double v) -> std::array<double, 4> {
        auto c = cube_chart_point_d(chart, u, v);
        double len = std::sqrt(c[0] * c[0] + c[1] * c[1] + c[2] * c[2]);
        return {c[0] / len, c[1] / len, c[2] / len, 0.0};
    };
    return mesh_from_complex(make_cube_sphere_complex(n), ambient_dim, eval, 20);
}

ImmersedTriMesh boy_mesh(unsigned n) {
    auto eval = [](int chart, double u, double v) -> std::array<double, 4> {
        auto c = cube_chart_point_d(chart, u, v);
        double len = std::sqrt(c[0] * c[0] + c[1] * c[1] + c[2] * c[2]);
        auto b = apery_boy(c[0] / len, c[1] / len, c[2] / len);
        return {b[0], b[1], b[2], 0.0};
    };
    return mesh_from_complex(make_rp2_complex(n), 3, eval, 20);
}

ImmersedTriMesh crossing_tori_mesh(unsigned n) {
    ImmersedTriMesh a = torus_mesh(n, 2.0, 1.0);
    // Second ring in the xz-plane, offset so the tubes properly cross.
    auto eval_b = [](int, double s, double t) -> std::array<double, 4> {
        const double tau = 6.283185307179586476925286766559;
        double cs = std::cos(tau * s), sn = std::sin(tau * s);
        double ct = std::cos(tau * t), st = std::sin(tau * t);
        return {1.2 + (2.0 + ct) * cs, st, (2.0 + ct) * sn, 0.0};
    };
    ImmersedTriMesh b = mesh_from_complex(make_torus_complex(n), 3, eval_b, 20);

    ImmersedTriMesh m;
    m.ambient_dim = 3;
    m.coords = a.coords;
    m.coords.insert(m.coords.end(), b.coords.begin(), b.coords.end());
    SurfaceComplex dom;
    dom.n_vertices = a.domain.n_vertices + b.domain.n_vertices;
    dom.tris = a.domain.tris;
    for (const auto& t : b.domain.tris)
        dom.tris.push_back({t[0] + a.domain.n_vertices, t[1] + a.domain.n_vertices,
                            t[2] + a.domain.n_vertices});
    dom.orientable = true;
    dom.finalize();
    m.domain = std::move(dom);
    m.validate_basic();
    return m;
}

ImmersedTriMesh load_mesh_off(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open OFF file: " + path);
    std::string header;
    in >> header;
    if (header != "OFF") throw InputError("not an OFF file: " + path);
    std::size_t nv = 0, nf = 0, ne = 0;
    in >> nv >> nf >> ne;
    ImmersedTriMesh m;
    m.ambient_dim = 3;
    for (std::size_t i = 0; i < nv; ++i) {
        std::string x, y, z;
        in >> x >> y >> z;
        m.coords.push_back({rat_from_decimal(x), rat_from_decimal(y), rat_from_decimal(z)});
    }
    SurfaceComplex dom;
    dom.n_vertices = nv;
    for (std::size_t i = 0; i < nf; ++i) {
        std::size_t k, a, b, c;
        in >> k >> a >> b >> c;
        if (k != 3) throw InputError("OFF loader supports triangles only");
        dom.tris.push_back({a, b, c});
    }
    if (!in) throw InputError("truncated OFF file: " + path);
    dom.finalize();
    m.domain = std::move(dom);
    m.validate_basic();
    return m;
}

ImmersedTriMesh load_mesh_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open mesh JSON: " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const std::exception& e) {
        throw InputError(std::string("bad mesh JSON: ") + e.what());
    }
    ImmersedTriMesh m;
    const auto& verts = j.at("vertices");
    for (const auto& row : verts) {
        VecQ p;
        for (const auto& s : row) p.push_back(rat_from_string(s.get<std::string>()));
        m.coords.push_back(p);
    }
    if (m.coords.empty()) throw InputError("mesh JSON has no vertices");
    m.ambient_dim = static_cast<unsigned>(m.coords[0].size());
    SurfaceComplex dom;
    dom.n_vertices = m.coords.size();
    for (const auto& row : j.at("triangles"))
        dom.tris.push_back({row[0].get<std::size_t>(), row[1].get<std::size_t>(), row[2].get<std::size_t>()});
    dom.orientable = j.value("orientable", true);
    if (j.contains("orientation"))
        for (const auto& o : j["orientation"]) dom.tri_orientation.push_back(o.get<int>());
    dom.finalize();
    m.domain = std::move(dom);
    m.validate_basic();
    return m;
}

void save_mesh_json(const ImmersedTriMesh& m, const std::string& path) {
    nlohmann::json j;
    for (const auto& p : m.coords) {
        std::vector<std::string> row;
        for (const auto& x : p) row.push_back(rat_to_string(x));
        j["vertices"].push_back(row);
    }
    for (const auto& t : m.domain.tris) j["triangles"].push_back({t[0], t[1], t[2]});
    j["orientable"] = m.domain.orientable;
    j["orientation"] = m.domain.tri_orientation;
    std::ofstream out(path);
    out << j.dump(1) << "\n";
}

}  // namespace multibord
