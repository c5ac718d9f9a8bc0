#include "multibord/topo/complex.hpp"

#include <algorithm>
#include <set>

#include "multibord/errors.hpp"

namespace multibord {

void SurfaceComplex::finalize() {
    edges.clear();
    tri_edges.assign(tris.size(), {0, 0, 0});
    edge_index.clear();
    std::map<std::array<std::size_t, 2>, std::vector<std::size_t>> incident;
    for (std::size_t t = 0; t < tris.size(); ++t) {
        for (int k = 0; k < 3; ++k) {
            std::size_t a = tris[t][k], b = tris[t][(k + 1) % 3];
            if (a == b) throw InputError("degenerate triangle in surface complex");
            std::array<std::size_t, 2> key{std::min(a, b), std::max(a, b)};
            incident[key].push_back(t);
        }
    }
    for (const auto& [key, ts] : incident) {
        if (ts.size() != 2)
            throw InputError("surface complex not closed: edge with " + std::to_string(ts.size()) +
                             " incident triangles");
        edge_index[key] = edges.size();
        edges.push_back(key);
    }
    edge_tris.assign(edges.size(), {0, 0});
    for (const auto& [key, ts] : incident) edge_tris[edge_index[key]] = {ts[0], ts[1]};
    for (std::size_t t = 0; t < tris.size(); ++t)
        for (int k = 0; k < 3; ++k) {
            std::size_t a = tris[t][k], b = tris[t][(k + 1) % 3];
            tri_edges[t][k] = edge_index.at({std::min(a, b), std::max(a, b)});
        }
    if (tri_orientation.empty()) tri_orientation.assign(tris.size(), 1);
    check_closed_surface();
}

void SurfaceComplex::check_closed_surface() const {
    // Vertex links must be single cycles.
    std::vector<std::vector<std::pair<std::size_t, std::size_t>>> link(n_vertices);
    for (const auto& t : tris)
        for (int k = 0; k < 3; ++k) {
            std::size_t v = t[k], a = t[(k + 1) % 3], b = t[(k + 2) % 3];
            link[v].push_back({a, b});
        }
    for (std::size_t v = 0; v < n_vertices; ++v) {
        if (link[v].empty()) throw InputError("isolated vertex in surface complex");
        std::map<std::size_t, int> degree;
        for (auto [a, b] : link[v]) {
            degree[a]++;
            degree[b]++;
        }
        for (auto [w, d] : degree)
            if (d != 2) throw InputError("vertex link is not a cycle (pinch point?)");
        // Connectivity of the link graph.
        std::set<std::size_t> seen;
        std::vector<std::size_t> stack = {link[v][0].first};
        while (!stack.empty()) {
            std::size_t x = stack.back();
            stack.pop_back();
            if (!seen.insert(x).second) continue;
            for (auto [a, b] : link[v]) {
                if (a == x) stack.push_back(b);
                if (b == x) stack.push_back(a);
            }
        }
        if (seen.size() != degree.size()) throw InputError("vertex link is disconnected");
    }
}

std::size_t SurfaceComplex::edge_of(std::size_t a, std::size_t b) const {
    auto it = edge_index.find({std::min(a, b), std::max(a, b)});
    if (it == edge_index.end()) throw InputError("no such edge in complex");
    return it->second;
}

std::size_t SurfaceComplex::tri_across(std::size_t tri, std::size_t edge) const {
    const auto& ts = edge_tris[edge];
    if (ts[0] == tri) return ts[1];
    if (ts[1] == tri) return ts[0];
    throw InputError("triangle not incident to edge");
}

bool SurfaceComplex::tri_has_edge(std::size_t tri, std::size_t edge) const {
    return tri_edges[tri][0] == edge || tri_edges[tri][1] == edge || tri_edges[tri][2] == edge;
}

std::size_t SurfaceComplex::edge_in_tri(std::size_t tri, std::size_t va, std::size_t vb) const {
    std::size_t e = edge_of(va, vb);
    if (!tri_has_edge(tri, e)) throw InputError("edge not on triangle");
    return e;
}

SurfaceComplex make_torus_complex(unsigned n) {
    if (n < 3) throw InputError("torus complex needs n >= 3");
    SurfaceComplex c;
    c.n_vertices = static_cast<std::size_t>(n) * n;
    auto vid = [n](unsigned i, unsigned j) { return static_cast<std::size_t>(i % n) * n + (j % n); };
    // Half-cell offset keeps axis-aligned zero sets away from vertices.
    auto uv = [n](unsigned i, unsigned j) {
        return Vec2Q{make_rat(2 * Int(i) + 1, 2 * Int(n)), make_rat(2 * Int(j) + 1, 2 * Int(n))};
    };
    for (unsigned i = 0; i < n; ++i)
        for (unsigned j = 0; j < n; ++j) {
            c.tris.push_back({vid(i, j), vid(i + 1, j), vid(i + 1, j + 1)});
            c.tri_uv.push_back({uv(i, j), uv(i + 1, j), uv(i + 1, j + 1)});
            c.tris.push_back({vid(i, j), vid(i + 1, j + 1), vid(i, j + 1)});
            c.tri_uv.push_back({uv(i, j), uv(i + 1, j + 1), uv(i, j + 1)});
        }
    c.n_charts = 1;
    c.tri_chart.assign(c.tris.size(), 0);
    c.orientable = true;
    c.finalize();
    // Winding cocycles: seam-crossing indicators from the integer grid.
    std::vector<std::uint8_t> wx(c.edges.size(), 0), wy(c.edges.size(), 0);
    for (std::size_t e = 0; e < c.edges.size(); ++e) {
        unsigned i0 = static_cast<unsigned>(c.edges[e][0] / n), j0 = static_cast<unsigned>(c.edges[e][0] % n);
        unsigned i1 = static_cast<unsigned>(c.edges[e][1] / n), j1 = static_cast<unsigned>(c.edges[e][1] % n);
        unsigned di = i0 > i1 ? i0 - i1 : i1 - i0;
        unsigned dj = j0 > j1 ? j0 - j1 : j1 - j0;
        if (di == n - 1) wx[e] = 1;
        if (dj == n - 1) wy[e] = 1;
    }
    c.cocycles = {wx, wy};
    c.cocycle_names = {"x", "y"};
    return c;
}

VecQ cube_chart_point(int chart, const Vec2Q& uv) {
    const Rat& u = uv[0];
    const Rat& v = uv[1];
    switch (chart) {
        case 0: return {Rat(1), u, v};
        case 1: return {Rat(-1), v, u};
        case 2: return {v, Rat(1), u};
        case 3: return {u, Rat(-1), v};
        case 4: return {u, v, Rat(1)};
        case 5: return {v, u, Rat(-1)};
    }
    throw InputError("cube chart id out of range");
}

std::array<double, 3> cube_chart_point_d(int chart, double u, double v) {
    switch (chart) {
        case 0: return {1.0, u, v};
        case 1: return {-1.0, v, u};
        case 2: return {v, 1.0, u};
        case 3: return {u, -1.0, v};
        case 4: return {u, v, 1.0};
        case 5: return {v, u, -1.0};
    }
    throw InputError("cube chart id out of range");
}

std::pair<int, Vec2Q> cube_chart_antipode(int chart, const Vec2Q& uv) {
    return {chart ^ 1, Vec2Q{-uv[1], -uv[0]}};
}

SurfaceComplex make_cube_sphere_complex(unsigned n) {
    if (n < 2) throw InputError("cube sphere complex needs n >= 2");
    SurfaceComplex c;
    std::map<VecQ, std::size_t> vid_of_point;
    auto vertex_id = [&](int chart, unsigned i, unsigned j) {
        Vec2Q uv{make_rat(2 * Int(i) - Int(n), Int(n)), make_rat(2 * Int(j) - Int(n), Int(n))};
        VecQ p = cube_chart_point(chart, uv);
        auto it = vid_of_point.find(p);
        if (it != vid_of_point.end()) return it->second;
        std::size_t id = vid_of_point.size();
        vid_of_point[p] = id;
        return id;
    };
    auto uv_of = [&](unsigned i, unsigned j) {
        return Vec2Q{make_rat(2 * Int(i) - Int(n), Int(n)), make_rat(2 * Int(j) - Int(n), Int(n))};
    };
    for (int f = 0; f < 6; ++f)
        for (unsigned i = 0; i < n; ++i)
            for (unsigned j = 0; j < n; ++j) {
                std::size_t v00 = vertex_id(f, i, j), v10 = vertex_id(f, i + 1, j);
                std::size_t v01 = vertex_id(f, i, j + 1), v11 = vertex_id(f, i + 1, j + 1);
                c.tris.push_back({v00, v10, v11});
                c.tri_uv.push_back({uv_of(i, j), uv_of(i + 1, j), uv_of(i + 1, j + 1)});
                c.tri_chart.push_back(f);
                c.tris.push_back({v00, v11, v01});
                c.tri_uv.push_back({uv_of(i, j), uv_of(i + 1, j + 1), uv_of(i, j + 1)});
                c.tri_chart.push_back(f);
            }
    c.n_vertices = vid_of_point.size();
    c.n_charts = 6;
    c.orientable = true;
    c.finalize();
    return c;
}

SurfaceComplex make_rp2_complex(unsigned n) {
    if (n < 4 || n % 2 != 0) throw InputError("rp2 complex needs even n >= 4");
    SurfaceComplex sphere = make_cube_sphere_complex(n);

    // Rebuild the point table to find antipodes.
    std::map<VecQ, std::size_t> point_id;
    std::vector<VecQ> points(sphere.n_vertices);
    {
        std::map<std::size_t, VecQ> tmp;
        for (std::size_t t = 0; t < sphere.tris.size(); ++t)
            for (int k = 0; k < 3; ++k)
                tmp[sphere.tris[t][k]] = cube_chart_point(sphere.tri_chart[t], sphere.tri_uv[t][k]);
        for (auto& [id, p] : tmp) {
            points[id] = p;
            point_id[p] = id;
        }
    }
    std::vector<std::size_t> antipode(sphere.n_vertices);
    for (std::size_t v = 0; v < sphere.n_vertices; ++v) {
        VecQ q = {-points[v][0], -points[v][1], -points[v][2]};
        auto it = point_id.find(q);
        if (it == point_id.end()) throw Error("cube sphere grid is not antipodally symmetric");
        antipode[v] = it->second;
    }

    // chi(v) = 1 when v is the non-canonical lift of its orbit.
    std::vector<std::size_t> orbit_rep(sphere.n_vertices);
    std::vector<std::uint8_t> chi(sphere.n_vertices);
    std::map<std::size_t, std::size_t> quotient_id;  // canonical sphere vertex -> quotient id
    for (std::size_t v = 0; v < sphere.n_vertices; ++v) {
        std::size_t rep = std::min(v, antipode[v]);
        orbit_rep[v] = rep;
        chi[v] = v == rep ? 0 : 1;
        if (v == rep) {
            std::size_t id = quotient_id.size();
            quotient_id[v] = id;
        }
    }

    // Triangle orbits: keep the lift with the smaller index.
    std::map<std::array<std::size_t, 3>, std::size_t> tri_of_key;
    for (std::size_t t = 0; t < sphere.tris.size(); ++t) {
        std::array<std::size_t, 3> key = sphere.tris[t];
        std::sort(key.begin(), key.end());
        tri_of_key[key] = t;  // later (larger) index wins; we compare below
    }

    SurfaceComplex q;
    q.n_vertices = quotient_id.size();
    q.n_charts = 6;
    q.orientable = false;
    std::vector<std::array<std::size_t, 3>> rep_lift;  // sphere vertices of each kept triangle
    for (std::size_t t = 0; t < sphere.tris.size(); ++t) {
        std::array<std::size_t, 3> mate_key{antipode[sphere.tris[t][0]], antipode[sphere.tris[t][1]],
                                            antipode[sphere.tris[t][2]]};
        std::sort(mate_key.begin(), mate_key.end());
        std::size_t mate = tri_of_key.at(mate_key);
        if (mate == t) throw Error("triangle fixed by the antipodal map");
        if (mate < t) continue;  // keep the smaller lift only
        q.tris.push_back({quotient_id.at(orbit_rep[sphere.tris[t][0]]),
                          quotient_id.at(orbit_rep[sphere.tris[t][1]]),
                          quotient_id.at(orbit_rep[sphere.tris[t][2]])});
        q.tri_uv.push_back(sphere.tri_uv[t]);
        q.tri_chart.push_back(sphere.tri_chart[t]);
        rep_lift.push_back(sphere.tris[t]);
    }
    q.finalize();

    // Deck cocycle: an edge flips iff its lift mixes canonical and
    // non-canonical representatives. Gauge-independent across the two lifts.
    std::vector<std::uint8_t> deck(q.edges.size(), 2);
    for (std::size_t t = 0; t < q.tris.size(); ++t)
        for (int k = 0; k < 3; ++k) {
            std::size_t e = q.tri_edges[t][k];
            std::uint8_t val = chi[rep_lift[t][k]] ^ chi[rep_lift[t][(k + 1) % 3]];
            if (deck[e] == 2)
                deck[e] = val;
            else if (deck[e] != val)
                throw Error("deck cocycle inconsistent across triangle lifts");
        }
    q.cocycles = {deck};
    q.cocycle_names = {"w"};
    return q;
}

Rat det3(const VecQ& a, const VecQ& b, const VecQ& c) {
    return a[0] * (b[1] * c[2] - b[2] * c[1]) - a[1] * (b[0] * c[2] - b[2] * c[0]) +
           a[2] * (b[0] * c[1] - b[1] * c[0]);
}

Rat det4(const VecQ& a, const VecQ& b, const VecQ& c, const VecQ& d) {
    // Expansion along the first row of the column matrix [a b c d].
    auto minor3 = [](const VecQ& x, const VecQ& y, const VecQ& z, int skip) {
        VecQ xs, ys, zs;
        for (int i = 0; i < 4; ++i) {
            if (i == skip) continue;
            xs.push_back(x[i]);
            ys.push_back(y[i]);
            zs.push_back(z[i]);
        }
        return det3(xs, ys, zs);
    };
    Rat s = 0;
    s += a[0] * minor3(b, c, d, 0);
    s -= a[1] * minor3(b, c, d, 1);
    s += a[2] * minor3(b, c, d, 2);
    s -= a[3] * minor3(b, c, d, 3);
    return s;
}

}  // namespace multibord
