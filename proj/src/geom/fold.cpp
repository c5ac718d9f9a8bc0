#include "multibord/geom/fold.hpp"

#include <cmath>
#include <map>

#include "multibord/errors.hpp"

namespace multibord {

namespace {

double dot4(const std::array<double, 4>& a, const std::array<double, 4>& b) {
    return a[0] * b[0] + a[1] * b[1] + a[2] * b[2] + a[3] * b[3];
}

std::array<double, 3> cross3(const std::array<double, 4>& a, const std::array<double, 4>& b) {
    return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

// g = <dir, du x dv> evaluated at a chart point.
double fold_value(const ParametricSurface& p, const std::array<double, 3>& dir, int chart, double u,
                  double v) {
    std::array<double, 4> du{}, dv{};
    p.tangents(chart, u, v, du, dv);
    auto n = cross3(du, dv);
    return dir[0] * n[0] + dir[1] * n[1] + dir[2] * n[2];
}

}  // namespace

FoldResult fold_locus(const ParametricSurface& p, const std::array<double, 3>& dir,
                      const FoldOptions& opts) {
    if (p.ambient_dim != 3) throw InputError("fold_locus expects a surface in R^3");
    FoldResult out;
    out.complex = p.domain_complex(opts.grid_n);
    const SurfaceComplex& c = out.complex;

    // Edge-owner gauge: evaluate both endpoints of an edge in the chart of the
    // lower-indexed incident triangle. Crossing parity is gauge-independent.
    const std::size_t ne = c.edges.size();
    std::vector<std::uint8_t> crossed(ne, 0);
    std::vector<double> cross_t(ne, 0.0);
    double gscale = 0.0;
    std::vector<std::pair<double, double>> edge_vals(ne, {0, 0});
    for (std::size_t e = 0; e < ne; ++e) {
        std::size_t t = std::min(c.edge_tris[e][0], c.edge_tris[e][1]);
        int chart = c.tri_chart[t];
        // Locate the edge endpoints among the triangle corners.
        int ka = -1, kb = -1;
        for (int k = 0; k < 3; ++k) {
            if (c.tris[t][k] == c.edges[e][0]) ka = k;
            if (c.tris[t][k] == c.edges[e][1]) kb = k;
        }
        if (ka < 0 || kb < 0) throw Error("edge owner lookup failed");
        double ua = c.tri_uv[t][ka][0].convert_to<double>(), va = c.tri_uv[t][ka][1].convert_to<double>();
        double ub = c.tri_uv[t][kb][0].convert_to<double>(), vb = c.tri_uv[t][kb][1].convert_to<double>();
        double ga = fold_value(p, dir, chart, ua, va);
        double gb = fold_value(p, dir, chart, ub, vb);
        edge_vals[e] = {ga, gb};
        gscale = std::max({gscale, std::abs(ga), std::abs(gb)});
        if (ga == 0.0 || gb == 0.0) throw GenericityError("fold value vanishes at a grid vertex");
        if ((ga < 0) != (gb < 0)) {
            crossed[e] = 1;
            // Bisection along the edge in the owner chart.
            double lo = 0.0, hi = 1.0, glo = ga;
            for (int it = 0; it < 48; ++it) {
                double mid = 0.5 * (lo + hi);
                double gm = fold_value(p, dir, chart, ua + mid * (ub - ua), va + mid * (vb - va));
                if ((gm < 0) == (glo < 0)) {
                    lo = mid;
                    glo = gm;
                } else {
                    hi = mid;
                }
                if (hi - lo < opts.bisect_tol) break;
            }
            cross_t[e] = 0.5 * (lo + hi);
        }
    }
    // Resolution certificate: near-zero vertex values are failures.
    for (std::size_t e = 0; e < ne; ++e) {
        if (std::abs(edge_vals[e].first) < opts.zero_tol * gscale ||
            std::abs(edge_vals[e].second) < opts.zero_tol * gscale)
            throw GenericityError("fold locus unresolved at this grid resolution (increase N)");
    }

    // Each triangle sees 0 or 2 crossed edges.
    std::vector<std::array<int, 2>> tri_crossed(c.tris.size(), {-1, -1});
    for (std::size_t t = 0; t < c.tris.size(); ++t) {
        int cnt = 0;
        for (int k = 0; k < 3; ++k) {
            std::size_t e = c.tri_edges[t][k];
            if (crossed[e]) {
                if (cnt < 2) tri_crossed[t][cnt] = static_cast<int>(e);
                ++cnt;
            }
        }
        if (cnt != 0 && cnt != 2)
            throw GenericityError("fold sign pattern inconsistent (resolution failure)");
    }

    // Trace loops: step triangle -> other crossed edge -> neighbor.
    std::vector<std::uint8_t> used(ne, 0);
    for (std::size_t e0 = 0; e0 < ne; ++e0) {
        if (!crossed[e0] || used[e0]) continue;
        DomainLoop loop;
        std::vector<std::array<double, 3>> poly;
        std::size_t e = e0;
        std::size_t t = c.edge_tris[e0][0];
        do {
            used[e] = 1;
            loop.crossings.push_back({e, snap_to_rational(cross_t[e], 30)});
            {
                std::size_t owner = std::min(c.edge_tris[e][0], c.edge_tris[e][1]);
                int chart = c.tri_chart[owner];
                int ka = -1, kb = -1;
                for (int k = 0; k < 3; ++k) {
                    if (c.tris[owner][k] == c.edges[e][0]) ka = k;
                    if (c.tris[owner][k] == c.edges[e][1]) kb = k;
                }
                double ua = c.tri_uv[owner][ka][0].convert_to<double>(),
                       va = c.tri_uv[owner][ka][1].convert_to<double>();
                double ub = c.tri_uv[owner][kb][0].convert_to<double>(),
                       vb = c.tri_uv[owner][kb][1].convert_to<double>();
                poly.push_back({static_cast<double>(chart), ua + cross_t[e] * (ub - ua),
                                va + cross_t[e] * (vb - va)});
            }
            // Other crossed edge of t.
            std::size_t enext =
                (static_cast<std::size_t>(tri_crossed[t][0]) == e)
                    ? static_cast<std::size_t>(tri_crossed[t][1])
                    : static_cast<std::size_t>(tri_crossed[t][0]);
            t = c.tri_across(t, enext);
            e = enext;
        } while (e != e0);
        out.loops.push_back(std::move(loop));
        out.polylines.push_back(std::move(poly));
    }

    std::vector<std::size_t> all_edges;
    for (const auto& loop : out.loops) out.loop_classes.push_back(homology_class(c, {loop}));
    out.total_class = homology_class(c, out.loops);
    return out;
}

namespace {

struct Frame {
    int axis_a, axis_b;  // coordinate axes completing the tangent plane
};

// Unnormalized normal pairings g_k = <dir, e_k - proj_T e_k> in a frozen frame.
void tangent_system(const ParametricSurface& p, const std::array<double, 4>& dir, const Frame& fr,
                    int chart, double u, double v, double& g1, double& g2) {
    std::array<double, 4> t1{}, t2{};
    p.tangents(chart, u, v, t1, t2);
    double a = dot4(t1, t1), b = dot4(t1, t2), d = dot4(t2, t2);
    double det = a * d - b * b;
    auto resid_dot = [&](int axis) {
        // <dir, e_axis - proj> = dir[axis] - <dir, proj(e_axis)>
        double p1 = t1[axis], p2 = t2[axis];  // <e_axis, t_i>
        // proj(e) = x t1 + y t2 with [a b; b d][x y]^T = [p1 p2]^T
        double x = (p1 * d - p2 * b) / det;
        double y = (a * p2 - b * p1) / det;
        return dir[axis] - (x * dot4(dir, t1) + y * dot4(dir, t2));
    };
    g1 = resid_dot(fr.axis_a);
    g2 = resid_dot(fr.axis_b);
}

Frame pick_frame(const ParametricSurface& p, int chart, double u, double v) {
    std::array<double, 4> t1{}, t2{};
    p.tangents(chart, u, v, t1, t2);
    double a = dot4(t1, t1), b = dot4(t1, t2), d = dot4(t2, t2);
    double det = a * d - b * b;
    std::array<double, 4> resid_norm{};
    for (int axis = 0; axis < 4; ++axis) {
        double p1 = t1[axis], p2 = t2[axis];
        double x = (p1 * d - p2 * b) / det;
        double y = (a * p2 - b * p1) / det;
        double r2 = 1.0 - (x * p1 + y * p2);  // |e - proj|^2
        resid_norm[axis] = r2;
    }
    int best = 0, second = 1;
    for (int axis = 1; axis < 4; ++axis)
        if (resid_norm[axis] > resid_norm[best]) best = axis;
    second = best == 0 ? 1 : 0;
    for (int axis = 0; axis < 4; ++axis)
        if (axis != best && resid_norm[axis] > resid_norm[second]) second = axis;
    if (best > second) std::swap(best, second);  // deterministic order
    return {best, second};
}

// det[t1, t2, n1, n2] for the frame's residual normals; orients the frame.
double frame_orientation(const ParametricSurface& p, const Frame& fr, int chart, double u, double v) {
    std::array<double, 4> t1{}, t2{};
    p.tangents(chart, u, v, t1, t2);
    double a = dot4(t1, t1), b = dot4(t1, t2), d = dot4(t2, t2);
    double det = a * d - b * b;
    auto residual = [&](int axis) {
        double p1 = t1[axis], p2 = t2[axis];
        double x = (p1 * d - p2 * b) / det;
        double y = (a * p2 - b * p1) / det;
        std::array<double, 4> r{};
        for (int k = 0; k < 4; ++k) r[k] = (k == axis ? 1.0 : 0.0) - x * t1[k] - y * t2[k];
        return r;
    };
    auto n1 = residual(fr.axis_a), n2 = residual(fr.axis_b);
    double m[4][4];
    for (int k = 0; k < 4; ++k) {
        m[k][0] = t1[k];
        m[k][1] = t2[k];
        m[k][2] = n1[k];
        m[k][3] = n2[k];
    }
    // 4x4 determinant by cofactor expansion (doubles are fine here).
    auto det3x3 = [&](int r0, int r1, int r2, int c0, int c1, int c2) {
        return m[r0][c0] * (m[r1][c1] * m[r2][c2] - m[r1][c2] * m[r2][c1]) -
               m[r0][c1] * (m[r1][c0] * m[r2][c2] - m[r1][c2] * m[r2][c0]) +
               m[r0][c2] * (m[r1][c0] * m[r2][c1] - m[r1][c1] * m[r2][c0]);
    };
    return m[0][0] * det3x3(1, 2, 3, 1, 2, 3) - m[0][1] * det3x3(1, 2, 3, 0, 2, 3) +
           m[0][2] * det3x3(1, 2, 3, 0, 1, 3) - m[0][3] * det3x3(1, 2, 3, 0, 1, 2);
}

}  // namespace

TangentResult tangent_direction_points(const ParametricSurface& p, const std::array<double, 4>& dir,
                                       const TangentOptions& opts) {
    if (p.ambient_dim != 4) throw InputError("tangent_direction_points expects a surface in R^4");
    TangentResult out;
    const int charts = p.atlas == ParametricSurface::Atlas::FlatTorus ? 1 : 6;
    const unsigned N = opts.grid_n;

    struct Root {
        int chart;
        double u, v;
        std::array<double, 3> key;  // cube point, for dedupe
        int sign;
    };
    std::vector<Root> roots;

    for (int chart = 0; chart < charts; ++chart) {
        for (unsigned i = 0; i < N; ++i)
            for (unsigned j = 0; j < N; ++j) {
                double u0 = -1.0 + (2.0 * i + 1.0) / N;
                double v0 = -1.0 + (2.0 * j + 1.0) / N;
                Frame fr = pick_frame(p, chart, u0, v0);
                double u = u0, v = v0;
                double best = std::numeric_limits<double>::infinity();
                double best_u = u0, best_v = v0;
                for (int it = 0; it < opts.newton_iters; ++it) {
                    double g1, g2;
                    tangent_system(p, dir, fr, chart, u, v, g1, g2);
                    double err = std::abs(g1) + std::abs(g2);
                    if (err < best) {
                        best = err;
                        best_u = u;
                        best_v = v;
                    }
                    if (err < opts.newton_tol) break;
                    const double h = 1e-6;
                    double a1, a2, b1, b2, c1, c2, d1, d2;
                    tangent_system(p, dir, fr, chart, u + h, v, a1, a2);
                    tangent_system(p, dir, fr, chart, u - h, v, b1, b2);
                    tangent_system(p, dir, fr, chart, u, v + h, c1, c2);
                    tangent_system(p, dir, fr, chart, u, v - h, d1, d2);
                    double j11 = (a1 - b1) / (2 * h), j12 = (c1 - d1) / (2 * h);
                    double j21 = (a2 - b2) / (2 * h), j22 = (c2 - d2) / (2 * h);
                    double det = j11 * j22 - j12 * j21;
                    if (std::abs(det) < 1e-14) break;
                    double du = (g1 * j22 - g2 * j12) / det;
                    double dv = (j11 * g2 - j21 * g1) / det;
                    u -= du;
                    v -= dv;
                    if (std::abs(u) > 1.6 || std::abs(v) > 1.6) break;  // wandered off the chart
                }
                u = best_u;
                v = best_v;
                if (best > opts.newton_tol) continue;
                if (std::abs(u) > 1.0 + 2.0 / N || std::abs(v) > 1.0 + 2.0 / N) continue;

                // Certify the tangency: dir must be a combination of t1, t2.
                std::array<double, 4> t1{}, t2{};
                p.tangents(chart, u, v, t1, t2);
                double a = dot4(t1, t1), b = dot4(t1, t2), d = dot4(t2, t2);
                double det = a * d - b * b;
                double x = (dot4(dir, t1) * d - dot4(dir, t2) * b) / det;
                double y = (a * dot4(dir, t2) - b * dot4(dir, t1)) / det;
                double resid = 0;
                for (int k = 0; k < 4; ++k) {
                    double r = dir[k] - x * t1[k] - y * t2[k];
                    resid += r * r;
                }
                if (std::sqrt(resid) > opts.residual_tol) continue;

                // Sign: oriented Jacobian of the pairings.
                const double h = 1e-6;
                double a1, a2, b1, b2, c1, c2, d1, d2;
                tangent_system(p, dir, fr, chart, u + h, v, a1, a2);
                tangent_system(p, dir, fr, chart, u - h, v, b1, b2);
                tangent_system(p, dir, fr, chart, u, v + h, c1, c2);
                tangent_system(p, dir, fr, chart, u, v - h, d1, d2);
                double j11 = (a1 - b1) / (2 * h), j12 = (c1 - d1) / (2 * h);
                double j21 = (a2 - b2) / (2 * h), j22 = (c2 - d2) / (2 * h);
                double jdet = j11 * j22 - j12 * j21;
                double orient = frame_orientation(p, fr, chart, u, v);
                if (jdet == 0 || orient == 0) throw SolverError("degenerate tangency Jacobian");
                int sign = (jdet > 0) == (orient > 0) ? 1 : -1;

                auto cube = cube_chart_point_d(chart, u, v);
                double len = std::sqrt(cube[0] * cube[0] + cube[1] * cube[1] + cube[2] * cube[2]);
                roots.push_back({chart, u, v, {cube[0] / len, cube[1] / len, cube[2] / len}, sign});
            }
    }

    // Dedupe by position on the domain sphere.
    const double merge_tol = 3.0 / N;
    std::vector<bool> taken(roots.size(), false);
    for (std::size_t i = 0; i < roots.size(); ++i) {
        if (taken[i]) continue;
        for (std::size_t j = i + 1; j < roots.size(); ++j) {
            if (taken[j]) continue;
            double dx = roots[i].key[0] - roots[j].key[0];
            double dy = roots[i].key[1] - roots[j].key[1];
            double dz = roots[i].key[2] - roots[j].key[2];
            if (std::sqrt(dx * dx + dy * dy + dz * dz) < merge_tol) {
                if (roots[j].sign != roots[i].sign)
                    throw SolverError("tangency cluster with inconsistent signs");
                taken[j] = true;
            }
        }
        auto pos = p.position(roots[i].chart, roots[i].u, roots[i].v);
        out.points.push_back({roots[i].chart, roots[i].u, roots[i].v, pos, roots[i].sign});
        out.signed_total += roots[i].sign;
    }
    return out;
}

CurveTangentResult curve_tangent_points(const ParametricCurve& c, const std::array<double, 2>& dir,
                                        unsigned grid_n) {
    CurveTangentResult out;
    auto g = [&](double t) {
        std::array<double, 2> p{}, dp{};
        c.eval(t, p, dp);
        return dir[0] * dp[1] - dir[1] * dp[0];  // <dir_perp, c'>
    };
    double prev = g(0.0);
    for (unsigned i = 1; i <= grid_n; ++i) {
        double t1 = static_cast<double>(i) / grid_n;
        double cur = g(t1 == 1.0 ? 0.0 : t1);
        if (prev == 0.0) throw GenericityError("curve tangency at a sample point (non-generic direction)");
        if ((prev < 0) != (cur < 0)) {
            double lo = static_cast<double>(i - 1) / grid_n, hi = t1, glo = prev;
            for (int it = 0; it < 60; ++it) {
                double mid = 0.5 * (lo + hi), gm = g(mid);
                if ((gm < 0) == (glo < 0)) {
                    lo = mid;
                    glo = gm;
                } else {
                    hi = mid;
                }
            }
            double root = 0.5 * (lo + hi);
            int sign = cur > prev ? 1 : -1;  // sign of g' at the root
            out.params.push_back(root);
            out.signs.push_back(sign);
            out.signed_total += sign;
        }
        prev = cur;
    }
    return out;
}

}  // namespace multibord
