#include "multibord/geom/parametric.hpp"

#include <cmath>

#include "multibord/errors.hpp"

namespace multibord {

namespace {
constexpr double kTau = 6.283185307179586476925286766559;

std::array<double, 3> normalize3(const std::array<double, 3>& p) {
    double len = std::sqrt(p[0] * p[0] + p[1] * p[1] + p[2] * p[2]);
    return {p[0] / len, p[1] / len, p[2] / len};
}
}  // namespace

std::array<double, 3> apery_boy(double x, double y, double z) {
    // All terms are even in (x,y,z), so the map factors through RP^2.
    const double r2 = x * x + y * y;
    const double s2 = std::sqrt(2.0);
    double denom;
    if (r2 < 1e-30) {
        denom = 2.0;  // limit at the poles
    } else {
        denom = 2.0 - 2.0 * s2 * z * y * (3.0 * x * x - y * y) / r2;
    }
    double nx = s2 * (x * x - y * y) + 2.0 * x * z;
    double ny = 2.0 * s2 * x * y - 2.0 * y * z;
    double nz = 3.0 * r2;
    return {nx / denom, ny / denom, nz / denom};
}

void ParametricSurface::tangents(int chart, double u, double v, std::array<double, 4>& du,
                                 std::array<double, 4>& dv) const {
    const double h = fd_step;
    auto pu1 = eval(chart, u + h, v), pu0 = eval(chart, u - h, v);
    auto pv1 = eval(chart, u, v + h), pv0 = eval(chart, u, v - h);
    for (int k = 0; k < 4; ++k) {
        du[k] = (pu1[k] - pu0[k]) / (2 * h);
        dv[k] = (pv1[k] - pv0[k]) / (2 * h);
    }
}

double ParametricSurface::immersion_certificate(unsigned n) const {
    const int charts = atlas == Atlas::FlatTorus ? 1 : 6;
    double min_sv = std::numeric_limits<double>::infinity();
    for (int c = 0; c < charts; ++c)
        for (unsigned i = 0; i < n; ++i)
            for (unsigned j = 0; j < n; ++j) {
                double u, v;
                if (atlas == Atlas::FlatTorus) {
                    u = (i + 0.5) / n;
                    v = (j + 0.5) / n;
                } else {
                    u = -1.0 + (2.0 * i + 1.0) / n;
                    v = -1.0 + (2.0 * j + 1.0) / n;
                }
                std::array<double, 4> du{}, dv{};
                tangents(c, u, v, du, dv);
                double a = 0, b = 0, d = 0;
                for (int k = 0; k < 4; ++k) {
                    a += du[k] * du[k];
                    b += du[k] * dv[k];
                    d += dv[k] * dv[k];
                }
                double tr = a + d;
                double disc = std::sqrt(std::max(0.0, (a - d) * (a - d) + 4 * b * b));
                double lam = 0.5 * (tr - disc);
                min_sv = std::min(min_sv, std::sqrt(std::max(0.0, lam)));
            }
    return min_sv;
}

SurfaceComplex ParametricSurface::domain_complex(unsigned n) const {
    if (atlas == Atlas::FlatTorus) return make_torus_complex(n);
    if (even_on_sphere) return make_rp2_complex(n % 2 ? n + 1 : n);
    return make_cube_sphere_complex(n);
}

ParametricSurface builtin_surface(const std::string& name) {
    ParametricSurface s;
    s.name = name;
    if (name == "torus") {
        s.atlas = ParametricSurface::Atlas::FlatTorus;
        s.ambient_dim = 3;
        s.eval = [](int, double su, double sv) -> std::array<double, 4> {
            const double R = 2.0, r = 1.0;
            double cs = std::cos(kTau * su), sn = std::sin(kTau * su);
            double ct = std::cos(kTau * sv), st = std::sin(kTau * sv);
            return {(R + r * ct) * cs, (R + r * ct) * sn, r * st, 0.0};
        };
        return s;
    }
    if (name == "sphere") {
        s.ambient_dim = 3;
        s.eval = [](int chart, double u, double v) -> std::array<double, 4> {
            auto p = normalize3(cube_chart_point_d(chart, u, v));
            return {p[0], p[1], p[2], 0.0};
        };
        return s;
    }
    if (name == "whitney") {
        s.ambient_dim = 4;
        s.eval = [](int chart, double u, double v) -> std::array<double, 4> {
            auto p = normalize3(cube_chart_point_d(chart, u, v));
            return {p[0] * p[2], p[1] * p[2], p[0], p[1]};
        };
        return s;
    }
    if (name == "boy") {
        s.ambient_dim = 3;
        s.even_on_sphere = true;
        s.eval = [](int chart, double u, double v) -> std::array<double, 4> {
            auto p = normalize3(cube_chart_point_d(chart, u, v));
            auto b = apery_boy(p[0], p[1], p[2]);
            return {b[0], b[1], b[2], 0.0};
        };
        return s;
    }
    throw InputError("unknown builtin parametric surface: " + name);
}

ParametricCurve builtin_parametric_curve(const std::string& name) {
    ParametricCurve c;
    c.name = name;
    if (name == "circle") {
        c.eval = [](double t, std::array<double, 2>& p, std::array<double, 2>& dp) {
            p = {std::cos(kTau * t), std::sin(kTau * t)};
            dp = {-kTau * std::sin(kTau * t), kTau * std::cos(kTau * t)};
        };
        return c;
    }
    if (name == "figure8") {
        c.eval = [](double t, std::array<double, 2>& p, std::array<double, 2>& dp) {
            p = {std::sin(2 * kTau * t), std::sin(kTau * t)};
            dp = {2 * kTau * std::cos(2 * kTau * t), kTau * std::cos(kTau * t)};
        };
        return c;
    }
    if (name == "limacon") {
        c.eval = [](double t, std::array<double, 2>& p, std::array<double, 2>& dp) {
            double a = kTau * t;
            double r = 1 + 2 * std::cos(a), dr = -2 * std::sin(a);
            p = {r * std::cos(a), r * std::sin(a)};
            dp = {kTau * (dr * std::cos(a) - r * std::sin(a)), kTau * (dr * std::sin(a) + r * std::cos(a))};
        };
        return c;
    }
    throw InputError("unknown builtin parametric curve: " + name);
}

}  // namespace multibord
