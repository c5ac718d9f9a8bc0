#ifndef MULTIBORD_GEOM_PARAMETRIC_HPP
#define MULTIBORD_GEOM_PARAMETRIC_HPP

#include <array>
#include <functional>
#include <string>

#include "multibord/topo/complex.hpp"

namespace multibord {

// Smooth chart-based evaluator for fold/tangent solving. PL meshes handle
// intersection enumeration; these handle the differential-geometry side.
struct ParametricSurface {
    enum class Atlas { FlatTorus, CubeSphere };

    std::string name;
    Atlas atlas = Atlas::CubeSphere;
    unsigned ambient_dim = 3;
    bool even_on_sphere = false;  // factors through the antipodal map (RP^2 domain)
    double fd_step = 1e-6;        // central-difference step for the differential

    std::function<std::array<double, 4>(int chart, double u, double v)> eval;

    std::array<double, 4> position(int chart, double u, double v) const { return eval(chart, u, v); }
    // Central-difference tangents d/du, d/dv.
    void tangents(int chart, double u, double v, std::array<double, 4>& du,
                  std::array<double, 4>& dv) const;

    // Minimum singular value of the differential over an n x n sample grid
    // per chart: the full-rank certificate.
    double immersion_certificate(unsigned n) const;

    // The grid complex matching this surface's atlas (quotient for even maps).
    SurfaceComplex domain_complex(unsigned n) const;
};

ParametricSurface builtin_surface(const std::string& name);
// torus(R=2,r=1) on the flat torus; sphere, whitney, boy on the cube sphere.

// Planar closed curve with derivative, parameter t in [0,1).
struct ParametricCurve {
    std::string name;
    std::function<void(double t, std::array<double, 2>& p, std::array<double, 2>& dp)> eval;
};

ParametricCurve builtin_parametric_curve(const std::string& name);

// Apery's Boy surface over cartesian unit-sphere coordinates; even map.
std::array<double, 3> apery_boy(double x, double y, double z);

}  // namespace multibord

#endif
