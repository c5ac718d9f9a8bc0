#ifndef MULTIBORD_GEOM_FOLD_HPP
#define MULTIBORD_GEOM_FOLD_HPP

#include "multibord/geom/parametric.hpp"
#include "multibord/topo/cycles.hpp"

namespace multibord {

struct FoldOptions {
    unsigned grid_n = 64;
    double zero_tol = 1e-10;       // relative vertex-zero threshold (resolution failure)
    double bisect_tol = 1e-9;      // edge-crossing refinement, fraction of chart size
};

// Fold locus of a surface in R^3 for viewing direction dir: the zero curve of
// g = <dir, normal>, extracted by sign-change tracing on the atlas grid
// complex and returned as closed loops with their F2 homology classes.
struct FoldResult {
    SurfaceComplex complex;
    std::vector<DomainLoop> loops;
    std::vector<CycleClass> loop_classes;
    CycleClass total_class;
    // Chart polylines for plotting: per loop, (chart, u, v) per crossing.
    std::vector<std::vector<std::array<double, 3>>> polylines;
};

FoldResult fold_locus(const ParametricSurface& p, const std::array<double, 3>& dir,
                      const FoldOptions& opts = {});

struct TangentOptions {
    unsigned grid_n = 48;
    // Stop threshold sits above the finite-difference noise floor of the
    // pairing evaluations; the residual certificate below is the real gate.
    double newton_tol = 1e-9;
    int newton_iters = 40;
    double residual_tol = 1e-7;   // tangency certificate
};

// Isolated points of a surface in R^4 whose tangent plane contains dir,
// Newton-refined from a grid scan, signed by the oriented Jacobian of the
// two normal pairings.
struct TangentPoint {
    int chart;
    double u, v;
    std::array<double, 4> ambient;
    int sign;
};

struct TangentResult {
    std::vector<TangentPoint> points;
    long signed_total = 0;
};

TangentResult tangent_direction_points(const ParametricSurface& p, const std::array<double, 4>& dir,
                                       const TangentOptions& opts = {});

// Curve version: parameters where the unit tangent is +-dir, with the sign of
// d/dt <dir_perp, c'(t)> at each root. Total parity is the mod-2 invariant.
struct CurveTangentResult {
    std::vector<double> params;
    std::vector<int> signs;
    long signed_total = 0;
};

CurveTangentResult curve_tangent_points(const ParametricCurve& c, const std::array<double, 2>& dir,
                                        unsigned grid_n = 4096);

}  // namespace multibord

#endif
