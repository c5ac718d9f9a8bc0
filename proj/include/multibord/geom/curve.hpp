#ifndef MULTIBORD_GEOM_CURVE_HPP
#define MULTIBORD_GEOM_CURVE_HPP

#include <cstdint>
#include <vector>

#include "multibord/geom/vec.hpp"

namespace multibord {

// Closed polygonal curve in the plane: PL model of an immersion S^1 -> R^2.
struct ImmersedPolyCurve {
    std::vector<Vec2Q> vertices;  // cyclic

    std::size_t size() const { return vertices.size(); }
    void validate_basic() const;  // >= 3 vertices, consecutive vertices distinct
};

// Ordered double-point record for a curve. Parameters are segment index plus
// exact fraction along the segment, in [0, n).
struct CurveCrossing {
    Rat param_a, param_b;  // ordered preimage pair
    Vec2Q ambient;
    int sign;  // det[dir_a, dir_b] against the plane orientation
};

// Deterministic seeded perturbation: every coordinate moves by at most
// magnitude * bbox_extent, snapped to exact rationals. Retries with derived
// seeds until the basic general-position certificate passes.
ImmersedPolyCurve perturb_generic(const ImmersedPolyCurve& c, std::uint64_t seed, const Rat& magnitude);

// All transverse crossings of non-adjacent segments, two ordered records per
// geometric crossing, lexicographically sorted by (param_a, param_b).
// Throws GenericityError on non-generic contact (endpoint on segment,
// collinear overlap).
std::vector<CurveCrossing> segment_crossings(const ImmersedPolyCurve& c);

// Built-in sampled curves (vertices snapped to rationals).
ImmersedPolyCurve builtin_curve(const std::string& name, std::size_t n_vertices);

}  // namespace multibord

#endif
