#ifndef MULTIBORD_GEOM_MESH_HPP
#define MULTIBORD_GEOM_MESH_HPP

#include <cstdint>
#include <functional>
#include <string>

#include "multibord/topo/complex.hpp"

namespace multibord {

// Triangulated closed surface mapped into R^3 or R^4 with exact rational
// vertex coordinates. The domain complex carries orientability and, for
// built-in domains, the chart atlas and H^1 cocycles.
struct ImmersedTriMesh {
    SurfaceComplex domain;
    unsigned ambient_dim = 3;
    std::vector<VecQ> coords;  // one ambient point per domain vertex

    void validate_basic() const;  // closed domain, nondegenerate mapped triangles

    VecQ corner(std::size_t tri, int k) const { return coords[domain.tris[tri][k]]; }
    // Oriented tangent pair (c1-c0, c2-c0) times the triangle orientation flag.
    std::pair<VecQ, VecQ> tangent_basis(std::size_t tri) const;

    ImmersedTriMesh reversed() const;  // flips every triangle orientation flag
    // Ambient mirror image (first coordinate negated). Unlike a domain
    // orientation flip, which negates both tangent frames of every record
    // and so cancels, the mirror genuinely flips intersection signs.
    ImmersedTriMesh mirrored() const;
};

ImmersedTriMesh perturb_generic(const ImmersedTriMesh& m, std::uint64_t seed, const Rat& magnitude);

Rat mesh_bbox_extent(const ImmersedTriMesh& m);

// Mesh built by evaluating a map at the vertices of a built-in grid complex,
// snapping each coordinate to denominator 2^snap_bits.
using ChartEvaluator = std::function<std::array<double, 4>(int chart, double u, double v)>;
ImmersedTriMesh mesh_from_complex(SurfaceComplex domain, unsigned ambient_dim, const ChartEvaluator& f,
                                  unsigned snap_bits);

// The algebraic Whitney sphere on the cube boundary: W(a,b,c) = (ac, bc, a, b),
// evaluated exactly on the cube-sphere grid. One double point, |e| = 2.
ImmersedTriMesh whitney_mesh(unsigned n);

// Round torus (radii R > r > 0) sampled on the flat-torus grid complex.
ImmersedTriMesh torus_mesh(unsigned n, double R = 2.0, double r = 1.0);

// Round sphere in the x1x2x3-plane of R^(3 or 4).
ImmersedTriMesh sphere_mesh(unsigned n, unsigned ambient_dim);

// Boy surface on the antipodal-quotient complex (Apery's trigonometric
// parametrization rewritten over cartesian sphere coordinates).
ImmersedTriMesh boy_mesh(unsigned n);

// Two linked/crossing tori as one disconnected domain (double-curve demo).
ImmersedTriMesh crossing_tori_mesh(unsigned n);

// File formats: OFF (R^3) and the JSON mesh schema (R^3/R^4, rational strings).
ImmersedTriMesh load_mesh_off(const std::string& path);
ImmersedTriMesh load_mesh_json(const std::string& path);
void save_mesh_json(const ImmersedTriMesh& m, const std::string& path);

}  // namespace multibord

#endif
