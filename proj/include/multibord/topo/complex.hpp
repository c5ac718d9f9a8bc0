#ifndef MULTIBORD_TOPO_COMPLEX_HPP
#define MULTIBORD_TOPO_COMPLEX_HPP

#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "multibord/geom/vec.hpp"

namespace multibord {

// Combinatorial closed surface with an optional chart atlas and a fixed
// F2 cocycle basis for H^1. Corner order of a triangle carries its
// orientation when the surface is orientable.
//
// Built-in atlases: the flat unit-square torus (one chart, coordinates may
// exceed [0,1) locally to stay continuous per triangle), the cube sphere
// (six square charts, no polar degeneracies), and its antipodal quotient
// for RP^2 domains. H^1 coordinates pair edge chains with winding cocycles
// (torus) or the deck cocycle (RP^2), so they are comparable across grid
// resolutions.
struct SurfaceComplex {
    std::size_t n_vertices = 0;
    std::vector<std::array<std::size_t, 3>> tris;

    // Derived combinatorics (built by finalize()).
    std::vector<std::array<std::size_t, 2>> edges;        // sorted endpoint pairs, lex order
    std::vector<std::array<std::size_t, 3>> tri_edges;    // edge k joins corners k, k+1 mod 3
    std::vector<std::array<std::size_t, 2>> edge_tris;    // the two incident triangles
    std::map<std::array<std::size_t, 2>, std::size_t> edge_index;

    bool orientable = true;
    std::vector<int> tri_orientation;  // +-1 per triangle, meaningful when orientable

    // Atlas (present on grid-built complexes).
    int n_charts = 0;
    std::vector<int> tri_chart;                  // chart per triangle
    std::vector<std::array<Vec2Q, 3>> tri_uv;    // chart coordinates per corner

    // F2 cocycles spanning H^1; evaluating a chain against them gives its class.
    std::vector<std::vector<std::uint8_t>> cocycles;
    std::vector<std::string> cocycle_names;

    void finalize();                     // derive edges/adjacency; throws on a non-surface
    void check_closed_surface() const;   // every edge in 2 triangles, links are single cycles

    std::size_t edge_of(std::size_t a, std::size_t b) const;
    std::size_t tri_across(std::size_t tri, std::size_t edge) const;
    bool tri_has_edge(std::size_t tri, std::size_t edge) const;
    // Edge of `tri` joining the two given vertices of it; throws if absent.
    std::size_t edge_in_tri(std::size_t tri, std::size_t va, std::size_t vb) const;
};

// N x N grid on [0,1)^2, each cell split along its main diagonal; vertex
// coordinates offset by half a cell so axis-aligned zero sets avoid vertices.
SurfaceComplex make_torus_complex(unsigned n);

// Cube sphere: 6 face charts with grid resolution n per face, oriented
// outward-consistently. Chart c and point (u,v) map to a cube point.
SurfaceComplex make_cube_sphere_complex(unsigned n);

// Antipodal quotient of the cube sphere: an RP^2 complex whose deck cocycle
// detects the nonzero class of H_1(RP^2; F2). n must be even.
SurfaceComplex make_rp2_complex(unsigned n);

// Chart geometry of the cube sphere: chart point to cube surface point.
VecQ cube_chart_point(int chart, const Vec2Q& uv);
std::array<double, 3> cube_chart_point_d(int chart, double u, double v);
// Antipode of a cube chart point: chart pairs 0/1, 2/3, 4/5 with (u,v) -> (-v,-u).
std::pair<int, Vec2Q> cube_chart_antipode(int chart, const Vec2Q& uv);

}  // namespace multibord

#endif
