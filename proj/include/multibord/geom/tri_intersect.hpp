#ifndef MULTIBORD_GEOM_TRI_INTERSECT_HPP
#define MULTIBORD_GEOM_TRI_INTERSECT_HPP

#include <cstdint>

#include "multibord/geom/mesh.hpp"

namespace multibord {

// Position of a locus point on the domain: barycentric in a triangle, with
// edge provenance when it lies on a domain edge (exact matching key for
// curve assembly across triangle boundaries).
struct DomainPos {
    std::size_t tri = 0;
    std::array<Rat, 3> bary{};  // in the triangle's corner order
    bool on_edge = false;
    std::size_t edge = 0;  // global domain edge id
    Rat edge_t;            // parameter from the lower-id endpoint
};

// One transverse segment of the double locus in R^3, for an unordered
// triangle pair (tri_a < tri_b), with both preimages at both endpoints.
struct DoubleSegment {
    std::size_t tri_a = 0, tri_b = 0;
    struct End {
        VecQ ambient;
        DomainPos on_a, on_b;
    };
    End e0, e1;
};

std::vector<DoubleSegment> mesh_double_locus_r3(const ImmersedTriMesh& m, int threads = 0);

// Isolated point where three pairwise non-adjacent triangles meet.
struct TriplePoint {
    std::array<std::size_t, 3> tris;  // ascending
    VecQ ambient;
    std::array<DomainPos, 3> pre;  // preimage per triangle, same order
};

std::vector<TriplePoint> mesh_triple_points_r3(const ImmersedTriMesh& m, int threads = 0);
std::vector<TriplePoint> triple_points_from_segments(const ImmersedTriMesh& m,
                                                     const std::vector<DoubleSegment>& segments,
                                                     int threads = 0);

// Isolated ordered double points in R^4, signed by det[u_a, v_a, u_b, v_b]
// of the oriented tangent pairs. Both orders of a geometric point appear and
// carry equal signs (even codimension).
struct OrderedDoublePoint {
    std::size_t tri_a = 0, tri_b = 0;
    VecQ ambient;
    DomainPos pre_a, pre_b;
    int sign = 0;
};

std::vector<OrderedDoublePoint> mesh_double_points_r4(const ImmersedTriMesh& m, int threads = 0);

// Signed count of intersections between the mesh and a seeded small normal
// displacement of it, over ordered non-adjacent simplex pairs. Stable across
// two displacement scales before it is accepted.
struct PushoffResult {
    long signed_count = 0;
    std::uint64_t seed = 0;
    Rat delta;  // accepted displacement scale
};

PushoffResult pushoff_euler_number(const ImmersedTriMesh& m, std::uint64_t seed, int threads = 0);

// Candidate pruning grid (exactness is restored by the rational predicates).
std::vector<std::pair<std::size_t, std::size_t>> candidate_pairs(const ImmersedTriMesh& a,
                                                                 const ImmersedTriMesh& b,
                                                                 bool skip_adjacent, bool ordered,
                                                                 int threads = 0);

// Enumerator core on explicit triangles (no mesh bookkeeping): the common
// point of three pairwise transverse triangles in R^3, if one exists.
std::optional<VecQ> triple_point_of_triangles(const std::array<VecQ, 3>& A,
                                              const std::array<VecQ, 3>& B,
                                              const std::array<VecQ, 3>& C);

}  // namespace multibord

#endif
