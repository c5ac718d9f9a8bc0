#ifndef MULTIBORD_MP_ASSEMBLE_HPP
#define MULTIBORD_MP_ASSEMBLE_HPP

#include "multibord/geom/curve.hpp"
#include "multibord/geom/tri_intersect.hpp"
#include "multibord/topo/cycles.hpp"

namespace multibord {

// Closed component of the double-locus preimage on the domain surface.
// Walks alternate between domain-edge crossings and interior partner
// switches; exact endpoint keys guarantee the chaining.
struct PreimageCurve {
    std::vector<DomainPos> points;   // ordered around the loop
    std::size_t piece_count = 0;     // sheet pieces consumed (conservation)

    DomainLoop edge_crossings() const;  // E-type points only, in loop order
};

// Assemble the per-sheet chords of the double segments into closed curves.
// Throws GenericityError when an open chain remains.
std::vector<PreimageCurve> assemble_preimage_curves(const ImmersedTriMesh& m,
                                                    const std::vector<DoubleSegment>& segments);

// F2 homology class of the full double-locus preimage cycle.
CycleClass double_locus_preimage_class(const ImmersedTriMesh& m,
                                       const std::vector<DoubleSegment>& segments);

// Signed totals for 0-dimensional loci.
struct SignedCount {
    Int ordered_total = 0;      // sum of signs over ordered records
    Int unordered_total = 0;    // ordered / (k-1)! in even codim, mod-2 count otherwise
    bool mod2 = false;
    std::size_t geometric_points = 0;
};

SignedCount signed_count_r4(const std::vector<OrderedDoublePoint>& records);
SignedCount signed_count_curve(const std::vector<CurveCrossing>& records);
SignedCount signed_count_triples(const std::vector<TriplePoint>& points);

// Ordered-record orbit laws: equal signs within an orbit in even codimension,
// opposite in odd. Returns a human-readable violation list (empty = pass).
std::vector<std::string> check_orbit_signs_r4(const std::vector<OrderedDoublePoint>& records);
std::vector<std::string> check_orbit_signs_curve(const std::vector<CurveCrossing>& records);

}  // namespace multibord

#endif
