#ifndef MULTIBORD_TOPO_CYCLES_HPP
#define MULTIBORD_TOPO_CYCLES_HPP

#include "multibord/topo/complex.hpp"

namespace multibord {

// A point where a curve on the domain crosses a complex edge; t parametrizes
// from the lower-id endpoint.
struct DomainCrossing {
    std::size_t edge = 0;
    Rat t;
};

// Closed domain curve recorded by its ordered edge crossings. Consecutive
// crossings bound a run inside a single triangle.
struct DomainLoop {
    std::vector<DomainCrossing> crossings;
};

// F2 coordinates in the complex's cocycle basis.
struct CycleClass {
    std::vector<std::uint8_t> coords;
    std::vector<std::string> names;

    bool is_zero() const {
        for (auto c : coords)
            if (c) return false;
        return true;
    }
    bool operator==(const CycleClass& o) const { return coords == o.coords; }
    std::string to_string() const;
};

// Straighten loops onto the 1-skeleton (snap each crossing to the lower-id
// endpoint of its edge, connect snaps inside each triangle) and reduce the
// resulting F2 edge chain. Throws InputError when the chain is not a cycle.
CycleClass homology_class(const SurfaceComplex& c, const std::vector<DomainLoop>& loops);

// Same reduction for a raw F2 edge chain (edge ids, multiplicity mod 2).
CycleClass homology_class_chain(const SurfaceComplex& c, const std::vector<std::size_t>& edge_chain);

// The straightened chain itself (for oracle cross-checks).
std::vector<std::uint8_t> straighten_to_chain(const SurfaceComplex& c,
                                              const std::vector<DomainLoop>& loops);

CycleClass pair_chain_with_cocycles(const SurfaceComplex& c, const std::vector<std::uint8_t>& chain);

}  // namespace multibord

#endif
