#include "multibord/topo/cycles.hpp"

#include <sstream>

#include "multibord/errors.hpp"

namespace multibord {

std::string CycleClass::to_string() const {
    std::ostringstream os;
    os << "(";
    for (std::size_t i = 0; i < coords.size(); ++i) {
        if (i) os << ",";
        os << int(coords[i]);
    }
    os << ")";
    return os.str();
}

namespace {

// The two crossings bound a run inside one triangle; find it.
std::size_t common_triangle(const SurfaceComplex& c, std::size_t ea, std::size_t eb) {
    for (std::size_t t : c.edge_tris[ea])
        if (c.tri_has_edge(t, eb)) return t;
    throw InputError("consecutive crossings do not share a triangle");
}

void flip_edge(std::vector<std::uint8_t>& chain, std::size_t e) { chain[e] ^= 1; }

}  // namespace

std::vector<std::uint8_t> straighten_to_chain(const SurfaceComplex& c,
                                              const std::vector<DomainLoop>& loops) {
    std::vector<std::uint8_t> chain(c.edges.size(), 0);
    for (const auto& loop : loops) {
        const auto& cr = loop.crossings;
        if (cr.empty()) continue;  // contractible inside one triangle
        for (std::size_t i = 0; i < cr.size(); ++i) {
            const DomainCrossing& a = cr[i];
            const DomainCrossing& b = cr[(i + 1) % cr.size()];
            if (a.edge == b.edge) continue;  // in-and-out: snaps cancel
            std::size_t t = common_triangle(c, a.edge, b.edge);
            std::size_t va = c.edges[a.edge][0];  // snap to the lower-id endpoint
            std::size_t vb = c.edges[b.edge][0];
            if (va == vb) continue;
            flip_edge(chain, c.edge_in_tri(t, va, vb));
        }
    }
    return chain;
}

CycleClass pair_chain_with_cocycles(const SurfaceComplex& c, const std::vector<std::uint8_t>& chain) {
    // Cycle certificate: every vertex meets an even number of chain edges.
    std::vector<std::uint8_t> parity(c.n_vertices, 0);
    for (std::size_t e = 0; e < chain.size(); ++e)
        if (chain[e]) {
            parity[c.edges[e][0]] ^= 1;
            parity[c.edges[e][1]] ^= 1;
        }
    for (std::size_t v = 0; v < parity.size(); ++v)
        if (parity[v]) throw InputError("edge chain is not a cycle: odd incidence at a vertex");

    CycleClass out;
    out.names = c.cocycle_names;
    for (const auto& phi : c.cocycles) {
        std::uint8_t s = 0;
        for (std::size_t e = 0; e < chain.size(); ++e) s ^= (chain[e] & phi[e]);
        out.coords.push_back(s);
    }
    return out;
}

CycleClass homology_class(const SurfaceComplex& c, const std::vector<DomainLoop>& loops) {
    return pair_chain_with_cocycles(c, straighten_to_chain(c, loops));
}

CycleClass homology_class_chain(const SurfaceComplex& c, const std::vector<std::size_t>& edge_chain) {
    std::vector<std::uint8_t> chain(c.edges.size(), 0);
    for (std::size_t e : edge_chain) {
        if (e >= chain.size()) throw InputError("edge id out of range");
        chain[e] ^= 1;
    }
    return pair_chain_with_cocycles(c, chain);
}

}  // namespace multibord
