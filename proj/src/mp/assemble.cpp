#include "multibord/mp/assemble.hpp"

#include <map>
#include <tuple>

namespace multibord {

DomainLoop PreimageCurve::edge_crossings() const {
    DomainLoop loop;
    for (const auto& p : points)
        if (p.on_edge) loop.crossings.push_back({p.edge, p.edge_t});
    return loop;
}

namespace {

// Exact matching key for a piece end: edge crossings match across domain
// triangles, interior partner switches match across partner triangles.
using EndKey = std::tuple<int, std::size_t, Rat, Rat, Rat>;

EndKey key_of(const DomainPos& pos) {
    if (pos.on_edge) return {0, pos.edge, pos.edge_t, Rat(0), Rat(0)};
    return {1, pos.tri, pos.bary[0], pos.bary[1], pos.bary[2]};
}

struct Piece {
    DomainPos end[2];
    bool used = false;
};

}  // namespace

std::vector<PreimageCurve> assemble_preimage_curves(const ImmersedTriMesh& m,
                                                    const std::vector<DoubleSegment>& segments) {
    (void)m;
    std::vector<Piece> pieces;
    pieces.reserve(2 * segments.size());
    for (const auto& s : segments) {
        pieces.push_back({{s.e0.on_a, s.e1.on_a}, false});
        pieces.push_back({{s.e0.on_b, s.e1.on_b}, false});
    }

    std::map<EndKey, std::vector<std::pair<std::size_t, int>>> by_key;
    for (std::size_t i = 0; i < pieces.size(); ++i)
        for (int e = 0; e < 2; ++e) by_key[key_of(pieces[i].end[e])].push_back({i, e});
    for (const auto& [key, ends] : by_key)
        if (ends.size() != 2)
            throw GenericityError("open chain in double-locus assembly (endpoint multiplicity " +
                                  std::to_string(ends.size()) + ")");

    std::vector<PreimageCurve> curves;
    for (std::size_t start = 0; start < pieces.size(); ++start) {
        if (pieces[start].used) continue;
        PreimageCurve curve;
        std::size_t pi = start;
        int enter = 0;
        do {
            pieces[pi].used = true;
            curve.points.push_back(pieces[pi].end[enter]);
            ++curve.piece_count;
            const DomainPos& exit_pos = pieces[pi].end[1 - enter];
            const auto& mates = by_key.at(key_of(exit_pos));
            auto [qi, qe] = mates[0].first == pi && mates[0].second == 1 - enter ? mates[1] : mates[0];
            pi = qi;
            enter = qe;
        } while (!(pi == start && enter == 0));
        curves.push_back(std::move(curve));
    }
    return curves;
}

CycleClass double_locus_preimage_class(const ImmersedTriMesh& m,
                                       const std::vector<DoubleSegment>& segments) {
    auto curves = assemble_preimage_curves(m, segments);
    std::vector<DomainLoop> loops;
    for (const auto& c : curves) loops.push_back(c.edge_crossings());
    return homology_class(m.domain, loops);
}

SignedCount signed_count_r4(const std::vector<OrderedDoublePoint>& records) {
    SignedCount out;
    std::map<VecQ, std::size_t> points;
    for (const auto& r : records) {
        out.ordered_total += r.sign;
        points[r.ambient]++;
    }
    out.geometric_points = points.size();
    out.unordered_total = out.ordered_total;  // (k-1)! = 1 for k = 2
    return out;
}

SignedCount signed_count_curve(const std::vector<CurveCrossing>& records) {
    SignedCount out;
    out.mod2 = true;  // odd codimension
    std::map<std::pair<Rat, Rat>, std::size_t> points;
    for (const auto& r : records) {
        out.ordered_total += r.sign;
        points[{std::min(r.param_a, r.param_b), std::max(r.param_a, r.param_b)}]++;
    }
    out.geometric_points = points.size();
    out.unordered_total = Int(points.size() % 2);
    return out;
}

SignedCount signed_count_triples(const std::vector<TriplePoint>& points) {
    SignedCount out;
    out.mod2 = true;
    out.geometric_points = points.size();
    out.ordered_total = Int(6 * points.size());  // six unsigned ordered records each
    out.unordered_total = Int(points.size() % 2);
    return out;
}

std::vector<std::string> check_orbit_signs_r4(const std::vector<OrderedDoublePoint>& records) {
    std::vector<std::string> violations;
    std::map<std::pair<std::size_t, std::size_t>, int> sign_of;
    for (const auto& r : records) sign_of[{r.tri_a, r.tri_b}] = r.sign;
    for (const auto& r : records) {
        auto it = sign_of.find({r.tri_b, r.tri_a});
        if (it == sign_of.end()) {
            violations.push_back("missing swapped record for (" + std::to_string(r.tri_a) + "," +
                                 std::to_string(r.tri_b) + ")");
        } else if (it->second != r.sign) {
            violations.push_back("orbit signs differ in even codimension at (" +
                                 std::to_string(r.tri_a) + "," + std::to_string(r.tri_b) + ")");
        }
    }
    return violations;
}

std::vector<std::string> check_orbit_signs_curve(const std::vector<CurveCrossing>& records) {
    std::vector<std::string> violations;
    std::map<std::pair<Rat, Rat>, int> sign_of;
    for (const auto& r : records) sign_of[{r.param_a, r.param_b}] = r.sign;
    for (const auto& r : records) {
        auto it = sign_of.find({r.param_b, r.param_a});
        if (it == sign_of.end()) {
            violations.push_back("missing swapped record at parameter pair");
        } else if (it->second != -r.sign) {
            violations.push_back("orbit signs must be opposite in odd codimension");
        }
    }
    return violations;
}

}  // namespace multibord
