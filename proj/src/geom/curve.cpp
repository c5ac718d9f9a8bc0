#include "multibord/geom/curve.hpp"

#include <algorithm>
#include <cmath>

#include "multibord/errors.hpp"
#include "multibord/geom/prng.hpp"

namespace multibord {

void ImmersedPolyCurve::validate_basic() const {
    if (vertices.size() < 3) throw InputError("polygonal curve needs at least 3 vertices");
    for (std::size_t i = 0; i < vertices.size(); ++i) {
        const Vec2Q& a = vertices[i];
        const Vec2Q& b = vertices[(i + 1) % vertices.size()];
        if (a[0] == b[0] && a[1] == b[1]) throw InputError("consecutive curve vertices coincide");
    }
}

namespace {

Rat orient2(const Vec2Q& a, const Vec2Q& b, const Vec2Q& c) {
    return det2(b[0] - a[0], c[0] - a[0], b[1] - a[1], c[1] - a[1]);
}

Rat bbox_extent(const std::vector<Vec2Q>& pts) {
    Rat ext = 0;
    for (int k = 0; k < 2; ++k) {
        Rat lo = pts[0][k], hi = pts[0][k];
        for (const auto& p : pts) {
            lo = std::min(lo, p[k]);
            hi = std::max(hi, p[k]);
        }
        ext = std::max(ext, Rat(hi - lo));
    }
    return ext;
}

// Full exactness pass over non-adjacent segment pairs; throws on contact.
void certify_generic(const ImmersedPolyCurve& c) {
    c.validate_basic();
    (void)segment_crossings(c);
}

}  // namespace

ImmersedPolyCurve perturb_generic(const ImmersedPolyCurve& c, std::uint64_t seed, const Rat& magnitude) {
    if (magnitude <= 0) throw InputError("perturbation magnitude must be positive");
    c.validate_basic();
    Rat scale = magnitude * bbox_extent(c.vertices);
    const int max_attempts = 8;
    for (int attempt = 0; attempt < max_attempts; ++attempt) {
        Prng rng(Prng::derive(seed, static_cast<std::uint64_t>(attempt)));
        ImmersedPolyCurve out = c;
        for (auto& v : out.vertices) {
            v[0] += rng.next_signed_unit() * scale;
            v[1] += rng.next_signed_unit() * scale;
        }
        try {
            certify_generic(out);
            return out;
        } catch (const Error&) {
            continue;
        }
    }
    throw GenericityError("perturbation failed to reach general position (ill-conditioned input)");
}

std::vector<CurveCrossing> segment_crossings(const ImmersedPolyCurve& c) {
    c.validate_basic();
    const std::size_t n = c.vertices.size();
    std::vector<CurveCrossing> out;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            // Adjacent segments share a vertex; skip them (diagonal collar).
            if (j == i + 1 || (i == 0 && j == n - 1)) continue;
            const Vec2Q& p0 = c.vertices[i];
            const Vec2Q& p1 = c.vertices[(i + 1) % n];
            const Vec2Q& q0 = c.vertices[j];
            const Vec2Q& q1 = c.vertices[(j + 1) % n];
            Rat o1 = orient2(p0, p1, q0);
            Rat o2 = orient2(p0, p1, q1);
            Rat o3 = orient2(q0, q1, p0);
            Rat o4 = orient2(q0, q1, p1);
            int s1 = rat_sign(o1), s2 = rat_sign(o2), s3 = rat_sign(o3), s4 = rat_sign(o4);
            if (s1 == 0 || s2 == 0 || s3 == 0 || s4 == 0) {
                // Disjoint collinear configurations are harmless; contact is not.
                if (s1 == 0 && s2 == 0) {
                    // Segments on one line: overlap check via 1D intervals.
                    int axis = p0[0] == p1[0] ? 1 : 0;
                    Rat plo = std::min(p0[axis], p1[axis]), phi = std::max(p0[axis], p1[axis]);
                    Rat qlo = std::min(q0[axis], q1[axis]), qhi = std::max(q0[axis], q1[axis]);
                    if (phi >= qlo && qhi >= plo)
                        throw GenericityError("collinear overlapping segments");
                    continue;
                }
                bool touch = (s1 == 0 && s3 * s4 <= 0) || (s2 == 0 && s3 * s4 <= 0) ||
                             (s3 == 0 && s1 * s2 <= 0) || (s4 == 0 && s1 * s2 <= 0);
                if (touch) throw GenericityError("endpoint-on-segment contact between segments " +
                                                 std::to_string(i) + " and " + std::to_string(j));
                continue;
            }
            if (s1 != -s2 || s3 != -s4) continue;  // no crossing

            // Transverse crossing; parameters from the orientation ratios.
            Rat t = o3 / (o3 - o4);  // crossing parameter on segment i
            Rat s = o1 / (o1 - o2);  // on segment j
            Vec2Q point{p0[0] + t * (p1[0] - p0[0]), p0[1] + t * (p1[1] - p0[1])};
            Vec2Q dir_i{p1[0] - p0[0], p1[1] - p0[1]};
            Vec2Q dir_j{q1[0] - q0[0], q1[1] - q0[1]};
            int sgn = rat_sign(det2(dir_i[0], dir_j[0], dir_i[1], dir_j[1]));
            out.push_back({Rat(i) + t, Rat(j) + s, point, sgn});
            out.push_back({Rat(j) + s, Rat(i) + t, point, -sgn});
        }
    }
    std::sort(out.begin(), out.end(), [](const CurveCrossing& a, const CurveCrossing& b) {
        if (a.param_a != b.param_a) return a.param_a < b.param_a;
        return a.param_b < b.param_b;
    });
    return out;
}

ImmersedPolyCurve builtin_curve(const std::string& name, std::size_t n_vertices) {
    if (n_vertices < 8) throw InputError("builtin curves need at least 8 vertices");
    ImmersedPolyCurve c;
    const double tau = 6.283185307179586476925286766559;
    for (std::size_t k = 0; k < n_vertices; ++k) {
        // Half-step phase keeps sampled vertices off the self-intersections.
        double t = tau * (static_cast<double>(k) + 0.5) / static_cast<double>(n_vertices);
        double x, y;
        if (name == "circle") {
            x = std::cos(t);
            y = std::sin(t);
        } else if (name == "figure8") {
            x = std::sin(2 * t);
            y = std::sin(t);
        } else if (name == "limacon") {
            double r = 1 + 2 * std::cos(t);
            x = r * std::cos(t);
            y = r * std::sin(t);
        } else {
            throw InputError("unknown builtin curve: " + name);
        }
        c.vertices.push_back({snap_to_rational(x, 24), snap_to_rational(y, 24)});
    }
    c.validate_basic();
    return c;
}

}  // namespace multibord
