#ifndef MULTIBORD_GEOM_VEC_HPP
#define MULTIBORD_GEOM_VEC_HPP

#include <array>
#include <vector>

#include "multibord/exact/rational.hpp"

namespace multibord {

// Exact rational points; all topology predicates run on these.
using Vec2Q = std::array<Rat, 2>;
using Vec3Q = std::array<Rat, 3>;
using VecQ = std::vector<Rat>;  // ambient points of dimension 2, 3 or 4

inline VecQ vq_sub(const VecQ& a, const VecQ& b) {
    VecQ r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
    return r;
}

inline VecQ vq_add(const VecQ& a, const VecQ& b) {
    VecQ r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
    return r;
}

inline VecQ vq_scale(const Rat& c, const VecQ& a) {
    VecQ r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = c * a[i];
    return r;
}

inline Rat vq_dot(const VecQ& a, const VecQ& b) {
    Rat s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

inline VecQ vq_cross3(const VecQ& a, const VecQ& b) {
    return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

inline Rat det2(const Rat& a, const Rat& b, const Rat& c, const Rat& d) { return a * d - b * c; }

Rat det3(const VecQ& a, const VecQ& b, const VecQ& c);
Rat det4(const VecQ& a, const VecQ& b, const VecQ& c, const VecQ& d);

inline int rat_sign(const Rat& r) { return r == 0 ? 0 : (r > 0 ? 1 : -1); }

}  // namespace multibord

#endif
