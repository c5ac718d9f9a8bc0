#ifndef MULTIBORD_EXACT_RATIONAL_HPP
#define MULTIBORD_EXACT_RATIONAL_HPP

#include <boost/multiprecision/cpp_int.hpp>

#include <string>

#include "multibord/errors.hpp"

namespace multibord {

// All homological computation runs on arbitrary-precision scalars.
// Fixed-width overflow anywhere in the exact layer is a defect, not an
// error path: duality matrices and elimination pivots grow.
using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

inline Int rat_num(const Rat& r) { return numerator(r); }
inline Int rat_den(const Rat& r) { return denominator(r); }

inline bool is_integer(const Rat& r) { return denominator(r) == 1; }

// cpp_rational's two-argument constructor requires a positive denominator.
inline Rat make_rat(Int num, Int den) {
    if (den == 0) throw DimensionError("rational with zero denominator");
    if (den < 0) {
        num = -num;
        den = -den;
    }
    return Rat(num, den);
}

// Serialized form used by every fixture and report: "p" or "p/q".
std::string rat_to_string(const Rat& r);
Rat rat_from_string(const std::string& s);

// Decimal strings ("-0.125", "3e-2") parsed exactly; used by the OFF reader.
Rat rat_from_decimal(const std::string& s);

// Round a double to the nearest rational with the given power-of-two
// denominator. Exact snapping for mesh coordinates sampled from smooth maps.
Rat snap_to_rational(double x, unsigned log2_den);

// Trial division; scalars here are tiny (prime-field characteristics).
bool is_prime_u(unsigned n);

}  // namespace multibord

#endif
