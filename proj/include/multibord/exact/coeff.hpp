#ifndef MULTIBORD_EXACT_COEFF_HPP
#define MULTIBORD_EXACT_COEFF_HPP

#include <string>

#include "multibord/exact/rational.hpp"

namespace multibord {

enum class CoeffKind { Integers, Rationals, PrimeField };

// Coefficient system shared by matrices and graded rings. Prime-field
// values are kept reduced in [0, p); integer values keep denominator 1.
struct CoeffSystem {
    CoeffKind kind = CoeffKind::Integers;
    unsigned p = 0;

    static CoeffSystem integers() { return {CoeffKind::Integers, 0}; }
    static CoeffSystem rationals() { return {CoeffKind::Rationals, 0}; }
    static CoeffSystem prime_field(unsigned p);

    bool is_field() const { return kind != CoeffKind::Integers; }
    bool is_f2() const { return kind == CoeffKind::PrimeField && p == 2; }

    bool operator==(const CoeffSystem& o) const { return kind == o.kind && p == o.p; }
    bool operator!=(const CoeffSystem& o) const { return !(*this == o); }

    // Canonical representative of x in this system. Throws ModeError for a
    // non-integral value in Z mode or a denominator divisible by p.
    Rat reduce(const Rat& x) const;

    // Multiplicative inverse where it exists (fields; units of Z).
    bool invertible(const Rat& x) const;
    Rat inverse(const Rat& x) const;

    std::string name() const;  // "Z", "Q", "F2", "F5", ...
};

CoeffSystem coeff_from_name(const std::string& name);

}  // namespace multibord

#endif
