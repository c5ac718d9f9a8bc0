#include "multibord/exact/coeff.hpp"

namespace multibord {

CoeffSystem CoeffSystem::prime_field(unsigned p) {
    if (!is_prime_u(p)) throw ModeError("prime field characteristic must be prime, got " + std::to_string(p));
    return {CoeffKind::PrimeField, p};
}

Rat CoeffSystem::reduce(const Rat& x) const {
    switch (kind) {
        case CoeffKind::Rationals:
            return x;
        case CoeffKind::Integers:
            if (!is_integer(x)) throw ModeError("non-integral value " + rat_to_string(x) + " in Z mode");
            return x;
        case CoeffKind::PrimeField: {
            Int num = rat_num(x) % p;
            Int den = rat_den(x) % p;
            if (den == 0) throw ModeError("denominator divisible by " + std::to_string(p) + " in F_p mode");
            if (num < 0) num += p;
            // den in (0, p); invert by scan, p is tiny.
            Int inv = 0;
            for (unsigned c = 1; c < p; ++c)
                if ((den * c) % p == 1) {
                    inv = c;
                    break;
                }
            return Rat((num * inv) % p);
        }
    }
    throw Error("unreachable");
}

bool CoeffSystem::invertible(const Rat& x) const {
    Rat r = reduce(x);
    if (kind == CoeffKind::Integers) return r == 1 || r == -1;
    return r != 0;
}

Rat CoeffSystem::inverse(const Rat& x) const {
    Rat r = reduce(x);
    if (r == 0) throw ModeError("inverse of zero");
    if (kind == CoeffKind::Integers) {
        if (r != 1 && r != -1) throw ModeError("non-unit " + rat_to_string(r) + " has no inverse in Z");
        return r;
    }
    return reduce(make_rat(rat_den(r), rat_num(r)));
}

std::string CoeffSystem::name() const {
    switch (kind) {
        case CoeffKind::Integers: return "Z";
        case CoeffKind::Rationals: return "Q";
        case CoeffKind::PrimeField: return "F" + std::to_string(p);
    }
    return "?";
}

CoeffSystem coeff_from_name(const std::string& name) {
    if (name == "Z" || name == "z") return CoeffSystem::integers();
    if (name == "Q" || name == "q") return CoeffSystem::rationals();
    if ((name.size() > 1) && (name[0] == 'F' || name[0] == 'f')) {
        unsigned p = static_cast<unsigned>(std::stoul(name.substr(1)));
        return CoeffSystem::prime_field(p);
    }
    throw InputError("unknown coefficient system: " + name);
}

}  // namespace multibord
