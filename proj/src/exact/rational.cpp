#include "multibord/exact/rational.hpp"

#include <cmath>
#include <cstdint>

namespace multibord {

std::string rat_to_string(const Rat& r) {
    std::string s = rat_num(r).str();
    if (rat_den(r) != 1) {
        s += "/";
        s += rat_den(r).str();
    }
    return s;
}

Rat rat_from_string(const std::string& s) {
    if (s.empty()) throw InputError("empty rational literal");
    auto slash = s.find('/');
    try {
        if (slash == std::string::npos) {
            if (s.find('.') != std::string::npos || s.find('e') != std::string::npos ||
                s.find('E') != std::string::npos)
                return rat_from_decimal(s);
            return Rat(Int(s));
        }
        Int num(s.substr(0, slash));
        Int den(s.substr(slash + 1));
        if (den == 0) throw InputError("zero denominator in rational literal: " + s);
        return make_rat(num, den);
    } catch (const std::runtime_error&) {
        throw InputError("bad rational literal: " + s);
    }
}

Rat rat_from_decimal(const std::string& s) {
    std::string t = s;
    long exp10 = 0;
    auto epos = t.find_first_of("eE");
    if (epos != std::string::npos) {
        exp10 = std::stol(t.substr(epos + 1));
        t = t.substr(0, epos);
    }
    bool neg = false;
    std::size_t i = 0;
    if (i < t.size() && (t[i] == '+' || t[i] == '-')) {
        neg = t[i] == '-';
        ++i;
    }
    Int mantissa = 0;
    long frac_digits = 0;
    bool seen_dot = false, seen_digit = false;
    for (; i < t.size(); ++i) {
        char c = t[i];
        if (c == '.') {
            if (seen_dot) throw InputError("bad decimal literal: " + s);
            seen_dot = true;
        } else if (c >= '0' && c <= '9') {
            mantissa = mantissa * 10 + (c - '0');
            if (seen_dot) ++frac_digits;
            seen_digit = true;
        } else {
            throw InputError("bad decimal literal: " + s);
        }
    }
    if (!seen_digit) throw InputError("bad decimal literal: " + s);
    if (neg) mantissa = -mantissa;
    long e = exp10 - frac_digits;
    Int num = mantissa, den = 1;
    if (e > 0)
        for (long k = 0; k < e; ++k) num *= 10;
    else
        for (long k = 0; k < -e; ++k) den *= 10;
    return make_rat(num, den);
}

Rat snap_to_rational(double x, unsigned log2_den) {
    if (!std::isfinite(x)) throw InputError("cannot snap non-finite value");
    const double scale = std::ldexp(1.0, static_cast<int>(log2_den));
    const double scaled = x * scale;
    // Round-half-away; the exact value never matters, only determinism.
    const double r = std::nearbyint(scaled);
    Int num(static_cast<long long>(r));
    Int den = Int(1) << log2_den;
    return make_rat(num, den);
}

bool is_prime_u(unsigned n) {
    if (n < 2) return false;
    for (unsigned d = 2; static_cast<unsigned long long>(d) * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

}  // namespace multibord
