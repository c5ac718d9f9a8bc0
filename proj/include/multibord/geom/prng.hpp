#ifndef MULTIBORD_GEOM_PRNG_HPP
#define MULTIBORD_GEOM_PRNG_HPP

#include <cstdint>

#include "multibord/exact/rational.hpp"

namespace multibord {

// Seeded xorshift-style generator. Identical seeds give identical streams on
// every platform; perturbations and pushoff directions depend on nothing else.
class Prng {
  public:
    explicit Prng(std::uint64_t seed);

    std::uint64_t next();
    std::uint64_t next_below(std::uint64_t n);  // uniform-ish in [0, n)

    // Signed rational in [-1, 1] with denominator 2^30.
    Rat next_signed_unit();

    // Double in [0, 1); for float-only sampling (pushoff directions).
    double next_double();

    // Stream derivation for retries: independent-looking child seed.
    static std::uint64_t derive(std::uint64_t seed, std::uint64_t salt);

  private:
    std::uint64_t state_;
};

}  // namespace multibord

#endif
