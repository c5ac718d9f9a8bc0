#include "multibord/geom/prng.hpp"

namespace multibord {

namespace {
std::uint64_t splitmix64(std::uint64_t& x) {
    x += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = x;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}
}  // namespace

Prng::Prng(std::uint64_t seed) {
    std::uint64_t s = seed;
    state_ = splitmix64(s);
    if (state_ == 0) state_ = 0x6a09e667f3bcc909ULL;
}

std::uint64_t Prng::next() {
    // xorshift64*
    std::uint64_t x = state_;
    x ^= x >> 12;
    x ^= x << 25;
    x ^= x >> 27;
    state_ = x;
    return x * 0x2545f4914f6cdd1dULL;
}

std::uint64_t Prng::next_below(std::uint64_t n) {
    return n == 0 ? 0 : next() % n;
}

Rat Prng::next_signed_unit() {
    const std::int64_t span = 1LL << 30;
    std::int64_t v = static_cast<std::int64_t>(next_below(2 * span + 1)) - span;
    return Rat(Int(v), Int(span));
}

double Prng::next_double() {
    return static_cast<double>(next() >> 11) * 0x1.0p-53;
}

std::uint64_t Prng::derive(std::uint64_t seed, std::uint64_t salt) {
    std::uint64_t x = seed ^ (0x9e3779b97f4a7c15ULL * (salt + 1));
    return splitmix64(x);
}

}  // namespace multibord
