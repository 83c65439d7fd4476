#include "clbench/rng.hpp"

#include <cmath>

namespace clb {

uint64_t mix64(uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

Rng Rng::derive(uint64_t salt) const {
    return Rng(seed_, mix64(stream_ ^ mix64(salt + 0x632BE59BD9B4E019ULL)));
}

uint64_t Rng::next_u64() {
    // Two finalizer rounds over (seed, stream, counter); counter-based so the
    // k-th draw is a pure function of the key.
    uint64_t x = mix64(seed_ ^ mix64(stream_)) ^ mix64(counter_++);
    return mix64(x);
}

double Rng::next_double() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

uint64_t Rng::next_below(uint64_t n) {
    // Rejection sampling over the smallest covering power-of-two range.
    uint64_t mask = n - 1;
    mask |= mask >> 1;
    mask |= mask >> 2;
    mask |= mask >> 4;
    mask |= mask >> 8;
    mask |= mask >> 16;
    mask |= mask >> 32;
    for (;;) {
        uint64_t v = next_u64() & mask;
        if (v < n) return v;
    }
}

double Rng::next_gaussian() {
    if (has_spare_) {
        has_spare_ = false;
        return spare_;
    }
    double u1 = 0.0;
    do {
        u1 = next_double();
    } while (u1 <= 0.0);
    double u2 = next_double();
    double r = std::sqrt(-2.0 * std::log(u1));
    double theta = 2.0 * M_PI * u2;
    spare_ = r * std::sin(theta);
    has_spare_ = true;
    return r * std::cos(theta);
}

} // namespace clb
