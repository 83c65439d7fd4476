#pragma once

#include <cstdint>

namespace clb {

// Counter-based deterministic generator keyed by (seed, stream). Identical
// keys give identical sequences on every platform and under any thread
// schedule, which is what makes whole experiments replayable. Streams are
// derived, never shared: each client, round, sample or dropout pass gets its
// own stream id, so parallel execution cannot perturb draw order.
class Rng {
public:
    Rng() : Rng(0, 0) {}
    Rng(uint64_t seed, uint64_t stream) : seed_(seed), stream_(stream) {}

    uint64_t seed() const { return seed_; }
    uint64_t stream() const { return stream_; }

    // Child generator with an independent stream; the parent is untouched.
    Rng derive(uint64_t salt) const;

    uint64_t next_u64();

    // Uniform in [0, 1) with 53 random bits.
    double next_double();

    // Uniform integer in [0, n). n must be > 0.
    uint64_t next_below(uint64_t n);

    // Standard normal via Box-Muller (pair cached).
    double next_gaussian();

    bool next_bernoulli(double p) { return next_double() < p; }

private:
    uint64_t seed_;
    uint64_t stream_;
    uint64_t counter_ = 0;
    bool has_spare_ = false;
    double spare_ = 0.0;
};

// SplitMix64 finalizer; also used on its own to hash ids into stream salts.
uint64_t mix64(uint64_t x);

} // namespace clb
