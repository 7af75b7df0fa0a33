#pragma once

#include <cstdint>

namespace coexsim {

// Self-contained xoshiro256++ generator seeded through splitmix64.
// The standard library distributions are implementation-defined, so the
// simulator rolls its own bounded draws to keep traces reproducible.
// Each node/agent owns a substream derived from (seed, stream id): draws in
// one component can never perturb another component's sequence.
class Rng {
public:
    Rng() : Rng(0, 0) {}
    explicit Rng(std::uint64_t seed, std::uint64_t stream = 0);

    std::uint64_t next_u64();

    // uniform integer in [lo, hi], inclusive on both ends
    std::int64_t uniform_int(std::int64_t lo, std::int64_t hi);

    // uniform double in [0, 1)
    double uniform01();

    bool bernoulli(double p);

private:
    std::uint64_t bounded(std::uint64_t n); // uniform in [0, n)

    std::uint64_t s_[4];
};

// Deterministic substream derivation for (seed, stream id) pairs.
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream);

} // namespace coexsim
