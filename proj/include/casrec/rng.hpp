// rng.hpp -- seeded random number generation with derivable substreams.

#ifndef CASREC_RNG_HPP
#define CASREC_RNG_HPP

#include <cstdint>

namespace casrec {

// xoshiro256** seeded through splitmix64. Same seed and same call sequence
// give the same output sequence; substreams for parallel workers are derived
// by hashing (seed, stream index) rather than by jumping, so stream k is
// stable no matter how many workers run.
class Rng {
public:
    explicit Rng(std::uint64_t seed);

    std::uint64_t next_u64();

    // Uniform in [0, 1) with 53 random bits.
    double next_double();

    // Uniform integer in [0, n), n > 0. Rejection sampling, no modulo bias.
    std::uint64_t next_below(std::uint64_t n);

    // Independent generator for substream `stream` of this generator's seed.
    Rng fork(std::uint64_t stream) const;

    std::uint64_t seed() const { return seed_; }

private:
    std::uint64_t seed_;
    std::uint64_t state_[4];
};

// Stable substream seed derivation used by Rng::fork and the CLI manifest.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream);

} // namespace casrec

#endif
