#pragma once

#include <cstdint>

namespace pedsim {

// Deterministic PRNG: SplitMix64 (Weyl-sequence counter hashed per draw).
// The integer stream is bit-stable across platforms; identical seeds give
// identical draw sequences.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64();

    // Uniform in [0, 1) with 53-bit resolution. Consumes one u64.
    double uniform01();

    // Zero-mean normal with standard deviation sigma (Box-Muller, cosine
    // branch). Always consumes exactly two u64 so the stream layout does
    // not depend on sigma. Throws std::invalid_argument on sigma < 0.
    double gaussian(double sigma);

private:
    std::uint64_t state_;
};

// Free-function spelling of Rng::gaussian.
double draw_gaussian(Rng& rng, double sigma);

}  // namespace pedsim
