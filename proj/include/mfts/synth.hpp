#pragma once

#include <cstdint>
#include <cstddef>

#include "mfts/series.hpp"

namespace mfts {

// Multiplicative binomial cascade of length 2^levels. Deterministic by
// default; randomize_placement swaps the (p, 1-p) pair per node with a
// seeded coin flip.
struct CascadeSpec {
    double p = 0.6;
    unsigned levels = 16;
    std::uint64_t seed = 0;
    bool randomize_placement = false;
};

// Total mass is conserved: the values sum to 1 up to rounding. Analysis
// quality wants levels >= 8; anything from one split up is accepted.
Series binomial_cascade(const CascadeSpec& spec);

// i.i.d. standard normal draws, deterministic in the seed.
Series white_noise(std::size_t length, std::uint64_t seed);

} // namespace mfts
