#pragma once

#include <cstdint>
#include <cstddef>

#include "mfts/analysis.hpp"
#include "mfts/series.hpp"
#include "mfts/spectrum.hpp"

namespace mfts {

enum class SurrogateKind { shuffle, phase_randomized, gaussianized };

struct SurrogateSpec {
    SurrogateKind kind = SurrogateKind::shuffle;
    std::size_t realizations = 10;
    std::uint64_t seed = 0;
};

// Uniform random permutation of the values (multiset preserved exactly).
Series shuffle_series(const Series& x, std::uint64_t seed);

// Fourier moduli kept, phases redrawn i.i.d. uniform with Hermitian symmetry
// (DC and, for even length, Nyquist bins untouched), inverse transform.
Series phase_randomize(const Series& x, std::uint64_t seed);

// Values replaced by deterministic normal quantiles (Blom plotting
// positions) at the same ranks; the seed is accepted for interface symmetry
// and ignored.
Series gaussianize(const Series& x, std::uint64_t seed);

Series make_surrogate(const Series& x, SurrogateKind kind, std::uint64_t seed);

// Average spectrum over `realizations` surrogates, one derived seed each.
SingularitySpectrum surrogate_spectrum(const Series& x, const SurrogateSpec& spec,
                                       const MfdfaParams& params);

// Phi^{-1}(p) for p in (0, 1), accurate to ~1e-15 after refinement.
double inverse_normal_cdf(double p);

} // namespace mfts
