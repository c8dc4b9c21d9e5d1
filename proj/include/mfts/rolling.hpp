#pragma once

#include <cstddef>
#include <vector>

#include "mfts/analysis.hpp"
#include "mfts/crosscorr.hpp"
#include "mfts/series.hpp"
#include "mfts/spectrum.hpp"

namespace mfts {

struct RollingPlan {
    std::size_t window = 5000;
    std::size_t step = 20;
};

// floor((T - window) / step) + 1; requires window <= T, step >= 1.
std::size_t window_count(std::size_t length, const RollingPlan& plan);

// One spectrum per window position, each on the window's own normalized
// slice. Dates are end-of-window; end_indices index the last sample of each
// window regardless of timestamps.
struct SpectrumTrack {
    std::vector<Date> dates;  // empty when the input carries no timestamps
    std::vector<std::size_t> end_indices;
    std::vector<SingularitySpectrum> spectra;
};

SpectrumTrack rolling_spectra(const Series& x, const RollingPlan& plan,
                              const MfdfaParams& params);

struct EigenTrack {
    std::vector<Date> dates;
    std::vector<std::size_t> end_indices;
    std::vector<double> lambda1;  // Pearson matrix, per window
    std::vector<double> gamma1;   // rho_q matrix, per window
    double mp_lower = 0.0;        // static for (window, N)
    double mp_upper = 0.0;
};

EigenTrack rolling_eigen(const std::vector<Series>& series, std::size_t window,
                         std::size_t step, double q, std::size_t scale, int order = 2);

// Pointwise weighted sum of aligned price series; default weights are 1.
Series composite_index(const std::vector<Series>& prices,
                       const std::vector<double>& weights = {});

} // namespace mfts
