#pragma once

#include <cstddef>
#include <vector>

#include "mfts/detrend.hpp"
#include "mfts/series.hpp"
#include "mfts/spectrum.hpp"

namespace mfts {

// Knobs of one MFDFA/MFCCA evaluation. Zeros mean "derive from the data":
// s_max defaults to T/5 (at least 10 segments at the top scale) and the fit
// range defaults to the full scale grid.
struct MfdfaParams {
    double q_min = -4.0;
    double q_max = 4.0;
    double q_step = 0.2;
    std::size_t s_min = 20;
    std::size_t s_max = 0;
    std::size_t s_count = 30;
    int order = 2;
    double fit_lo = 0.0;
    double fit_hi = 0.0;
};

// Ascending q grid; values within 1e-9 of zero snap to exactly 0 so the
// logarithmic variant is taken there.
std::vector<double> make_q_grid(double q_min, double q_max, double q_step);

// Log-spaced integer scales, deduplicated.
std::vector<std::size_t> make_scale_grid(std::size_t s_min, std::size_t s_max, std::size_t count);

std::vector<std::size_t> resolve_scale_grid(const MfdfaParams& params, std::size_t length);
FitRange resolve_fit_range(const MfdfaParams& params, const std::vector<std::size_t>& scales);

struct MfdfaResult {
    FluctuationGrid grid;
    ScalingResult scaling;
    SingularitySpectrum spectrum;
};

struct MfccaResult {
    FluctuationGrid grid;
    ScalingResult scaling;  // lambda_q
};

// Grid -> h(q) -> singularity spectrum for one series, as given (callers
// decide about returns/normalization).
MfdfaResult analyze_series(const Series& x, const MfdfaParams& params);

// Cross grid -> lambda_q for a pair.
MfccaResult analyze_pair(const Series& x, const Series& y, const MfdfaParams& params);

} // namespace mfts
