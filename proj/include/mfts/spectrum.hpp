#pragma once

#include <cstddef>
#include <vector>

#include "mfts/detrend.hpp"

namespace mfts {

// Inclusive scale bounds for the log-log fit.
struct FitRange {
    double lo = 0.0;
    double hi = 0.0;
};

// Per-q scaling exponents fitted from a fluctuation grid: h(q) for single
// series, lambda_q for cross grids. `valid` is false where no scaling could
// be fitted (fewer than 5 positive, finite grid entries in range).
struct ScalingResult {
    std::vector<double> q_values;
    std::vector<double> exponents;
    std::vector<double> intercepts;
    std::vector<double> fit_r2;
    std::vector<bool> valid;
    std::vector<std::size_t> n_points;
    FitRange fit_range;  // effective bounds actually used
    FluctuationGrid::Kind kind = FluctuationGrid::Kind::single;
};

struct SingularitySpectrum {
    static constexpr unsigned kAlphaNonMonotone = 1u;
    static constexpr unsigned kFExceedsOne = 2u;
    // No usable scaling regime at all: curve arrays NaN, summaries NaN.
    // Set by rolling tracks instead of aborting a whole track run.
    static constexpr unsigned kNoScaling = 4u;

    std::vector<double> q_values;  // contiguous q sub-grid the curve lives on
    std::vector<double> alpha;
    std::vector<double> f_alpha;

    double alpha0 = 0.0;
    double delta_alpha = 0.0;
    double delta_L = 0.0;
    double delta_R = 0.0;
    double asymmetry = 0.0;
    double hurst = 0.0;  // h(2); NaN when q=2 lies outside the curve
    unsigned quality = 0;

    bool ok() const { return quality == 0; }
};

// Ordinary least squares of log F(q,s) on log s over the fit range, per q.
// Cross grids only admit scales with a positive sign-preserved entry.
ScalingResult fit_scaling(const FluctuationGrid& grid, const FitRange& fit_range);

// alpha = h + q h', f = q (alpha - h) + 1, with h' from central finite
// differences on the q grid (one-sided at the ends). Works on the maximal
// contiguous valid q block; a fragmented valid set is an error.
SingularitySpectrum legendre_transform(const ScalingResult& h);

// Pointwise average of parametric curves sharing one q grid; summaries are
// recomputed from the averaged curve.
SingularitySpectrum average_spectrum(const std::vector<SingularitySpectrum>& spectra);

// Fills alpha0, widths, asymmetry, hurst and quality from the curve arrays.
void summarize_spectrum(SingularitySpectrum& spectrum);

} // namespace mfts
