#include "mfts/rolling.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "mfts/errors.hpp"

namespace mfts {

std::size_t window_count(std::size_t length, const RollingPlan& plan) {
    if (plan.step < 1) throw ConfigError("step must be at least 1");
    if (plan.window < 2) throw ConfigError("window must be at least 2");
    if (plan.window > length)
        throw WindowTooShort("window " + std::to_string(plan.window) +
                             " exceeds series length " + std::to_string(length));
    return (length - plan.window) / plan.step + 1;
}

namespace {

Series window_slice(const Series& x, std::size_t offset, std::size_t length) {
    Series s;
    const auto b = x.values.begin() + static_cast<std::ptrdiff_t>(offset);
    s.values.assign(b, b + static_cast<std::ptrdiff_t>(length));
    s.label = x.label;
    return s;
}

SingularitySpectrum no_scaling_spectrum(const std::vector<double>& q_values) {
    SingularitySpectrum sp;
    const double nan = std::numeric_limits<double>::quiet_NaN();
    sp.q_values = q_values;
    sp.alpha.assign(q_values.size(), nan);
    sp.f_alpha.assign(q_values.size(), nan);
    sp.alpha0 = sp.delta_alpha = sp.delta_L = sp.delta_R = sp.asymmetry = sp.hurst = nan;
    sp.quality = SingularitySpectrum::kNoScaling;
    return sp;
}

} // namespace

SpectrumTrack rolling_spectra(const Series& x, const RollingPlan& plan,
                              const MfdfaParams& params) {
    x.validate();
    const std::size_t count = window_count(x.size(), plan);
    const auto q_grid = make_q_grid(params.q_min, params.q_max, params.q_step);

    SpectrumTrack track;
    track.end_indices.reserve(count);
    track.spectra.reserve(count);
    if (x.has_timestamps()) track.dates.reserve(count);

    for (std::size_t w = 0; w < count; ++w) {
        const std::size_t offset = w * plan.step;
        const std::size_t end = offset + plan.window - 1;
        try {
            Series slice = normalize(window_slice(x, offset, plan.window));
            track.spectra.push_back(analyze_series(slice, params).spectrum);
        } catch (const Error& e) {
            // A window without usable scaling yields a flagged row; the track
            // never drops positions. Shape problems still propagate.
            if (e.kind() != ErrorKind::Numeric) throw;
            track.spectra.push_back(no_scaling_spectrum(q_grid));
        }
        track.end_indices.push_back(end);
        if (x.has_timestamps()) track.dates.push_back(x.timestamps[end]);
    }
    return track;
}

EigenTrack rolling_eigen(const std::vector<Series>& series, std::size_t window,
                         std::size_t step, double q, std::size_t scale, int order) {
    if (series.size() < 2) throw InputError("rolling_eigen needs at least 2 series");
    const std::size_t t = series.front().size();
    for (const auto& s : series) {
        s.validate();
        if (s.size() != t) throw AlignmentError("rolling_eigen inputs differ in length");
    }
    const bool dated = series.front().has_timestamps();
    for (const auto& s : series) {
        if (s.has_timestamps() != dated)
            throw AlignmentError("mixed dated and undated inputs");
        if (dated && s.timestamps != series.front().timestamps)
            throw AlignmentError("input timestamps disagree");
    }
    if (scale > window) throw ScaleTooLarge(scale, window);

    const std::size_t count = window_count(t, RollingPlan{window, step});

    EigenTrack track;
    track.end_indices.reserve(count);
    track.lambda1.reserve(count);
    track.gamma1.reserve(count);
    if (dated) track.dates.reserve(count);

    for (std::size_t w = 0; w < count; ++w) {
        const SampleWindow sw{w * step, window};
        const auto pearson = pearson_matrix(series, sw);
        const auto rho = rho_matrix_eigen(series, q, scale, sw, order);
        track.lambda1.push_back(pearson.eigenvalues.front());
        track.gamma1.push_back(rho.eigenvalues.front());
        if (w == 0) {
            track.mp_lower = pearson.mp_lower;
            track.mp_upper = pearson.mp_upper;
        }
        const std::size_t end = sw.offset + window - 1;
        track.end_indices.push_back(end);
        if (dated) track.dates.push_back(series.front().timestamps[end]);
    }
    return track;
}

Series composite_index(const std::vector<Series>& prices, const std::vector<double>& weights) {
    if (prices.empty()) throw InputError("composite_index needs at least one series");
    const std::size_t t = prices.front().size();
    for (const auto& p : prices) {
        p.validate();
        if (p.size() != t) throw AlignmentError("composite components differ in length");
        if (p.has_timestamps() != prices.front().has_timestamps() ||
            (p.has_timestamps() && p.timestamps != prices.front().timestamps))
            throw AlignmentError("composite component timestamps disagree");
    }
    if (!weights.empty() && weights.size() != prices.size())
        throw ConfigError("one weight per series required");

    Series out;
    out.values.assign(t, 0.0);
    out.timestamps = prices.front().timestamps;
    out.label = "composite";
    for (std::size_t i = 0; i < prices.size(); ++i) {
        const double w = weights.empty() ? 1.0 : weights[i];
        for (std::size_t k = 0; k < t; ++k) out.values[k] += w * prices[i].values[k];
    }
    return out;
}

} // namespace mfts
