#include "mfts/analysis.hpp"

#include <algorithm>
#include <cmath>

#include "mfts/errors.hpp"

namespace mfts {

std::vector<double> make_q_grid(double q_min, double q_max, double q_step) {
    if (!(q_step > 0.0)) throw ConfigError("q-step must be positive");
    if (!(q_min <= q_max)) throw ConfigError("q-min must not exceed q-max");
    std::vector<double> q;
    const auto n = static_cast<std::size_t>(std::floor((q_max - q_min) / q_step + 1e-9));
    q.reserve(n + 1);
    for (std::size_t i = 0; i <= n; ++i) {
        double v = q_min + static_cast<double>(i) * q_step;
        if (std::abs(v) < 1e-9) v = 0.0;
        q.push_back(v);
    }
    return q;
}

std::vector<std::size_t> make_scale_grid(std::size_t s_min, std::size_t s_max, std::size_t count) {
    if (s_min < 3) throw ConfigError("s-min must be at least 3");
    if (s_max < s_min) throw ConfigError("s-max must not be below s-min");
    if (count < 2) throw ConfigError("s-count must be at least 2");
    const double lo = std::log(static_cast<double>(s_min));
    const double hi = std::log(static_cast<double>(s_max));
    std::vector<std::size_t> scales;
    scales.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
        const double t = count == 1 ? 0.0 : static_cast<double>(i) / static_cast<double>(count - 1);
        const auto s = static_cast<std::size_t>(std::llround(std::exp(lo + t * (hi - lo))));
        scales.push_back(std::clamp(s, s_min, s_max));
    }
    std::sort(scales.begin(), scales.end());
    scales.erase(std::unique(scales.begin(), scales.end()), scales.end());
    return scales;
}

std::vector<std::size_t> resolve_scale_grid(const MfdfaParams& params, std::size_t length) {
    std::size_t s_max = params.s_max;
    if (s_max == 0) s_max = length / 5;
    if (s_max < params.s_min)
        throw WindowTooShort("series of length " + std::to_string(length) +
                             " cannot host scales up to " + std::to_string(params.s_min));
    if (s_max > length) throw ScaleTooLarge(s_max, length);
    return make_scale_grid(params.s_min, s_max, params.s_count);
}

FitRange resolve_fit_range(const MfdfaParams& params, const std::vector<std::size_t>& scales) {
    FitRange r{};
    r.lo = params.fit_lo > 0.0 ? params.fit_lo : static_cast<double>(scales.front());
    r.hi = params.fit_hi > 0.0 ? params.fit_hi : static_cast<double>(scales.back());
    if (r.lo > r.hi) throw ConfigError("fit-lo must not exceed fit-hi");
    return r;
}

MfdfaResult analyze_series(const Series& x, const MfdfaParams& params) {
    const auto scales = resolve_scale_grid(params, x.values.size());
    const auto q = make_q_grid(params.q_min, params.q_max, params.q_step);
    MfdfaResult out;
    out.grid = fluctuation_function_single(x, q, scales, params.order);
    out.scaling = fit_scaling(out.grid, resolve_fit_range(params, scales));
    out.spectrum = legendre_transform(out.scaling);
    return out;
}

MfccaResult analyze_pair(const Series& x, const Series& y, const MfdfaParams& params) {
    if (x.values.size() != y.values.size())
        throw AlignmentError("series lengths differ: " + std::to_string(x.values.size()) +
                             " vs " + std::to_string(y.values.size()));
    const auto scales = resolve_scale_grid(params, x.values.size());
    const auto q = make_q_grid(params.q_min, params.q_max, params.q_step);
    MfccaResult out;
    out.grid = fluctuation_function_cross(x, y, q, scales, params.order);
    out.scaling = fit_scaling(out.grid, resolve_fit_range(params, scales));
    return out;
}

} // namespace mfts
