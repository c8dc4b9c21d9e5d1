#include "mfts/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "mfts/errors.hpp"

namespace mfts {

namespace {

constexpr double kQTol = 1e-9;

struct OlsFit {
    double slope = 0.0;
    double intercept = 0.0;
    double r2 = 1.0;
};

OlsFit ols(const std::vector<double>& x, const std::vector<double>& y) {
    const double n = static_cast<double>(x.size());
    double sx = 0, sy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sx += x[i];
        sy += y[i];
    }
    const double mx = sx / n, my = sy / n;
    double sxx = 0, syy = 0, sxy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double dx = x[i] - mx, dy = y[i] - my;
        sxx += dx * dx;
        syy += dy * dy;
        sxy += dx * dy;
    }
    OlsFit fit;
    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;
    fit.r2 = syy > 0.0 ? std::clamp(sxy * sxy / (sxx * syy), 0.0, 1.0) : 1.0;
    return fit;
}

// Interpolates a gridded quantity at q = 2; NaN outside the grid.
double value_at_q2(const std::vector<double>& q, const std::vector<double>& v) {
    for (std::size_t i = 0; i < q.size(); ++i)
        if (std::fabs(q[i] - 2.0) < kQTol) return v[i];
    for (std::size_t i = 0; i + 1 < q.size(); ++i)
        if (q[i] < 2.0 && 2.0 < q[i + 1]) {
            const double w = (2.0 - q[i]) / (q[i + 1] - q[i]);
            return v[i] + w * (v[i + 1] - v[i]);
        }
    return std::numeric_limits<double>::quiet_NaN();
}

} // namespace

ScalingResult fit_scaling(const FluctuationGrid& grid, const FitRange& fit_range) {
    std::vector<std::size_t> in_range;
    for (std::size_t si = 0; si < grid.scales.size(); ++si) {
        const double s = static_cast<double>(grid.scales[si]);
        if (s >= fit_range.lo && s <= fit_range.hi) in_range.push_back(si);
    }
    if (in_range.size() < 5)
        throw EmptyFitRange("fit range [" + std::to_string(fit_range.lo) + ", " +
                            std::to_string(fit_range.hi) + "] holds " +
                            std::to_string(in_range.size()) + " scales; need at least 5");

    ScalingResult result;
    result.q_values = grid.q_values;
    result.kind = grid.kind;
    result.fit_range.lo = static_cast<double>(grid.scales[in_range.front()]);
    result.fit_range.hi = static_cast<double>(grid.scales[in_range.back()]);
    const std::size_t nq = grid.q_values.size();
    result.exponents.assign(nq, 0.0);
    result.intercepts.assign(nq, 0.0);
    result.fit_r2.assign(nq, 0.0);
    result.valid.assign(nq, false);
    result.n_points.assign(nq, 0);

    std::vector<double> log_s, log_f;
    for (std::size_t qi = 0; qi < nq; ++qi) {
        log_s.clear();
        log_f.clear();
        for (std::size_t si : in_range) {
            const double f = grid.at(qi, si);
            if (f > 0.0 && std::isfinite(f)) {
                log_s.push_back(std::log(static_cast<double>(grid.scales[si])));
                log_f.push_back(std::log(f));
            }
        }
        result.n_points[qi] = log_s.size();
        if (log_s.size() < 5) continue;  // the "there is none" regime
        const OlsFit fit = ols(log_s, log_f);
        result.exponents[qi] = fit.slope;
        result.intercepts[qi] = fit.intercept;
        result.fit_r2[qi] = fit.r2;
        result.valid[qi] = true;
    }
    return result;
}

void summarize_spectrum(SingularitySpectrum& sp) {
    const std::size_t n = sp.alpha.size();
    sp.quality = 0;

    double alpha_min = sp.alpha[0], alpha_max = sp.alpha[0];
    std::size_t peak = 0;
    for (std::size_t i = 0; i < n; ++i) {
        alpha_min = std::min(alpha_min, sp.alpha[i]);
        alpha_max = std::max(alpha_max, sp.alpha[i]);
        if (sp.f_alpha[i] > sp.f_alpha[peak]) peak = i;
        if (sp.f_alpha[i] > 1.0 + 1e-6) sp.quality |= SingularitySpectrum::kFExceedsOne;
        if (i > 0 && sp.alpha[i] > sp.alpha[i - 1] + 1e-9)
            sp.quality |= SingularitySpectrum::kAlphaNonMonotone;
    }

    // parabola through the three points around the peak, for sub-grid alpha0
    double alpha0 = sp.alpha[peak];
    if (peak > 0 && peak + 1 < n) {
        const double x1 = sp.alpha[peak - 1], y1 = sp.f_alpha[peak - 1];
        const double x2 = sp.alpha[peak], y2 = sp.f_alpha[peak];
        const double x3 = sp.alpha[peak + 1], y3 = sp.f_alpha[peak + 1];
        const double denom = (x2 - x1) * (y2 - y3) - (x2 - x3) * (y2 - y1);
        if (std::fabs(denom) > 1e-300) {
            const double vertex =
                x2 - 0.5 *
                         ((x2 - x1) * (x2 - x1) * (y2 - y3) - (x2 - x3) * (x2 - x3) * (y2 - y1)) /
                         denom;
            const double lo = std::min(x1, x3), hi = std::max(x1, x3);
            if (vertex >= lo && vertex <= hi) alpha0 = vertex;
        }
    }
    alpha0 = std::clamp(alpha0, alpha_min, alpha_max);

    sp.alpha0 = alpha0;
    sp.delta_alpha = alpha_max - alpha_min;
    sp.delta_L = alpha0 - alpha_min;
    sp.delta_R = alpha_max - alpha0;
    const double arms = sp.delta_L + sp.delta_R;
    sp.asymmetry = arms > 0.0 ? (sp.delta_L - sp.delta_R) / arms : 0.0;

    // h(2) recovered from the curve through the inverse relation
    // h(q) = alpha - (f - 1)/q, exact on a parametric spectrum.
    std::vector<double> h_curve(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double q = sp.q_values[i];
        h_curve[i] = std::fabs(q) < kQTol ? sp.alpha[i]
                                          : sp.alpha[i] - (sp.f_alpha[i] - 1.0) / q;
    }
    sp.hurst = value_at_q2(sp.q_values, h_curve);
}

SingularitySpectrum legendre_transform(const ScalingResult& h) {
    // maximal contiguous valid q block; fragmentation is an error
    std::size_t run_begin = 0, run_len = 0, runs = 0;
    {
        std::size_t i = 0;
        const std::size_t n = h.valid.size();
        while (i < n) {
            if (!h.valid[i]) {
                ++i;
                continue;
            }
            std::size_t j = i;
            while (j < n && h.valid[j]) ++j;
            ++runs;
            if (j - i > run_len) {
                run_begin = i;
                run_len = j - i;
            }
            i = j;
        }
    }
    if (runs == 0) throw NonContiguousValidity("no valid q points to transform");
    if (runs > 1)
        throw NonContiguousValidity("valid q region is fragmented into " + std::to_string(runs) +
                                    " blocks");
    if (run_len < 5)
        throw NonContiguousValidity("valid q block has " + std::to_string(run_len) +
                                    " points; need at least 5");

    SingularitySpectrum sp;
    sp.q_values.assign(h.q_values.begin() + static_cast<std::ptrdiff_t>(run_begin),
                       h.q_values.begin() + static_cast<std::ptrdiff_t>(run_begin + run_len));
    sp.alpha.resize(run_len);
    sp.f_alpha.resize(run_len);

    const auto hq = [&](std::size_t i) { return h.exponents[run_begin + i]; };
    for (std::size_t i = 0; i < run_len; ++i) {
        double dh;
        if (i == 0)
            dh = (hq(1) - hq(0)) / (sp.q_values[1] - sp.q_values[0]);
        else if (i + 1 == run_len)
            dh = (hq(i) - hq(i - 1)) / (sp.q_values[i] - sp.q_values[i - 1]);
        else
            dh = (hq(i + 1) - hq(i - 1)) / (sp.q_values[i + 1] - sp.q_values[i - 1]);
        const double q = sp.q_values[i];
        sp.alpha[i] = hq(i) + q * dh;
        sp.f_alpha[i] = q * (sp.alpha[i] - hq(i)) + 1.0;
    }
    summarize_spectrum(sp);
    return sp;
}

SingularitySpectrum average_spectrum(const std::vector<SingularitySpectrum>& spectra) {
    if (spectra.empty()) throw GridMismatch("cannot average zero spectra");
    const SingularitySpectrum& first = spectra.front();
    for (const auto& sp : spectra) {
        if (sp.q_values.size() != first.q_values.size())
            throw GridMismatch("spectra differ in q grid size");
        for (std::size_t i = 0; i < sp.q_values.size(); ++i)
            if (std::fabs(sp.q_values[i] - first.q_values[i]) > 1e-12)
                throw GridMismatch("spectra differ in q grid values");
    }

    SingularitySpectrum avg;
    avg.q_values = first.q_values;
    const std::size_t n = first.q_values.size();
    avg.alpha.assign(n, 0.0);
    avg.f_alpha.assign(n, 0.0);
    const double inv = 1.0 / static_cast<double>(spectra.size());
    for (const auto& sp : spectra)
        for (std::size_t i = 0; i < n; ++i) {
            avg.alpha[i] += sp.alpha[i] * inv;
            avg.f_alpha[i] += sp.f_alpha[i] * inv;
        }
    summarize_spectrum(avg);
    return avg;
}

} // namespace mfts
