#include "mfts/series.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>

#include "mfts/errors.hpp"

namespace mfts {

Date Date::parse(const std::string& iso) {
    Date d;
    char extra = 0;
    if (std::sscanf(iso.c_str(), "%d-%d-%d%c", &d.year, &d.month, &d.day, &extra) != 3)
        throw InputError("cannot parse ISO-8601 date: '" + iso + "'");
    if (d.month < 1 || d.month > 12 || d.day < 1 || d.day > 31)
        throw InputError("date out of range: '" + iso + "'");
    return d;
}

bool Date::looks_like(const std::string& s) {
    if (s.size() < 8 || s.size() > 10) return false;
    int dashes = 0;
    for (char c : s) {
        if (c == '-')
            ++dashes;
        else if (c < '0' || c > '9')
            return false;
    }
    return dashes == 2 && s[0] != '-';
}

std::string Date::iso() const {
    char buf[16];
    std::snprintf(buf, sizeof buf, "%04d-%02d-%02d", year, month, day);
    return buf;
}

void Series::validate() const {
    if (values.size() < 2) throw InputError("series '" + label + "' has fewer than 2 samples");
    for (std::size_t i = 0; i < values.size(); ++i)
        if (!std::isfinite(values[i]))
            throw InputError("series '" + label + "' has a non-finite value at row " +
                             std::to_string(i));
    if (!timestamps.empty()) {
        if (timestamps.size() != values.size())
            throw InputError("series '" + label + "' timestamp count does not match values");
        for (std::size_t i = 1; i < timestamps.size(); ++i)
            if (!(timestamps[i - 1] < timestamps[i]))
                throw InputError("series '" + label + "' timestamps are not strictly increasing");
    }
}

double mean(const std::vector<double>& v) {
    return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

double population_variance(const std::vector<double>& v) {
    const double m = mean(v);
    double acc = 0.0;
    for (double x : v) acc += (x - m) * (x - m);
    return acc / static_cast<double>(v.size());
}

Series log_returns(const Series& prices) {
    prices.validate();
    for (std::size_t i = 0; i < prices.values.size(); ++i)
        if (!(prices.values[i] > 0.0)) throw NonPositivePrice(i);

    Series out;
    out.label = prices.label;
    out.values.resize(prices.size() - 1);
    for (std::size_t i = 0; i + 1 < prices.size(); ++i)
        out.values[i] = std::log(prices.values[i + 1]) - std::log(prices.values[i]);
    if (prices.has_timestamps())
        out.timestamps.assign(prices.timestamps.begin() + 1, prices.timestamps.end());
    return out;
}

Series normalize(const Series& x) {
    x.validate();
    const double m = mean(x.values);
    const double var = population_variance(x.values);
    if (!(var > 0.0)) throw DegenerateSeries("cannot normalize '" + x.label + "': zero variance");
    const double inv_sd = 1.0 / std::sqrt(var);

    Series out;
    out.label = x.label;
    out.timestamps = x.timestamps;
    out.values.resize(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) out.values[i] = (x.values[i] - m) * inv_sd;
    return out;
}

Profile profile(const Series& x) {
    x.validate();
    Profile p;
    p.source_mean = mean(x.values);
    p.values.resize(x.size());
    double acc = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        acc += x.values[i] - p.source_mean;
        p.values[i] = acc;
    }
    return p;
}

TailCurve tail_ccdf(const Series& returns, std::size_t n_thresholds, double tail_fraction) {
    returns.validate();
    if (n_thresholds < 10) throw InputError("tail_ccdf needs at least 10 thresholds");
    if (!(tail_fraction > 0.0 && tail_fraction <= 1.0))
        throw InputError("tail fraction must lie in (0, 1]");

    std::vector<double> abs_values;
    abs_values.reserve(returns.size());
    for (double v : returns.values)
        if (v != 0.0) abs_values.push_back(std::fabs(v));
    if (abs_values.size() < 10)
        throw InsufficientData("tail_ccdf needs at least 10 nonzero values, got " +
                               std::to_string(abs_values.size()));

    std::sort(abs_values.begin(), abs_values.end());
    const double lo = abs_values.front();
    const double hi = abs_values.back();
    if (!(hi > lo))
        throw InsufficientData("all |values| identical: tail exponent undefined");

    TailCurve curve;
    const double log_lo = std::log(lo);
    const double log_hi = std::log(hi);
    const std::size_t n = abs_values.size();
    for (std::size_t i = 0; i < n_thresholds; ++i) {
        const double t = std::exp(log_lo + (log_hi - log_lo) * static_cast<double>(i) /
                                               static_cast<double>(n_thresholds - 1));
        // count of |v| >= t
        const auto it = std::lower_bound(abs_values.begin(), abs_values.end(), t);
        const std::size_t count = static_cast<std::size_t>(abs_values.end() - it);
        if (count == 0) continue;  // beyond the largest observation
        curve.thresholds.push_back(t);
        curve.ccdf.push_back(static_cast<double>(count) / static_cast<double>(n));
    }

    // OLS of log ccdf on log threshold over the top tail_fraction of the data.
    const std::size_t cut_idx =
        static_cast<std::size_t>(std::floor((1.0 - tail_fraction) * static_cast<double>(n)));
    const double cut = abs_values[std::min(cut_idx, n - 1)];
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    std::size_t k = 0;
    double fit_lo = 0, fit_hi = 0;
    for (std::size_t i = 0; i < curve.thresholds.size(); ++i) {
        if (curve.thresholds[i] < cut) continue;
        const double lx = std::log(curve.thresholds[i]);
        const double ly = std::log(curve.ccdf[i]);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
        if (k == 0) fit_lo = curve.thresholds[i];
        fit_hi = curve.thresholds[i];
        ++k;
    }
    if (k < 3) throw InsufficientData("fewer than 3 thresholds fall in the tail fit range");
    const double denom = static_cast<double>(k) * sxx - sx * sx;
    if (!(std::fabs(denom) > 0.0))
        throw InsufficientData("tail fit abscissa degenerate");
    const double slope = (static_cast<double>(k) * sxy - sx * sy) / denom;
    curve.fitted_exponent = -slope;
    curve.fit_threshold_lo = fit_lo;
    curve.fit_threshold_hi = fit_hi;
    curve.fit_points = k;
    return curve;
}

} // namespace mfts
