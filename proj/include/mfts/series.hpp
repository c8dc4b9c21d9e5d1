#pragma once

#include <compare>
#include <cstddef>
#include <string>
#include <vector>

namespace mfts {

struct Date {
    int year = 0;
    int month = 0;
    int day = 0;

    auto operator<=>(const Date&) const = default;

    static Date parse(const std::string& iso);     // "YYYY-MM-DD"
    static bool looks_like(const std::string& s);  // cheap syntactic probe
    std::string iso() const;
};

// A uniformly sampled real-valued series, optionally carrying calendar
// timestamps (empty vector means none). Values are expected to be finite
// and at least two; operations validate what they rely on.
struct Series {
    std::vector<double> values;
    std::vector<Date> timestamps;  // empty or same length as values
    std::string label;

    std::size_t size() const { return values.size(); }
    bool has_timestamps() const { return !timestamps.empty(); }
    void validate() const;  // throws InputError on broken invariants
};

// Cumulative sum of mean-subtracted values. The last entry is zero up to
// rounding when built from the full series.
struct Profile {
    std::vector<double> values;
    double source_mean = 0.0;

    std::size_t size() const { return values.size(); }
};

struct TailCurve {
    std::vector<double> thresholds;  // ascending, positive
    std::vector<double> ccdf;        // complementary cumulative frequency, in (0,1]
    double fitted_exponent = 0.0;    // power-law slope magnitude of the tail
    double fit_threshold_lo = 0.0;   // fit range actually used
    double fit_threshold_hi = 0.0;
    std::size_t fit_points = 0;
};

// r_t = ln p_{t+1} - ln p_t; timestamps shift to the later endpoint.
Series log_returns(const Series& prices);

// Zero mean, unit population variance (divide by T).
Series normalize(const Series& x);

Profile profile(const Series& x);

// Complementary CDF of |values| on log-spaced thresholds with an OLS
// power-law fit over the top `tail_fraction` of the data (default top decile).
TailCurve tail_ccdf(const Series& returns, std::size_t n_thresholds,
                    double tail_fraction = 0.1);

double mean(const std::vector<double>& v);
double population_variance(const std::vector<double>& v);

} // namespace mfts
