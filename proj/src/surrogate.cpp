#include "mfts/surrogate.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <numeric>
#include <vector>

#include <fftw3.h>

#include "mfts/errors.hpp"
#include "mfts/rng.hpp"

namespace mfts {

namespace {
std::mutex fftw_plan_mutex;
}

Series shuffle_series(const Series& x, std::uint64_t seed) {
    if (x.values.size() < 2) throw InputError("shuffle needs at least 2 samples");
    Series out = x;
    Rng rng(seed);
    for (std::size_t i = out.values.size() - 1; i > 0; --i) {
        const std::size_t j = rng.bounded(i + 1);
        std::swap(out.values[i], out.values[j]);
    }
    return out;
}

Series phase_randomize(const Series& x, std::uint64_t seed) {
    const std::size_t n = x.values.size();
    if (n < 4) throw InputError("phase randomization needs at least 4 samples");
    const std::size_t nf = n / 2 + 1;

    double* buf = fftw_alloc_real(n);
    fftw_complex* freq = fftw_alloc_complex(nf);
    fftw_plan fwd;
    fftw_plan inv;
    {
        std::lock_guard<std::mutex> lock(fftw_plan_mutex);
        fwd = fftw_plan_dft_r2c_1d(static_cast<int>(n), buf, freq, FFTW_ESTIMATE);
        inv = fftw_plan_dft_c2r_1d(static_cast<int>(n), freq, buf, FFTW_ESTIMATE);
    }
    std::copy(x.values.begin(), x.values.end(), buf);
    fftw_execute(fwd);

    Rng rng(seed);
    const bool even = n % 2 == 0;
    const std::size_t last_free = even ? nf - 2 : nf - 1;  // skip Nyquist when present
    for (std::size_t k = 1; k <= last_free; ++k) {
        const double mod = std::hypot(freq[k][0], freq[k][1]);
        const double phi = 2.0 * M_PI * rng.uniform01();
        freq[k][0] = mod * std::cos(phi);
        freq[k][1] = mod * std::sin(phi);
    }
    fftw_execute(inv);

    Series out = x;
    const double inv_n = 1.0 / static_cast<double>(n);
    for (std::size_t i = 0; i < n; ++i) out.values[i] = buf[i] * inv_n;

    {
        std::lock_guard<std::mutex> lock(fftw_plan_mutex);
        fftw_destroy_plan(fwd);
        fftw_destroy_plan(inv);
    }
    fftw_free(buf);
    fftw_free(freq);
    return out;
}

double inverse_normal_cdf(double p) {
    if (!(p > 0.0 && p < 1.0)) throw InputError("quantile probability must lie in (0, 1)");

    static const double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                               -2.759285104469687e+02, 1.383577518672690e+02,
                               -3.066479806614716e+01, 2.506628277459239e+00};
    static const double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                               -1.556989798598866e+02, 6.680131188771972e+01,
                               -1.328068155288572e+01};
    static const double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                               -2.400758277161838e+00, -2.549732539343734e+00,
                               4.374664141464968e+00,  2.938163982698783e+00};
    static const double d[] = {7.784695709041462e-03, 3.224671290700398e-01,
                               2.445134137142996e+00, 3.754408661907416e+00};
    const double p_low = 0.02425;

    double x;
    if (p < p_low) {
        const double q = std::sqrt(-2.0 * std::log(p));
        x = (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
            ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
    } else if (p <= 1.0 - p_low) {
        const double q = p - 0.5;
        const double r = q * q;
        x = (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
            (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
    } else {
        const double q = std::sqrt(-2.0 * std::log(1.0 - p));
        x = -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
            ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
    }

    // One Halley step against the exact CDF.
    const double e = 0.5 * std::erfc(-x / std::sqrt(2.0)) - p;
    const double u = e * std::sqrt(2.0 * M_PI) * std::exp(x * x / 2.0);
    x = x - u / (1.0 + x * u / 2.0);
    return x;
}

Series gaussianize(const Series& x, std::uint64_t seed) {
    (void)seed;
    const std::size_t n = x.values.size();
    if (n < 2) throw InputError("gaussianization needs at least 2 samples");

    std::vector<std::size_t> idx(n);
    std::iota(idx.begin(), idx.end(), 0);
    std::sort(idx.begin(), idx.end(), [&](std::size_t i, std::size_t j) {
        if (x.values[i] != x.values[j]) return x.values[i] < x.values[j];
        return i < j;
    });

    Series out = x;
    const double denom = static_cast<double>(n) + 0.25;
    for (std::size_t rank = 0; rank < n; ++rank) {
        const double pp = (static_cast<double>(rank) + 1.0 - 0.375) / denom;
        out.values[idx[rank]] = inverse_normal_cdf(pp);
    }
    return out;
}

Series make_surrogate(const Series& x, SurrogateKind kind, std::uint64_t seed) {
    switch (kind) {
    case SurrogateKind::shuffle: return shuffle_series(x, seed);
    case SurrogateKind::phase_randomized: return phase_randomize(x, seed);
    case SurrogateKind::gaussianized: return gaussianize(x, seed);
    }
    throw ConfigError("unknown surrogate kind");
}

SingularitySpectrum surrogate_spectrum(const Series& x, const SurrogateSpec& spec,
                                       const MfdfaParams& params) {
    if (spec.realizations < 1) throw ConfigError("realizations must be at least 1");
    std::vector<SingularitySpectrum> spectra;
    spectra.reserve(spec.realizations);
    for (std::size_t k = 0; k < spec.realizations; ++k) {
        const Series sur = make_surrogate(x, spec.kind, derive_seed(spec.seed, k));
        spectra.push_back(analyze_series(sur, params).spectrum);
    }
    if (spectra.size() == 1) return spectra.front();
    return average_spectrum(spectra);
}

} // namespace mfts
