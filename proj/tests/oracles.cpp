#include "oracles.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace oracle {

namespace {

// Least-squares polynomial fit on abscissa 0..s-1 via normal equations in
// long double, Gaussian elimination with partial pivoting.
std::vector<long double> fit_poly(const long double* y, std::size_t s, int m) {
    const std::size_t n = static_cast<std::size_t>(m) + 1;
    std::vector<long double> ata(n * n, 0.0L), aty(n, 0.0L);
    for (std::size_t t = 0; t < s; ++t) {
        std::vector<long double> pow_t(n);
        pow_t[0] = 1.0L;
        for (std::size_t j = 1; j < n; ++j) pow_t[j] = pow_t[j - 1] * static_cast<long double>(t);
        for (std::size_t i = 0; i < n; ++i) {
            aty[i] += pow_t[i] * y[t];
            for (std::size_t j = 0; j < n; ++j) ata[i * n + j] += pow_t[i] * pow_t[j];
        }
    }
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        for (std::size_t r = col + 1; r < n; ++r)
            if (std::fabs(static_cast<double>(ata[r * n + col])) >
                std::fabs(static_cast<double>(ata[piv * n + col])))
                piv = r;
        if (piv != col) {
            for (std::size_t j = 0; j < n; ++j) std::swap(ata[col * n + j], ata[piv * n + j]);
            std::swap(aty[col], aty[piv]);
        }
        if (ata[col * n + col] == 0.0L) throw std::runtime_error("singular normal equations");
        for (std::size_t r = col + 1; r < n; ++r) {
            const long double f = ata[r * n + col] / ata[col * n + col];
            for (std::size_t j = col; j < n; ++j) ata[r * n + j] -= f * ata[col * n + j];
            aty[r] -= f * aty[col];
        }
    }
    std::vector<long double> coef(n);
    for (std::size_t i = n; i-- > 0;) {
        long double acc = aty[i];
        for (std::size_t j = i + 1; j < n; ++j) acc -= ata[i * n + j] * coef[j];
        coef[i] = acc / ata[i * n + i];
    }
    return coef;
}

std::vector<long double> build_profile(const std::vector<double>& x) {
    long double mean = 0.0L;
    for (double v : x) mean += v;
    mean /= static_cast<long double>(x.size());
    std::vector<long double> prof(x.size());
    long double acc = 0.0L;
    for (std::size_t i = 0; i < x.size(); ++i) {
        acc += static_cast<long double>(x[i]) - mean;
        prof[i] = acc;
    }
    return prof;
}

void detrended_residual(const std::vector<long double>& prof, std::size_t off, std::size_t s,
                        int m, std::vector<long double>& out) {
    const auto coef = fit_poly(prof.data() + off, s, m);
    out.resize(s);
    for (std::size_t t = 0; t < s; ++t) {
        long double fit = 0.0L;
        long double pow_t = 1.0L;
        for (std::size_t j = 0; j < coef.size(); ++j) {
            fit += coef[j] * pow_t;
            pow_t *= static_cast<long double>(t);
        }
        out[t] = prof[off + t] - fit;
    }
}

int sign_of(long double v) { return v > 0.0L ? 1 : v < 0.0L ? -1 : 0; }

} // namespace

std::vector<double> naive_segment_covariances(const std::vector<double>& x,
                                              const std::vector<double>& y, std::size_t s,
                                              int m) {
    const std::size_t t_len = x.size();
    const std::size_t ms = t_len / s;
    const auto px = build_profile(x);
    const auto py = build_profile(y);

    std::vector<std::size_t> offsets;
    for (std::size_t v = 0; v < ms; ++v) offsets.push_back(v * s);
    for (std::size_t v = 0; v < ms; ++v) offsets.push_back(t_len - (v + 1) * s);

    std::vector<double> f2;
    std::vector<long double> rx, ry;
    for (std::size_t off : offsets) {
        detrended_residual(px, off, s, m, rx);
        detrended_residual(py, off, s, m, ry);
        long double acc = 0.0L;
        for (std::size_t t = 0; t < s; ++t) acc += rx[t] * ry[t];
        f2.push_back(static_cast<double>(acc / static_cast<long double>(s)));
    }
    return f2;
}

double naive_fluctuation(const std::vector<double>& x, const std::vector<double>& y, double q,
                         std::size_t s, int m) {
    const auto f2 = naive_segment_covariances(x, y, s, m);
    if (q == 0.0) {
        long double acc = 0.0L;
        std::size_t nonzero = 0;
        for (double v : f2) {
            if (v == 0.0) continue;
            acc += sign_of(v) * std::log(std::fabs(static_cast<long double>(v)));
            ++nonzero;
        }
        if (nonzero == 0) return 0.0;
        return static_cast<double>(std::exp(0.5L * acc / static_cast<long double>(nonzero)));
    }
    long double acc = 0.0L;
    std::size_t nonzero = 0;
    for (double v : f2) {
        if (v == 0.0) continue;
        acc += sign_of(v) *
               std::pow(std::fabs(static_cast<long double>(v)), 0.5L * static_cast<long double>(q));
        ++nonzero;
    }
    const std::size_t denom = q > 0.0 ? f2.size() : nonzero;
    if (denom == 0) return 0.0;
    const long double fq = acc / static_cast<long double>(denom);
    const long double root =
        std::pow(std::fabs(fq), 1.0L / static_cast<long double>(q));
    return static_cast<double>(sign_of(fq) * root);
}

double cascade_tau(double p, double q) {
    return -std::log2(std::pow(p, q) + std::pow(1.0 - p, q));
}

double cascade_h(double p, double q) {
    if (q == 0.0) return -std::log2(p * (1.0 - p)) / 2.0;
    return 1.0 / q - std::log2(std::pow(p, q) + std::pow(1.0 - p, q)) / q;
}

double cascade_alpha(double p, double q) {
    const double pq = std::pow(p, q);
    const double rq = std::pow(1.0 - p, q);
    return -(pq * std::log2(p) + rq * std::log2(1.0 - p)) / (pq + rq);
}

double cascade_f(double p, double q) { return q * cascade_alpha(p, q) - cascade_tau(p, q); }

double cascade_width(double p, double q_min, double q_max) {
    return cascade_alpha(p, q_min) - cascade_alpha(p, q_max);
}

std::vector<double> pareto_quantile_sample(double alpha, std::size_t n) {
    std::vector<double> out(n);
    for (std::size_t k = 0; k < n; ++k) {
        const double u = (static_cast<double>(k) + 0.5) / static_cast<double>(n);
        out[k] = std::pow(1.0 - u, -1.0 / alpha);
    }
    return out;
}

double ks_normal_pvalue(std::vector<double> sample) {
    std::sort(sample.begin(), sample.end());
    const auto n = static_cast<double>(sample.size());
    double d = 0.0;
    for (std::size_t i = 0; i < sample.size(); ++i) {
        const double cdf = 0.5 * std::erfc(-sample[i] / std::sqrt(2.0));
        const double lo = static_cast<double>(i) / n;
        const double hi = static_cast<double>(i + 1) / n;
        d = std::max({d, cdf - lo, hi - cdf});
    }
    const double lambda = (std::sqrt(n) + 0.12 + 0.11 / std::sqrt(n)) * d;
    double p = 0.0;
    for (int k = 1; k <= 100; ++k)
        p += 2.0 * (k % 2 == 1 ? 1.0 : -1.0) * std::exp(-2.0 * k * k * lambda * lambda);
    return std::clamp(p, 0.0, 1.0);
}

std::vector<double> naive_periodogram(const std::vector<double>& x) {
    const std::size_t n = x.size();
    std::vector<double> psd(n);
    for (std::size_t k = 0; k < n; ++k) {
        long double re = 0.0L, im = 0.0L;
        for (std::size_t t = 0; t < n; ++t) {
            const long double ang = -2.0L * static_cast<long double>(M_PI) *
                                    static_cast<long double>(k) * static_cast<long double>(t) /
                                    static_cast<long double>(n);
            re += x[t] * std::cos(ang);
            im += x[t] * std::sin(ang);
        }
        psd[k] = static_cast<double>(re * re + im * im);
    }
    return psd;
}

double autocovariance(const std::vector<double>& x, std::size_t lag) {
    const std::size_t n = x.size();
    double mu = 0.0;
    for (double v : x) mu += v;
    mu /= static_cast<double>(n);
    double acc = 0.0;
    for (std::size_t t = 0; t + lag < n; ++t) acc += (x[t] - mu) * (x[t + lag] - mu);
    return acc / static_cast<double>(n);
}

double ols_slope(const std::vector<double>& xs, const std::vector<double>& ys) {
    const auto n = static_cast<double>(xs.size());
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sx += xs[i];
        sy += ys[i];
        sxx += xs[i] * xs[i];
        sxy += xs[i] * ys[i];
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

} // namespace oracle
