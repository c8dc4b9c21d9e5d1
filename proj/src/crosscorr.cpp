#include "mfts/crosscorr.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <Eigen/Dense>

#include "mfts/detrend.hpp"
#include "mfts/errors.hpp"

namespace mfts {

RhoQResult rho_q(const Series& x, const Series& y, double q,
                 const std::vector<std::size_t>& scales, int order) {
    x.validate();
    y.validate();
    if (x.size() != y.size()) throw AlignmentError("rho_q needs equal-length series");

    const Profile px = profile(x);
    const Profile py = profile(y);

    RhoQResult out;
    out.q = q;
    out.scales = scales;
    out.rho.reserve(scales.size());

    for (std::size_t s : scales) {
        const auto plan = SegmentationPlan::make(s, order, x.size());
        const auto f2_xy = segment_detrended_covariance(px, py, plan);
        const auto f2_xx = segment_detrended_covariance(px, px, plan);
        const auto f2_yy = segment_detrended_covariance(py, py, plan);

        const double num = qth_order_covariance(f2_xy, q);
        const double den2 = qth_order_covariance(f2_xx, q) * qth_order_covariance(f2_yy, q);
        if (!(den2 > 0.0)) throw ZeroDenominator(s);

        double r = num / std::sqrt(den2);
        if (q == 2.0) r = std::clamp(r, -1.0, 1.0);
        out.rho.push_back(r);
    }
    return out;
}

namespace {

SampleWindow resolve_window(SampleWindow window, std::size_t length) {
    if (window.length == 0) {
        window.offset = 0;
        window.length = length;
    }
    if (window.offset + window.length > length)
        throw InputError("window [" + std::to_string(window.offset) + ", " +
                         std::to_string(window.offset + window.length) +
                         ") exceeds series length " + std::to_string(length));
    return window;
}

std::size_t common_length(const std::vector<Series>& series) {
    if (series.size() < 2) throw InputError("a correlation matrix needs at least 2 series");
    const std::size_t t = series.front().size();
    for (const auto& s : series) {
        s.validate();
        if (s.size() != t) throw AlignmentError("correlation inputs differ in length");
    }
    return t;
}

void attach_eigen(CorrelationMatrixResult& r) {
    const auto n = static_cast<Eigen::Index>(r.n);
    Eigen::MatrixXd c(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j)
            c(i, j) = r.matrix[static_cast<std::size_t>(i) * r.n + static_cast<std::size_t>(j)];

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(c);
    if (solver.info() != Eigen::Success)
        throw Error(ErrorKind::Numeric, "EigenFailure", "eigendecomposition did not converge");

    r.eigenvalues.resize(r.n);
    r.eigenvectors.resize(r.n * r.n);
    for (Eigen::Index k = 0; k < n; ++k) {
        const Eigen::Index src = n - 1 - k;  // ascending -> descending
        r.eigenvalues[static_cast<std::size_t>(k)] = solver.eigenvalues()(src);
        for (Eigen::Index i = 0; i < n; ++i)
            r.eigenvectors[static_cast<std::size_t>(k) * r.n + static_cast<std::size_t>(i)] =
                solver.eigenvectors()(i, src);
    }
}

void attach_mp_bounds(CorrelationMatrixResult& r, std::size_t t_window) {
    const double inv_q = static_cast<double>(r.n) / static_cast<double>(t_window);
    r.Q = 1.0 / inv_q;
    r.sigma2 = 1.0;
    const double root = 2.0 * std::sqrt(inv_q);
    r.mp_upper = r.sigma2 * (1.0 + inv_q + root);
    r.mp_lower = r.sigma2 * (1.0 + inv_q - root);
}

} // namespace

CorrelationMatrixResult pearson_matrix(const std::vector<Series>& series, SampleWindow window) {
    const std::size_t t_full = common_length(series);
    window = resolve_window(window, t_full);
    const std::size_t n = series.size();
    const std::size_t t = window.length;
    if (t < n) throw InputError("window shorter than the number of series");

    // Standardize each row inside the window so the diagonal is exactly 1.
    std::vector<std::vector<double>> m(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double* v = series[i].values.data() + window.offset;
        double mu = 0.0;
        for (std::size_t k = 0; k < t; ++k) mu += v[k];
        mu /= static_cast<double>(t);
        double var = 0.0;
        for (std::size_t k = 0; k < t; ++k) var += (v[k] - mu) * (v[k] - mu);
        var /= static_cast<double>(t);
        if (var <= 0.0)
            throw DegenerateSeries("series " + std::to_string(i) +
                                   " has zero variance inside the window");
        const double inv_sd = 1.0 / std::sqrt(var);
        m[i].resize(t);
        for (std::size_t k = 0; k < t; ++k) m[i][k] = (v[k] - mu) * inv_sd;
    }

    CorrelationMatrixResult r;
    r.n = n;
    r.matrix.assign(n * n, 0.0);
    const double inv_t = 1.0 / static_cast<double>(t);
    for (std::size_t i = 0; i < n; ++i) {
        r.matrix[i * n + i] = 1.0;
        for (std::size_t j = i + 1; j < n; ++j) {
            double acc = 0.0;
            for (std::size_t k = 0; k < t; ++k) acc += m[i][k] * m[j][k];
            const double c = acc * inv_t;
            r.matrix[i * n + j] = c;
            r.matrix[j * n + i] = c;
        }
    }
    attach_eigen(r);
    attach_mp_bounds(r, t);
    return r;
}

CorrelationMatrixResult rho_matrix_eigen(const std::vector<Series>& series, double q,
                                         std::size_t scale, SampleWindow window, int order) {
    const std::size_t t_full = common_length(series);
    window = resolve_window(window, t_full);
    const std::size_t n = series.size();
    if (scale > window.length) throw ScaleTooLarge(scale, window.length);

    std::vector<Series> slice(n);
    for (std::size_t i = 0; i < n; ++i) {
        const auto b = series[i].values.begin() + static_cast<std::ptrdiff_t>(window.offset);
        slice[i].values.assign(b, b + static_cast<std::ptrdiff_t>(window.length));
        slice[i].label = series[i].label;
    }

    CorrelationMatrixResult r;
    r.n = n;
    r.matrix.assign(n * n, 0.0);
    const std::vector<std::size_t> one_scale{scale};
    for (std::size_t i = 0; i < n; ++i) {
        r.matrix[i * n + i] = 1.0;
        for (std::size_t j = i + 1; j < n; ++j) {
            const double v = rho_q(slice[i], slice[j], q, one_scale, order).rho.front();
            r.matrix[i * n + j] = v;
            r.matrix[j * n + i] = v;
        }
    }
    attach_eigen(r);
    attach_mp_bounds(r, window.length);
    return r;
}

} // namespace mfts
