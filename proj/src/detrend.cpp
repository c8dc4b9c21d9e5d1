#include "mfts/detrend.hpp"

#include <cmath>
#include <cstring>
#include <stdexcept>

#include "mfts/errors.hpp"

namespace mfts {

namespace {

inline double sign_of(double v) { return v > 0.0 ? 1.0 : (v < 0.0 ? -1.0 : 0.0); }

// sign-preserving 1/q root of the q-th order mean
inline double signed_root(double v, double q) {
    if (v == 0.0) return 0.0;
    return sign_of(v) * std::pow(std::fabs(v), 1.0 / q);
}

} // namespace

SegmentationPlan SegmentationPlan::make(std::size_t scale, int order, std::size_t length) {
    if (order < 0) throw std::invalid_argument("polynomial order must be >= 0");
    if (scale < static_cast<std::size_t>(order) + 2)
        throw std::invalid_argument("scale " + std::to_string(scale) +
                                    " too small for polynomial order " + std::to_string(order));
    const std::size_t m_s = length / scale;
    if (m_s < 1) throw ScaleTooLarge(scale, length);
    SegmentationPlan plan;
    plan.scale = scale;
    plan.order = order;
    plan.segment_count = 2 * m_s;
    return plan;
}

std::vector<std::size_t> segment_offsets(std::size_t length, std::size_t scale) {
    const std::size_t m_s = length / scale;
    std::vector<std::size_t> offsets;
    offsets.reserve(2 * m_s);
    for (std::size_t j = 0; j < m_s; ++j) offsets.push_back(j * scale);
    for (std::size_t j = 0; j < m_s; ++j) offsets.push_back(length - (j + 1) * scale);
    return offsets;
}

DetrendBasis::DetrendBasis(std::size_t scale, int order) : scale_(scale), order_(order) {
    if (order < 0) throw std::invalid_argument("polynomial order must be >= 0");
    if (scale < static_cast<std::size_t>(order) + 2)
        throw std::invalid_argument("scale too small for polynomial order");

    const std::size_t cols = static_cast<std::size_t>(order) + 1;
    basis_.assign(cols * scale, 0.0);

    // Vandermonde columns in t = rescaled abscissa, then two-pass
    // modified Gram-Schmidt against the discrete dot product.
    std::vector<double> t(scale);
    const double denom = scale > 1 ? static_cast<double>(scale - 1) : 1.0;
    for (std::size_t k = 0; k < scale; ++k)
        t[k] = 2.0 * static_cast<double>(k) / denom - 1.0;

    for (std::size_t j = 0; j < cols; ++j) {
        double* col = &basis_[j * scale];
        for (std::size_t k = 0; k < scale; ++k)
            col[k] = j == 0 ? 1.0 : std::pow(t[k], static_cast<double>(j));

        double norm0 = 0.0;
        for (std::size_t k = 0; k < scale; ++k) norm0 += col[k] * col[k];
        norm0 = std::sqrt(norm0);

        for (int pass = 0; pass < 2; ++pass) {
            for (std::size_t i = 0; i < j; ++i) {
                const double* prev = &basis_[i * scale];
                double proj = 0.0;
                for (std::size_t k = 0; k < scale; ++k) proj += prev[k] * col[k];
                for (std::size_t k = 0; k < scale; ++k) col[k] -= proj * prev[k];
            }
        }
        double norm = 0.0;
        for (std::size_t k = 0; k < scale; ++k) norm += col[k] * col[k];
        norm = std::sqrt(norm);
        if (!(norm > 1e-12 * norm0)) throw RankDeficientFit();
        const double inv = 1.0 / norm;
        for (std::size_t k = 0; k < scale; ++k) col[k] *= inv;
    }
}

void DetrendBasis::residual(const double* y, double* resid) const {
    const std::size_t cols = static_cast<std::size_t>(order_) + 1;
    std::memcpy(resid, y, scale_ * sizeof(double));
    for (std::size_t j = 0; j < cols; ++j) {
        const double* col = &basis_[j * scale_];
        double c = 0.0;
        for (std::size_t k = 0; k < scale_; ++k) c += col[k] * y[k];
        for (std::size_t k = 0; k < scale_; ++k) resid[k] -= c * col[k];
    }
}

std::vector<double> segment_detrended_covariance(const Profile& x, const Profile& y,
                                                 const SegmentationPlan& plan) {
    if (x.size() != y.size()) throw AlignmentError("profiles differ in length");
    const std::size_t length = x.size();
    if (length / plan.scale < 1) throw ScaleTooLarge(plan.scale, length);

    const DetrendBasis basis(plan.scale, plan.order);
    const auto offsets = segment_offsets(length, plan.scale);
    const bool same = &x == &y || x.values.data() == y.values.data();

    std::vector<double> resid_x(plan.scale), resid_y(plan.scale);
    std::vector<double> f2;
    f2.reserve(offsets.size());
    const double inv_s = 1.0 / static_cast<double>(plan.scale);

    for (std::size_t off : offsets) {
        basis.residual(x.values.data() + off, resid_x.data());
        const double* ry = resid_x.data();
        if (!same) {
            basis.residual(y.values.data() + off, resid_y.data());
            ry = resid_y.data();
        }
        double acc = 0.0, ss_x = 0.0, ss_y = 0.0;
        for (std::size_t k = 0; k < plan.scale; ++k) {
            acc += resid_x[k] * ry[k];
            const double px_k = x.values[off + k];
            const double py_k = y.values[off + k];
            ss_x += px_k * px_k;
            ss_y += py_k * py_k;
        }
        double cov = acc * inv_s;
        // A segment the polynomial fits exactly leaves only rounding dust,
        // which scales with the squared magnitude of the profile itself.
        // Snap that dust to a true zero so degenerate trends are detectable.
        if (std::fabs(cov) < 1e-26 * std::sqrt(ss_x * ss_y) * inv_s) cov = 0.0;
        f2.push_back(cov);
    }
    return f2;
}

double log_mean_covariance(const std::vector<double>& f2_segments) {
    double acc = 0.0;
    std::size_t nonzero = 0;
    for (double v : f2_segments) {
        if (v == 0.0) continue;
        acc += sign_of(v) * std::log(std::fabs(v));
        ++nonzero;
    }
    return nonzero ? acc / static_cast<double>(nonzero) : 0.0;
}

double qth_order_covariance(const std::vector<double>& f2_segments, double q) {
    const std::size_t total = f2_segments.size();
    if (q == 0.0) {
        double acc = 0.0;
        for (double v : f2_segments) acc += sign_of(v);
        return total ? acc / static_cast<double>(total) : 0.0;
    }
    double acc = 0.0;
    std::size_t nonzero = 0;
    for (double v : f2_segments) {
        if (v == 0.0) continue;
        acc += sign_of(v) * std::pow(std::fabs(v), 0.5 * q);
        ++nonzero;
    }
    // zero segments contribute nothing for q > 0 but cannot enter a
    // negative-q mean, where |0|^(q/2) diverges
    const std::size_t denom = q > 0.0 ? total : nonzero;
    return denom ? acc / static_cast<double>(denom) : 0.0;
}

namespace {

FluctuationGrid fluctuation_grid(const Series& x, const Series* y,
                                 const std::vector<double>& q_values,
                                 const std::vector<std::size_t>& scales, int order) {
    x.validate();
    if (y) {
        y->validate();
        if (y->size() != x.size())
            throw AlignmentError("cross fluctuation needs equal-length series");
    }

    FluctuationGrid grid;
    grid.kind = y ? FluctuationGrid::Kind::cross : FluctuationGrid::Kind::single;
    grid.q_values = q_values;
    grid.scales = scales;
    grid.F.assign(q_values.size() * scales.size(), 0.0);
    grid.segment_counts.resize(scales.size());
    grid.zero_segment_counts.resize(scales.size());

    const Profile px = profile(x);
    const Profile py_storage = y ? profile(*y) : Profile{};
    const Profile& py = y ? py_storage : px;

    for (std::size_t si = 0; si < scales.size(); ++si) {
        const auto plan = SegmentationPlan::make(scales[si], order, x.size());
        const auto f2 = segment_detrended_covariance(px, py, plan);

        std::size_t zeros = 0;
        for (double v : f2)
            if (v == 0.0) ++zeros;
        grid.segment_counts[si] = f2.size();
        grid.zero_segment_counts[si] = zeros;
        if (zeros == f2.size()) throw DegenerateDetrend(scales[si]);

        for (std::size_t qi = 0; qi < q_values.size(); ++qi) {
            const double q = q_values[qi];
            grid.at(qi, si) = q == 0.0 ? std::exp(0.5 * log_mean_covariance(f2))
                                       : signed_root(qth_order_covariance(f2, q), q);
        }
    }
    return grid;
}

} // namespace

FluctuationGrid fluctuation_function_single(const Series& x, const std::vector<double>& q_values,
                                            const std::vector<std::size_t>& scales, int order) {
    return fluctuation_grid(x, nullptr, q_values, scales, order);
}

FluctuationGrid fluctuation_function_cross(const Series& x, const Series& y,
                                           const std::vector<double>& q_values,
                                           const std::vector<std::size_t>& scales, int order) {
    return fluctuation_grid(x, &y, q_values, scales, order);
}

Series detrended_variance_track(const Series& x, std::size_t scale, int order) {
    x.validate();
    if (x.size() < scale) throw ScaleTooLarge(scale, x.size());
    if (order < 0 || scale < static_cast<std::size_t>(order) + 2)
        throw ConfigError("scale " + std::to_string(scale) +
                          " cannot host an order-" + std::to_string(order) + " trend");

    const DetrendBasis basis(scale, order);
    const std::size_t n_windows = x.size() - scale + 1;
    const double inv_s = 1.0 / static_cast<double>(scale);

    Series track;
    track.label = x.label;
    track.values.resize(n_windows);
    std::vector<double> prof(scale), resid(scale);

    bool any_nonzero = false;
    for (std::size_t t = 0; t < n_windows; ++t) {
        const double* w = x.values.data() + t;
        double m = 0.0;
        for (std::size_t k = 0; k < scale; ++k) m += w[k];
        m *= inv_s;
        double acc = 0.0;
        for (std::size_t k = 0; k < scale; ++k) {
            acc += w[k] - m;
            prof[k] = acc;
        }
        basis.residual(prof.data(), resid.data());
        double f2 = 0.0, ss = 0.0;
        for (std::size_t k = 0; k < scale; ++k) {
            f2 += resid[k] * resid[k];
            ss += prof[k] * prof[k];
        }
        double v = f2 * inv_s;
        if (v < 1e-26 * ss * inv_s) v = 0.0;
        track.values[t] = v;
        if (track.values[t] != 0.0) any_nonzero = true;
    }
    if (!any_nonzero) throw DegenerateDetrend(scale);

    if (x.has_timestamps())
        track.timestamps.assign(x.timestamps.begin() + static_cast<std::ptrdiff_t>(scale - 1),
                                x.timestamps.end());
    return track;
}

} // namespace mfts
