#pragma once

#include <cstddef>
#include <vector>

#include "mfts/series.hpp"

namespace mfts {

// Disjoint segments of length `scale` are taken from both the beginning and
// the end of the profile: 2*M segments total with M = floor(T/scale). When T
// is not divisible by the scale the two coverings overlap in the middle.
struct SegmentationPlan {
    std::size_t scale = 0;
    int order = 2;
    std::size_t segment_count = 0;  // 2*floor(T/scale)

    // Validates scale >= order+2 and floor(T/scale) >= 1.
    static SegmentationPlan make(std::size_t scale, int order, std::size_t length);
};

// Segment start offsets for a series of length T: the begin covering first,
// then the end covering starting with the final `scale` samples.
std::vector<std::size_t> segment_offsets(std::size_t length, std::size_t scale);

// Least-squares polynomial detrending shared by every segment of one scale.
// The abscissa is rescaled to [-1, 1] and orthonormalized once, so a fit per
// segment is a handful of dot products.
class DetrendBasis {
public:
    DetrendBasis(std::size_t scale, int order);

    std::size_t scale() const { return scale_; }
    int order() const { return order_; }

    // resid = y minus its least-squares polynomial of the basis order.
    void residual(const double* y, double* resid) const;

private:
    std::size_t scale_;
    int order_;
    std::vector<double> basis_;  // (order+1) rows of length scale, orthonormal
};

// Per-segment detrended covariance F^2(nu, s) = (1/s) * sum of products of
// the two detrended profiles. Negative values are meaningful in the cross
// case; with Y = X every value is a detrended variance and is >= 0.
std::vector<double> segment_detrended_covariance(const Profile& x, const Profile& y,
                                                 const SegmentationPlan& plan);

struct FluctuationGrid {
    enum class Kind { single, cross };

    std::vector<double> q_values;     // ascending
    std::vector<std::size_t> scales;  // ascending
    std::vector<double> F;            // q-major: F[qi * scales.size() + si]
    Kind kind = Kind::single;

    // Per-scale bookkeeping for the q=0 logarithmic mean: segments with an
    // exactly zero detrended covariance are excluded from it (and from the
    // diverging negative-q means); more than 1% of them marks the scale.
    std::vector<std::size_t> segment_counts;
    std::vector<std::size_t> zero_segment_counts;

    double at(std::size_t qi, std::size_t si) const { return F[qi * scales.size() + si]; }
    double& at(std::size_t qi, std::size_t si) { return F[qi * scales.size() + si]; }
    bool unreliable_q0(std::size_t si) const {
        return segment_counts[si] > 0 &&
               static_cast<double>(zero_segment_counts[si]) >
                   0.01 * static_cast<double>(segment_counts[si]);
    }
};

// q-th order fluctuation function of a single series (profile built
// internally). Entries are [mean of (F^2)^(q/2)]^(1/q), and
// exp(0.5 * mean of ln F^2) at q = 0; all entries are positive.
FluctuationGrid fluctuation_function_single(const Series& x, const std::vector<double>& q_values,
                                            const std::vector<std::size_t>& scales, int order);

// Sign-preserving cross version: segment covariances keep their sign through
// the q-th order mean (sign(F^2)|F^2|^(q/2)) and through the final 1/q root.
// Reduces entrywise to the single-series grid when x and y coincide.
FluctuationGrid fluctuation_function_cross(const Series& x, const Series& y,
                                           const std::vector<double>& q_values,
                                           const std::vector<std::size_t>& scales, int order);

// Un-rooted q-th order covariance for one scale, as needed by the rho_q
// coefficient: mean over segments of sign(F^2)|F^2|^(q/2). The q = 0 limit
// of the summand is the bare sign, so the value degrades to the mean sign.
double qth_order_covariance(const std::vector<double>& f2_segments, double q);

// Sign-weighted mean of ln|F^2| over nonzero segments; exp(mean/2) is the
// grid entry at q = 0.
double log_mean_covariance(const std::vector<double>& f2_segments);

// Detrended variance in a sliding window of length `scale`, stepping by one
// sample; the value at t is the single-segment detrended variance of the
// window's own profile. Timestamps (if any) are assigned end-of-window.
Series detrended_variance_track(const Series& x, std::size_t scale, int order);

} // namespace mfts
