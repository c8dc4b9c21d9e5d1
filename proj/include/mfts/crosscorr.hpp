#pragma once

#include <cstddef>
#include <vector>

#include "mfts/series.hpp"

namespace mfts {

struct RhoQResult {
    double q = 2.0;
    std::vector<std::size_t> scales;
    std::vector<double> rho;  // one entry per scale
};

// rho_q(s) = F_xy^q(s) / sqrt(F_xx^q(s) * F_yy^q(s)) on the un-rooted q-th
// order covariances. Values are clamped to [-1, 1] only at q = 2, where the
// bound is a theorem; elsewhere they are reported as computed.
RhoQResult rho_q(const Series& x, const Series& y, double q,
                 const std::vector<std::size_t>& scales, int order = 2);

// Half-open sample window into a set of series; length 0 means the full
// series.
struct SampleWindow {
    std::size_t offset = 0;
    std::size_t length = 0;
};

struct CorrelationMatrixResult {
    std::size_t n = 0;
    std::vector<double> matrix;        // row-major n*n, unit diagonal
    std::vector<double> eigenvalues;   // descending
    std::vector<double> eigenvectors;  // row-major n*n, row k pairs with eigenvalues[k]
    double mp_lower = 0.0;
    double mp_upper = 0.0;
    double Q = 0.0;       // T/N
    double sigma2 = 1.0;
};

// Pearson correlation matrix on per-window standardized rows, its
// eigendecomposition, and the Marchenko-Pastur support bounds
// sigma^2 (1 + 1/Q +- 2 sqrt(1/Q)) for Q = T/N, sigma^2 = 1.
CorrelationMatrixResult pearson_matrix(const std::vector<Series>& series, SampleWindow window);

// Same shape, but entries are rho_q at a single scale; the largest
// eigenvalue is the gamma_1 statistic. The MP bounds are reported for
// reference only.
CorrelationMatrixResult rho_matrix_eigen(const std::vector<Series>& series, double q,
                                         std::size_t scale, SampleWindow window, int order = 2);

} // namespace mfts
