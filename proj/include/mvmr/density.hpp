#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "mvmr/dataset.hpp"

namespace mvmr {

/// Uniform evaluation grid for density estimates.
struct GridSpec {
    double lo = 0.0;
    double hi = 1.0;
    std::size_t points = 512;

    double spacing() const { return (hi - lo) / static_cast<double>(points - 1); }
    double at(std::size_t i) const { return lo + spacing() * static_cast<double>(i); }
    bool operator==(const GridSpec&) const = default;
};

/// A probability density sampled on a uniform grid, with its CDF.
/// The CDF is the cumulative trapezoidal integral of the pdf, so it is
/// monotone and ends near 1 (Gaussian tails beyond the grid account for
/// any deficit).
struct DensityEstimate {
    GridSpec grid;
    std::vector<double> pdf;
    std::vector<double> cdf;
    double bandwidth = 0.0;
    std::size_t sample_count = 0;
};

/// Per-feature bundle of one unsupervised estimate over all samples (UKDE)
/// and one supervised estimate per class (SKDE), all on one shared grid
/// with one shared bandwidth.
struct ClassDensities {
    std::size_t feature_index = 0;
    DensityEstimate ukde;
    std::vector<DensityEstimate> skde;
};

/// Grid spanning the sample range padded by 4 bandwidths on each side.
/// The padding keeps the truncated Gaussian mass per kernel below 1e-4.
GridSpec make_grid(std::span<const double> samples, double bandwidth, std::size_t points);

/// Gaussian kernel density estimate evaluated at every grid point:
/// pdf[g] = (1 / (m h)) * sum_i K((g - x_i) / h) with K the standard
/// normal density. Direct O(m * points) sum.
DensityEstimate kde(std::span<const double> samples, double bandwidth, const GridSpec& grid);

/// UKDE over the whole column plus one SKDE per class, all on a single grid
/// derived from the full column range.
ClassDensities estimate_feature(const Dataset& ds, std::size_t feature_index,
                                double bandwidth, std::size_t points);

} // namespace mvmr
