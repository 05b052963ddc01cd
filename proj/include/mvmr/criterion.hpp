#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "mvmr/dataset.hpp"
#include "mvmr/density.hpp"

namespace mvmr {

/// Pointwise order statistics over the per-class density curves:
/// `outer` is the maximum and `overlap` the second-largest value at each
/// grid point. With ties the two coincide, so identical curves give
/// outer == overlap everywhere.
struct Envelopes {
    std::vector<double> outer;
    std::vector<double> overlap;
};

Envelopes class_envelopes(std::span<const DensityEstimate> skde);

/// Inter-class overlap ratio in [0,1]: the integral of the overlap envelope
/// divided by the integral of the outer envelope. Lower means the classes
/// are better separated along this feature.
double compute_sim(const ClassDensities& cd);

/// Wasserstein-1 distance between two densities on the same grid, computed
/// as the trapezoidal integral of |cdf_u - cdf_v|. Symmetric, non-negative,
/// zero iff the pdfs agree on the grid.
double wasserstein1(const DensityEstimate& u, const DensityEstimate& v);

/// Precomputed per-feature relevance and pairwise redundancy for one dataset.
/// `sim[i]` is the overlap ratio of feature i; `red` is the d x d symmetric
/// matrix of Wasserstein-1 distances between unsupervised feature densities,
/// each pair evaluated on a grid shared by both features.
struct FeatureMetricsCache {
    std::size_t feature_count = 0;
    std::vector<double> sim;
    std::vector<double> red; // row-major d x d, zero diagonal
    bool normalized = false;

    double red_at(std::size_t i, std::size_t j) const { return red[i * feature_count + j]; }
};

/// Builds the cache in one pass. With `normalize` set the features are
/// min-max normalized first; redundancy uses unsupervised densities only.
FeatureMetricsCache build_cache(const Dataset& ds, double bandwidth,
                                std::size_t points, bool normalize);

/// The subset score (lower is better) over the selected features S with
/// k = |S| >= 1:
///
///   corr  = sum_{i in S} sim[i] / k
///   red_S = sum_{i<j in S} red[i][j] / k
///   score = sqrt(k) * corr / sqrt(k + k(k-1) * red_S)
///
/// Throws std::invalid_argument on an empty mask.
double mvmr_score(const FeatureMetricsCache& cache, std::span<const std::uint8_t> mask);

/// d x d matrix of pairwise subset scores: entry (i,j), i != j, scores the
/// subset {i,j}; the diagonal scores the 2-element multiset {i,i}, which
/// reduces to sim[i] because red(i,i) = 0.
std::vector<double> pairwise_mvmr_matrix(const FeatureMetricsCache& cache);

} // namespace mvmr
