#include "mvmr/criterion.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace mvmr {

namespace {

double trapezoid(const std::vector<double>& values, double dx) {
    double acc = 0.0;
    for (std::size_t i = 1; i < values.size(); ++i) acc += 0.5 * (values[i - 1] + values[i]);
    return acc * dx;
}

} // namespace

Envelopes class_envelopes(std::span<const DensityEstimate> skde) {
    if (skde.size() < 2)
        throw std::invalid_argument("class_envelopes: need at least 2 classes");
    const GridSpec& grid = skde.front().grid;
    for (const auto& est : skde)
        if (est.grid != grid)
            throw std::invalid_argument("class_envelopes: estimates must share one grid");

    Envelopes env;
    env.outer.resize(grid.points);
    env.overlap.resize(grid.points);
    for (std::size_t g = 0; g < grid.points; ++g) {
        // Largest and second-largest over the class curves; equal maxima
        // make the two coincide.
        double top = -1.0, second = -1.0;
        for (const auto& est : skde) {
            const double v = est.pdf[g];
            if (v > top) {
                second = top;
                top = v;
            } else if (v > second) {
                second = v;
            }
        }
        env.outer[g] = top;
        env.overlap[g] = second;
    }
    return env;
}

double compute_sim(const ClassDensities& cd) {
    const Envelopes env = class_envelopes(cd.skde);
    const double dx = cd.skde.front().grid.spacing();
    const double outer_area = trapezoid(env.outer, dx);
    if (!(outer_area > 0.0))
        throw std::logic_error("compute_sim: outer envelope has non-positive area");
    return trapezoid(env.overlap, dx) / outer_area;
}

double wasserstein1(const DensityEstimate& u, const DensityEstimate& v) {
    if (u.grid != v.grid)
        throw std::invalid_argument("wasserstein1: estimates must share one grid");
    std::vector<double> diff(u.grid.points);
    for (std::size_t g = 0; g < u.grid.points; ++g) diff[g] = std::abs(u.cdf[g] - v.cdf[g]);
    return trapezoid(diff, u.grid.spacing());
}

FeatureMetricsCache build_cache(const Dataset& ds, double bandwidth, std::size_t points,
                                bool normalize) {
    const Dataset& data = normalize ? min_max_normalize(ds) : ds;
    const std::size_t d = data.cols();

    FeatureMetricsCache cache;
    cache.feature_count = d;
    cache.normalized = normalize;
    cache.sim.resize(d);
    cache.red.assign(d * d, 0.0);

    for (std::size_t j = 0; j < d; ++j)
        cache.sim[j] = compute_sim(estimate_feature(data, j, bandwidth, points));

    // Redundancy from unsupervised densities only. Each pair shares one grid
    // spanning both features' padded ranges so the CDFs are comparable.
    std::vector<std::vector<double>> columns(d);
    for (std::size_t j = 0; j < d; ++j) columns[j] = data.column(j);
    for (std::size_t i = 0; i < d; ++i) {
        for (std::size_t j = i + 1; j < d; ++j) {
            const auto [lo_i, hi_i] = std::minmax_element(columns[i].begin(), columns[i].end());
            const auto [lo_j, hi_j] = std::minmax_element(columns[j].begin(), columns[j].end());
            const GridSpec grid{std::min(*lo_i, *lo_j) - 4.0 * bandwidth,
                                std::max(*hi_i, *hi_j) + 4.0 * bandwidth, points};
            const double w = wasserstein1(kde(columns[i], bandwidth, grid),
                                          kde(columns[j], bandwidth, grid));
            cache.red[i * d + j] = w;
            cache.red[j * d + i] = w;
        }
    }
    return cache;
}

double mvmr_score(const FeatureMetricsCache& cache, std::span<const std::uint8_t> mask) {
    if (mask.size() != cache.feature_count)
        throw std::invalid_argument("mvmr_score: mask length does not match feature count");
    std::vector<std::size_t> selected;
    for (std::size_t i = 0; i < mask.size(); ++i)
        if (mask[i]) selected.push_back(i);
    if (selected.empty()) throw std::invalid_argument("mvmr_score: empty feature subset");

    const double k = static_cast<double>(selected.size());
    double sim_sum = 0.0;
    for (const std::size_t i : selected) sim_sum += cache.sim[i];
    const double corr = sim_sum / k;

    double red_sum = 0.0;
    for (std::size_t a = 0; a < selected.size(); ++a)
        for (std::size_t b = a + 1; b < selected.size(); ++b)
            red_sum += cache.red_at(selected[a], selected[b]);
    const double red = red_sum / k;

    return std::sqrt(k) * corr / std::sqrt(k + k * (k - 1.0) * red);
}

std::vector<double> pairwise_mvmr_matrix(const FeatureMetricsCache& cache) {
    const std::size_t d = cache.feature_count;
    std::vector<double> matrix(d * d, 0.0);
    std::vector<std::uint8_t> mask(d, 0);
    for (std::size_t i = 0; i < d; ++i) {
        // The multiset {i,i} has red(i,i) = 0, so the score collapses to sim[i].
        matrix[i * d + i] = cache.sim[i];
        for (std::size_t j = i + 1; j < d; ++j) {
            std::fill(mask.begin(), mask.end(), 0);
            mask[i] = mask[j] = 1;
            const double score = mvmr_score(cache, mask);
            matrix[i * d + j] = score;
            matrix[j * d + i] = score;
        }
    }
    return matrix;
}

} // namespace mvmr
