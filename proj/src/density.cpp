#include "mvmr/density.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace mvmr {

namespace {

std::vector<double> cumulative_trapezoid(const std::vector<double>& pdf, double dx) {
    std::vector<double> cdf(pdf.size(), 0.0);
    for (std::size_t i = 1; i < pdf.size(); ++i)
        cdf[i] = cdf[i - 1] + 0.5 * (pdf[i - 1] + pdf[i]) * dx;
    return cdf;
}

} // namespace

GridSpec make_grid(std::span<const double> samples, double bandwidth, std::size_t points) {
    if (samples.empty()) throw std::invalid_argument("make_grid: empty sample vector");
    if (!(bandwidth > 0.0)) throw std::invalid_argument("make_grid: bandwidth must be positive");
    if (points < 16) throw std::invalid_argument("make_grid: need at least 16 grid points");
    const auto [lo_it, hi_it] = std::minmax_element(samples.begin(), samples.end());
    return GridSpec{*lo_it - 4.0 * bandwidth, *hi_it + 4.0 * bandwidth, points};
}

DensityEstimate kde(std::span<const double> samples, double bandwidth, const GridSpec& grid) {
    if (samples.empty()) throw std::invalid_argument("kde: empty sample vector");
    if (!(bandwidth > 0.0)) throw std::invalid_argument("kde: bandwidth must be positive");
    if (grid.points < 16 || !(grid.lo < grid.hi))
        throw std::invalid_argument("kde: invalid grid");

    const double m = static_cast<double>(samples.size());
    const double norm = 1.0 / (m * bandwidth * std::sqrt(2.0 * std::numbers::pi));
    std::vector<double> pdf(grid.points, 0.0);
    for (std::size_t g = 0; g < grid.points; ++g) {
        const double x = grid.at(g);
        double acc = 0.0;
        for (const double s : samples) {
            const double z = (x - s) / bandwidth;
            acc += std::exp(-0.5 * z * z);
        }
        pdf[g] = acc * norm;
    }
    std::vector<double> cdf = cumulative_trapezoid(pdf, grid.spacing());
    return DensityEstimate{grid, std::move(pdf), std::move(cdf), bandwidth, samples.size()};
}

ClassDensities estimate_feature(const Dataset& ds, std::size_t feature_index, double bandwidth,
                                std::size_t points) {
    if (feature_index >= ds.cols())
        throw std::invalid_argument("estimate_feature: feature index out of range");

    const std::vector<double> column = ds.column(feature_index);
    const GridSpec grid = make_grid(column, bandwidth, points);

    ClassDensities out;
    out.feature_index = feature_index;
    out.ukde = kde(column, bandwidth, grid);
    out.skde.reserve(static_cast<std::size_t>(ds.class_count()));
    for (int cls = 0; cls < ds.class_count(); ++cls) {
        const std::vector<double> members = ds.column_for_class(feature_index, cls);
        if (members.empty())
            throw std::invalid_argument("estimate_feature: class " + std::to_string(cls) +
                                        " has no samples");
        out.skde.push_back(kde(members, bandwidth, grid));
    }
    return out;
}

} // namespace mvmr
