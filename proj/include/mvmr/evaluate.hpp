#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "mvmr/dataset.hpp"

namespace mvmr {

/// Label-free matrix of query rows for the classifiers.
struct FeatureMatrix {
    std::vector<double> values; // row-major
    std::size_t rows = 0;
    std::size_t cols = 0;

    std::span<const double> row(std::size_t r) const { return {values.data() + r * cols, cols}; }
};

/// Per-subset evaluation: one accuracy per classifier plus their mean and
/// population variance.
struct EvalReport {
    double knn_acc = 0.0;
    double gnb_acc = 0.0;
    double dt_acc = 0.0;
    double avg_acc = 0.0;
    double variance = 0.0;
    std::vector<std::size_t> selected;
    std::uint64_t seed = 0;
};

/// k-nearest-neighbour vote under Euclidean distance. Distance ties break
/// toward the lower training-row index, vote ties toward the smaller class
/// id, so predictions are reproducible across platforms.
std::vector<int> knn_predict(const Dataset& train, const FeatureMatrix& queries, std::size_t k = 3);

/// Gaussian naive Bayes with per-class/per-feature moments; variances are
/// floored at 1e-9. Posterior ties go to the smaller class id.
std::vector<int> gnb_predict(const Dataset& train, const FeatureMatrix& queries);

/// CART decision tree: binary splits at midpoints between sorted distinct
/// values, chosen by Gini impurity, grown until nodes are pure or no split
/// exists. Equal-gain splits prefer the lower feature index, then the lower
/// threshold. Leaves predict the majority class (ties to the smaller id).
std::vector<int> dt_predict(const Dataset& train, const FeatureMatrix& queries);

/// Fraction of matching labels.
double accuracy(std::span<const int> predicted, std::span<const int> truth);

/// Population variance (divides by the element count).
double variance(std::span<const double> values);

/// Pearson correlation with population statistics. Throws on constant input.
double pearson(std::span<const double> x, std::span<const double> y);

/// Restricts both halves of the split to the masked columns, runs the three
/// classifiers trained on `train` against `test`, and assembles the report.
EvalReport evaluate_subset(const SplitPair& split, std::span<const std::uint8_t> mask,
                           std::uint64_t seed);

/// d x d matrix of avg-of-three-classifier accuracies per feature pair
/// {i,j}; the diagonal uses the single feature {i} (for these classifiers a
/// duplicated column predicts identically under balanced priors).
std::vector<double> pairwise_accuracy_matrix(const SplitPair& split, std::uint64_t seed);

} // namespace mvmr
