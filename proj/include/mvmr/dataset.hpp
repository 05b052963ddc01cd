#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace mvmr {

/// In-memory tabular dataset: an n[x]d real-valued feature matrix plus one
/// integer class label per row. Labels are contiguous ids in {0..c-1} and
/// every class occurs at least once. Immutable after construction.
class Dataset {
public:
    /// Validates and takes ownership of the buffers. `values` is row-major
    /// with `rows * cols` finite entries; `labels` has `rows` entries.
    /// Throws std::invalid_argument on any violated invariant.
    Dataset(std::vector<double> values, std::size_t rows, std::size_t cols,
            std::vector<int> labels, std::vector<std::string> feature_names);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    int class_count() const { return class_count_; }

    double at(std::size_t row, std::size_t col) const { return values_[row * cols_ + col]; }
    std::span<const double> row(std::size_t r) const {
        return {values_.data() + r * cols_, cols_};
    }
    const std::vector<double>& values() const { return values_; }
    const std::vector<int>& labels() const { return labels_; }
    const std::vector<std::string>& feature_names() const { return names_; }

    /// Copy of feature column `col` over all rows.
    std::vector<double> column(std::size_t col) const;
    /// Copy of feature column `col` restricted to rows with the given label.
    std::vector<double> column_for_class(std::size_t col, int label) const;
    /// Number of samples per class, indexed by class id.
    std::vector<std::size_t> class_sizes() const;

private:
    std::vector<double> values_;
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<int> labels_;
    std::vector<std::string> names_;
    int class_count_ = 0;
};

/// An 80/20-style partition of a dataset. Train and test share the feature
/// schema and class set of the source.
struct SplitPair {
    Dataset train;
    Dataset test;
    std::uint64_t seed = 0;
};

/// Loads an RFC-4180-style CSV with a header row. Every non-label cell must
/// parse as a finite real. `label_column` selects the label column by header
/// name or 0-based index; when empty the last column is used. Labels are
/// re-encoded to contiguous ids in order of first appearance.
/// Throws std::runtime_error naming the offending row/column on parse errors.
Dataset load_csv(const std::filesystem::path& path,
                 const std::optional<std::string>& label_column = std::nullopt);

/// Maps every column affinely onto [0,1]. Constant columns become all-zeros.
/// Labels and names are unchanged.
Dataset min_max_normalize(const Dataset& ds);

/// Deterministic stratified split: class proportions are preserved within
/// rounding and each class keeps at least one sample on both sides.
/// Requires every class to have at least 2 samples.
SplitPair stratified_split(const Dataset& ds, double test_fraction, std::uint64_t seed);

/// Builds the 5-feature validation dataset [SL, SW, PL, PW, 2SL] from the
/// 4-feature Iris dataset, where 2SL doubles the first column elementwise.
Dataset make_artificial_iris(const Dataset& iris);

} // namespace mvmr
