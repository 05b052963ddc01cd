#include "mvmr/dataset.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <set>
#include <stdexcept>
#include <string>
#include <unordered_map>

#include "mvmr/rng.hpp"

namespace mvmr {

Dataset::Dataset(std::vector<double> values, std::size_t rows, std::size_t cols,
                 std::vector<int> labels, std::vector<std::string> feature_names)
    : values_(std::move(values)), rows_(rows), cols_(cols),
      labels_(std::move(labels)), names_(std::move(feature_names)) {
    if (rows_ < 2) throw std::invalid_argument("dataset needs at least 2 rows");
    if (cols_ < 1) throw std::invalid_argument("dataset needs at least 1 feature");
    if (values_.size() != rows_ * cols_)
        throw std::invalid_argument("value buffer size does not match rows * cols");
    if (labels_.size() != rows_)
        throw std::invalid_argument("label count does not match row count");
    if (names_.size() != cols_)
        throw std::invalid_argument("feature name count does not match column count");
    for (double v : values_)
        if (!std::isfinite(v)) throw std::invalid_argument("dataset contains a non-finite value");

    const std::set<std::string> unique_names(names_.begin(), names_.end());
    if (unique_names.size() != names_.size())
        throw std::invalid_argument("feature names must be distinct");

    int max_label = 0;
    for (int l : labels_) {
        if (l < 0) throw std::invalid_argument("labels must be non-negative");
        max_label = std::max(max_label, l);
    }
    class_count_ = max_label + 1;
    std::vector<bool> seen(static_cast<std::size_t>(class_count_), false);
    for (int l : labels_) seen[static_cast<std::size_t>(l)] = true;
    if (!std::all_of(seen.begin(), seen.end(), [](bool b) { return b; }))
        throw std::invalid_argument("class ids must be contiguous with every class present");
    if (class_count_ < 1) throw std::invalid_argument("dataset needs at least one class");
}

std::vector<double> Dataset::column(std::size_t col) const {
    std::vector<double> out(rows_);
    for (std::size_t r = 0; r < rows_; ++r) out[r] = at(r, col);
    return out;
}

std::vector<double> Dataset::column_for_class(std::size_t col, int label) const {
    std::vector<double> out;
    for (std::size_t r = 0; r < rows_; ++r)
        if (labels_[r] == label) out.push_back(at(r, col));
    return out;
}

std::vector<std::size_t> Dataset::class_sizes() const {
    std::vector<std::size_t> sizes(static_cast<std::size_t>(class_count_), 0);
    for (int l : labels_) ++sizes[static_cast<std::size_t>(l)];
    return sizes;
}

namespace {

// One CSV record, honoring quoted fields ("" escapes a quote).
std::vector<std::string> split_csv_record(const std::string& line) {
    std::vector<std::string> fields;
    std::string cur;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char ch = line[i];
        if (quoted) {
            if (ch == '"') {
                if (i + 1 < line.size() && line[i + 1] == '"') {
                    cur.push_back('"');
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                cur.push_back(ch);
            }
        } else if (ch == '"') {
            quoted = true;
        } else if (ch == ',') {
            fields.push_back(std::move(cur));
            cur.clear();
        } else {
            cur.push_back(ch);
        }
    }
    fields.push_back(std::move(cur));
    return fields;
}

bool parse_finite_double(const std::string& text, double& out) {
    const char* begin = text.data();
    const char* end = begin + text.size();
    while (begin < end && (*begin == ' ' || *begin == '\t')) ++begin;
    while (end > begin && (end[-1] == ' ' || end[-1] == '\t')) --end;
    double parsed = 0.0;
    auto [ptr, ec] = std::from_chars(begin, end, parsed);
    if (ec != std::errc{} || ptr != end || begin == end || !std::isfinite(parsed)) return false;
    out = parsed;
    return true;
}

std::string strip_line_ending(std::string line) {
    while (!line.empty() && (line.back() == '\r' || line.back() == '\n')) line.pop_back();
    return line;
}

} // namespace

Dataset load_csv(const std::filesystem::path& path,
                 const std::optional<std::string>& label_column) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open file: " + path.string());

    std::string line;
    if (!std::getline(in, line)) throw std::runtime_error("empty file: " + path.string());
    const std::vector<std::string> header = split_csv_record(strip_line_ending(line));
    const std::size_t total_cols = header.size();
    if (total_cols < 2)
        throw std::runtime_error("need at least one feature column and one label column");

    // Resolve the label column: header name first, then 0-based index,
    // defaulting to the last column.
    std::size_t label_idx = total_cols - 1;
    if (label_column) {
        const auto it = std::find(header.begin(), header.end(), *label_column);
        if (it != header.end()) {
            label_idx = static_cast<std::size_t>(it - header.begin());
        } else {
            std::size_t idx = 0;
            auto [ptr, ec] = std::from_chars(label_column->data(),
                                             label_column->data() + label_column->size(), idx);
            if (ec != std::errc{} || ptr != label_column->data() + label_column->size() ||
                idx >= total_cols)
                throw std::runtime_error("label column not found: " + *label_column);
            label_idx = idx;
        }
    }

    std::vector<std::string> names;
    for (std::size_t c = 0; c < total_cols; ++c)
        if (c != label_idx) names.push_back(header[c]);

    std::vector<double> values;
    std::vector<int> labels;
    std::unordered_map<std::string, int> label_ids; // first-appearance encoding
    std::size_t row_number = 1;                     // header is line 1
    while (std::getline(in, line)) {
        ++row_number;
        const std::string stripped = strip_line_ending(line);
        if (stripped.empty()) continue;
        const std::vector<std::string> fields = split_csv_record(stripped);
        if (fields.size() != total_cols)
            throw std::runtime_error("row " + std::to_string(row_number) + " has " +
                                     std::to_string(fields.size()) + " fields, expected " +
                                     std::to_string(total_cols));
        for (std::size_t c = 0; c < total_cols; ++c) {
            if (c == label_idx) {
                const auto [it, inserted] =
                    label_ids.try_emplace(fields[c], static_cast<int>(label_ids.size()));
                labels.push_back(it->second);
            } else {
                double v = 0.0;
                if (!parse_finite_double(fields[c], v))
                    throw std::runtime_error("row " + std::to_string(row_number) + ", column '" +
                                             header[c] + "': cannot parse '" + fields[c] +
                                             "' as a real number");
                values.push_back(v);
            }
        }
    }

    if (labels.size() < 2) throw std::runtime_error("need at least 2 data rows");
    if (label_ids.size() < 2) throw std::runtime_error("need at least 2 distinct classes");
    const std::size_t row_count = labels.size(); // read before the move below
    return Dataset(std::move(values), row_count, total_cols - 1, std::move(labels),
                   std::move(names));
}

Dataset min_max_normalize(const Dataset& ds) {
    const std::size_t n = ds.rows();
    const std::size_t d = ds.cols();
    std::vector<double> lo(d, std::numeric_limits<double>::infinity());
    std::vector<double> hi(d, -std::numeric_limits<double>::infinity());
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < d; ++c) {
            lo[c] = std::min(lo[c], ds.at(r, c));
            hi[c] = std::max(hi[c], ds.at(r, c));
        }
    std::vector<double> out(n * d);
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < d; ++c) {
            const double range = hi[c] - lo[c];
            out[r * d + c] = range > 0.0 ? (ds.at(r, c) - lo[c]) / range : 0.0;
        }
    return Dataset(std::move(out), n, d, ds.labels(), ds.feature_names());
}

SplitPair stratified_split(const Dataset& ds, double test_fraction, std::uint64_t seed) {
    if (!(test_fraction > 0.0 && test_fraction < 1.0))
        throw std::invalid_argument("test_fraction must lie in (0,1)");
    const std::vector<std::size_t> sizes = ds.class_sizes();
    for (std::size_t c = 0; c < sizes.size(); ++c)
        if (sizes[c] < 2)
            throw std::invalid_argument("class " + std::to_string(c) +
                                        " has fewer than 2 samples and cannot be split");

    Rng rng(seed);
    std::vector<bool> in_test(ds.rows(), false);
    for (int cls = 0; cls < ds.class_count(); ++cls) {
        std::vector<std::size_t> idx;
        for (std::size_t r = 0; r < ds.rows(); ++r)
            if (ds.labels()[r] == cls) idx.push_back(r);
        // Fisher-Yates with our own index draws.
        for (std::size_t i = idx.size() - 1; i > 0; --i)
            std::swap(idx[i], idx[rand_index(rng, i + 1)]);
        const auto want = static_cast<std::size_t>(
            std::llround(test_fraction * static_cast<double>(idx.size())));
        // Both sides must keep every class represented.
        const std::size_t take = std::clamp<std::size_t>(want, 1, idx.size() - 1);
        for (std::size_t i = 0; i < take; ++i) in_test[idx[i]] = true;
    }

    std::vector<double> train_values, test_values;
    std::vector<int> train_labels, test_labels;
    for (std::size_t r = 0; r < ds.rows(); ++r) {
        auto& values = in_test[r] ? test_values : train_values;
        auto& labels = in_test[r] ? test_labels : train_labels;
        const auto row = ds.row(r);
        values.insert(values.end(), row.begin(), row.end());
        labels.push_back(ds.labels()[r]);
    }
    const std::size_t train_n = train_labels.size(); // read before the moves below
    const std::size_t test_n = test_labels.size();
    Dataset train(std::move(train_values), train_n, ds.cols(), std::move(train_labels),
                  ds.feature_names());
    Dataset test(std::move(test_values), test_n, ds.cols(), std::move(test_labels),
                 ds.feature_names());
    return SplitPair{std::move(train), std::move(test), seed};
}

Dataset make_artificial_iris(const Dataset& iris) {
    if (iris.cols() != 4)
        throw std::invalid_argument("expected the 4-feature Iris dataset, got " +
                                    std::to_string(iris.cols()) + " features");
    const std::size_t n = iris.rows();
    std::vector<double> values(n * 5);
    for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t c = 0; c < 4; ++c) values[r * 5 + c] = iris.at(r, c);
        values[r * 5 + 4] = 2.0 * iris.at(r, 0);
    }
    std::vector<std::string> names = iris.feature_names();
    names.push_back("2" + names[0]);
    return Dataset(std::move(values), n, 5, iris.labels(), std::move(names));
}

} // namespace mvmr
