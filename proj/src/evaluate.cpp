#include "mvmr/evaluate.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <memory>
#include <numbers>
#include <numeric>
#include <stdexcept>
#include <utility>

namespace mvmr {

namespace {

std::vector<std::size_t> mask_to_indices(std::span<const std::uint8_t> mask) {
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < mask.size(); ++i)
        if (mask[i]) idx.push_back(i);
    return idx;
}

Dataset select_columns(const Dataset& ds, std::span<const std::size_t> cols) {
    std::vector<double> values;
    values.reserve(ds.rows() * cols.size());
    for (std::size_t r = 0; r < ds.rows(); ++r)
        for (const std::size_t c : cols) values.push_back(ds.at(r, c));
    std::vector<std::string> names;
    for (const std::size_t c : cols) names.push_back(ds.feature_names()[c]);
    return Dataset(std::move(values), ds.rows(), cols.size(), ds.labels(), std::move(names));
}

FeatureMatrix rows_as_matrix(const Dataset& ds, std::span<const std::size_t> cols) {
    FeatureMatrix m;
    m.rows = ds.rows();
    m.cols = cols.size();
    m.values.reserve(m.rows * m.cols);
    for (std::size_t r = 0; r < ds.rows(); ++r)
        for (const std::size_t c : cols) m.values.push_back(ds.at(r, c));
    return m;
}

int majority_label(std::span<const int> labels, int class_count) {
    std::vector<std::size_t> counts(static_cast<std::size_t>(class_count), 0);
    for (const int l : labels) ++counts[static_cast<std::size_t>(l)];
    int best = 0;
    for (int c = 1; c < class_count; ++c)
        if (counts[static_cast<std::size_t>(c)] > counts[static_cast<std::size_t>(best)]) best = c;
    return best; // ascending scan keeps the smallest id on ties
}

} // namespace

std::vector<int> knn_predict(const Dataset& train, const FeatureMatrix& queries, std::size_t k) {
    if (train.rows() == 0) throw std::invalid_argument("knn: empty training set");
    if (k < 1 || k > train.rows())
        throw std::invalid_argument("knn: k must lie in [1, train size]");
    if (queries.cols != train.cols())
        throw std::invalid_argument("knn: query/train column mismatch");

    std::vector<int> out;
    out.reserve(queries.rows);
    std::vector<std::size_t> order(train.rows());
    std::vector<double> dist(train.rows());
    for (std::size_t q = 0; q < queries.rows; ++q) {
        const auto query = queries.row(q);
        for (std::size_t r = 0; r < train.rows(); ++r) {
            double acc = 0.0;
            const auto row = train.row(r);
            for (std::size_t c = 0; c < query.size(); ++c) {
                const double diff = row[c] - query[c];
                acc += diff * diff;
            }
            dist[r] = acc; // squared distance orders the same as Euclidean
        }
        std::iota(order.begin(), order.end(), std::size_t{0});
        std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
            if (dist[a] != dist[b]) return dist[a] < dist[b];
            return a < b; // distance ties: lower training-row index first
        });
        std::vector<std::size_t> votes(static_cast<std::size_t>(train.class_count()), 0);
        for (std::size_t i = 0; i < k; ++i) ++votes[static_cast<std::size_t>(train.labels()[order[i]])];
        int winner = 0;
        for (int c = 1; c < train.class_count(); ++c)
            if (votes[static_cast<std::size_t>(c)] > votes[static_cast<std::size_t>(winner)])
                winner = c;
        out.push_back(winner);
    }
    return out;
}

std::vector<int> gnb_predict(const Dataset& train, const FeatureMatrix& queries) {
    if (queries.cols != train.cols())
        throw std::invalid_argument("gnb: query/train column mismatch");
    constexpr double kVarianceFloor = 1e-9;
    const auto c = static_cast<std::size_t>(train.class_count());
    const std::size_t d = train.cols();

    std::vector<double> mean(c * d, 0.0);
    std::vector<double> var(c * d, 0.0);
    std::vector<double> log_prior(c, 0.0);
    const std::vector<std::size_t> sizes = train.class_sizes();
    for (std::size_t r = 0; r < train.rows(); ++r) {
        const auto cls = static_cast<std::size_t>(train.labels()[r]);
        for (std::size_t j = 0; j < d; ++j) mean[cls * d + j] += train.at(r, j);
    }
    for (std::size_t cls = 0; cls < c; ++cls)
        for (std::size_t j = 0; j < d; ++j) mean[cls * d + j] /= static_cast<double>(sizes[cls]);
    for (std::size_t r = 0; r < train.rows(); ++r) {
        const auto cls = static_cast<std::size_t>(train.labels()[r]);
        for (std::size_t j = 0; j < d; ++j) {
            const double diff = train.at(r, j) - mean[cls * d + j];
            var[cls * d + j] += diff * diff;
        }
    }
    for (std::size_t cls = 0; cls < c; ++cls) {
        for (std::size_t j = 0; j < d; ++j)
            var[cls * d + j] =
                std::max(var[cls * d + j] / static_cast<double>(sizes[cls]), kVarianceFloor);
        log_prior[cls] =
            std::log(static_cast<double>(sizes[cls]) / static_cast<double>(train.rows()));
    }

    std::vector<int> out;
    out.reserve(queries.rows);
    for (std::size_t q = 0; q < queries.rows; ++q) {
        const auto query = queries.row(q);
        int winner = 0;
        double best_score = -std::numeric_limits<double>::infinity();
        for (std::size_t cls = 0; cls < c; ++cls) {
            double score = log_prior[cls];
            for (std::size_t j = 0; j < d; ++j) {
                const double v = var[cls * d + j];
                const double diff = query[j] - mean[cls * d + j];
                score += -0.5 * std::log(2.0 * std::numbers::pi * v) - diff * diff / (2.0 * v);
            }
            if (score > best_score) { // strict: posterior ties keep the smaller id
                best_score = score;
                winner = static_cast<int>(cls);
            }
        }
        out.push_back(winner);
    }
    return out;
}

namespace {

// CART with deterministic tie-breaking. Zero-gain splits are admissible, so
// impure nodes keep splitting while any feature still varies; recursion
// terminates because both children are always non-empty.
struct TreeNode {
    int label = -1; // leaf when >= 0
    std::size_t feature = 0;
    double threshold = 0.0;
    std::unique_ptr<TreeNode> left;
    std::unique_ptr<TreeNode> right;
};

double gini_weighted(std::span<const std::size_t> counts, std::size_t total) {
    if (total == 0) return 0.0;
    double sum_sq = 0.0;
    for (const std::size_t c : counts) {
        const double p = static_cast<double>(c);
        sum_sq += p * p;
    }
    const double n = static_cast<double>(total);
    return n - sum_sq / n; // n * gini(node)
}

std::unique_ptr<TreeNode> build_tree(const Dataset& train, std::vector<std::size_t> rows) {
    auto node = std::make_unique<TreeNode>();
    const auto class_count = static_cast<std::size_t>(train.class_count());

    std::vector<std::size_t> counts(class_count, 0);
    for (const std::size_t r : rows) ++counts[static_cast<std::size_t>(train.labels()[r])];
    const std::size_t present =
        static_cast<std::size_t>(std::count_if(counts.begin(), counts.end(),
                                               [](std::size_t c) { return c > 0; }));
    if (present <= 1) {
        node->label = train.labels()[rows.front()];
        return node;
    }

    const double parent_impurity = gini_weighted(counts, rows.size());
    bool found = false;
    double best_gain = -1.0;
    std::size_t best_feature = 0;
    double best_threshold = 0.0;

    std::vector<std::pair<double, int>> sorted; // (value, label) within the node
    for (std::size_t f = 0; f < train.cols(); ++f) {
        sorted.clear();
        for (const std::size_t r : rows) sorted.emplace_back(train.at(r, f), train.labels()[r]);
        std::sort(sorted.begin(), sorted.end(),
                  [](const auto& a, const auto& b) { return a.first < b.first; });

        std::vector<std::size_t> left_counts(class_count, 0);
        std::size_t left_n = 0;
        for (std::size_t i = 0; i + 1 < sorted.size(); ++i) {
            ++left_counts[static_cast<std::size_t>(sorted[i].second)];
            ++left_n;
            if (sorted[i].first == sorted[i + 1].first) continue;
            std::vector<std::size_t> right_counts(class_count);
            for (std::size_t c = 0; c < class_count; ++c)
                right_counts[c] = counts[c] - left_counts[c];
            const double gain = parent_impurity - gini_weighted(left_counts, left_n) -
                                gini_weighted(right_counts, rows.size() - left_n);
            if (!found || gain > best_gain) { // strict: ties keep lower feature, then threshold
                found = true;
                best_gain = gain;
                best_feature = f;
                best_threshold = 0.5 * (sorted[i].first + sorted[i + 1].first);
            }
        }
    }

    if (!found) { // impure but constant in every feature
        node->label = majority_label(
            [&] {
                std::vector<int> labels;
                for (const std::size_t r : rows) labels.push_back(train.labels()[r]);
                return labels;
            }(),
            train.class_count());
        return node;
    }

    std::vector<std::size_t> left_rows, right_rows;
    for (const std::size_t r : rows) {
        if (train.at(r, best_feature) <= best_threshold)
            left_rows.push_back(r);
        else
            right_rows.push_back(r);
    }
    node->feature = best_feature;
    node->threshold = best_threshold;
    node->left = build_tree(train, std::move(left_rows));
    node->right = build_tree(train, std::move(right_rows));
    return node;
}

int tree_classify(const TreeNode* node, std::span<const double> query) {
    while (node->label < 0)
        node = query[node->feature] <= node->threshold ? node->left.get() : node->right.get();
    return node->label;
}

} // namespace

std::vector<int> dt_predict(const Dataset& train, const FeatureMatrix& queries) {
    if (queries.cols != train.cols())
        throw std::invalid_argument("dt: query/train column mismatch");
    std::vector<std::size_t> all_rows(train.rows());
    std::iota(all_rows.begin(), all_rows.end(), std::size_t{0});
    const std::unique_ptr<TreeNode> root = build_tree(train, std::move(all_rows));

    std::vector<int> out;
    out.reserve(queries.rows);
    for (std::size_t q = 0; q < queries.rows; ++q)
        out.push_back(tree_classify(root.get(), queries.row(q)));
    return out;
}

double accuracy(std::span<const int> predicted, std::span<const int> truth) {
    if (predicted.size() != truth.size())
        throw std::invalid_argument("accuracy: length mismatch");
    if (predicted.empty()) throw std::invalid_argument("accuracy: empty input");
    std::size_t correct = 0;
    for (std::size_t i = 0; i < predicted.size(); ++i)
        if (predicted[i] == truth[i]) ++correct;
    return static_cast<double>(correct) / static_cast<double>(predicted.size());
}

double variance(std::span<const double> values) {
    if (values.empty()) throw std::invalid_argument("variance: empty input");
    const double n = static_cast<double>(values.size());
    const double mean = std::accumulate(values.begin(), values.end(), 0.0) / n;
    double acc = 0.0;
    for (const double v : values) acc += (v - mean) * (v - mean);
    return acc / n;
}

double pearson(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size()) throw std::invalid_argument("pearson: length mismatch");
    if (x.size() < 2) throw std::invalid_argument("pearson: need at least 2 points");
    const double n = static_cast<double>(x.size());
    const double mx = std::accumulate(x.begin(), x.end(), 0.0) / n;
    const double my = std::accumulate(y.begin(), y.end(), 0.0) / n;
    double cov = 0.0, vx = 0.0, vy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        cov += (x[i] - mx) * (y[i] - my);
        vx += (x[i] - mx) * (x[i] - mx);
        vy += (y[i] - my) * (y[i] - my);
    }
    if (vx == 0.0 || vy == 0.0)
        throw std::invalid_argument("pearson: constant input has no correlation");
    return cov / std::sqrt(vx * vy);
}

EvalReport evaluate_subset(const SplitPair& split, std::span<const std::uint8_t> mask,
                           std::uint64_t seed) {
    const std::vector<std::size_t> selected = mask_to_indices(mask);
    if (selected.empty()) throw std::invalid_argument("evaluate_subset: empty mask");
    if (mask.size() != split.train.cols())
        throw std::invalid_argument("evaluate_subset: mask length mismatch");

    const Dataset train = select_columns(split.train, selected);
    const FeatureMatrix queries = rows_as_matrix(split.test, selected);
    const std::vector<int>& truth = split.test.labels();

    EvalReport report;
    report.selected = selected;
    report.seed = seed;
    report.knn_acc = accuracy(knn_predict(train, queries), truth);
    report.gnb_acc = accuracy(gnb_predict(train, queries), truth);
    report.dt_acc = accuracy(dt_predict(train, queries), truth);
    const std::array accs{report.knn_acc, report.gnb_acc, report.dt_acc};
    report.avg_acc = (accs[0] + accs[1] + accs[2]) / 3.0;
    report.variance = variance(accs);
    return report;
}

std::vector<double> pairwise_accuracy_matrix(const SplitPair& split, std::uint64_t seed) {
    const std::size_t d = split.train.cols();
    std::vector<double> matrix(d * d, 0.0);
    std::vector<std::uint8_t> mask(d, 0);
    for (std::size_t i = 0; i < d; ++i) {
        for (std::size_t j = i; j < d; ++j) {
            std::fill(mask.begin(), mask.end(), 0);
            mask[i] = mask[j] = 1;
            const double acc = evaluate_subset(split, mask, seed).avg_acc;
            matrix[i * d + j] = acc;
            matrix[j * d + i] = acc;
        }
    }
    return matrix;
}

} // namespace mvmr
