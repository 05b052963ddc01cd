#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <string>
#include <tuple>
#include <vector>

#include "mvmr/dataset.hpp"

using namespace mvmr;

namespace {

const std::filesystem::path kDataDir = MVMR_TEST_DATA_DIR;

std::filesystem::path write_temp_csv(const std::string& name, const std::string& body) {
    const auto path = std::filesystem::temp_directory_path() / name;
    std::ofstream out(path, std::ios::trunc);
    out << body;
    return path;
}

// Multiset of (row values, label) for partition checks that ignore order.
std::vector<std::pair<std::vector<double>, int>> row_multiset(const Dataset& ds) {
    std::vector<std::pair<std::vector<double>, int>> rows;
    for (std::size_t r = 0; r < ds.rows(); ++r) {
        const auto row = ds.row(r);
        rows.emplace_back(std::vector<double>(row.begin(), row.end()), ds.labels()[r]);
    }
    std::sort(rows.begin(), rows.end());
    return rows;
}

} // namespace

TEST_CASE("dataset constructor enforces its invariants") {
    const std::vector<std::string> names{"a", "b"};
    CHECK_NOTHROW(Dataset({1, 2, 3, 4}, 2, 2, {0, 1}, names));
    // single row
    CHECK_THROWS_AS(Dataset({1, 2}, 1, 2, {0}, names), std::invalid_argument);
    // non-finite entry
    CHECK_THROWS_AS(Dataset({1, std::numeric_limits<double>::quiet_NaN(), 3, 4}, 2, 2, {0, 1}, names),
                    std::invalid_argument);
    // label gap: class 0 missing
    CHECK_THROWS_AS(Dataset({1, 2, 3, 4}, 2, 2, {1, 2}, names), std::invalid_argument);
    // duplicate feature names
    CHECK_THROWS_AS(Dataset({1, 2, 3, 4}, 2, 2, {0, 1}, {"a", "a"}), std::invalid_argument);
    // size mismatch
    CHECK_THROWS_AS(Dataset({1, 2, 3}, 2, 2, {0, 1}, names), std::invalid_argument);
}

TEST_CASE("load_csv parses a small file with a trailing label column") {
    const auto path = write_temp_csv("small.csv",
                                     "f1,f2,f3,cls\n"
                                     "1,2,3,a\n"
                                     "4,5,6,a\n"
                                     "7,8,9,b\n"
                                     "10,11,12,b\n");
    const Dataset ds = load_csv(path);
    CHECK(ds.rows() == 4);
    CHECK(ds.cols() == 3);
    CHECK(ds.class_count() == 2);
    CHECK(ds.labels() == std::vector<int>{0, 0, 1, 1});
    CHECK(ds.at(2, 1) == 8.0);
    CHECK(ds.feature_names() == std::vector<std::string>{"f1", "f2", "f3"});
}

TEST_CASE("load_csv reports the row and column of a bad cell") {
    const auto path = write_temp_csv("bad_cell.csv",
                                     "f1,f2,cls\n"
                                     "1,2,a\n"
                                     "3,abc,b\n");
    try {
        load_csv(path);
        FAIL("expected a parse error");
    } catch (const std::runtime_error& e) {
        const std::string msg = e.what();
        CHECK(msg.find("row 3") != std::string::npos);
        CHECK(msg.find("column 'f2'") != std::string::npos);
    }
}

TEST_CASE("load_csv selects the label column by name or index") {
    const auto path = write_temp_csv("label_col.csv",
                                     "cls,f1,f2\n"
                                     "x,1,2\n"
                                     "y,3,4\n");
    const Dataset by_name = load_csv(path, std::string("cls"));
    CHECK(by_name.cols() == 2);
    CHECK(by_name.labels() == std::vector<int>{0, 1});
    const Dataset by_index = load_csv(path, std::string("0"));
    CHECK(by_index.feature_names() == by_name.feature_names());
}

TEST_CASE("load_csv rejects degenerate files") {
    CHECK_THROWS_AS(load_csv(std::filesystem::path("/nonexistent/file.csv")), std::runtime_error);
    const auto one_row = write_temp_csv("one_row.csv", "f,cls\n1,a\n");
    CHECK_THROWS_AS(load_csv(one_row), std::runtime_error);
    const auto one_class = write_temp_csv("one_class.csv", "f,cls\n1,a\n2,a\n");
    CHECK_THROWS_AS(load_csv(one_class), std::runtime_error);
    const auto no_label = write_temp_csv("no_label.csv", "f,cls\n1,a\n2,b\n");
    CHECK_THROWS_AS(load_csv(no_label, std::string("absent")), std::runtime_error);
}

TEST_CASE("load_csv reads the bundled Iris file") {
    const Dataset iris = load_csv(kDataDir / "iris.csv", std::string("species"));
    CHECK(iris.rows() == 150);
    CHECK(iris.cols() == 4);
    CHECK(iris.class_count() == 3);
    const auto sizes = iris.class_sizes();
    CHECK(sizes == std::vector<std::size_t>{50, 50, 50});
}

TEST_CASE("min_max_normalize maps columns onto [0,1]") {
    const Dataset ds({0, 7, 5, 7, 10, 7}, 3, 2, {0, 0, 1}, {"x", "c"});
    const Dataset norm = min_max_normalize(ds);
    CHECK(norm.column(0) == std::vector<double>{0.0, 0.5, 1.0});
    SUBCASE("constant columns become all-zeros") {
        CHECK(norm.column(1) == std::vector<double>{0.0, 0.0, 0.0});
    }
    SUBCASE("labels and names are untouched") {
        CHECK(norm.labels() == ds.labels());
        CHECK(norm.feature_names() == ds.feature_names());
    }
}

TEST_CASE("min_max_normalize is idempotent") {
    const Dataset iris = load_csv(kDataDir / "iris.csv", std::string("species"));
    const Dataset once = min_max_normalize(iris);
    const Dataset twice = min_max_normalize(once);
    CHECK(once.values() == twice.values());
}

TEST_CASE("min_max_normalize removes positive affine transforms") {
    const Dataset ds({1.3, 2.7, 0.4, 5.9, 3.1, 2.2}, 6, 1, {0, 0, 0, 1, 1, 1}, {"x"});
    std::vector<double> scaled;
    for (const double v : ds.values()) scaled.push_back(3.5 * v - 1.25);
    const Dataset ds2(std::move(scaled), 6, 1, ds.labels(), {"x"});
    const auto a = min_max_normalize(ds).column(0);
    const auto b = min_max_normalize(ds2).column(0);
    for (std::size_t i = 0; i < a.size(); ++i) CHECK(a[i] == doctest::Approx(b[i]).epsilon(1e-12));
}

TEST_CASE("stratified_split keeps class proportions and is deterministic") {
    std::vector<double> values;
    std::vector<int> labels;
    for (int i = 0; i < 10; ++i) {
        values.push_back(static_cast<double>(i));
        labels.push_back(i < 5 ? 0 : 1);
    }
    const Dataset ds(std::move(values), 10, 1, std::move(labels), {"x"});

    const SplitPair split = stratified_split(ds, 0.2, 7);
    CHECK(split.test.rows() == 2);
    CHECK(split.train.rows() == 8);
    CHECK(split.test.class_sizes() == std::vector<std::size_t>{1, 1});

    SUBCASE("same seed reproduces the split") {
        const SplitPair again = stratified_split(ds, 0.2, 7);
        CHECK(split.train.values() == again.train.values());
        CHECK(split.test.values() == again.test.values());
        CHECK(split.train.labels() == again.train.labels());
    }
    SUBCASE("train and test partition the source rows") {
        auto combined = row_multiset(split.train);
        const auto test_rows = row_multiset(split.test);
        combined.insert(combined.end(), test_rows.begin(), test_rows.end());
        std::sort(combined.begin(), combined.end());
        CHECK(combined == row_multiset(ds));
    }
}

TEST_CASE("stratified_split on Iris yields 10 test samples per class") {
    const Dataset iris = load_csv(kDataDir / "iris.csv", std::string("species"));
    const SplitPair split = stratified_split(iris, 0.2, 42);
    CHECK(split.test.rows() == 30);
    CHECK(split.train.rows() == 120);
    CHECK(split.test.class_sizes() == std::vector<std::size_t>{10, 10, 10});
    CHECK(split.train.class_sizes() == std::vector<std::size_t>{40, 40, 40});
}

TEST_CASE("stratified_split rejects singleton classes") {
    const Dataset ds({1, 2, 3}, 3, 1, {0, 0, 1}, {"x"});
    CHECK_THROWS_AS(stratified_split(ds, 0.2, 1), std::invalid_argument);
}

TEST_CASE("make_artificial_iris appends a doubled first column") {
    const Dataset iris = load_csv(kDataDir / "iris.csv", std::string("species"));
    const Dataset art = make_artificial_iris(iris);
    CHECK(art.rows() == 150);
    CHECK(art.cols() == 5);
    CHECK(art.class_count() == 3);
    CHECK(art.feature_names().back() == "2SL");
    for (std::size_t r = 0; r < art.rows(); ++r) CHECK(art.at(r, 4) == 2.0 * art.at(r, 0));
    SUBCASE("a known row doubles 5.1 to 10.2") {
        CHECK(iris.at(0, 0) == 5.1);
        CHECK(art.at(0, 4) == 10.2);
    }
    SUBCASE("requires the 4-feature layout") {
        CHECK_THROWS_AS(make_artificial_iris(art), std::invalid_argument);
    }
}

TEST_CASE("normalized doubled column is bitwise equal to the original") {
    const Dataset iris = load_csv(kDataDir / "iris.csv", std::string("species"));
    const Dataset norm = min_max_normalize(make_artificial_iris(iris));
    CHECK(norm.column(0) == norm.column(4)); // exact: doubling is lossless, min-max cancels it
}
