// mvmrfs: density-based feature selection for continuous tabular data.
//
// Subcommands:
//   select          run the GA-driven subset search and evaluate the result
//   matrix          export the pairwise subset-score matrix (CSV + JSON)
//   reproduce-iris  run the bundled Iris validation experiment
//
// All reports are written atomically (temp file + rename) and contain no
// timestamps, so identical inputs and flags give byte-identical output.
// MVMR_LOG={quiet,warn,info,debug} controls stderr verbosity.

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "mvmr/criterion.hpp"
#include "mvmr/dataset.hpp"
#include "mvmr/evaluate.hpp"
#include "mvmr/search.hpp"

using json = nlohmann::json;
using namespace mvmr;

namespace {

int log_level() {
    static const int level = [] {
        const char* raw = std::getenv("MVMR_LOG");
        if (!raw) return 1;
        const std::string v(raw);
        if (v == "quiet") return 0;
        if (v == "warn") return 1;
        if (v == "info") return 2;
        if (v == "debug") return 3;
        return 1;
    }();
    return level;
}

void log_info(const std::string& msg) {
    if (log_level() >= 2) std::cerr << "[info] " << msg << "\n";
}

void log_debug(const std::string& msg) {
    if (log_level() >= 3) std::cerr << "[debug] " << msg << "\n";
}

// Options shared by every subcommand.
struct CommonOptions {
    std::string input;
    std::string label;
    double bandwidth = 1.0;
    std::size_t grid_points = 512;
    bool no_normalize = false;
    std::uint64_t seed = 1;
};

void add_common_options(CLI::App& cmd, CommonOptions& opt, bool with_label = true) {
    cmd.add_option("-i,--input", opt.input, "input CSV file")->required();
    if (with_label)
        cmd.add_option("--label", opt.label,
                       "label column, by header name or 0-based index (default: last column)");
    cmd.add_option("--bandwidth", opt.bandwidth, "kernel bandwidth h")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    cmd.add_option("--grid-points", opt.grid_points, "density grid resolution")
        ->check(CLI::Range(std::size_t{16}, std::size_t{1u << 20}))
        ->capture_default_str();
    cmd.add_flag("--no-normalize", opt.no_normalize, "skip min-max normalization");
    cmd.add_option("--seed", opt.seed, "master RNG seed")->capture_default_str();
}

std::optional<std::string> label_or_none(const CommonOptions& opt) {
    if (opt.label.empty()) return std::nullopt;
    return opt.label;
}

// Writes `content` to `path` via a sibling temp file and an atomic rename,
// so a failed run never leaves a truncated report behind.
void write_atomic(const std::filesystem::path& path, const std::string& content) {
    const std::filesystem::path tmp = path.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::trunc | std::ios::binary);
        if (!out) throw std::runtime_error("cannot open output file: " + tmp.string());
        out << content;
        if (!out) throw std::runtime_error("failed writing output file: " + tmp.string());
    }
    std::filesystem::rename(tmp, path);
}

std::string format_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

json matrix_to_json(const std::vector<double>& m, std::size_t d) {
    json rows = json::array();
    for (std::size_t i = 0; i < d; ++i) {
        json row = json::array();
        for (std::size_t j = 0; j < d; ++j) row.push_back(m[i * d + j]);
        rows.push_back(std::move(row));
    }
    return rows;
}

std::string matrix_to_csv(const std::vector<double>& m, const std::vector<std::string>& names) {
    const std::size_t d = names.size();
    std::string out = "feature";
    for (const auto& n : names) out += "," + n;
    out += "\n";
    for (std::size_t i = 0; i < d; ++i) {
        out += names[i];
        for (std::size_t j = 0; j < d; ++j) out += "," + format_double(m[i * d + j]);
        out += "\n";
    }
    return out;
}

json eval_to_json(const EvalReport& report) {
    return json{
        {"knn_acc", report.knn_acc},     {"gnb_acc", report.gnb_acc},
        {"dt_acc", report.dt_acc},       {"avg_acc", report.avg_acc},
        {"variance", report.variance},
    };
}

json ga_config_to_json(const GaConfig& cfg) {
    return json{
        {"population_size", cfg.population_size},
        {"stagnation_limit", cfg.stagnation_limit},
        {"pc_max", cfg.pc_max},
        {"pc_min", cfg.pc_min},
        {"pm_max", cfg.pm_max},
        {"pm_min", cfg.pm_min},
        {"max_features", cfg.max_features},
        {"max_generations", cfg.max_generations},
    };
}

struct SelectOptions {
    CommonOptions common;
    GaConfig ga;
    bool fit_on_all = false;
    std::string output = "mvmr_select.json";
};

int cmd_select(const SelectOptions& opt) {
    Dataset ds = load_csv(opt.common.input, label_or_none(opt.common));
    log_info("loaded " + std::to_string(ds.rows()) + " rows, " + std::to_string(ds.cols()) +
             " features, " + std::to_string(ds.class_count()) + " classes");
    if (!opt.common.no_normalize) ds = min_max_normalize(ds);

    const SplitPair split = stratified_split(ds, 0.2, opt.common.seed);
    GaConfig ga = opt.ga;
    ga.seed = opt.common.seed;
    ga.validate(ds.cols());

    const Dataset& fit_on = opt.fit_on_all ? ds : split.train;
    const FeatureMetricsCache cache =
        build_cache(fit_on, opt.common.bandwidth, opt.common.grid_points, false);
    const GaResult result = run(cache, ga);
    log_info("search stopped after " + std::to_string(result.trace.generations.size()) +
             " generations (" + result.trace.termination_reason + ")");

    const EvalReport eval = evaluate_subset(split, result.best.mask, opt.common.seed);

    std::vector<std::string> selected_names;
    for (const std::size_t i : eval.selected) selected_names.push_back(ds.feature_names()[i]);

    json best_history = json::array();
    json mean_history = json::array();
    for (const auto& gen : result.trace.generations) {
        best_history.push_back(gen.best_fitness);
        mean_history.push_back(gen.mean_fitness);
    }

    const json report{
        {"schema_version", 1},
        {"command", "select"},
        {"input", opt.common.input},
        {"label_column", opt.common.label.empty() ? json(nullptr) : json(opt.common.label)},
        {"normalized", !opt.common.no_normalize},
        {"fit_on_all", opt.fit_on_all},
        {"bandwidth", opt.common.bandwidth},
        {"grid_points", opt.common.grid_points},
        {"seed", opt.common.seed},
        {"test_fraction", 0.2},
        {"ga", ga_config_to_json(ga)},
        {"selected_indices", eval.selected},
        {"selected_names", selected_names},
        {"mvmr_score", *result.best.fitness},
        {"generations", result.trace.generations.size()},
        {"termination_reason", result.trace.termination_reason},
        {"fitness_history", json{{"best", best_history}, {"mean", mean_history}}},
        {"evaluation", eval_to_json(eval)},
    };
    write_atomic(opt.output, report.dump(2) + "\n");
    log_info("wrote " + opt.output);
    return 0;
}

struct MatrixOptions {
    CommonOptions common;
    std::string output = "mvmr_matrix.json";
    std::string csv_output = "mvmr_matrix.csv";
};

int cmd_matrix(const MatrixOptions& opt) {
    Dataset ds = load_csv(opt.common.input, label_or_none(opt.common));
    if (!opt.common.no_normalize) ds = min_max_normalize(ds);

    const FeatureMetricsCache cache =
        build_cache(ds, opt.common.bandwidth, opt.common.grid_points, false);
    const std::vector<double> matrix = pairwise_mvmr_matrix(cache);
    const std::size_t d = cache.feature_count;

    const json report{
        {"schema_version", 1},
        {"command", "matrix"},
        {"input", opt.common.input},
        {"normalized", !opt.common.no_normalize},
        {"bandwidth", opt.common.bandwidth},
        {"grid_points", opt.common.grid_points},
        {"feature_names", ds.feature_names()},
        {"sim", cache.sim},
        {"matrix", matrix_to_json(matrix, d)},
    };
    write_atomic(opt.output, report.dump(2) + "\n");
    write_atomic(opt.csv_output, matrix_to_csv(matrix, ds.feature_names()));
    log_info("wrote " + opt.output + " and " + opt.csv_output);
    return 0;
}

struct ReproduceOptions {
    CommonOptions common;
    std::string output = "mvmr_reproduce_iris.json";
};

bool print_check(const std::string& name, bool pass, const std::string& detail) {
    std::cout << (pass ? "PASS" : "FAIL") << "  " << name;
    if (!detail.empty()) std::cout << "  (" << detail << ")";
    std::cout << "\n";
    return pass;
}

int cmd_reproduce_iris(const ReproduceOptions& opt) {
    const Dataset iris = load_csv(opt.common.input, label_or_none(opt.common));
    const Dataset art = make_artificial_iris(iris);
    const Dataset norm = min_max_normalize(art);
    const std::size_t d = art.cols();

    // Score matrices use the full dataset; accuracies come from an 8:2 split.
    const FeatureMetricsCache cache_norm =
        build_cache(norm, opt.common.bandwidth, opt.common.grid_points, false);
    const FeatureMetricsCache cache_raw =
        build_cache(art, opt.common.bandwidth, opt.common.grid_points, false);
    const std::vector<double> mvmr_norm = pairwise_mvmr_matrix(cache_norm);
    const std::vector<double> mvmr_raw = pairwise_mvmr_matrix(cache_raw);

    const SplitPair split = stratified_split(norm, 0.2, opt.common.seed);
    const std::vector<double> acc = pairwise_accuracy_matrix(split, opt.common.seed);

    const double pearson_norm = pearson(mvmr_norm, acc);
    const double pearson_raw = pearson(mvmr_raw, acc);
    log_debug("pearson normalized " + format_double(pearson_norm) + ", raw " +
              format_double(pearson_raw));

    // Feature order in the bundled file: SL, SW, PL, PW, 2SL.
    const auto col = [&](const std::string& name) {
        const auto& names = art.feature_names();
        return static_cast<std::size_t>(
            std::find(names.begin(), names.end(), name) - names.begin());
    };
    const std::size_t sl = col("SL"), sw = col("SW"), pl = col("PL"), pw = col("PW");
    const auto diag = [&](std::size_t i) { return acc[i * d + i]; };

    bool all_pass = true;
    all_pass &= print_check("pearson_normalized <= -0.85", pearson_norm <= -0.85,
                            format_double(pearson_norm));
    all_pass &= print_check("|pearson_normalized| > |pearson_raw|",
                            std::abs(pearson_norm) > std::abs(pearson_raw),
                            format_double(std::abs(pearson_norm)) + " vs " +
                                format_double(std::abs(pearson_raw)));
    all_pass &= print_check("sim ordering PW < PL < SL < SW",
                            cache_norm.sim[pw] < cache_norm.sim[pl] &&
                                cache_norm.sim[pl] < cache_norm.sim[sl] &&
                                cache_norm.sim[sl] < cache_norm.sim[sw],
                            "");
    all_pass &= print_check("single-feature accuracy ordering PW >= PL >= SL >= SW (0.02 slack)",
                            diag(pw) + 0.02 >= diag(pl) && diag(pl) + 0.02 >= diag(sl) &&
                                diag(sl) + 0.02 >= diag(sw),
                            "");
    all_pass &= print_check("PW diagonal accuracy >= 0.95", diag(pw) >= 0.95,
                            format_double(diag(pw)));

    const json report{
        {"schema_version", 1},
        {"command", "reproduce-iris"},
        {"input", opt.common.input},
        {"bandwidth", opt.common.bandwidth},
        {"grid_points", opt.common.grid_points},
        {"seed", opt.common.seed},
        {"feature_names", art.feature_names()},
        {"densities_fit_on", "full dataset"},
        {"accuracies_fit_on", "stratified 8:2 split"},
        {"pearson_cells", "all d*d cells, row-major"},
        {"accuracy_matrix", matrix_to_json(acc, d)},
        {"mvmr_normalized", matrix_to_json(mvmr_norm, d)},
        {"mvmr_raw", matrix_to_json(mvmr_raw, d)},
        {"sim_normalized", cache_norm.sim},
        {"pearson_normalized", pearson_norm},
        {"pearson_raw", pearson_raw},
        {"pearson_abs_gain", std::abs(pearson_norm) - std::abs(pearson_raw)},
        {"checks_passed", all_pass},
    };
    write_atomic(opt.output, report.dump(2) + "\n");
    log_info("wrote " + opt.output);
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"mvmrfs: density-based feature selection for continuous data"};
    app.require_subcommand(1);

    SelectOptions sel;
    CLI::App* select = app.add_subcommand("select", "search for a feature subset and evaluate it");
    add_common_options(*select, sel.common);
    select->add_option("-o,--output", sel.output, "report path")->capture_default_str();
    select->add_option("--pop-size", sel.ga.population_size, "GA population size")
        ->capture_default_str();
    select->add_option("--stagnation", sel.ga.stagnation_limit,
                       "stop after this many generations without best-mask change")
        ->capture_default_str();
    select->add_option("--pc-max", sel.ga.pc_max, "crossover rate upper bound")
        ->capture_default_str();
    select->add_option("--pc-min", sel.ga.pc_min, "crossover rate lower bound")
        ->capture_default_str();
    select->add_option("--pm-max", sel.ga.pm_max, "mutation rate upper bound")
        ->capture_default_str();
    select->add_option("--pm-min", sel.ga.pm_min, "mutation rate lower bound")
        ->capture_default_str();
    select->add_option("--max-features", sel.ga.max_features,
                       "cap on selected features (0 = no cap)")
        ->capture_default_str();
    select->add_option("--max-generations", sel.ga.max_generations, "hard generation bound")
        ->capture_default_str();
    select->add_flag("--fit-on-all", sel.fit_on_all,
                     "estimate densities on the full dataset instead of the training split");

    MatrixOptions mat;
    CLI::App* matrix = app.add_subcommand("matrix", "export the pairwise subset-score matrix");
    add_common_options(*matrix, mat.common);
    matrix->add_option("-o,--output", mat.output, "JSON output path")->capture_default_str();
    matrix->add_option("--csv", mat.csv_output, "CSV output path")->capture_default_str();

    ReproduceOptions rep;
    CLI::App* reproduce =
        app.add_subcommand("reproduce-iris", "run the bundled Iris validation experiment");
    add_common_options(*reproduce, rep.common);
    reproduce->add_option("-o,--output", rep.output, "report path")->capture_default_str();

    CLI11_PARSE(app, argc, argv);

    try {
        if (select->parsed()) return cmd_select(sel);
        if (matrix->parsed()) return cmd_matrix(mat);
        if (reproduce->parsed()) return cmd_reproduce_iris(rep);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
