#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "mvmr/criterion.hpp"
#include "mvmr/dataset.hpp"
#include "mvmr/evaluate.hpp"
#include "mvmr/search.hpp"

namespace py = pybind11;
using namespace mvmr;

namespace {

// span-taking functions need a concrete owner for the python side
double score_from_vector(const FeatureMetricsCache& cache, const std::vector<std::uint8_t>& mask) {
    return mvmr_score(cache, mask);
}

EvalReport evaluate_from_vector(const SplitPair& split, const std::vector<std::uint8_t>& mask,
                                std::uint64_t seed) {
    return evaluate_subset(split, mask, seed);
}

std::vector<std::vector<double>> as_square(const std::vector<double>& flat, std::size_t d) {
    std::vector<std::vector<double>> out(d, std::vector<double>(d));
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) out[i][j] = flat[i * d + j];
    return out;
}

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Non-parametric filter feature selection: density-overlap relevance, "
              "Wasserstein redundancy, adaptive genetic search, and a three-classifier "
              "evaluation harness.";

    py::class_<Dataset>(m, "Dataset")
        .def(py::init<std::vector<double>, std::size_t, std::size_t, std::vector<int>,
                      std::vector<std::string>>(),
             py::arg("values"), py::arg("rows"), py::arg("cols"), py::arg("labels"),
             py::arg("feature_names"))
        .def_property_readonly("rows", &Dataset::rows)
        .def_property_readonly("cols", &Dataset::cols)
        .def_property_readonly("class_count", &Dataset::class_count)
        .def_property_readonly("labels", [](const Dataset& ds) { return ds.labels(); })
        .def_property_readonly("feature_names",
                               [](const Dataset& ds) { return ds.feature_names(); })
        .def_property_readonly("values", [](const Dataset& ds) { return ds.values(); })
        .def("column", &Dataset::column, py::arg("col"))
        .def("class_sizes", &Dataset::class_sizes)
        .def("__repr__", [](const Dataset& ds) {
            return "<Dataset rows=" + std::to_string(ds.rows()) +
                   " cols=" + std::to_string(ds.cols()) +
                   " classes=" + std::to_string(ds.class_count()) + ">";
        });

    py::class_<SplitPair>(m, "SplitPair")
        .def_readonly("train", &SplitPair::train)
        .def_readonly("test", &SplitPair::test)
        .def_readonly("seed", &SplitPair::seed);

    m.def(
        "load_csv",
        [](const std::string& path, const std::optional<std::string>& label_column) {
            return load_csv(path, label_column);
        },
        py::arg("path"), py::arg("label_column") = std::nullopt);
    m.def("min_max_normalize", &min_max_normalize, py::arg("dataset"));
    m.def("make_artificial_iris", &make_artificial_iris, py::arg("iris"));
    m.def("stratified_split", &stratified_split, py::arg("dataset"), py::arg("test_fraction"),
          py::arg("seed"));

    py::class_<FeatureMetricsCache>(m, "FeatureMetricsCache")
        .def_readonly("feature_count", &FeatureMetricsCache::feature_count)
        .def_readonly("sim", &FeatureMetricsCache::sim)
        .def_readonly("normalized", &FeatureMetricsCache::normalized)
        .def("red_at", &FeatureMetricsCache::red_at, py::arg("i"), py::arg("j"))
        .def_property_readonly("red", [](const FeatureMetricsCache& c) {
            return as_square(c.red, c.feature_count);
        });

    m.def("build_cache", &build_cache, py::arg("dataset"), py::arg("bandwidth") = 1.0,
          py::arg("points") = std::size_t{512}, py::arg("normalize") = true);
    m.def("mvmr_score", &score_from_vector, py::arg("cache"), py::arg("mask"));
    m.def(
        "pairwise_mvmr_matrix",
        [](const FeatureMetricsCache& c) { return as_square(pairwise_mvmr_matrix(c), c.feature_count); },
        py::arg("cache"));

    py::class_<GaConfig>(m, "GaConfig")
        .def(py::init<>())
        .def_readwrite("population_size", &GaConfig::population_size)
        .def_readwrite("stagnation_limit", &GaConfig::stagnation_limit)
        .def_readwrite("pc_max", &GaConfig::pc_max)
        .def_readwrite("pc_min", &GaConfig::pc_min)
        .def_readwrite("pm_max", &GaConfig::pm_max)
        .def_readwrite("pm_min", &GaConfig::pm_min)
        .def_readwrite("max_features", &GaConfig::max_features)
        .def_readwrite("seed", &GaConfig::seed)
        .def_readwrite("max_generations", &GaConfig::max_generations);

    py::class_<Individual>(m, "Individual")
        .def_readonly("mask", &Individual::mask)
        .def_property_readonly("fitness",
                               [](const Individual& ind) { return ind.fitness; });

    py::class_<GenerationStats>(m, "GenerationStats")
        .def_readonly("best_fitness", &GenerationStats::best_fitness)
        .def_readonly("mean_fitness", &GenerationStats::mean_fitness)
        .def_readonly("best_mask", &GenerationStats::best_mask);

    py::class_<GaTrace>(m, "GaTrace")
        .def_readonly("generations", &GaTrace::generations)
        .def_readonly("terminating_generation", &GaTrace::terminating_generation)
        .def_readonly("termination_reason", &GaTrace::termination_reason);

    py::class_<GaResult>(m, "GaResult")
        .def_readonly("best", &GaResult::best)
        .def_readonly("trace", &GaResult::trace);

    m.def("run", &run, py::arg("cache"), py::arg("config"));

    py::class_<EvalReport>(m, "EvalReport")
        .def_readonly("knn_acc", &EvalReport::knn_acc)
        .def_readonly("gnb_acc", &EvalReport::gnb_acc)
        .def_readonly("dt_acc", &EvalReport::dt_acc)
        .def_readonly("avg_acc", &EvalReport::avg_acc)
        .def_readonly("variance", &EvalReport::variance)
        .def_readonly("selected", &EvalReport::selected)
        .def_readonly("seed", &EvalReport::seed);

    m.def("evaluate_subset", &evaluate_from_vector, py::arg("split"), py::arg("mask"),
          py::arg("seed"));
    m.def(
        "pairwise_accuracy_matrix",
        [](const SplitPair& split, std::uint64_t seed) {
            return as_square(pairwise_accuracy_matrix(split, seed), split.train.cols());
        },
        py::arg("split"), py::arg("seed"));
}
