#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "mvmr/criterion.hpp"
#include "mvmr/rng.hpp"

namespace mvmr {

/// One GA chromosome: a binary feature mask plus its cached score.
struct Individual {
    std::vector<std::uint8_t> mask;
    std::optional<double> fitness;
};

struct GaConfig {
    std::size_t population_size = 50;
    int stagnation_limit = 200;
    double pc_max = 0.90;
    double pc_min = 0.50;
    double pm_max = 0.10;
    double pm_min = 0.01;
    std::size_t max_features = 0; // 0 means no cap (all d features allowed)
    std::uint64_t seed = 42;
    int max_generations = 5000;

    /// Throws std::invalid_argument if any field is out of range for a
    /// dataset with `feature_count` features.
    void validate(std::size_t feature_count) const;
    /// The effective cap: max_features, or feature_count when unset.
    std::size_t cap(std::size_t feature_count) const;
};

struct GenerationStats {
    double best_fitness = 0.0;
    double mean_fitness = 0.0;
    std::vector<std::uint8_t> best_mask;
};

struct GaTrace {
    std::vector<GenerationStats> generations;
    int terminating_generation = 0;
    std::string termination_reason; // "stagnation" or "max_generations"
};

struct GaResult {
    Individual best;
    GaTrace trace;
};

/// Fitness-adaptive crossover rate. Individuals at or below the population
/// average interpolate linearly between pc_max (at the average) and pc_min
/// (at the minimum); above-average individuals get pc_max. A degenerate
/// population (f_avg == f_min) gets pc_max.
double adaptive_pc(double f_c, double f_avg, double f_min, const GaConfig& cfg);

/// Same schedule for the mutation rate with pm_max / pm_min.
double adaptive_pm(double f_m, double f_avg, double f_min, const GaConfig& cfg);

/// Draws two distinct individuals uniformly and returns the one with lower
/// fitness; ties go to the first drawn. All fitnesses must be evaluated.
const Individual& binary_tournament(const std::vector<Individual>& pop, Rng& rng);

/// With probability pc, uniform crossover (each gene swaps independently
/// with probability 1/2); otherwise the children copy the parents. Children
/// are repaired to [1, cap] selected bits.
std::pair<Individual, Individual> crossover(const Individual& a, const Individual& b,
                                            double pc, std::size_t cap, Rng& rng);

/// Flips each bit independently with probability pm, then repairs.
Individual mutate(const Individual& ind, double pm, std::size_t cap, Rng& rng);

/// Enforces 1 <= popcount <= cap: an empty mask gets one uniformly random
/// bit; an oversized mask has uniformly random set bits cleared until it
/// fits. Masks already in range pass through unchanged.
std::vector<std::uint8_t> repair(std::vector<std::uint8_t> mask, std::size_t cap, Rng& rng);

/// Runs the adaptive GA minimizing mvmr_score over feature masks. The
/// initial population seeds greedy forward-selection prefixes ahead of
/// density-ramped random masks, so sparse optima compete from the start.
/// Elitism carries the best individual forward unchanged, so the best
/// fitness in the trace never increases. Terminates when the best mask is
/// unchanged for `stagnation_limit` consecutive generations or at
/// `max_generations`. Deterministic given cfg.seed.
GaResult run(const FeatureMetricsCache& cache, const GaConfig& cfg);

} // namespace mvmr
