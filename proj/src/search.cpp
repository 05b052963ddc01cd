#include "mvmr/search.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace mvmr {

void GaConfig::validate(std::size_t feature_count) const {
    if (population_size < 4)
        throw std::invalid_argument("ga: population size must be at least 4");
    if (stagnation_limit < 1)
        throw std::invalid_argument("ga: stagnation limit must be at least 1");
    if (!(0.0 < pc_min && pc_min < pc_max && pc_max <= 1.0))
        throw std::invalid_argument("ga: need 0 < pc_min < pc_max <= 1");
    if (!(0.0 < pm_min && pm_min < pm_max && pm_max <= 1.0))
        throw std::invalid_argument("ga: need 0 < pm_min < pm_max <= 1");
    if (max_features > feature_count)
        throw std::invalid_argument("ga: max_features exceeds feature count");
    if (max_generations < 1)
        throw std::invalid_argument("ga: max_generations must be at least 1");
}

std::size_t GaConfig::cap(std::size_t feature_count) const {
    return max_features == 0 ? feature_count : max_features;
}

double adaptive_pc(double f_c, double f_avg, double f_min, const GaConfig& cfg) {
    if (f_c > f_avg) return cfg.pc_max;
    if (!(f_avg > f_min)) return cfg.pc_max; // converged population: keep diversity high
    const double t = std::clamp((f_avg - f_c) / (f_avg - f_min), 0.0, 1.0);
    // Blend form hits pc_min and pc_max exactly at the endpoints.
    return cfg.pc_min * t + cfg.pc_max * (1.0 - t);
}

double adaptive_pm(double f_m, double f_avg, double f_min, const GaConfig& cfg) {
    if (f_m > f_avg) return cfg.pm_max;
    if (!(f_avg > f_min)) return cfg.pm_max;
    const double t = std::clamp((f_avg - f_m) / (f_avg - f_min), 0.0, 1.0);
    return cfg.pm_min * t + cfg.pm_max * (1.0 - t);
}

const Individual& binary_tournament(const std::vector<Individual>& pop, Rng& rng) {
    if (pop.size() < 2)
        throw std::invalid_argument("binary_tournament: population must have at least 2 members");
    const std::size_t first = rand_index(rng, pop.size());
    std::size_t second = rand_index(rng, pop.size() - 1);
    if (second >= first) ++second;
    const Individual& a = pop[first];
    const Individual& b = pop[second];
    if (!a.fitness || !b.fitness)
        throw std::invalid_argument("binary_tournament: unevaluated individual");
    return *b.fitness < *a.fitness ? b : a; // tie goes to the first drawn
}

std::vector<std::uint8_t> repair(std::vector<std::uint8_t> mask, std::size_t cap, Rng& rng) {
    if (cap < 1) throw std::invalid_argument("repair: cap must be at least 1");
    std::vector<std::size_t> set_bits;
    for (std::size_t i = 0; i < mask.size(); ++i)
        if (mask[i]) set_bits.push_back(i);

    if (set_bits.empty()) {
        mask[rand_index(rng, mask.size())] = 1;
        return mask;
    }
    while (set_bits.size() > cap) {
        const std::size_t pick = rand_index(rng, set_bits.size());
        mask[set_bits[pick]] = 0;
        set_bits.erase(set_bits.begin() + static_cast<std::ptrdiff_t>(pick));
    }
    return mask;
}

std::pair<Individual, Individual> crossover(const Individual& a, const Individual& b, double pc,
                                            std::size_t cap, Rng& rng) {
    std::vector<std::uint8_t> c1 = a.mask;
    std::vector<std::uint8_t> c2 = b.mask;
    if (rand_bool(rng, pc)) {
        for (std::size_t i = 0; i < c1.size(); ++i)
            if (rand_bool(rng, 0.5)) std::swap(c1[i], c2[i]);
    }
    return {Individual{repair(std::move(c1), cap, rng), std::nullopt},
            Individual{repair(std::move(c2), cap, rng), std::nullopt}};
}

Individual mutate(const Individual& ind, double pm, std::size_t cap, Rng& rng) {
    std::vector<std::uint8_t> mask = ind.mask;
    for (auto& bit : mask)
        if (rand_bool(rng, pm)) bit ^= 1;
    return Individual{repair(std::move(mask), cap, rng), std::nullopt};
}

namespace {

std::size_t best_index(const std::vector<Individual>& pop) {
    std::size_t best = 0;
    for (std::size_t i = 1; i < pop.size(); ++i)
        if (*pop[i].fitness < *pop[best].fitness) best = i;
    return best;
}

// Deterministic warm-start seeds: prefixes of a greedy forward-selection
// chain. Each step adds the feature that minimizes the score of the grown
// mask; ties keep the lowest index. The chain length is bounded so seeding
// stays cheap at large d.
std::vector<std::vector<std::uint8_t>> greedy_seeds(const FeatureMetricsCache& cache,
                                                    std::size_t cap, std::size_t limit) {
    const std::size_t d = cache.feature_count;
    const std::size_t length = std::min({cap, d, limit});
    std::vector<std::vector<std::uint8_t>> seeds;
    std::vector<std::uint8_t> mask(d, 0);
    for (std::size_t step = 0; step < length; ++step) {
        double round_best = std::numeric_limits<double>::infinity();
        std::size_t round_j = d;
        for (std::size_t j = 0; j < d; ++j) {
            if (mask[j]) continue;
            mask[j] = 1;
            const double s = mvmr_score(cache, mask);
            mask[j] = 0;
            if (s < round_best) {
                round_best = s;
                round_j = j;
            }
        }
        mask[round_j] = 1;
        seeds.push_back(mask);
    }
    return seeds;
}

} // namespace

GaResult run(const FeatureMetricsCache& cache, const GaConfig& cfg) {
    const std::size_t d = cache.feature_count;
    cfg.validate(d);
    const std::size_t cap = cfg.cap(d);
    Rng rng(cfg.seed);

    // Initial population: greedy forward-selection prefixes as deterministic
    // warm starts, then density-ramped random masks. The per-individual bit
    // density spreads the random part across sparse and dense masks, so small
    // subsets compete from generation zero instead of relying on multi-bit
    // mutations to cross fitness valleys.
    std::vector<Individual> pop(cfg.population_size);
    const auto seeds = greedy_seeds(cache, cap, std::min<std::size_t>(cfg.population_size / 2, 64));
    for (std::size_t i = 0; i < pop.size(); ++i) {
        Individual& ind = pop[i];
        if (i < seeds.size()) {
            ind.mask = seeds[i];
        } else {
            const double density = rand_real(rng);
            std::vector<std::uint8_t> mask(d, 0);
            for (auto& bit : mask) bit = rand_bool(rng, density) ? 1 : 0;
            ind.mask = repair(std::move(mask), cap, rng);
        }
        ind.fitness = mvmr_score(cache, ind.mask);
    }

    GaTrace trace;
    Individual best;
    int generation = 0;
    int stagnation = 0;
    while (true) {
        const std::size_t gb = best_index(pop);
        if (generation == 0 || *pop[gb].fitness < *best.fitness) best = pop[gb];

        double sum = 0.0;
        for (const auto& ind : pop) sum += *ind.fitness;
        const double f_avg = sum / static_cast<double>(pop.size());
        const double f_min = *best.fitness;
        trace.generations.push_back({f_min, f_avg, best.mask});

        const std::size_t g = trace.generations.size() - 1;
        if (g > 0 && trace.generations[g].best_mask == trace.generations[g - 1].best_mask)
            ++stagnation;
        else
            stagnation = 0;

        if (stagnation >= cfg.stagnation_limit) {
            trace.termination_reason = "stagnation";
            break;
        }
        if (static_cast<int>(trace.generations.size()) >= cfg.max_generations) {
            trace.termination_reason = "max_generations";
            break;
        }

        std::vector<Individual> next;
        next.reserve(pop.size());
        next.push_back(best); // elitism: the best individual survives unchanged
        while (next.size() < pop.size()) {
            const Individual& p1 = binary_tournament(pop, rng);
            const Individual& p2 = binary_tournament(pop, rng);
            const double f_c = std::min(*p1.fitness, *p2.fitness);
            const double pc = adaptive_pc(f_c, f_avg, f_min, cfg);
            auto children = crossover(p1, p2, pc, cap, rng);
            for (Individual* child : {&children.first, &children.second}) {
                if (next.size() >= pop.size()) break;
                child->fitness = mvmr_score(cache, child->mask);
                const double pm = adaptive_pm(*child->fitness, f_avg, f_min, cfg);
                Individual mutated = mutate(*child, pm, cap, rng);
                mutated.fitness = mvmr_score(cache, mutated.mask);
                next.push_back(std::move(mutated));
            }
        }
        pop = std::move(next);
        ++generation;
    }
    trace.terminating_generation = generation;
    return {std::move(best), std::move(trace)};
}

} // namespace mvmr
