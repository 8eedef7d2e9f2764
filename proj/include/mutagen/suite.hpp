#ifndef MUTAGEN_SUITE_HPP
#define MUTAGEN_SUITE_HPP

#include <algorithm>
#include <set>
#include <stdexcept>
#include <vector>

#include "ga.hpp"
#include "mutate.hpp"

namespace mutagen {

struct GenerationStats {
    size_t generation = 0;
    size_t best_fitness = 0;
    double suite_score = 0.0;
    double mean_fitness = 0.0;
};

struct RunReport {
    size_t generations_run = 0;
    double final_score = 0.0;
    bool best_fit_flag = false;
    std::set<int> killed_mutant_ids;
    std::set<int> surviving_mutant_ids;
    std::set<int> equivalent_mutant_ids;
    std::vector<TestCase> final_suite;
    std::vector<GenerationStats> history;
    GaConfig config;
    size_t total_mutants = 0;
};

namespace detail {

inline std::set<int> union_kill_set(const std::vector<Individual>& population) {
    std::set<int> out;
    for (const auto& ind : population)
        out.insert(ind.kill_set.begin(), ind.kill_set.end());
    return out;
}

// Per-test ratio <= threshold, with slack for threshold values like 0.20 that
// have no exact double representation.
inline bool dropped_by_threshold(size_t fitness, size_t total, double threshold) {
    return static_cast<double>(fitness) <= threshold * static_cast<double>(total) + 1e-9;
}

// First-occurrence distinct tests of the population.
inline std::vector<TestCase> distinct_tests(const std::vector<Individual>& population) {
    std::vector<TestCase> out;
    for (const auto& ind : population)
        if (std::find(out.begin(), out.end(), ind.test) == out.end())
            out.push_back(ind.test);
    return out;
}

}  // namespace detail

/// Suite-level score: |union of kill sets| / total.
inline double mutation_score(const std::vector<std::vector<int>>& kill_sets,
                             size_t total_mutants) {
    if (total_mutants == 0) throw NoMutants();
    std::set<int> all;
    for (const auto& ks : kill_sets) all.insert(ks.begin(), ks.end());
    return static_cast<double>(all.size()) / static_cast<double>(total_mutants);
}

/// Drops every test whose individual kill ratio is at or below the threshold.
/// Never empties the suite: if all tests would drop, the single best survives.
inline std::vector<Individual> refine_suite(const std::vector<Individual>& population,
                                            double drop_threshold, size_t total_mutants) {
    std::vector<Individual> retained;
    for (const auto& ind : population)
        if (!detail::dropped_by_threshold(ind.fitness, total_mutants, drop_threshold))
            retained.push_back(ind);
    if (retained.empty() && !population.empty()) {
        size_t best = 0;
        for (size_t i = 1; i < population.size(); ++i)
            if (detail::beats(population[i], i, population[best], best)) best = i;
        retained.push_back(population[best]);
    }
    return retained;
}

/// The outer optimization loop: mutant injection, random seeding, scoring,
/// termination, refinement, and GA stepping.
inline RunReport optimize(const Program& program, OperatorSet operators,
                          const InputDomain& domain, const GaConfig& config) {
    config.validate();
    domain.validate();
    if (domain.params.size() != program.params.size())
        throw std::invalid_argument("domain arity differs from program arity");

    RunReport report;
    report.config = config;

    std::vector<Mutant> mutants = generate_mutants(program, operators);
    if (mutants.empty()) throw NoMutants();
    const size_t total = mutants.size();
    report.total_mutants = total;

    ExecBudget budget{config.fuel};
    size_t achievable = total;
    if (config.scan_equivalents) {
        report.equivalent_mutant_ids =
            equivalent_mutant_scan(program, mutants, domain, budget);
        achievable = total - report.equivalent_mutant_ids.size();
    }

    Rng rng(config.seed);
    std::vector<TestCase> seeds;
    seeds.reserve(config.population_size);
    for (size_t i = 0; i < config.population_size; ++i)
        seeds.push_back(random_test(domain, rng));
    std::vector<Individual> population(config.population_size);
    parallel_for(config.population_size, config.parallel, [&](size_t i) {
        population[i] = evaluate_fitness(seeds[i], program, mutants, budget);
    });

    size_t generation = 0;
    std::set<int> killed;
    for (;;) {
        killed = detail::union_kill_set(population);
        double score = static_cast<double>(killed.size()) / static_cast<double>(total);
        size_t best = 0;
        double fitness_sum = 0.0;
        for (const auto& ind : population) {
            best = std::max(best, ind.fitness);
            fitness_sum += static_cast<double>(ind.fitness);
        }
        report.history.push_back(
            {generation, best, score, fitness_sum / static_cast<double>(population.size())});

        bool satisfied = score >= config.target_score ||
                         (config.scan_equivalents && killed.size() >= achievable);
        if (satisfied || generation >= config.max_generations) break;

        std::vector<Individual> refined =
            refine_suite(population, config.drop_threshold, total);
        std::vector<TestCase> refills;
        while (refined.size() + refills.size() < config.population_size)
            refills.push_back(random_test(domain, rng));
        size_t base = refined.size();
        refined.resize(config.population_size);
        parallel_for(refills.size(), config.parallel, [&](size_t i) {
            refined[base + i] = evaluate_fitness(refills[i], program, mutants, budget);
        });

        population = next_generation(refined, config, program, mutants, domain, rng);
        ++generation;
    }

    report.generations_run = generation;
    report.killed_mutant_ids = killed;
    for (const auto& m : mutants)
        if (!report.killed_mutant_ids.count(m.id) &&
            !report.equivalent_mutant_ids.count(m.id))
            report.surviving_mutant_ids.insert(m.id);
    report.final_suite = detail::distinct_tests(population);
    report.final_score =
        static_cast<double>(report.killed_mutant_ids.size()) / static_cast<double>(total);
    report.best_fit_flag = report.final_score > config.best_fit_display_threshold;
    return report;
}

}  // namespace mutagen

#endif
