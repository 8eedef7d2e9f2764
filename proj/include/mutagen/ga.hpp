#ifndef MUTAGEN_GA_HPP
#define MUTAGEN_GA_HPP

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <utility>
#include <vector>

#include "domain.hpp"
#include "mutate.hpp"
#include "parallel.hpp"
#include "rng.hpp"

namespace mutagen {

struct GaConfig {
    size_t population_size = 20;
    size_t max_generations = 100;
    double crossover_rate = 0.9;
    double gene_mutation_rate = 0.1;
    size_t tournament_size = 3;
    size_t elitism_count = 1;
    double drop_threshold = 0.20;
    double target_score = 1.0;
    double best_fit_display_threshold = 0.50;
    uint64_t seed = 0;
    long long fuel = 100000;
    bool scan_equivalents = true;
    bool parallel = true;

    void validate() const {
        if (population_size == 0)
            throw std::invalid_argument("population_size must be positive");
        if (elitism_count >= population_size)
            throw std::invalid_argument("elitism_count must be < population_size");
        if (tournament_size == 0 || tournament_size > population_size)
            throw std::invalid_argument("tournament_size must be in [1, population_size]");
        const auto rate = [](double r, const char* what) {
            if (r < 0.0 || r > 1.0)
                throw std::invalid_argument(std::string(what) + " must be in [0, 1]");
        };
        rate(crossover_rate, "crossover_rate");
        rate(gene_mutation_rate, "gene_mutation_rate");
        rate(drop_threshold, "drop_threshold");
        if (target_score <= 0.0 || target_score > 1.0)
            throw std::invalid_argument("target_score must be in (0, 1]");
        if (fuel < 1) throw std::invalid_argument("fuel must be positive");
    }
};

struct Individual {
    TestCase test;
    size_t fitness = 0;            // |kill_set|
    std::vector<int> kill_set;     // sorted mutant ids
};

inline TestCase random_test(const InputDomain& domain, Rng& rng) {
    TestCase t;
    t.genes.reserve(domain.params.size());
    for (const auto& iv : domain.params) t.genes.push_back(rng.uniform(iv.lo, iv.hi));
    return t;
}

inline Individual evaluate_fitness(const TestCase& test, const Program& original,
                                   const std::vector<Mutant>& mutants,
                                   ExecBudget budget = {}) {
    Individual ind;
    ind.test = test;
    Outcome base = execute(original, test.genes, budget);
    for (const auto& m : mutants)
        if (!(execute(m.program, test.genes, budget) == base))
            ind.kill_set.push_back(m.id);
    ind.fitness = ind.kill_set.size();
    return ind;
}

namespace detail {

// fitness desc, then genes lex asc, then earlier index
inline bool beats(const Individual& a, size_t ia, const Individual& b, size_t ib) {
    if (a.fitness != b.fitness) return a.fitness > b.fitness;
    if (a.test.genes != b.test.genes) return a.test.genes < b.test.genes;
    return ia < ib;
}

}  // namespace detail

/// Tournament selection: best of k uniform draws with replacement.
inline const Individual& select(const std::vector<Individual>& population, size_t k,
                                Rng& rng) {
    if (population.empty()) throw std::invalid_argument("empty population");
    size_t best = static_cast<size_t>(rng.uniform(0, static_cast<long long>(population.size()) - 1));
    for (size_t i = 1; i < k; ++i) {
        size_t cand = static_cast<size_t>(
            rng.uniform(0, static_cast<long long>(population.size()) - 1));
        if (detail::beats(population[cand], cand, population[best], best)) best = cand;
    }
    return population[best];
}

/// Single-point crossover; identity for arity 1 (no interior cut exists).
inline std::pair<TestCase, TestCase> crossover(const TestCase& a, const TestCase& b,
                                               Rng& rng) {
    size_t arity = a.genes.size();
    if (b.genes.size() != arity) throw std::invalid_argument("crossover arity mismatch");
    if (arity < 2) return {a, b};
    size_t cut = static_cast<size_t>(rng.uniform(1, static_cast<long long>(arity) - 1));
    TestCase c1 = a, c2 = b;
    for (size_t i = cut; i < arity; ++i) std::swap(c1.genes[i], c2.genes[i]);
    return {std::move(c1), std::move(c2)};
}

/// Each gene independently redrawn from its interval with the given rate.
inline TestCase mutate_genes(const TestCase& test, const InputDomain& domain, double rate,
                             Rng& rng) {
    TestCase out = test;
    for (size_t i = 0; i < out.genes.size(); ++i)
        if (rng.chance(rate))
            out.genes[i] = rng.uniform(domain.params[i].lo, domain.params[i].hi);
    return out;
}

/// One GA step: elites copied unchanged, rest bred by
/// select -> crossover -> mutate -> evaluate. Rng is consumed sequentially;
/// only the final fitness evaluations run in parallel.
inline std::vector<Individual> next_generation(const std::vector<Individual>& population,
                                               const GaConfig& config,
                                               const Program& original,
                                               const std::vector<Mutant>& mutants,
                                               const InputDomain& domain, Rng& rng) {
    if (population.empty()) throw std::invalid_argument("empty population");
    std::vector<Individual> next;
    next.reserve(config.population_size);

    if (config.elitism_count > 0) {
        std::vector<size_t> order(population.size());
        for (size_t i = 0; i < order.size(); ++i) order[i] = i;
        std::sort(order.begin(), order.end(), [&](size_t a, size_t b) {
            return detail::beats(population[a], a, population[b], b);
        });
        size_t n = std::min(config.elitism_count, population.size());
        for (size_t i = 0; i < n; ++i) next.push_back(population[order[i]]);
    }

    std::vector<TestCase> offspring;
    while (next.size() + offspring.size() < config.population_size) {
        TestCase a = select(population, config.tournament_size, rng).test;
        TestCase b = select(population, config.tournament_size, rng).test;
        if (rng.chance(config.crossover_rate)) {
            auto [c1, c2] = crossover(a, b, rng);
            a = std::move(c1);
            b = std::move(c2);
        }
        offspring.push_back(mutate_genes(a, domain, config.gene_mutation_rate, rng));
        if (next.size() + offspring.size() < config.population_size)
            offspring.push_back(mutate_genes(b, domain, config.gene_mutation_rate, rng));
    }

    size_t base = next.size();
    next.resize(config.population_size);
    ExecBudget budget{config.fuel};
    parallel_for(offspring.size(), config.parallel, [&](size_t i) {
        next[base + i] = evaluate_fitness(offspring[i], original, mutants, budget);
    });
    return next;
}

}  // namespace mutagen

#endif
