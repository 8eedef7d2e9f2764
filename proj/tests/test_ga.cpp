#include <doctest.h>

#include <algorithm>
#include <map>

#include <mutagen/mutagen.hpp>

#include "test_helpers.hpp"

using namespace mutagen;

TEST_CASE("random_test stays in bounds and honors degenerate intervals") {
    Rng rng(1);
    InputDomain point = InputDomain::uniform(2, 1, 1);
    for (int i = 0; i < 20; ++i) CHECK(random_test(point, rng) == TestCase{{1, 1}});

    InputDomain domain = InputDomain::uniform(2, 1, 8);
    for (int i = 0; i < 200; ++i) CHECK(domain.contains(random_test(domain, rng)));
}

TEST_CASE("random_test is reproducible for a fixed seed") {
    InputDomain domain = InputDomain::uniform(2, 1, 8);
    Rng a(42), b(42);
    for (int i = 0; i < 50; ++i) CHECK(random_test(domain, a) == random_test(domain, b));
}

TEST_CASE("random_test draws are close to uniform") {
    InputDomain domain = InputDomain::uniform(1, 1, 8);
    Rng rng(3);
    std::map<long long, int> counts;
    const int draws = 10000;
    for (int i = 0; i < draws; ++i) ++counts[random_test(domain, rng).genes[0]];
    for (long long v = 1; v <= 8; ++v) {
        double freq = static_cast<double>(counts[v]) / draws;
        CHECK(freq > 0.125 - 0.05);
        CHECK(freq < 0.125 + 0.05);
    }
}

TEST_CASE("fitness counts killed mutants") {
    Program p = test_helpers::power_program();
    auto mutants = generate_mutants(p, OperatorSet{true, true, false});

    std::vector<Mutant> loop_site;
    for (auto& m : mutants)
        if (m.site.line >= 11) loop_site.push_back(std::move(m));  // while body and cond
    REQUIRE(!loop_site.empty());

    // early return: no mutated site executes
    Individual early = evaluate_fitness(TestCase{{1, 5}}, p, loop_site);
    CHECK(early.fitness == 0);
    CHECK(early.kill_set.empty());

    std::vector<Mutant> loop_pair;
    for (const auto& m : loop_site)
        if (m.mutated_fragment == "i < b" || m.mutated_fragment == "P + a")
            loop_pair.push_back(clone(m));
    REQUIRE(loop_pair.size() == 2);
    Individual hit = evaluate_fitness(TestCase{{2, 3}}, p, loop_pair);
    CHECK(hit.fitness == 2);

    CHECK(evaluate_fitness(TestCase{{2, 3}}, p, {}).fitness == 0);
}

TEST_CASE("large tournaments converge on the global best") {
    // draws are with replacement, so winning is certain only in the limit; a
    // tournament several times the population size picks the unique best in
    // practice for this seed
    std::vector<Individual> pop;
    for (size_t i = 0; i < 6; ++i)
        pop.push_back(Individual{TestCase{{static_cast<long long>(i)}}, i % 4, {}});
    Rng rng(9);
    for (int i = 0; i < 30; ++i) CHECK(select(pop, pop.size() * 8, rng).fitness == 3);

    std::vector<Individual> lone = {Individual{TestCase{{5}}, 0, {}}};
    CHECK(select(lone, 1, rng).test == TestCase{{5}});
}

TEST_CASE("binary tournament picks the fitter of two with probability 3/4") {
    std::vector<Individual> pop = {Individual{TestCase{{1}}, 0, {}},
                                   Individual{TestCase{{2}}, 10, {}}};
    Rng rng(11);
    int wins = 0;
    const int trials = 20000;
    for (int i = 0; i < trials; ++i)
        if (select(pop, 2, rng).fitness == 10) ++wins;
    double rate = static_cast<double>(wins) / trials;
    CHECK(rate > 0.73);
    CHECK(rate < 0.77);
}

TEST_CASE("single-point crossover swaps the tail") {
    Rng rng(5);
    // arity 2 has only one interior cut
    auto [c1, c2] = crossover(TestCase{{2, 3}}, TestCase{{5, 7}}, rng);
    CHECK(c1 == TestCase{{2, 7}});
    CHECK(c2 == TestCase{{5, 3}});

    auto [s1, s2] = crossover(TestCase{{4}}, TestCase{{9}}, rng);
    CHECK(s1 == TestCase{{4}});
    CHECK(s2 == TestCase{{9}});
}

TEST_CASE("crossover preserves the value pair at every gene index") {
    Rng rng(6);
    InputDomain domain = InputDomain::uniform(5, -10, 10);
    for (int i = 0; i < 200; ++i) {
        TestCase a = random_test(domain, rng);
        TestCase b = random_test(domain, rng);
        auto [c1, c2] = crossover(a, b, rng);
        for (size_t g = 0; g < a.genes.size(); ++g) {
            bool straight = c1.genes[g] == a.genes[g] && c2.genes[g] == b.genes[g];
            bool swapped = c1.genes[g] == b.genes[g] && c2.genes[g] == a.genes[g];
            CHECK((straight || swapped));
        }
    }
}

TEST_CASE("gene mutation respects rate and bounds") {
    Rng rng(8);
    InputDomain domain = InputDomain::uniform(2, 1, 8);
    TestCase t{{3, 6}};
    CHECK(mutate_genes(t, domain, 0.0, rng) == t);

    InputDomain fixed = InputDomain::uniform(2, 5, 5);
    CHECK(mutate_genes(TestCase{{5, 5}}, fixed, 1.0, rng) == TestCase{{5, 5}});

    for (int i = 0; i < 200; ++i)
        CHECK(domain.contains(mutate_genes(t, domain, 1.0, rng)));
}

TEST_CASE("degenerate operators reduce stepping to selection") {
    Program p = test_helpers::power_program();
    auto mutants = generate_mutants(p);
    InputDomain domain = InputDomain::uniform(2, 1, 8);
    GaConfig config;
    config.population_size = 10;
    config.crossover_rate = 0.0;
    config.gene_mutation_rate = 0.0;
    config.elitism_count = 0;
    config.seed = 4;

    Rng rng(config.seed);
    std::vector<Individual> pop;
    for (size_t i = 0; i < config.population_size; ++i)
        pop.push_back(evaluate_fitness(random_test(domain, rng), p, mutants));

    auto next = next_generation(pop, config, p, mutants, domain, rng);
    REQUIRE(next.size() == config.population_size);
    for (const auto& child : next) {
        bool is_copy = std::any_of(pop.begin(), pop.end(), [&](const Individual& parent) {
            return parent.test == child.test;
        });
        CHECK(is_copy);
    }
}

TEST_CASE("elitism keeps best fitness from regressing") {
    Program p = test_helpers::power_program();
    auto mutants = generate_mutants(p);
    InputDomain domain = InputDomain::uniform(2, 1, 8);
    GaConfig config;
    config.population_size = 8;
    config.seed = 13;

    Rng rng(config.seed);
    std::vector<Individual> pop;
    for (size_t i = 0; i < config.population_size; ++i)
        pop.push_back(evaluate_fitness(random_test(domain, rng), p, mutants));

    auto best_of = [](const std::vector<Individual>& v) {
        size_t best = 0;
        for (const auto& ind : v) best = std::max(best, ind.fitness);
        return best;
    };
    size_t best = best_of(pop);
    for (int gen = 0; gen < 10; ++gen) {
        pop = next_generation(pop, config, p, mutants, domain, rng);
        size_t now = best_of(pop);
        CHECK(now >= best);
        best = now;
    }
}

TEST_CASE("fitness stored on individuals matches recomputation") {
    Program p = test_helpers::power_program();
    auto mutants = generate_mutants(p);
    InputDomain domain = InputDomain::uniform(2, 1, 8);
    Rng rng(21);
    for (int i = 0; i < 20; ++i) {
        Individual ind = evaluate_fitness(random_test(domain, rng), p, mutants);
        size_t count = 0;
        for (const auto& m : mutants)
            if (kills(p, m, ind.test)) ++count;
        CHECK(ind.fitness == count);
        CHECK(ind.kill_set.size() == count);
    }
}

TEST_CASE("config invariants are enforced") {
    GaConfig config;
    config.elitism_count = config.population_size;
    CHECK_THROWS_AS(config.validate(), std::invalid_argument);

    GaConfig tourney;
    tourney.tournament_size = tourney.population_size + 1;
    CHECK_THROWS_AS(tourney.validate(), std::invalid_argument);

    GaConfig rates;
    rates.crossover_rate = 1.5;
    CHECK_THROWS_AS(rates.validate(), std::invalid_argument);
}
