#include <doctest.h>

#include <set>

#include <mutagen/mutagen.hpp>

#include "test_helpers.hpp"

using namespace mutagen;

TEST_CASE("mutation score is the kill-set union over the total") {
    CHECK(mutation_score({{0}, {1}}, 4) == doctest::Approx(0.5));
    CHECK(mutation_score({{0, 1, 2}, {1, 2}, {0}}, 3) == doctest::Approx(1.0));
    CHECK(mutation_score({{2}, {2}, {2}}, 4) == doctest::Approx(0.25));
    CHECK_THROWS_AS(mutation_score({{0}}, 0), NoMutants);
}

TEST_CASE("adding a test never lowers the score") {
    std::vector<std::vector<int>> suite = {{0, 3}, {1}};
    double before = mutation_score(suite, 8);
    suite.push_back({5, 6});
    CHECK(mutation_score(suite, 8) >= before);
}

TEST_CASE("refinement drops at-or-below the threshold, keeps above") {
    const size_t total = 100;
    std::vector<Individual> pop = {
        Individual{TestCase{{1}}, 20, {}},   // ratio 0.20: dropped
        Individual{TestCase{{2}}, 21, {}},   // ratio 0.21: retained
        Individual{TestCase{{3}}, 0, {}},    // dropped
        Individual{TestCase{{4}}, 100, {}},  // retained
    };
    auto refined = refine_suite(pop, 0.20, total);
    REQUIRE(refined.size() == 2);
    CHECK(refined[0].fitness == 21);
    CHECK(refined[1].fitness == 100);
}

TEST_CASE("refinement keeps the single best when everything would drop") {
    std::vector<Individual> pop = {
        Individual{TestCase{{7}}, 0, {}},
        Individual{TestCase{{2}}, 0, {}},
        Individual{TestCase{{5}}, 0, {}},
    };
    auto refined = refine_suite(pop, 0.20, 10);
    REQUIRE(refined.size() == 1);
    // all fitness 0: tie broken by lexicographic genes
    CHECK(refined[0].test == TestCase{{2}});
}

TEST_CASE("optimize reaches the achievable maximum on the power program") {
    Program p = test_helpers::power_program();
    InputDomain domain = InputDomain::uniform(2, 1, 8);
    GaConfig config;
    config.seed = 42;

    RunReport report = optimize(p, OperatorSet::all(), domain, config);

    // independent achievable maximum: exhaustive kill matrix over the domain
    auto mutants = generate_mutants(p);
    std::vector<TestCase> exhaustive;
    domain.for_each_point([&](const TestCase& t) { exhaustive.push_back(t); });
    size_t achievable = build_kill_matrix(p, mutants, exhaustive).killed_mutants().size();

    CHECK(report.total_mutants == mutants.size());
    CHECK(report.killed_mutant_ids.size() == achievable);
    CHECK(report.generations_run <= config.max_generations);
    CHECK(report.final_score ==
          doctest::Approx(static_cast<double>(achievable) / mutants.size()));
    CHECK(report.equivalent_mutant_ids.size() == mutants.size() - achievable);
}

TEST_CASE("a tiny population still converges through evolution") {
    // population 4 cannot cover the killable set at generation 0; the GA has
    // to climb there
    Program p = test_helpers::power_program();
    GaConfig config;
    config.seed = 7;
    config.population_size = 4;
    config.tournament_size = 2;
    RunReport r = optimize(p, OperatorSet::all(), InputDomain::uniform(2, 1, 8), config);
    CHECK(r.generations_run > 0);
    CHECK(r.generations_run <= 100);
    CHECK(r.surviving_mutant_ids.empty());
}

TEST_CASE("report ids partition the mutant set") {
    Program p = test_helpers::power_program();
    GaConfig config;
    config.seed = 7;
    config.max_generations = 3;
    RunReport r = optimize(p, OperatorSet::all(), InputDomain::uniform(2, 1, 8), config);

    std::set<int> all;
    all.insert(r.killed_mutant_ids.begin(), r.killed_mutant_ids.end());
    all.insert(r.surviving_mutant_ids.begin(), r.surviving_mutant_ids.end());
    all.insert(r.equivalent_mutant_ids.begin(), r.equivalent_mutant_ids.end());
    CHECK(all.size() == r.killed_mutant_ids.size() + r.surviving_mutant_ids.size() +
                            r.equivalent_mutant_ids.size());
    CHECK(all.size() == r.total_mutants);
    CHECK(*all.begin() == 0);
    CHECK(*all.rbegin() == static_cast<int>(r.total_mutants) - 1);
}

TEST_CASE("zero generations reports the initial population only") {
    Program p = test_helpers::power_program();
    GaConfig config;
    config.seed = 3;
    config.max_generations = 0;
    config.scan_equivalents = false;
    RunReport r = optimize(p, OperatorSet::all(), InputDomain::uniform(2, 1, 8), config);
    CHECK(r.generations_run == 0);
    REQUIRE(r.history.size() == 1);
    CHECK(r.history[0].generation == 0);
}

TEST_CASE("a generation-0 full kill stops before evolving") {
    // every AOR mutant of x + x is killed by any x != 0 test
    Program p = parse("fn double(x) { return x + x }");
    GaConfig config;
    config.seed = 1;
    config.scan_equivalents = true;
    RunReport r = optimize(p, OperatorSet{true, false, false},
                           InputDomain::uniform(1, 3, 8), config);
    CHECK(r.generations_run == 0);
    CHECK(r.final_score == doctest::Approx(1.0));
}

TEST_CASE("best fitness history is non-decreasing with elitism") {
    Program p = test_helpers::power_program();
    for (uint64_t seed : {1ULL, 2ULL, 3ULL, 4ULL, 5ULL}) {
        GaConfig config;
        config.seed = seed;
        config.scan_equivalents = false;
        config.max_generations = 8;
        config.target_score = 1.0;
        RunReport r = optimize(p, OperatorSet::all(), InputDomain::uniform(2, 1, 8), config);
        for (size_t i = 1; i < r.history.size(); ++i)
            CHECK(r.history[i].best_fitness >= r.history[i - 1].best_fitness);
    }
}

TEST_CASE("optimize is deterministic for a fixed seed") {
    Program p = test_helpers::power_program();
    GaConfig config;
    config.seed = 99;
    config.max_generations = 5;
    config.scan_equivalents = false;
    InputDomain domain = InputDomain::uniform(2, 1, 8);
    RunReport a = optimize(p, OperatorSet::all(), domain, config);
    RunReport b = optimize(p, OperatorSet::all(), domain, config);
    CHECK(report_to_json(a).dump() == report_to_json(b).dump());

    config.parallel = false;
    RunReport c = optimize(p, OperatorSet::all(), domain, config);
    auto ja = report_to_json(a);
    auto jc = report_to_json(c);
    ja["config"].erase("parallel");
    jc["config"].erase("parallel");
    CHECK(ja.dump() == jc.dump());
}

TEST_CASE("config files load from JSON and key=value forms") {
    GaConfig from_json = load_config(R"({"seed": 5, "population_size": 12, "drop_threshold": 0.1})");
    CHECK(from_json.seed == 5);
    CHECK(from_json.population_size == 12);
    CHECK(from_json.drop_threshold == doctest::Approx(0.1));
    CHECK(from_json.max_generations == 100);  // untouched default

    GaConfig from_kv = load_config("seed = 9\n# comment\npopulation_size = 6\nparallel = false\n");
    CHECK(from_kv.seed == 9);
    CHECK(from_kv.population_size == 6);
    CHECK_FALSE(from_kv.parallel);

    CHECK_THROWS_AS(load_config("{\"no_such_key\": 1}"), ConfigError);
    CHECK_THROWS_AS(load_config("seed 5\n"), ConfigError);
}

TEST_CASE("history CSV uses the pinned header") {
    RunReport r;
    r.history.push_back({0, 3, 0.5, 1.5});
    r.history.push_back({1, 4, 0.75, 2.0});
    std::string csv = history_to_csv(r);
    CHECK(csv.rfind("generation,best_fitness,suite_score,mean_fitness\n", 0) == 0);
    CHECK(csv.find("0,3,0.5,1.5\n") != std::string::npos);
    CHECK(csv.find("1,4,0.75,2\n") != std::string::npos);
}

TEST_CASE("kill matrix CSV round-trips byte-identically") {
    Program p = test_helpers::power_program();
    auto mutants = generate_mutants(p);
    std::vector<TestCase> suite = {TestCase{{2, 3}}, TestCase{{1, 5}}};
    KillMatrix matrix = build_kill_matrix(p, mutants, suite);
    std::string csv = kill_matrix_to_csv(matrix);

    // re-parse and re-serialize
    std::istringstream in(csv);
    std::string header;
    std::getline(in, header);
    KillMatrix reparsed;
    reparsed.num_mutants = matrix.num_mutants;
    std::string line;
    while (std::getline(in, line)) {
        ++reparsed.num_tests;
        std::istringstream cells(line);
        std::string cell;
        while (std::getline(cells, cell, ','))
            reparsed.cells.push_back(cell == "1" ? 1 : 0);
    }
    CHECK(kill_matrix_to_csv(reparsed) == csv);
}
