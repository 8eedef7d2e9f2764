// Command-line front end: parse/run/mutants/matrix/optimize/scan-equivalents.
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include <mutagen/mutagen.hpp>

namespace {

constexpr int kExitOk = 0;
constexpr int kExitTargetMissed = 1;
constexpr int kExitUsage = 2;
constexpr int kExitNoMutants = 65;
constexpr int kExitNoInput = 66;

struct ExitWith {
    int code;
};

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        std::cerr << "error: cannot open " << path << "\n";
        throw ExitWith{kExitNoInput};
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

mutagen::Program parse_file(const std::string& path) {
    std::string src = read_file(path);
    try {
        return mutagen::parse(src);
    } catch (const mutagen::ParseError& e) {
        std::cerr << path << ":" << e.what() << "\n";
        throw ExitWith{kExitUsage};
    }
}

mutagen::OperatorSet parse_operators(const std::string& spec) {
    mutagen::OperatorSet ops = mutagen::OperatorSet::none();
    std::istringstream in(spec);
    std::string item;
    while (std::getline(in, item, ',')) {
        if (item == "aor") ops.aor = true;
        else if (item == "ror") ops.ror = true;
        else if (item == "crp") ops.crp = true;
        else {
            std::cerr << "error: unknown mutation operator '" << item
                      << "' (expected aor, ror, crp)\n";
            throw ExitWith{kExitUsage};
        }
    }
    return ops;
}

// "lo..hi" applied to every parameter, or "lo..hi,lo..hi,..." one per parameter
mutagen::InputDomain parse_domain(const std::string& spec, size_t arity) {
    std::vector<mutagen::InputDomain::Interval> intervals;
    std::istringstream in(spec);
    std::string item;
    while (std::getline(in, item, ',')) {
        size_t dots = item.find("..");
        try {
            if (dots == std::string::npos) throw std::invalid_argument(item);
            long long lo = std::stoll(item.substr(0, dots));
            long long hi = std::stoll(item.substr(dots + 2));
            intervals.push_back({lo, hi});
        } catch (const std::exception&) {
            std::cerr << "error: bad domain interval '" << item << "' (expected lo..hi)\n";
            throw ExitWith{kExitUsage};
        }
    }
    mutagen::InputDomain domain;
    if (intervals.size() == 1) {
        domain.params.assign(arity, intervals[0]);
    } else if (intervals.size() == arity) {
        domain.params = std::move(intervals);
    } else {
        std::cerr << "error: domain has " << intervals.size() << " intervals, program takes "
                  << arity << " parameters\n";
        throw ExitWith{kExitUsage};
    }
    try {
        domain.validate();
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        throw ExitWith{kExitUsage};
    }
    return domain;
}

std::vector<mutagen::TestCase> parse_suite_csv(const std::string& text, size_t arity) {
    std::vector<mutagen::TestCase> suite;
    std::istringstream in(text);
    std::string line;
    int row = 0;
    while (std::getline(in, line)) {
        ++row;
        if (line.empty() || line == "\r") continue;
        mutagen::TestCase t;
        std::istringstream cells(line);
        std::string cell;
        while (std::getline(cells, cell, ',')) {
            try {
                t.genes.push_back(std::stoll(cell));
            } catch (const std::exception&) {
                std::cerr << "error: suite row " << row << ": bad integer '" << cell << "'\n";
                throw ExitWith{kExitUsage};
            }
        }
        if (t.genes.size() != arity) {
            std::cerr << "error: suite row " << row << ": " << t.genes.size()
                      << " values, program takes " << arity << "\n";
            throw ExitWith{kExitUsage};
        }
        suite.push_back(std::move(t));
    }
    return suite;
}

void emit(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text;
    } else {
        std::ofstream out(out_path, std::ios::binary);
        if (!out) {
            std::cerr << "error: cannot write " << out_path << "\n";
            throw ExitWith{kExitUsage};
        }
        out << text;
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"mutation-testing driven test case optimizer"};
    app.require_subcommand(1);

    std::string program_path;
    std::string config_path;
    std::string operators_spec = "aor,ror,crp";
    std::string domain_spec = "1..8";
    std::string format = "json";
    std::string out_path;
    std::string suite_path;
    std::vector<long long> run_inputs;

    mutagen::GaConfig defaults;
    uint64_t seed = defaults.seed;
    size_t population = defaults.population_size;
    size_t generations = defaults.max_generations;
    double crossover_rate = defaults.crossover_rate;
    double mutation_rate = defaults.gene_mutation_rate;
    size_t tournament = defaults.tournament_size;
    size_t elitism = defaults.elitism_count;
    double drop_threshold = defaults.drop_threshold;
    double target_score = defaults.target_score;
    double best_fit_threshold = defaults.best_fit_display_threshold;
    long long fuel = defaults.fuel;
    bool scan_equivalents = false;
    bool no_scan_equivalents = false;
    bool sequential = false;

    auto* cmd_parse = app.add_subcommand("parse", "parse a program and print its canonical form");
    cmd_parse->add_option("program", program_path)->required();

    auto* cmd_run = app.add_subcommand("run", "execute a program on concrete inputs");
    cmd_run->add_option("program", program_path)->required();
    cmd_run->add_option("inputs", run_inputs, "one integer per parameter");
    cmd_run->add_option("--fuel", fuel);

    auto* cmd_mutants = app.add_subcommand("mutants", "list all first-order mutants as JSON");
    cmd_mutants->add_option("program", program_path)->required();
    cmd_mutants->add_option("--operators", operators_spec);
    cmd_mutants->add_option("--out", out_path);

    auto* cmd_matrix = app.add_subcommand("matrix", "kill matrix of a test suite, as CSV");
    cmd_matrix->add_option("program", program_path)->required();
    cmd_matrix->add_option("--suite", suite_path, "CSV, one test per row")->required();
    cmd_matrix->add_option("--operators", operators_spec);
    cmd_matrix->add_option("--fuel", fuel);
    cmd_matrix->add_option("--out", out_path);

    auto* cmd_scan = app.add_subcommand("scan-equivalents",
                                        "mutants unkillable over the bounded domain");
    cmd_scan->add_option("program", program_path)->required();
    cmd_scan->add_option("--operators", operators_spec);
    cmd_scan->add_option("--domain", domain_spec);
    cmd_scan->add_option("--fuel", fuel);
    cmd_scan->add_option("--out", out_path);

    auto* cmd_optimize = app.add_subcommand("optimize", "evolve a mutant-killing test suite");
    cmd_optimize->add_option("program", program_path)->required();
    cmd_optimize->add_option("--config", config_path, "JSON or key=value config file");
    cmd_optimize->add_option("--seed", seed);
    cmd_optimize->add_option("--population", population);
    cmd_optimize->add_option("--generations", generations);
    cmd_optimize->add_option("--crossover-rate", crossover_rate);
    cmd_optimize->add_option("--mutation-rate", mutation_rate);
    cmd_optimize->add_option("--tournament", tournament);
    cmd_optimize->add_option("--elitism", elitism);
    cmd_optimize->add_option("--drop-threshold", drop_threshold);
    cmd_optimize->add_option("--target-score", target_score);
    cmd_optimize->add_option("--best-fit-threshold", best_fit_threshold);
    cmd_optimize->add_option("--fuel", fuel);
    cmd_optimize->add_option("--operators", operators_spec);
    cmd_optimize->add_option("--domain", domain_spec);
    cmd_optimize->add_option("--format", format)
        ->check(CLI::IsMember({"json", "csv", "text"}));
    cmd_optimize->add_option("--out", out_path);
    cmd_optimize->add_flag("--scan-equivalents", scan_equivalents);
    cmd_optimize->add_flag("--no-scan-equivalents", no_scan_equivalents);
    cmd_optimize->add_flag("--sequential", sequential, "disable parallel fitness evaluation");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : kExitUsage;
    }

    try {
        if (cmd_parse->parsed()) {
            mutagen::Program prog = parse_file(program_path);
            std::cout << mutagen::pretty_print(prog);
            return kExitOk;
        }

        if (cmd_run->parsed()) {
            mutagen::Program prog = parse_file(program_path);
            if (run_inputs.size() != prog.params.size()) {
                std::cerr << "error: program takes " << prog.params.size()
                          << " inputs, got " << run_inputs.size() << "\n";
                return kExitUsage;
            }
            mutagen::Outcome outcome =
                mutagen::execute(prog, run_inputs, mutagen::ExecBudget{fuel});
            switch (outcome.kind) {
            case mutagen::Outcome::Kind::Value:
                std::cout << outcome.value << "\n";
                return kExitOk;
            case mutagen::Outcome::Kind::Error:
                std::cout << "runtime error: " << mutagen::runtime_error_name(outcome.error)
                          << "\n";
                return kExitOk;
            case mutagen::Outcome::Kind::FuelExhausted:
                std::cout << "fuel exhausted\n";
                return kExitOk;
            }
        }

        if (cmd_mutants->parsed()) {
            mutagen::Program prog = parse_file(program_path);
            auto mutants = mutagen::generate_mutants(prog, parse_operators(operators_spec));
            emit(mutagen::mutants_to_json(mutants).dump(2) + "\n", out_path);
            return kExitOk;
        }

        if (cmd_matrix->parsed()) {
            mutagen::Program prog = parse_file(program_path);
            auto mutants = mutagen::generate_mutants(prog, parse_operators(operators_spec));
            auto suite = parse_suite_csv(read_file(suite_path), prog.params.size());
            auto matrix =
                mutagen::build_kill_matrix(prog, mutants, suite, mutagen::ExecBudget{fuel});
            emit(mutagen::kill_matrix_to_csv(matrix), out_path);
            return kExitOk;
        }

        if (cmd_scan->parsed()) {
            mutagen::Program prog = parse_file(program_path);
            auto mutants = mutagen::generate_mutants(prog, parse_operators(operators_spec));
            auto domain = parse_domain(domain_spec, prog.params.size());
            auto equivalent = mutagen::equivalent_mutant_scan(prog, mutants, domain,
                                                              mutagen::ExecBudget{fuel});
            emit(nlohmann::json(equivalent).dump() + "\n", out_path);
            return kExitOk;
        }

        if (cmd_optimize->parsed()) {
            mutagen::Program prog = parse_file(program_path);
            auto domain = parse_domain(domain_spec, prog.params.size());

            // precedence: flag > config file > MUTAGEN_SEED > default
            mutagen::GaConfig config;
            if (const char* env = std::getenv("MUTAGEN_SEED"))
                config.seed = std::strtoull(env, nullptr, 10);
            if (!config_path.empty()) {
                try {
                    config = mutagen::load_config(read_file(config_path), config);
                } catch (const mutagen::ConfigError& e) {
                    std::cerr << config_path << ": " << e.what() << "\n";
                    return kExitUsage;
                }
            }
            const auto flag = [&](const char* name, auto value, auto field) {
                if (cmd_optimize->count(name)) config.*field = value;
            };
            flag("--seed", seed, &mutagen::GaConfig::seed);
            flag("--population", population, &mutagen::GaConfig::population_size);
            flag("--generations", generations, &mutagen::GaConfig::max_generations);
            flag("--crossover-rate", crossover_rate, &mutagen::GaConfig::crossover_rate);
            flag("--mutation-rate", mutation_rate, &mutagen::GaConfig::gene_mutation_rate);
            flag("--tournament", tournament, &mutagen::GaConfig::tournament_size);
            flag("--elitism", elitism, &mutagen::GaConfig::elitism_count);
            flag("--drop-threshold", drop_threshold, &mutagen::GaConfig::drop_threshold);
            flag("--target-score", target_score, &mutagen::GaConfig::target_score);
            flag("--best-fit-threshold", best_fit_threshold,
                 &mutagen::GaConfig::best_fit_display_threshold);
            flag("--fuel", fuel, &mutagen::GaConfig::fuel);
            if (scan_equivalents) config.scan_equivalents = true;
            if (no_scan_equivalents) config.scan_equivalents = false;
            if (sequential) config.parallel = false;

            try {
                config.validate();
            } catch (const std::exception& e) {
                std::cerr << "error: " << e.what() << "\n";
                return kExitUsage;
            }

            mutagen::RunReport report;
            try {
                report = mutagen::optimize(prog, parse_operators(operators_spec), domain,
                                           config);
            } catch (const mutagen::NoMutants&) {
                std::cerr << "error: program has no mutants under the enabled operators\n";
                return kExitNoMutants;
            }

            std::string rendered;
            if (format == "json")
                rendered = mutagen::report_to_json(report).dump(2) + "\n";
            else if (format == "csv")
                rendered = mutagen::history_to_csv(report);
            else
                rendered = mutagen::report_to_text(report);
            emit(rendered, out_path);

            bool reached_target = report.final_score >= config.target_score;
            bool reached_max =
                config.scan_equivalents &&
                report.killed_mutant_ids.size() + report.equivalent_mutant_ids.size() ==
                    report.total_mutants;
            return (reached_target || reached_max) ? kExitOk : kExitTargetMissed;
        }
    } catch (const ExitWith& e) {
        return e.code;
    } catch (const mutagen::DomainTooLarge& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}
