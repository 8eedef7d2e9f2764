#ifndef MUTAGEN_REPORT_HPP
#define MUTAGEN_REPORT_HPP

#include <sstream>
#include <string>

#include <json.hpp>

#include "mutate.hpp"
#include "suite.hpp"

namespace mutagen {

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline nlohmann::json config_to_json(const GaConfig& c) {
    // nlohmann::json keeps keys in lexicographic order, which makes the
    // serialized report byte-stable.
    nlohmann::json j;
    j["best_fit_display_threshold"] = c.best_fit_display_threshold;
    j["crossover_rate"] = c.crossover_rate;
    j["drop_threshold"] = c.drop_threshold;
    j["elitism_count"] = c.elitism_count;
    j["fuel"] = c.fuel;
    j["gene_mutation_rate"] = c.gene_mutation_rate;
    j["max_generations"] = c.max_generations;
    j["parallel"] = c.parallel;
    j["population_size"] = c.population_size;
    j["scan_equivalents"] = c.scan_equivalents;
    j["seed"] = c.seed;
    j["target_score"] = c.target_score;
    j["tournament_size"] = c.tournament_size;
    return j;
}

inline void apply_config_json(GaConfig& c, const nlohmann::json& j) {
    const auto get = [&](const char* key, auto& field) {
        if (j.contains(key)) field = j.at(key).get<std::decay_t<decltype(field)>>();
    };
    get("population_size", c.population_size);
    get("max_generations", c.max_generations);
    get("crossover_rate", c.crossover_rate);
    get("gene_mutation_rate", c.gene_mutation_rate);
    get("tournament_size", c.tournament_size);
    get("elitism_count", c.elitism_count);
    get("drop_threshold", c.drop_threshold);
    get("target_score", c.target_score);
    get("best_fit_display_threshold", c.best_fit_display_threshold);
    get("seed", c.seed);
    get("fuel", c.fuel);
    get("scan_equivalents", c.scan_equivalents);
    get("parallel", c.parallel);
    for (auto it = j.begin(); it != j.end(); ++it)
        if (!config_to_json(GaConfig{}).contains(it.key()))
            throw ConfigError("unknown config key '" + it.key() + "'");
}

/// Loads GaConfig from JSON (`{...}`) or `key = value` lines; `#` comments.
inline GaConfig load_config(const std::string& text, GaConfig base = {}) {
    std::string trimmed = text;
    size_t first = trimmed.find_first_not_of(" \t\r\n");
    if (first != std::string::npos && trimmed[first] == '{') {
        nlohmann::json j;
        try {
            j = nlohmann::json::parse(trimmed);
        } catch (const nlohmann::json::parse_error& e) {
            throw ConfigError(std::string("config JSON: ") + e.what());
        }
        apply_config_json(base, j);
        return base;
    }
    nlohmann::json j = nlohmann::json::object();
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (size_t hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        size_t eq = line.find('=');
        std::string key = line.substr(0, eq == std::string::npos ? line.size() : eq);
        const auto trim = [](std::string s) {
            size_t a = s.find_first_not_of(" \t\r");
            size_t b = s.find_last_not_of(" \t\r");
            return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
        };
        key = trim(key);
        if (key.empty()) continue;
        if (eq == std::string::npos)
            throw ConfigError("config line " + std::to_string(lineno) + ": missing '='");
        std::string value = trim(line.substr(eq + 1));
        try {
            j[key] = nlohmann::json::parse(value);
        } catch (const nlohmann::json::parse_error&) {
            throw ConfigError("config line " + std::to_string(lineno) +
                              ": unreadable value '" + value + "'");
        }
    }
    apply_config_json(base, j);
    return base;
}

inline nlohmann::json mutants_to_json(const std::vector<Mutant>& mutants) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& m : mutants) {
        nlohmann::json j;
        j["column"] = m.site.column;
        j["id"] = m.id;
        j["line"] = m.site.line;
        j["mutated"] = m.mutated_fragment;
        j["operator"] = operator_name(m.op);
        j["original"] = m.original_fragment;
        arr.push_back(std::move(j));
    }
    return arr;
}

/// Rows = tests, columns = mutant ids; header row lists the ids.
inline std::string kill_matrix_to_csv(const KillMatrix& matrix) {
    std::string out;
    for (size_t m = 0; m < matrix.num_mutants; ++m) {
        if (m) out += ',';
        out += std::to_string(m);
    }
    out += '\n';
    for (size_t t = 0; t < matrix.num_tests; ++t) {
        for (size_t m = 0; m < matrix.num_mutants; ++m) {
            if (m) out += ',';
            out += matrix.killed(t, m) ? '1' : '0';
        }
        out += '\n';
    }
    return out;
}

inline nlohmann::json report_to_json(const RunReport& r) {
    nlohmann::json j;
    j["best_fit_flag"] = r.best_fit_flag;
    j["config"] = config_to_json(r.config);
    j["equivalent_mutant_ids"] = r.equivalent_mutant_ids;
    j["final_score"] = r.final_score;
    nlohmann::json suite = nlohmann::json::array();
    for (const auto& t : r.final_suite) suite.push_back(t.genes);
    j["final_suite"] = std::move(suite);
    j["generations_run"] = r.generations_run;
    nlohmann::json hist = nlohmann::json::array();
    for (const auto& g : r.history) {
        nlohmann::json row;
        row["best_fitness"] = g.best_fitness;
        row["generation"] = g.generation;
        row["mean_fitness"] = g.mean_fitness;
        row["suite_score"] = g.suite_score;
        hist.push_back(std::move(row));
    }
    j["history"] = std::move(hist);
    j["killed_mutant_ids"] = r.killed_mutant_ids;
    j["seed"] = r.config.seed;
    j["surviving_mutant_ids"] = r.surviving_mutant_ids;
    j["total_mutants"] = r.total_mutants;
    return j;
}

inline std::string history_to_csv(const RunReport& r) {
    std::ostringstream out;
    out << "generation,best_fitness,suite_score,mean_fitness\n";
    for (const auto& g : r.history)
        out << g.generation << ',' << g.best_fitness << ',' << g.suite_score << ','
            << g.mean_fitness << '\n';
    return out.str();
}

inline std::string report_to_text(const RunReport& r) {
    std::ostringstream out;
    out << "generations run:    " << r.generations_run << '\n'
        << "total mutants:      " << r.total_mutants << '\n'
        << "killed:             " << r.killed_mutant_ids.size() << '\n'
        << "surviving:          " << r.surviving_mutant_ids.size() << '\n';
    if (r.config.scan_equivalents)
        out << "equivalent:         " << r.equivalent_mutant_ids.size() << '\n';
    out << "mutation score:     " << r.final_score << '\n';
    if (r.best_fit_flag) out << "best fit:           yes\n";
    out << "final suite (" << r.final_suite.size() << " tests):\n";
    for (const auto& t : r.final_suite) {
        out << "  (";
        for (size_t i = 0; i < t.genes.size(); ++i) {
            if (i) out << ", ";
            out << t.genes[i];
        }
        out << ")\n";
    }
    return out.str();
}

}  // namespace mutagen

#endif
