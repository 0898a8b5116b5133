#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "orbi/serialize.hpp"

namespace orbi {

struct ScenarioSettings {
    int mesh_res = 12;
    int theta_nodes = 512;
    int truncation_steps = 4;
    int bite_segments = 60;
    std::uint64_t seed = 1;
    double tol = 1e-6;
    std::int64_t mc_samples = 20000;
    int mc_word_length = 40;

    Json to_json() const;
    static ScenarioSettings from_json(const Json& j);  // unknown keys rejected
};

// One experiment: a presentation, a representation of it, an optional
// harmonic family, a task list and numeric settings.
struct Scenario {
    Json presentation;    // inline presentation or {"catalog": signature}
    Json representation;  // {"fuchsian": true[, "reversed": true]} or {"assignments": ...}
    Json family;          // {"poisson": ...} | {"mixture": ...}; defaults to poisson
    std::vector<std::string> tasks;  // euler seifert mw ehn curvature gauss-bonnet stationary
    ScenarioSettings settings;

    static Scenario from_json(const Json& j);  // strict schema, unknown keys rejected
};

struct RunResult {
    Json report;
    std::map<std::string, std::string> artifacts;  // file name -> content
    int exit_code = 0;  // 0 ok, 2 inequality violation, 3 numerically inconclusive
};

RunResult run_scenario(const Scenario& sc);
RunResult run_scenario_json(const std::string& json_text);

// Writes report.json and all artifacts into out_dir (created if needed).
void write_result(const RunResult& result, const std::string& out_dir);

}  // namespace orbi
