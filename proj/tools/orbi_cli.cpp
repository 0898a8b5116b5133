// Command-line front end; talks to the library through the C API only.

#include <cstdio>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "orbi/orbi_c.h"

namespace {

using Json = nlohmann::ordered_json;

struct CommonOpts {
    std::string rep_file;
    std::string family_file;
    std::string out_dir;
    int mesh_res = 12;
    int theta_nodes = 512;
    int truncation_steps = 4;
    std::uint64_t seed = 1;
    double tol = 1e-6;
    std::int64_t samples = 20000;
    int word_length = 40;
};

void add_common(CLI::App* cmd, CommonOpts& o, bool needs_rep = true) {
    if (needs_rep)
        cmd->add_option("--rep", o.rep_file, "representation file (JSON)")->required();
    cmd->add_option("--family", o.family_file, "harmonic family file (JSON)");
    cmd->add_option("--out", o.out_dir, "output directory for report and grids");
    cmd->add_option("--mesh-res", o.mesh_res, "mesh resolution");
    cmd->add_option("--theta-nodes", o.theta_nodes, "fiber quadrature nodes");
    cmd->add_option("--truncation-steps", o.truncation_steps, "truncation schedule length");
    cmd->add_option("--seed", o.seed, "random seed");
    cmd->add_option("--tol", o.tol, "integer-translation tolerance");
    cmd->add_option("--samples", o.samples, "Monte Carlo samples");
    cmd->add_option("--word-length", o.word_length, "Monte Carlo word length");
}

Json load_json_file(const std::string& path) {
    FILE* f = std::fopen(path.c_str(), "rb");
    if (!f) throw std::runtime_error("cannot open " + path);
    std::string text;
    char buf[4096];
    size_t n;
    while ((n = std::fread(buf, 1, sizeof buf, f)) > 0) text.append(buf, n);
    std::fclose(f);
    Json j = Json::parse(text, nullptr, false);
    if (j.is_discarded()) throw std::runtime_error("invalid JSON in " + path);
    return j;
}

Json scenario_from_opts(const CommonOpts& o, const std::vector<std::string>& tasks) {
    Json sc;
    sc["representation"] = load_json_file(o.rep_file);
    if (!o.family_file.empty()) sc["family"] = load_json_file(o.family_file);
    sc["tasks"] = tasks;
    Json st;
    st["mesh_res"] = o.mesh_res;
    st["theta_nodes"] = o.theta_nodes;
    st["truncation_steps"] = o.truncation_steps;
    st["seed"] = o.seed;
    st["tol"] = o.tol;
    st["mc_samples"] = o.samples;
    st["mc_word_length"] = o.word_length;
    sc["settings"] = st;
    return sc;
}

int run_and_print(const Json& scenario, const std::string& out_dir,
                  const std::string& task_filter = "") {
    char err[512] = {0};
    orbi_result* res = nullptr;
    int rc = orbi_run_scenario_json(scenario.dump().c_str(), &res, err, sizeof err);
    if (rc != 0) {
        std::fprintf(stderr, "error: %s\n", err[0] ? err : "run failed");
        return rc;
    }
    if (!out_dir.empty()) {
        if (orbi_result_write(res, out_dir.c_str(), err, sizeof err) != 0) {
            std::fprintf(stderr, "error writing output: %s\n", err);
            orbi_result_free(res);
            return 1;
        }
    }
    Json report = Json::parse(orbi_result_report(res));
    if (!task_filter.empty() && report.contains("tasks") &&
        report["tasks"].contains(task_filter)) {
        std::printf("%s\n", report["tasks"][task_filter].dump(2).c_str());
    } else {
        std::printf("%s\n", report.dump(2).c_str());
    }
    int code = orbi_result_exit_code(res);
    orbi_result_free(res);
    return code;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Euler numbers, Seifert data and harmonic-measure connections for circle "
                 "actions of hyperbolic-orbifold groups (angles in turns)"};
    app.require_subcommand(1);

    CommonOpts o_euler, o_seifert, o_mw, o_ehn, o_curv, o_gb, o_stat, o_run;
    std::string scenario_path;

    auto* c_euler = app.add_subcommand("euler", "Euler number and normalized Seifert data");
    add_common(c_euler, o_euler);
    auto* c_seifert = app.add_subcommand("seifert", "normalized Seifert invariants");
    add_common(c_seifert, o_seifert);

    auto* c_check = app.add_subcommand("check", "inequality checks");
    c_check->require_subcommand(1);
    auto* c_mw = c_check->add_subcommand("mw", "Milnor-Wood inequality");
    add_common(c_mw, o_mw);
    auto* c_ehn = c_check->add_subcommand("ehn", "Eisenbud-Hirsch-Neumann window");
    add_common(c_ehn, o_ehn);

    auto* c_curv = app.add_subcommand("curvature", "curvature grid of the averaged connection");
    add_common(c_curv, o_curv);
    auto* c_gb = app.add_subcommand("gauss-bonnet", "interior vs boundary comparison across the "
                                                    "truncation schedule");
    add_common(c_gb, o_gb);
    auto* c_stat = app.add_subcommand("stationary", "Monte Carlo stationary measure");
    add_common(c_stat, o_stat);

    auto* c_run = app.add_subcommand("run", "run a scenario file");
    c_run->add_option("scenario", scenario_path, "scenario JSON file")->required();
    c_run->add_option("--out", o_run.out_dir, "output directory");

    CLI11_PARSE(app, argc, argv);

    try {
        if (c_euler->parsed())
            return run_and_print(scenario_from_opts(o_euler, {"euler"}), o_euler.out_dir, "euler");
        if (c_seifert->parsed())
            return run_and_print(scenario_from_opts(o_seifert, {"seifert"}), o_seifert.out_dir,
                                 "seifert");
        if (c_mw->parsed())
            return run_and_print(scenario_from_opts(o_mw, {"euler", "mw"}), o_mw.out_dir, "mw");
        if (c_ehn->parsed())
            return run_and_print(scenario_from_opts(o_ehn, {"euler", "ehn"}), o_ehn.out_dir,
                                 "ehn");
        if (c_curv->parsed())
            return run_and_print(scenario_from_opts(o_curv, {"curvature"}), o_curv.out_dir,
                                 "curvature");
        if (c_gb->parsed())
            return run_and_print(scenario_from_opts(o_gb, {"gauss-bonnet"}), o_gb.out_dir,
                                 "gauss-bonnet");
        if (c_stat->parsed())
            return run_and_print(scenario_from_opts(o_stat, {"stationary"}), o_stat.out_dir,
                                 "stationary");
        if (c_run->parsed()) {
            char err[512] = {0};
            orbi_result* res = nullptr;
            int rc = orbi_run_scenario_file(scenario_path.c_str(), &res, err, sizeof err);
            if (rc != 0) {
                std::fprintf(stderr, "error: %s\n", err[0] ? err : "run failed");
                return rc;
            }
            if (!o_run.out_dir.empty() &&
                orbi_result_write(res, o_run.out_dir.c_str(), err, sizeof err) != 0) {
                std::fprintf(stderr, "error writing output: %s\n", err);
                orbi_result_free(res);
                return 1;
            }
            std::printf("%s", orbi_result_report(res));
            int code = orbi_result_exit_code(res);
            orbi_result_free(res);
            return code;
        }
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 64;
    }
    return 0;
}
