#include "orbi/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <set>
#include <sstream>

#include "orbi/connection.hpp"
#include "orbi/errors.hpp"
#include "orbi/inequalities.hpp"

namespace orbi {

namespace {

std::string dstr(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

Json tau_to_json(const TranslationNumber& t) {
    Json j;
    if (t.exact) j["value"] = t.exact->str();
    else j["value"] = dstr(t.estimate);
    j["error"] = dstr(t.error);
    j["certified"] = t.certified;
    return j;
}

}  // namespace

Json ScenarioSettings::to_json() const {
    Json j;
    j["mesh_res"] = mesh_res;
    j["theta_nodes"] = theta_nodes;
    j["truncation_steps"] = truncation_steps;
    j["bite_segments"] = bite_segments;
    j["seed"] = seed;
    j["tol"] = tol;
    j["mc_samples"] = mc_samples;
    j["mc_word_length"] = mc_word_length;
    return j;
}

ScenarioSettings ScenarioSettings::from_json(const Json& j) {
    ScenarioSettings s;
    if (j.is_null()) return s;
    if (!j.is_object()) throw SchemaError("settings: expected object");
    for (auto& [k, v] : j.items()) {
        if (k == "mesh_res") s.mesh_res = v.get<int>();
        else if (k == "theta_nodes") s.theta_nodes = v.get<int>();
        else if (k == "truncation_steps") s.truncation_steps = v.get<int>();
        else if (k == "bite_segments") s.bite_segments = v.get<int>();
        else if (k == "seed") s.seed = v.get<std::uint64_t>();
        else if (k == "tol") s.tol = v.get<double>();
        else if (k == "mc_samples") s.mc_samples = v.get<std::int64_t>();
        else if (k == "mc_word_length") s.mc_word_length = v.get<int>();
        else throw SchemaError("settings: unknown key '" + k + "'");
    }
    if (s.truncation_steps < 1) throw SchemaError("settings: truncation_steps must be >= 1");
    return s;
}

Scenario Scenario::from_json(const Json& j) {
    Scenario sc;
    if (!j.is_object()) throw SchemaError("scenario: expected object");
    static const std::set<std::string> known{"presentation", "representation", "family", "tasks",
                                            "settings"};
    for (auto& [k, v] : j.items())
        if (!known.count(k)) throw SchemaError("scenario: unknown key '" + k + "'");
    if (!j.contains("representation")) throw SchemaError("scenario: missing representation");
    sc.representation = j.at("representation");
    if (j.contains("presentation")) sc.presentation = j.at("presentation");
    if (j.contains("family")) sc.family = j.at("family");
    if (!j.contains("tasks") || !j.at("tasks").is_array() || j.at("tasks").empty())
        throw SchemaError("scenario: tasks must be a non-empty array");
    static const std::set<std::string> task_names{"euler",     "seifert",      "mw",
                                                  "ehn",       "curvature",    "gauss-bonnet",
                                                  "stationary"};
    for (const Json& t : j.at("tasks")) {
        std::string name = t.get<std::string>();
        if (!task_names.count(name)) throw SchemaError("scenario: unknown task '" + name + "'");
        sc.tasks.push_back(name);
    }
    sc.settings = ScenarioSettings::from_json(j.contains("settings") ? j.at("settings") : Json());

    // representation needs a presentation, inline or from the scenario level
    if (!sc.representation.is_object()) throw SchemaError("scenario: representation must be object");
    if (!sc.representation.contains("presentation")) {
        if (sc.presentation.is_null())
            throw SchemaError("scenario: representation.presentation missing");
        sc.representation["presentation"] = sc.presentation;
    }
    return sc;
}

namespace {

Json seifert_to_json(const SeifertData& sd) {
    Json j;
    j["genus"] = sd.genus;
    j["beta0"] = sd.beta0;
    Json pairs = Json::array();
    for (auto [alpha, beta] : sd.pairs) pairs.push_back(Json::array({alpha, beta}));
    j["pairs"] = std::move(pairs);
    Json taus = Json::array();
    for (const auto& t : sd.cusp_tau_dec) taus.push_back(tau_to_json(t));
    j["cusp_tau_dec"] = std::move(taus);
    j["relator_residual"] = dstr(sd.relator_residual);
    return j;
}

Json euler_to_json(const EulerNumber& e) {
    Json j;
    j["e"] = e.value.str();
    j["e_estimate"] = dstr(e.estimate);
    j["exact"] = e.exact;
    if (!e.exact) j["error"] = dstr(e.error);
    j["seifert"] = seifert_to_json(e.seifert);
    return j;
}

Json inequality_to_json(const InequalityReport& r) {
    Json j;
    j["kind"] = r.kind;
    j["lower"] = r.lower.str();
    j["upper"] = r.upper.str();
    j["e"] = r.e.str();
    j["holds"] = r.holds;
    j["slack"] = r.slack.str();
    j["left_equality"] = r.left_equality;
    j["right_equality"] = r.right_equality;
    if (r.weaker_than_mw) j["weaker_than_mw"] = true;
    j["hypothesis"] = r.hypothesis;
    if (r.has_beta0_window) {
        j["beta0_window"] = Json::array({r.beta0_lo, r.beta0_hi});
        j["beta0"] = r.beta0;
        j["beta0_inside"] = r.beta0_inside;
        if (r.beta0_window_flagged) j["beta0_window_flagged"] = true;
    }
    return j;
}

std::string curvature_csv(const TruncatedDomain& dom, const std::vector<double>& kvals) {
    std::ostringstream os;
    os << "x,y,K,area\n";
    for (std::size_t i = 0; i < dom.triangles.size(); ++i) {
        const auto& t = dom.triangles[i];
        os << dstr(t.centroid.real()) << ',' << dstr(t.centroid.imag()) << ',' << dstr(kvals[i])
           << ',' << dstr(t.area) << '\n';
    }
    return os.str();
}

Json gb_to_json(const GaussBonnetReport& r) {
    Json j;
    j["e_exact"] = r.e_exact;
    j["e_estimate"] = dstr(r.e_estimate);
    j["beta0_frozen"] = r.beta0_frozen;
    j["beta0_matches"] = r.beta0_matches;
    j["per_loop_monotone"] = r.per_loop_monotone;
    Json levels = Json::array();
    for (const auto& lvl : r.levels) {
        Json lj;
        lj["level"] = lvl.level;
        lj["interior"] = dstr(lvl.interior);
        lj["boundary"] = dstr(lvl.boundary);
        lj["residual"] = dstr(lvl.residual);
        lj["mesh_area"] = dstr(lvl.mesh_area);
        lj["removed_area"] = dstr(lvl.removed_area);
        Json loops = Json::array();
        for (const auto& lv : lvl.loops) {
            Json pj;
            pj["type"] = lv.type == BoundaryLoop::Type::free_fiber ? "free_fiber"
                         : lv.type == BoundaryLoop::Type::cone     ? "cone"
                                                                   : "cusp";
            pj["index"] = lv.index;
            pj["value"] = dstr(lv.value);
            pj["target"] = dstr(lv.target);
            loops.push_back(std::move(pj));
        }
        lj["per_loop"] = std::move(loops);
        levels.push_back(std::move(lj));
    }
    j["levels"] = std::move(levels);
    return j;
}

}  // namespace

RunResult run_scenario(const Scenario& sc) {
    RunResult out;
    out.report["angle_unit"] = "turns";
    out.report["settings"] = sc.settings.to_json();

    LatticePresentation pres;
    RepresentationSpec rep = representation_from_json(sc.representation, &pres);
    rep.tol = sc.settings.tol;
    HarmonicFamily family = sc.family.is_null() ? HarmonicFamily::poisson()
                                                : family_from_json(sc.family);
    out.report["family"] = family_to_json(family);

    bool violation = false, inconclusive = false;
    Json tasks;

    // euler/seifert data feed the inequality tasks; compute once when needed
    bool need_euler = false;
    for (const auto& t : sc.tasks)
        if (t == "euler" || t == "seifert" || t == "mw" || t == "ehn" || t == "gauss-bonnet")
            need_euler = true;
    EulerNumber e;
    if (need_euler) {
        e = euler_number(rep);
        if (!e.exact) inconclusive = true;
    }

    for (const auto& name : sc.tasks) {
        if (name == "euler") {
            tasks["euler"] = euler_to_json(e);
        } else if (name == "seifert") {
            tasks["seifert"] = seifert_to_json(e.seifert);
        } else if (name == "mw") {
            InequalityReport r = milnor_wood_check(e, rep.signature);
            tasks["mw"] = inequality_to_json(r);
            if (!r.holds) violation = true;
        } else if (name == "ehn") {
            try {
                InequalityReport r = ehn_bounds_certified(e, rep.signature);
                Json rj = inequality_to_json(r);
                rj["diagnosis"] = ehn_equality_diagnosis(r, e.seifert).summary;
                tasks["ehn"] = std::move(rj);
                if (!r.holds || (r.has_beta0_window && !r.beta0_inside)) violation = true;
                if (r.beta0_window_flagged) inconclusive = true;
            } catch (const InconclusiveDisplacement& ex) {
                tasks["ehn"] = Json{{"inconclusive", ex.what()}};
                inconclusive = true;
            }
        } else if (name == "curvature") {
            ConnectionEvaluator ev(family, sc.settings.theta_nodes);
            DomainOptions dopt;
            dopt.mesh_res = sc.settings.mesh_res;
            dopt.bite_segments = sc.settings.bite_segments;
            TruncatedDomain dom = truncated_domain(pres, sc.settings.truncation_steps, dopt);
            std::vector<double> kv;
            kv.reserve(dom.triangles.size());
            double kmin = 1e300, kmax = -1e300, ksum = 0, wsum = 0;
            for (const auto& tri : dom.triangles) {
                double k = curvature_K(ev, tri.centroid);
                kv.push_back(k);
                kmin = std::min(kmin, k);
                kmax = std::max(kmax, k);
                ksum += k * tri.area;
                wsum += tri.area;
            }
            Json cj;
            cj["triangles"] = dom.triangles.size();
            cj["K_min"] = dstr(kmin);
            cj["K_max"] = dstr(kmax);
            cj["K_area_mean"] = dstr(ksum / std::max(1e-300, wsum));
            cj["bound_ok"] = (std::abs(kmin) <= 1 + 1e-6 && std::abs(kmax) <= 1 + 1e-6);
            cj["grid_file"] = "curvature.csv";
            tasks["curvature"] = std::move(cj);
            out.artifacts["curvature.csv"] = curvature_csv(dom, kv);
        } else if (name == "gauss-bonnet") {
            ConnectionEvaluator ev(family, sc.settings.theta_nodes);
            GaussBonnetOptions gopt;
            gopt.levels = sc.settings.truncation_steps;
            gopt.domain.mesh_res = sc.settings.mesh_res;
            gopt.domain.bite_segments = sc.settings.bite_segments;
            GaussBonnetReport r = gauss_bonnet_report(ev, pres, rep, gopt);
            tasks["gauss-bonnet"] = gb_to_json(r);
            if (!r.per_loop_monotone) inconclusive = true;
        } else if (name == "stationary") {
            CircleMeasure nu = stationary_measure_mc(rep, sc.settings.mc_word_length,
                                                     sc.settings.mc_samples, sc.settings.seed);
            double max_bin = 0;
            for (double m : nu.bin_masses) max_bin = std::max(max_bin, m);
            // equivariance: compare nu against the average of generator pushes
            std::vector<CircleMap> gens;
            for (const auto& g : rep.a) { gens.push_back(g); gens.push_back(g.inverse()); }
            for (const auto& g : rep.b) { gens.push_back(g); gens.push_back(g.inverse()); }
            for (const auto& g : rep.d) { gens.push_back(g); gens.push_back(g.inverse()); }
            for (const auto& g : rep.c) { gens.push_back(g); gens.push_back(g.inverse()); }
            double w1 = 0;
            if (!gens.empty()) {
                int bins = static_cast<int>(nu.bin_masses.size());
                std::vector<double> avg(bins, 0.0);
                for (const auto& g : gens) {
                    CircleMeasure push = pushforward(nu, g, bins);
                    for (int b = 0; b < bins; ++b) avg[b] += push.bin_masses[b] / gens.size();
                }
                CircleMeasure avg_m = CircleMeasure::from_bins(nu.bin_edges, std::move(avg));
                w1 = w1_circle(nu, avg_m);
            }
            Json sj;
            sj["samples"] = sc.settings.mc_samples;
            sj["word_length"] = sc.settings.mc_word_length;
            sj["seed"] = sc.settings.seed;
            sj["bins"] = nu.bin_masses.size();
            sj["max_bin_mass"] = dstr(max_bin);
            sj["w1_equivariance"] = dstr(w1);
            sj["histogram_file"] = "stationary.csv";
            tasks["stationary"] = std::move(sj);
            out.artifacts["stationary.csv"] = measure_to_csv(nu);
        }
    }

    out.report["tasks"] = std::move(tasks);
    out.exit_code = violation ? 2 : (inconclusive ? 3 : 0);
    out.report["exit_code"] = out.exit_code;
    return out;
}

RunResult run_scenario_json(const std::string& json_text) {
    Json j = Json::parse(json_text, nullptr, /*allow_exceptions=*/false);
    if (j.is_discarded()) throw SchemaError("scenario: invalid JSON");
    return run_scenario(Scenario::from_json(j));
}

void write_result(const RunResult& result, const std::string& out_dir) {
    std::filesystem::create_directories(out_dir);
    write_text_file(out_dir + "/report.json", result.report.dump(2) + "\n");
    for (const auto& [name, content] : result.artifacts)
        write_text_file(out_dir + "/" + name, content);
}

}  // namespace orbi
