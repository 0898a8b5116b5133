#include "orbi/orbi_c.h"

#include <cstring>
#include <string>
#include <vector>

#include "orbi/errors.hpp"
#include "orbi/scenario.hpp"

struct orbi_result {
    std::string report;
    std::vector<std::pair<std::string, std::string>> artifacts;
    int exit_code = 0;
    orbi::RunResult raw;
};

namespace {

void fill_err(char* errbuf, size_t errlen, const char* msg) {
    if (!errbuf || errlen == 0) return;
    std::strncpy(errbuf, msg, errlen - 1);
    errbuf[errlen - 1] = '\0';
}

int run_guarded(const std::string& json_text, orbi_result** out, char* errbuf, size_t errlen) {
    if (!out) return 1;
    *out = nullptr;
    try {
        orbi::RunResult rr = orbi::run_scenario_json(json_text);
        auto* res = new orbi_result;
        res->report = rr.report.dump(2) + "\n";
        for (const auto& [name, content] : rr.artifacts) res->artifacts.emplace_back(name, content);
        res->exit_code = rr.exit_code;
        res->raw = std::move(rr);
        *out = res;
        return 0;
    } catch (const orbi::SchemaError& e) {
        fill_err(errbuf, errlen, e.what());
        return 64;
    } catch (const std::exception& e) {
        fill_err(errbuf, errlen, e.what());
        return 1;
    }
}

}  // namespace

extern "C" {

const char* orbi_version(void) { return "0.1.0"; }

int orbi_run_scenario_json(const char* scenario_json, orbi_result** out, char* errbuf,
                           size_t errlen) {
    if (!scenario_json) {
        fill_err(errbuf, errlen, "null scenario");
        return 64;
    }
    return run_guarded(scenario_json, out, errbuf, errlen);
}

int orbi_run_scenario_file(const char* path, orbi_result** out, char* errbuf, size_t errlen) {
    if (!path) {
        fill_err(errbuf, errlen, "null path");
        return 64;
    }
    try {
        return run_guarded(orbi::read_text_file(path), out, errbuf, errlen);
    } catch (const std::exception& e) {
        fill_err(errbuf, errlen, e.what());
        return 1;
    }
}

const char* orbi_result_report(const orbi_result* r) { return r ? r->report.c_str() : ""; }

int orbi_result_exit_code(const orbi_result* r) { return r ? r->exit_code : 1; }

size_t orbi_result_artifact_count(const orbi_result* r) { return r ? r->artifacts.size() : 0; }

const char* orbi_result_artifact_name(const orbi_result* r, size_t i) {
    if (!r || i >= r->artifacts.size()) return nullptr;
    return r->artifacts[i].first.c_str();
}

const char* orbi_result_artifact_content(const orbi_result* r, size_t i) {
    if (!r || i >= r->artifacts.size()) return nullptr;
    return r->artifacts[i].second.c_str();
}

int orbi_result_write(const orbi_result* r, const char* out_dir, char* errbuf, size_t errlen) {
    if (!r || !out_dir) {
        fill_err(errbuf, errlen, "null argument");
        return 1;
    }
    try {
        orbi::write_result(r->raw, out_dir);
        return 0;
    } catch (const std::exception& e) {
        fill_err(errbuf, errlen, e.what());
        return 1;
    }
}

void orbi_result_free(orbi_result* r) { delete r; }

}  // extern "C"
