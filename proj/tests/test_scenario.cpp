#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <sstream>

#include "orbi/errors.hpp"
#include "orbi/scenario.hpp"

using namespace orbi;

namespace {

Json genus2_scenario() {
    Json sc;
    sc["presentation"] = Json{{"catalog", Json{{"genus", 2}, {"cone_orders", Json::array()},
                                               {"cusps", 0}}}};
    sc["representation"] = Json{{"fuchsian", true}};
    sc["family"] = Json{{"poisson", Json::object()}};
    sc["tasks"] = Json::array({"euler", "seifert", "mw", "ehn", "curvature", "stationary"});
    sc["settings"] = Json{{"mesh_res", 6},        {"theta_nodes", 256},
                          {"truncation_steps", 2}, {"seed", 5},
                          {"mc_samples", 2000},    {"mc_word_length", 24},
                          {"bite_segments", 32}};
    return sc;
}

int count_lines(const std::string& s) {
    int n = 0;
    for (char ch : s)
        if (ch == '\n') ++n;
    return n;
}

}  // namespace

TEST_CASE("full genus-2 scenario") {
    auto res = run_scenario(Scenario::from_json(genus2_scenario()));
    CHECK(res.exit_code == 0);
    const Json& tasks = res.report.at("tasks");
    CHECK(tasks.at("euler").at("e") == "-2");
    CHECK(tasks.at("mw").at("holds") == true);
    CHECK(tasks.at("mw").at("slack") == "0");
    double kmean = std::stod(tasks.at("curvature").at("K_area_mean").get<std::string>());
    CHECK(kmean == doctest::Approx(-1.0).epsilon(1e-3));
    CHECK(tasks.at("curvature").at("bound_ok") == true);

    // grid row count equals the triangle count
    auto it = res.artifacts.find("curvature.csv");
    REQUIRE(it != res.artifacts.end());
    int rows = count_lines(it->second) - 1;  // header
    CHECK(rows == tasks.at("curvature").at("triangles").get<int>());

    // report embeds tolerances and the schedule
    CHECK(res.report.at("settings").at("tol").get<double>() == 1e-6);
    CHECK(res.report.at("settings").at("truncation_steps").get<int>() == 2);
    CHECK(res.report.at("angle_unit") == "turns");

    // report round-trips through its serialization
    Json reparsed = Json::parse(res.report.dump());
    CHECK(reparsed == res.report);
}

TEST_CASE("determinism: identical seeds give byte-identical outputs") {
    auto sc = genus2_scenario();
    auto r1 = run_scenario(Scenario::from_json(sc));
    auto r2 = run_scenario(Scenario::from_json(sc));
    CHECK(r1.report.dump() == r2.report.dump());
    REQUIRE(r1.artifacts.size() == r2.artifacts.size());
    for (const auto& [name, content] : r1.artifacts) {
        auto it = r2.artifacts.find(name);
        REQUIRE(it != r2.artifacts.end());
        CHECK(content == it->second);
    }
}

TEST_CASE("seed change: non-MC outputs identical, MC histogram differs") {
    auto sc = genus2_scenario();
    auto r1 = run_scenario(Scenario::from_json(sc));
    sc["settings"]["seed"] = 6;
    auto r2 = run_scenario(Scenario::from_json(sc));
    CHECK(r1.report.at("tasks").at("euler") == r2.report.at("tasks").at("euler"));
    CHECK(r1.report.at("tasks").at("mw") == r2.report.at("tasks").at("mw"));
    CHECK(r1.artifacts.at("curvature.csv") == r2.artifacts.at("curvature.csv"));
    CHECK(r1.artifacts.at("stationary.csv") != r2.artifacts.at("stationary.csv"));
}

TEST_CASE("schema violations carry field information") {
    Json sc = genus2_scenario();
    sc.erase("representation");
    CHECK_THROWS_WITH_AS(run_scenario(Scenario::from_json(sc)),
                         "scenario: missing representation", SchemaError);

    Json sc2 = genus2_scenario();
    sc2["unknown_key"] = 1;
    CHECK_THROWS_AS(Scenario::from_json(sc2), SchemaError);

    Json sc3 = genus2_scenario();
    sc3["settings"]["bogus"] = true;
    CHECK_THROWS_AS(Scenario::from_json(sc3), SchemaError);

    Json sc4 = genus2_scenario();
    sc4["tasks"].push_back("made-up-task");
    CHECK_THROWS_AS(Scenario::from_json(sc4), SchemaError);

    // representation with missing generators
    Json sc5 = genus2_scenario();
    sc5["representation"] = Json{{"assignments", Json::object()}};
    CHECK_THROWS_AS(run_scenario(Scenario::from_json(sc5)), SchemaError);
}

TEST_CASE("serialization round trips") {
    auto rot = CircleMap::rotation(Rational(7, 12));
    auto j = circle_map_to_json(rot);
    auto back = circle_map_from_json(j);
    CHECK(*back.rotation_exact() == Rational(7, 12));

    auto pres = catalog({0, {2, 3}, 1});
    auto pj = presentation_to_json(pres);
    auto pback = presentation_from_json(pj);
    CHECK(pback.signature == pres.signature);
    CHECK(pback.relator_residual() < 1e-9);

    auto rep = RepresentationSpec::fuchsian(pres);
    auto rj = representation_to_json(rep, pj);
    auto rback = representation_from_json(rj);
    CHECK(euler_number(rback).value == euler_number(rep).value);

    // composed / PL maps round trip through JSON evaluation-equal
    auto pl = CircleMap::piecewise_linear({{0.0, 0.15}, {0.4, 0.6}, {0.9, 1.05}});
    auto comp = CircleMap::composition({pl, rot});
    auto cj = circle_map_to_json(comp);
    auto cback = circle_map_from_json(cj);
    for (double x : {0.0, 0.37, 1.2})
        CHECK(cback(x) == doctest::Approx(comp(x)).epsilon(1e-15));
}

TEST_CASE("measure csv") {
    auto leb = CircleMeasure::lebesgue(4);
    std::string csv = measure_to_csv(leb);
    CHECK(count_lines(csv) == 5);  // header + one row per bin
    CHECK(csv.rfind("bin_lo,bin_hi,mass\n", 0) == 0);
}

TEST_CASE("scenario-level gauss-bonnet on the modular orbifold") {
    Json sc;
    sc["presentation"] =
        Json{{"catalog", Json{{"genus", 0}, {"cone_orders", {2, 3}}, {"cusps", 1}}}};
    sc["representation"] = Json{{"fuchsian", true}};
    sc["tasks"] = Json::array({"gauss-bonnet"});
    sc["settings"] = Json{{"mesh_res", 6}, {"theta_nodes", 256}, {"truncation_steps", 3},
                          {"bite_segments", 24}};
    auto res = run_scenario(Scenario::from_json(sc));
    const Json& gb = res.report.at("tasks").at("gauss-bonnet");
    CHECK(gb.at("beta0_matches") == true);
    CHECK(gb.at("e_exact") == "-1/6");
    for (const auto& lvl : gb.at("levels"))
        CHECK(std::abs(std::stod(lvl.at("residual").get<std::string>())) < 1e-3);
}
