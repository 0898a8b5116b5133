#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "orbi/errors.hpp"
#include "orbi/euler.hpp"
#include "test_util.hpp"

using namespace orbi;
using test::Rng;

namespace {

RepresentationSpec trivial_rep(const OrbifoldSignature& sig) {
    RepresentationSpec rep;
    rep.signature = sig;
    for (int i = 0; i < sig.genus; ++i) {
        rep.a.push_back(CircleMap::identity());
        rep.b.push_back(CircleMap::identity());
    }
    for (std::size_t i = 0; i < sig.cone_orders.size(); ++i)
        rep.d.push_back(CircleMap::identity());
    for (int i = 0; i < sig.cusps; ++i) rep.c.push_back(CircleMap::identity());
    return rep;
}

}  // namespace

TEST_CASE("trivial representation") {
    auto e = euler_number(trivial_rep({2, {}, 0}));
    CHECK(e.value == Rational(0));
    CHECK(e.seifert.beta0 == 0);
    CHECK(e.seifert.pairs.empty());
}

TEST_CASE("all-rotation representation of the torus") {
    RepresentationSpec rep;
    rep.signature = {1, {}, 0};
    rep.a = {CircleMap::rotation(Rational(1, 3))};
    rep.b = {CircleMap::rotation(Rational(2, 7))};
    auto e = euler_number(rep);
    CHECK(e.value == Rational(0));
    CHECK(e.seifert.beta0 == 0);
}

TEST_CASE("catalog Fuchsian calibration e = chi") {
    struct Row {
        OrbifoldSignature sig;
        Rational e;
        std::int64_t beta0;
        std::vector<std::int64_t> betas;
    };
    const Row rows[] = {
        {{2, {}, 0}, Rational(-2), 2, {}},
        {{0, {2, 3, 7}, 0}, Rational(-1, 42), -2, {1, 2, 6}},
        {{0, {2, 3}, 1}, Rational(-1, 6), -1, {1, 2}},
        {{1, {2}, 0}, Rational(-1, 2), 0, {1}},
    };
    for (const auto& row : rows) {
        auto rep = RepresentationSpec::fuchsian(catalog(row.sig));
        auto e = euler_number(rep);
        CHECK(e.exact);
        CHECK(e.value == row.e);
        CHECK(e.value == chi_orb(row.sig));
        CHECK(e.seifert.beta0 == row.beta0);
        REQUIRE(e.seifert.pairs.size() == row.betas.size());
        for (std::size_t i = 0; i < row.betas.size(); ++i) {
            CHECK(e.seifert.pairs[i].first == row.sig.cone_orders[i]);
            CHECK(e.seifert.pairs[i].second == row.betas[i]);
        }
        // cusp parts are exactly zero for Fuchsian actions
        for (const auto& t : e.seifert.cusp_tau_dec) {
            REQUIRE(t.exact.has_value());
            CHECK(*t.exact == Rational(0));
        }
    }
}

TEST_CASE("lift independence of a/b branches") {
    auto rep = RepresentationSpec::fuchsian(catalog({2, {}, 0}));
    auto e0 = euler_number(rep).value;
    rep.a[0] = rep.a[0].shifted(3);
    rep.b[1] = rep.b[1].shifted(-2);
    CHECK(euler_number(rep).value == e0);
}

TEST_CASE("orientation reversal negates e") {
    for (auto sig : {OrbifoldSignature{2, {}, 0}, OrbifoldSignature{0, {2, 3}, 1},
                     OrbifoldSignature{1, {2}, 0}}) {
        auto rep = RepresentationSpec::fuchsian(catalog(sig));
        auto e = euler_number(rep).value;
        auto er = euler_number(rep.reversed()).value;
        CHECK(er == -e);
    }
}

TEST_CASE("semiconjugacy invariance") {
    auto rep = RepresentationSpec::fuchsian(catalog({2, {}, 0}));
    auto e0 = euler_number(rep).value;

    // identity deform
    auto same = semiconjugate_deform(rep, CircleMap::identity());
    CHECK(euler_number(same).value == e0);

    // PL conjugations
    Rng rng(41);
    for (int trial = 0; trial < 5; ++trial) {
        auto h = test::random_pl_lift(rng, 6);
        CHECK(euler_number(conjugate_rep(rep, h)).value == e0);
    }

    // collapse gadget with small plateaus: psi . rho . section
    std::vector<std::pair<double, double>> pts;
    double plateau = 1e-8;
    double xs[4] = {0.05, 0.35, 0.6, 0.85};
    double x = 0, y = 0;
    pts.emplace_back(0.0, 0.0);
    for (double gap_at : xs) {
        pts.emplace_back(gap_at, y + (gap_at - x));
        pts.emplace_back(gap_at + plateau, y + (gap_at - x));
        y += gap_at - x;
        x = gap_at + plateau;
    }
    // renormalize to a degree-one monotone lift
    double span = 1.0 - 4 * plateau;
    for (auto& p : pts) p.second /= span;
    auto psi = CircleMap::piecewise_linear(pts, /*allow_flat=*/true);
    auto deformed = semiconjugate_deform(rep, psi);
    deformed.tol = 1e-3;  // plateau noise amplified through the relator word
    CHECK(euler_number(deformed).value == e0);
}

TEST_CASE("relator failures are reported") {
    RepresentationSpec rep;
    rep.signature = {0, {2, 3}, 1};
    rep.d = {CircleMap::rotation(Rational(1, 2)), CircleMap::rotation(Rational(1, 3))};
    rep.c = {CircleMap::rotation(0.123)};  // relator not an integer translation
    CHECK_THROWS_AS(euler_number(rep), RelatorNotIdentity);

    RepresentationSpec nf;
    nf.signature = {0, {2, 3}, 1};
    nf.d = {CircleMap::rotation(0.37), CircleMap::rotation(Rational(1, 3))};
    nf.c = {CircleMap::rotation(0)};
    CHECK_THROWS_AS(euler_number(nf), NotFiniteOrder);

    CHECK_THROWS_AS(euler_number(trivial_rep({0, {2, 3}, 0})), InvalidInput);  // degenerate
}

TEST_CASE("milnor-wood bound on random valid representations") {
    Rng rng(97);
    // rotation representations of cusped genus-1 signatures
    for (int trial = 0; trial < 50; ++trial) {
        RepresentationSpec rep;
        rep.signature = {1, {}, 1};
        rep.a = {CircleMap::rotation(rng.uniform())};
        rep.b = {CircleMap::rotation(rng.uniform())};
        std::int64_t q = rng.integer(1, 12), p = rng.integer(-12, 12);
        rep.c = {CircleMap::rotation(Rational(p, q))};
        auto e = euler_number(rep);
        double bound = -chi_orb(rep.signature).to_double();
        CHECK(std::abs(e.estimate) <= bound + 1e-9);
    }
    // PL-conjugated Fuchsian
    auto fuch = RepresentationSpec::fuchsian(catalog({0, {2, 3, 7}, 0}));
    for (int trial = 0; trial < 10; ++trial) {
        auto h = test::random_pl_lift(rng, 5);
        auto e = euler_number(conjugate_rep(fuch, h));
        CHECK(e.value.abs() <= -chi_orb(fuch.signature));
    }
}
