#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "orbi/errors.hpp"
#include "orbi/inequalities.hpp"
#include "test_util.hpp"

using namespace orbi;
using test::Rng;

TEST_CASE("milnor-wood on catalog entries") {
    auto rep = RepresentationSpec::fuchsian(catalog({2, {}, 0}));
    auto r = milnor_wood_check(rep);
    CHECK(r.holds);
    CHECK(r.slack == Rational(0));  // equality case
    CHECK(r.left_equality);

    // trivial representation: e = 0, holds strictly
    RepresentationSpec triv;
    triv.signature = {2, {}, 0};
    triv.a = {CircleMap::identity(), CircleMap::identity()};
    triv.b = {CircleMap::identity(), CircleMap::identity()};
    auto rt = milnor_wood_check(triv);
    CHECK(rt.holds);
    CHECK(rt.slack == Rational(2));

    // rotation rep of a one-cone genus-1 signature
    RepresentationSpec rot;
    rot.signature = {1, {2}, 0};
    rot.a = {CircleMap::rotation(Rational(1, 5))};
    rot.b = {CircleMap::rotation(Rational(3, 7))};
    rot.d = {CircleMap::rotation(Rational(0))};
    auto rr = milnor_wood_check(rot);
    CHECK(rr.e == Rational(0));
    CHECK(rr.upper == Rational(1, 2));
    CHECK(rr.holds);
}

TEST_CASE("ehn window values") {
    // (g=1, [(2,1)]): window [-1/2, 1/2]
    auto rep = RepresentationSpec::fuchsian(catalog({1, {2}, 0}));
    auto e = euler_number(rep);
    auto r = ehn_bounds(e, rep.signature);
    CHECK(r.kind == "ehn");
    CHECK(r.lower == Rational(-1, 2));
    CHECK(r.upper == Rational(1, 2));
    CHECK(r.holds);
    CHECK(r.left_equality);  // e = chi attains the left endpoint
    auto diag = ehn_equality_diagnosis(r, e.seifert);
    CHECK(diag.maximal_negative);
    CHECK(!diag.maximal_positive);

    // conjugate action: right equality with beta = 1
    auto er = euler_number(rep.reversed());
    auto rrev = ehn_bounds(er, rep.signature);
    CHECK(rrev.right_equality);
    auto drev = ehn_equality_diagnosis(rrev, er.seifert);
    CHECK(drev.maximal_positive);

    // genus-0 routes to the widened variant and is flagged
    auto rep0 = RepresentationSpec::fuchsian(catalog({0, {2, 3, 7}, 0}));
    auto e0 = euler_number(rep0);
    auto r0 = ehn_bounds(e0, rep0.signature);
    CHECK(r0.kind == "ehn-genus0");
    CHECK(r0.weaker_than_mw);
    CHECK(r0.holds);
    // indeed weaker: window strictly contains the Milnor-Wood window
    auto mw0 = milnor_wood_check(e0, rep0.signature);
    CHECK(r0.lower < mw0.lower);
    CHECK(r0.upper > mw0.upper);
}

TEST_CASE("ehn window inside milnor-wood for g >= 1") {
    for (auto sig : {OrbifoldSignature{2, {}, 0}, OrbifoldSignature{1, {2}, 0},
                     OrbifoldSignature{1, {3}, 0}}) {
        auto rep = RepresentationSpec::fuchsian(catalog(sig));
        auto e = euler_number(rep);
        auto ehn = ehn_bounds(e, sig);
        auto mw = milnor_wood_check(e, sig);
        CHECK(ehn.lower >= mw.lower);
        CHECK(ehn.upper <= mw.upper);
        CHECK(ehn.holds);
    }
}

TEST_CASE("beta0 window from certified displacements") {
    // cusp-free g >= 1 cases: window [2-2g-l, 2g-2]
    auto rep = RepresentationSpec::fuchsian(catalog({2, {}, 0}));
    auto e = euler_number(rep);
    auto r = ehn_bounds_certified(e, rep.signature);
    CHECK(r.has_beta0_window);
    CHECK(r.beta0_lo == -2);
    CHECK(r.beta0_hi == 2);
    CHECK(r.beta0 == 2);
    CHECK(r.beta0_inside);

    auto rep1 = RepresentationSpec::fuchsian(catalog({1, {2}, 0}));
    auto e1 = euler_number(rep1);
    auto r1 = ehn_bounds_certified(e1, rep1.signature);
    CHECK(r1.beta0_lo <= 0);
    CHECK(r1.beta0_hi >= 0);
    CHECK(r1.beta0_inside);

    // cusped genus-1 rotation rep: displacement extremes sit exactly on an
    // integer; adjacent-lift enumeration still pins a consistent window
    RepresentationSpec rot;
    rot.signature = {1, {}, 1};
    rot.a = {CircleMap::rotation(Rational(1, 3))};
    rot.b = {CircleMap::rotation(Rational(1, 4))};
    rot.c = {CircleMap::rotation(Rational(2))};
    auto ec = euler_number(rot);
    CHECK(ec.seifert.beta0 == 0);
    auto rc = ehn_bounds_certified(ec, rot.signature);
    CHECK(rc.has_beta0_window);
    CHECK(rc.beta0_inside);
    CHECK(!rc.beta0_window_flagged);

    // explicit displacement interval straddling an integer is inconclusive
    DisplacementInterval amb{-1e-12, 0.4, 1e-10};
    CHECK_THROWS_AS(ehn_bounds(ec, rot.signature, {amb}), InconclusiveDisplacement);
}

TEST_CASE("lemma bounds never contradict normalized cusp data") {
    // the tau enclosure of each normalized cusp lift sits inside the
    // displacement-derived window
    RepresentationSpec rot;
    rot.signature = {1, {}, 1};
    rot.a = {CircleMap::rotation(Rational(2, 7))};
    rot.b = {CircleMap::rotation(Rational(1, 9))};
    rot.c = {CircleMap::rotation(Rational(5, 3))};
    auto e = euler_number(rot);
    for (const auto& h : e.seifert.c_normalized) {
        auto b = lemma_tr_bounds(h);
        CHECK(b.holds);
        auto t = tau_dec(h);
        CHECK(t.value() >= b.lower - 1e-9);
        CHECK(t.value() <= b.upper + 1e-9);
    }
}

TEST_CASE("random representations keep every window consistent") {
    Rng rng(73);
    for (int trial = 0; trial < 40; ++trial) {
        RepresentationSpec rep;
        rep.signature = {1, {}, 1};
        rep.a = {test::random_pl_lift(rng, 4)};
        rep.b = {test::random_pl_lift(rng, 4)};
        std::int64_t q = rng.integer(1, 8), p = rng.integer(-8, 8);
        auto c0 = CircleMap::rotation(Rational(p, q));
        // conjugate the commutator-compensating cusp generator so the relator
        // closes: c = [b, a] rot(p/q) makes [a,b] d c an integer translation
        rep.c = {CircleMap::composition(
            {rep.b[0], rep.a[0], rep.b[0].inverse(), rep.a[0].inverse(), c0})};
        auto e = euler_number(rep);
        auto mw = milnor_wood_check(e, rep.signature);
        CHECK(mw.holds);
        auto ehn = ehn_bounds(e, rep.signature);
        CHECK(ehn.lower >= mw.lower);
        CHECK(ehn.upper <= mw.upper);
    }
}
