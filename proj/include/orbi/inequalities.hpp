#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "orbi/euler.hpp"

namespace orbi {

struct InequalityReport {
    std::string kind;  // "milnor-wood" | "ehn" | "ehn-genus0"
    Rational lower, upper;
    Rational e;
    double e_estimate = 0;
    bool e_exact = true;
    Rational slack;  // distance to the nearer violated side; >= 0 when holds
    bool holds = false;
    bool left_equality = false;
    bool right_equality = false;
    bool weaker_than_mw = false;  // genus-0 variant
    std::string hypothesis = "Gamma lattice";

    // beta0 window from per-cusp displacement intervals (g >= 1 with cusps)
    bool has_beta0_window = false;
    std::int64_t beta0_lo = 0, beta0_hi = 0;
    std::int64_t beta0 = 0;
    bool beta0_inside = true;
    bool beta0_window_flagged = false;  // neither adjacent-lift window contained beta0
};

// |e| <= -chi_orb, exact rationals.
InequalityReport milnor_wood_check(const RepresentationSpec& rep);
InequalityReport milnor_wood_check(const EulerNumber& e, const OrbifoldSignature& sig);

// Euler-number window from the normalized Seifert data:
//   chi + sum((alpha-1at)-beta)/alpha <= e <= -chi - sum(beta-1)/alpha  (g >= 1)
// with the +-1-widened variant for genus 0. When cusp displacement intervals
// are supplied (g >= 1), also checks the beta0 window
//   2-2g-l - sum ceil(min disp) <= beta0 <= 2g-2 - sum floor(max disp).
InequalityReport ehn_bounds(const EulerNumber& e, const OrbifoldSignature& sig,
                            const std::vector<DisplacementInterval>& cusp_displacements = {});

// Computes certified per-cusp displacement intervals from the normalized
// lifts in the Seifert data (g >= 1); when an extreme sits on an integer the
// adjacent lift choices are enumerated and the tighter window consistent
// with the computed beta0 is reported (union + flag when none matches).
InequalityReport ehn_bounds_certified(const EulerNumber& e, const OrbifoldSignature& sig,
                                      double disp_tol = 1e-9);

struct EhnEqualityDiagnosis {
    bool maximal_negative = false;  // e = chi: left equality and beta_i = alpha_i - 1
    bool maximal_positive = false;  // e = -chi: right equality and beta_i = 1
    std::string summary;
};

EhnEqualityDiagnosis ehn_equality_diagnosis(const InequalityReport& report,
                                            const SeifertData& seifert);

}  // namespace orbi
