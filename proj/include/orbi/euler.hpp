#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "orbi/circle.hpp"
#include "orbi/fuchsian.hpp"

namespace orbi {

// A circle action of the lattice: one lifted map per presentation generator.
// Lift branches of a/b are arbitrary (commutators cancel them); d/c lifts are
// normalized internally when Seifert data is extracted.
struct RepresentationSpec {
    OrbifoldSignature signature;
    std::vector<CircleMap> a, b, d, c;
    double tol = 1e-6;  // integer-translation tolerance

    // Boundary lifts of a catalog/loaded presentation.
    static RepresentationSpec fuchsian(const LatticePresentation& pres, double tol = 1e-6);

    // Generator images conjugated by x -> -x (complex conjugate action).
    RepresentationSpec reversed() const;

    // Relator word as lifted maps in presentation order.
    CircleMap relator_lift() const;
};

struct SeifertData {
    int genus = 0;
    std::int64_t beta0 = 0;
    std::vector<std::pair<std::int64_t, std::int64_t>> pairs;  // (alpha_i, beta_i), 0<=beta<alpha
    std::vector<TranslationNumber> cusp_tau_dec;               // values in [0,1)
    double relator_residual = 0;

    std::vector<CircleMap> d_normalized;  // lifts with tau = beta_i/alpha_i
    std::vector<CircleMap> c_normalized;  // lifts with tau_dec in [0,1)
};

SeifertData seifert_data(const RepresentationSpec& rep);

struct EulerNumber {
    Rational value;      // meaningful when exact
    double estimate = 0;
    double error = 0;
    bool exact = false;
    SeifertData seifert;
};

// e = -beta0 - sum beta_i/alpha_i - sum tau_dec(rho(c_j)).
EulerNumber euler_number(const RepresentationSpec& rep);

// h rho h^{-1} for an invertible lift h.
RepresentationSpec conjugate_rep(const RepresentationSpec& rep, const CircleMap& h);

// Semiconjugate through a monotone degree-one map: invertible maps conjugate;
// maps with plateaus compose as psi . rho(g) . section, the Euler number is
// unchanged either way.
RepresentationSpec semiconjugate_deform(const RepresentationSpec& rep, const CircleMap& monotone);

// Left inverse (quantile section) of a monotone PL lift with plateaus.
CircleMap monotone_section(const CircleMap& psi);

}  // namespace orbi
