#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "orbi/euler.hpp"
#include "orbi/fuchsian.hpp"
#include "orbi/harmonic.hpp"

namespace orbi {

// Evaluator for the fiber-integrated coordinate phi(z,t) = int_0^t h(z,s) ds
// of a harmonic family, its inverse, the omega-curve, the curvature and the
// averaged connection. Requires unit constant fiber mass.
struct ConnectionEvaluator {
    HarmonicFamily family;
    int theta_nodes = 512;
    double curvature_tol = 1e-8;
    double boundary_guard = 0.999;  // refuse evaluation for |z| beyond this

    explicit ConnectionEvaluator(HarmonicFamily fam, int nodes = 512);
};

double phi(const ConnectionEvaluator& ev, Complex z, double t);
double phi_inverse(const ConnectionEvaluator& ev, Complex z, double theta);

// (omega_1, omega_2)(z, theta) = spatial gradient of phi at t = phi^{-1}(theta),
// packed as a complex number.
Complex omega(const ConnectionEvaluator& ev, Complex z, double theta);

// K(z) = -pi (1-|z|^2)^2 * signed area of the omega-curve (one fiber period).
double curvature_K(const ConnectionEvaluator& ev, Complex z);

// Fiberwise average (A_1, A_2) of the omega-curve, packed as a complex number.
Complex average_connection(const ConnectionEvaluator& ev, Complex z);

// Fiber displacement (turns) transported along a polyline; vertices are
// Poincare points, edges are Klein-model straight chords (geodesics).
// Composite Gauss-Legendre with Richardson control; StepTooCoarse when the
// estimate cannot reach tol within the refinement cap.
double holonomy_translation(const ConnectionEvaluator& ev, const std::vector<Complex>& polyline,
                            int steps = 8, double tol = 1e-9);

struct GaussBonnetOptions {
    int levels = 4;  // truncation schedule s = 1..levels
    DomainOptions domain;
    int holonomy_steps = 8;
    double tol = 1e-6;
};

struct LoopValue {
    BoundaryLoop::Type type;
    int index = -1;
    double value = 0;   // holonomy translation in the normalized trivialization
    double target = 0;  // beta0, beta_i/alpha_i or -tau_dec
    double delta = 0;   // raw connection line integral along the loop
    double deck_r = 0;  // straightened deck translation at the base point
};

struct GaussBonnetLevel {
    int level = 0;
    double interior = 0;  // (1/2pi) sum K * area over the mesh
    double boundary = 0;  // -sum_i hol(D_i) + sum_j hol(c_j)
    double residual = 0;
    double mesh_area = 0, removed_area = 0;
    std::vector<LoopValue> loops;
};

struct GaussBonnetReport {
    std::vector<GaussBonnetLevel> levels;
    std::int64_t beta0_frozen = 0;  // integer part pinned at the coarsest level
    bool beta0_matches = false;     // equals the relator-lift beta0
    double e_estimate = 0;          // extrapolated interior integral
    std::string e_exact;            // rational Euler number
    double e_exact_value = 0;
    bool per_loop_monotone = true;  // convergence monotone over the last 3 levels
};

// Runs the truncation schedule for a Fuchsian representation of `pres`
// carrying the family of `ev`; the family must be equivariant (the Poisson
// family) for the quotient identity to hold.
GaussBonnetReport gauss_bonnet_report(const ConnectionEvaluator& ev,
                                      const LatticePresentation& pres,
                                      const RepresentationSpec& rep,
                                      const GaussBonnetOptions& opts = {});

// Least-squares circle fit residual of the omega-curve at z (max radial
// deviation relative to the fitted radius).
double omega_circle_fit_residual(const ConnectionEvaluator& ev, Complex z, int nodes = 256);

}  // namespace orbi
