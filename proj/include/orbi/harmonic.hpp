#pragma once

#include <cstdint>
#include <vector>

#include "orbi/circle.hpp"
#include "orbi/euler.hpp"
#include "orbi/mat2.hpp"

namespace orbi {

struct AtomicMeasure : Error {
    using Error::Error;
};

// Finite measure on the circle: point atoms plus a step density on bins.
struct CircleMeasure {
    struct Atom {
        double position;  // turns, in [0,1)
        double mass;
    };
    std::vector<Atom> atoms;
    std::vector<double> bin_edges;   // increasing, in [0,1], first 0 and last 1
    std::vector<double> bin_masses;  // one per bin

    static CircleMeasure lebesgue(int bins = 1);
    static CircleMeasure from_bins(std::vector<double> edges, std::vector<double> masses);

    double total_mass() const;
    bool atomless() const { return atoms.empty(); }

    double cdf(double t) const;       // mass of [0, t], t in [0,1]
    double quantile(double u) const;  // left-continuous inverse of the cdf
};

// psi(t) = integral of mu over [0, t]; a monotone PL lift with plateaus over
// the gaps of the support. Requires mass 1 and no atoms.
CircleMap collapse_map(const CircleMeasure& mu);

// h(z, t) = sum_k w_k P(z, m_k(t)) with P the Poisson kernel: positive and
// harmonic in z for every t. Weights sum to 1, so h(0, t) = 1.
struct HarmonicFamily {
    struct Component {
        double weight;
        CircleMap map;  // monotone degree-one lift applied to t
    };
    std::vector<Component> components;

    static HarmonicFamily poisson(const CircleMap& m = CircleMap::identity());
    // weight/shift pairs: h = sum w_k P(z, t + delta_k)
    static HarmonicFamily mixture(const std::vector<std::pair<double, double>>& weight_shift);

    bool single_poisson() const { return components.size() == 1; }

    double density(Complex z, double t) const;
    // (d/dx1, d/dx2) log h packed as a complex number
    Complex grad_log_density(Complex z, double t) const;
};

// ((1 - |z|^2)/2) * || grad_z log h(z, t) ||; equals 1 exactly for a single
// Poisson kernel and is < 1 for proper mixtures.
double harnack_norm(const HarmonicFamily& fam, Complex z, double t);

// |circle average of h(., t) - h(z, t)|: near zero for harmonic families.
double harmonic_residual(const HarmonicFamily& fam, Complex z, double t, double radius,
                         int nodes = 64);
double harmonic_residual(const std::function<double(Complex)>& h, Complex z, double radius,
                         int nodes = 64);

// Empirical distribution of w(x0) over `samples` random words of the given
// length in the symmetrized generators. Counter-based seeding: deterministic
// for a given seed regardless of evaluation order.
CircleMeasure stationary_measure_mc(const RepresentationSpec& rep, int word_length,
                                    std::int64_t samples, std::uint64_t seed, int bins = 256,
                                    double x0 = 0.0);

// Circular 1-Wasserstein distance between two measures of equal mass.
double w1_circle(const CircleMeasure& a, const CircleMeasure& b, int grid = 4096);

// Pushforward of a binned measure under a lift (rebinned onto `bins`).
CircleMeasure pushforward(const CircleMeasure& mu, const CircleMap& f, int bins = 256);

}  // namespace orbi
