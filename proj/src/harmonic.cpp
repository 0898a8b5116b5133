#include "orbi/harmonic.hpp"

#include <algorithm>
#include <cmath>

#include "orbi/fuchsian.hpp"

namespace orbi {

// ---------------------------------------------------------------------------
// CircleMeasure
// ---------------------------------------------------------------------------

CircleMeasure CircleMeasure::lebesgue(int bins) {
    CircleMeasure m;
    for (int i = 0; i <= bins; ++i) m.bin_edges.push_back(static_cast<double>(i) / bins);
    m.bin_masses.assign(bins, 1.0 / bins);
    return m;
}

CircleMeasure CircleMeasure::from_bins(std::vector<double> edges, std::vector<double> masses) {
    if (edges.size() != masses.size() + 1 || edges.size() < 2)
        throw InvalidInput("CircleMeasure: need n+1 edges for n bins");
    if (std::abs(edges.front()) > 1e-12 || std::abs(edges.back() - 1.0) > 1e-12)
        throw InvalidInput("CircleMeasure: edges must span [0, 1]");
    for (std::size_t i = 0; i + 1 < edges.size(); ++i)
        if (edges[i + 1] <= edges[i]) throw InvalidInput("CircleMeasure: edges not increasing");
    for (double m : masses)
        if (m < 0) throw InvalidInput("CircleMeasure: negative mass");
    CircleMeasure out;
    out.bin_edges = std::move(edges);
    out.bin_masses = std::move(masses);
    return out;
}

double CircleMeasure::total_mass() const {
    double t = 0;
    for (double m : bin_masses) t += m;
    for (const auto& a : atoms) t += a.mass;
    return t;
}

double CircleMeasure::cdf(double t) const {
    double acc = 0;
    for (std::size_t i = 0; i < bin_masses.size(); ++i) {
        double a = bin_edges[i], b = bin_edges[i + 1];
        if (t >= b) acc += bin_masses[i];
        else if (t > a) acc += bin_masses[i] * (t - a) / (b - a);
    }
    for (const auto& at : atoms)
        if (at.position <= t) acc += at.mass;
    return acc;
}

double CircleMeasure::quantile(double u) const {
    if (!atoms.empty()) throw AtomicMeasure("quantile: atomic measures unsupported");
    double acc = 0;
    for (std::size_t i = 0; i < bin_masses.size(); ++i) {
        if (acc + bin_masses[i] >= u - 1e-15) {
            if (bin_masses[i] <= 0) return bin_edges[i];
            double f = (u - acc) / bin_masses[i];
            f = std::clamp(f, 0.0, 1.0);
            return bin_edges[i] + f * (bin_edges[i + 1] - bin_edges[i]);
        }
        acc += bin_masses[i];
    }
    return bin_edges.back();
}

CircleMap collapse_map(const CircleMeasure& mu) {
    if (!mu.atomless()) throw AtomicMeasure("collapse_map: measure has atoms");
    if (std::abs(mu.total_mass() - 1.0) > 1e-9)
        throw InvalidInput("collapse_map: total mass must be 1");
    std::vector<std::pair<double, double>> pts;
    pts.reserve(mu.bin_edges.size());
    double acc = 0;
    for (std::size_t i = 0; i + 1 < mu.bin_edges.size(); ++i) {
        pts.emplace_back(mu.bin_edges[i], acc);
        acc += mu.bin_masses[i];
    }
    return CircleMap::piecewise_linear(std::move(pts), /*allow_flat=*/true);
}

// ---------------------------------------------------------------------------
// HarmonicFamily
// ---------------------------------------------------------------------------

HarmonicFamily HarmonicFamily::poisson(const CircleMap& m) {
    HarmonicFamily f;
    f.components.push_back({1.0, m});
    return f;
}

HarmonicFamily HarmonicFamily::mixture(const std::vector<std::pair<double, double>>& ws) {
    if (ws.empty()) throw InvalidInput("HarmonicFamily::mixture: empty");
    double total = 0;
    HarmonicFamily f;
    for (auto [w, shift] : ws) {
        if (w <= 0) throw InvalidInput("HarmonicFamily::mixture: weights must be positive");
        total += w;
        f.components.push_back({w, CircleMap::rotation(shift)});
    }
    if (std::abs(total - 1.0) > 1e-12)
        throw InvalidInput("HarmonicFamily::mixture: weights must sum to 1");
    return f;
}

double HarmonicFamily::density(Complex z, double t) const {
    double h = 0;
    for (const auto& cpt : components) h += cpt.weight * poisson_kernel(z, cpt.map(t));
    return h;
}

Complex HarmonicFamily::grad_log_density(Complex z, double t) const {
    // grad log P(z, s) = -2 z / (1 - |z|^2) + 2 (e(s) - z)/|e(s) - z|^2
    double h = 0;
    Complex g(0, 0);
    double n = std::norm(z);
    for (const auto& cpt : components) {
        double s = cpt.map(t);
        Complex e = std::polar(1.0, 2.0 * M_PI * s);
        double p = (1.0 - n) / std::norm(e - z);
        Complex glog = -2.0 * z / (1.0 - n) + 2.0 * (e - z) / std::norm(e - z);
        h += cpt.weight * p;
        g += cpt.weight * p * glog;
    }
    return g / h;
}

double harnack_norm(const HarmonicFamily& fam, Complex z, double t) {
    if (std::norm(z) >= 1.0) throw InvalidInput("harnack_norm: |z| must be < 1");
    return 0.5 * (1.0 - std::norm(z)) * std::abs(fam.grad_log_density(z, t));
}

double harmonic_residual(const std::function<double(Complex)>& h, Complex z, double radius,
                         int nodes) {
    if (std::abs(z) + radius >= 1.0)
        throw InvalidInput("harmonic_residual: circle leaves the disk");
    double mean = 0;
    for (int k = 0; k < nodes; ++k)
        mean += h(z + std::polar(radius, 2.0 * M_PI * k / nodes));
    mean /= nodes;
    return std::abs(mean - h(z));
}

double harmonic_residual(const HarmonicFamily& fam, Complex z, double t, double radius,
                         int nodes) {
    return harmonic_residual([&](Complex w) { return fam.density(w, t); }, z, radius, nodes);
}

// ---------------------------------------------------------------------------
// Monte Carlo stationary measure
// ---------------------------------------------------------------------------

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

// Counter-based: value depends only on (seed, sample, step).
std::uint64_t ctr_rand(std::uint64_t seed, std::uint64_t sample, std::uint64_t step) {
    return splitmix64(splitmix64(seed ^ (sample * 0xd1342543de82ef95ull)) ^
                      (step * 0xaf251af3b0f025b5ull));
}

}  // namespace

CircleMeasure stationary_measure_mc(const RepresentationSpec& rep, int word_length,
                                    std::int64_t samples, std::uint64_t seed, int bins,
                                    double x0) {
    if (samples < 1) throw InvalidInput("stationary_measure_mc: samples must be >= 1");
    std::vector<CircleMap> gens;
    for (const auto& g : rep.a) { gens.push_back(g); gens.push_back(g.inverse()); }
    for (const auto& g : rep.b) { gens.push_back(g); gens.push_back(g.inverse()); }
    for (const auto& g : rep.d) { gens.push_back(g); gens.push_back(g.inverse()); }
    for (const auto& g : rep.c) { gens.push_back(g); gens.push_back(g.inverse()); }
    if (gens.empty()) gens.push_back(CircleMap::identity());

    std::vector<double> mass(bins, 0.0);
    double w = 1.0 / static_cast<double>(samples);
    for (std::int64_t s = 0; s < samples; ++s) {
        double x = x0;
        for (int step = 0; step < word_length; ++step) {
            std::uint64_t r = ctr_rand(seed, static_cast<std::uint64_t>(s), step);
            x = gens[r % gens.size()](x);
        }
        double frac = x - std::floor(x);
        int b = std::min(bins - 1, static_cast<int>(frac * bins));
        mass[b] += w;
    }
    std::vector<double> edges(bins + 1);
    for (int i = 0; i <= bins; ++i) edges[i] = static_cast<double>(i) / bins;
    return CircleMeasure::from_bins(std::move(edges), std::move(mass));
}

double w1_circle(const CircleMeasure& a, const CircleMeasure& b, int grid) {
    // W1 on the circle: min_c integral |F_a - F_b - c|; the optimal c is the
    // median of the cdf difference.
    std::vector<double> diff(grid);
    for (int i = 0; i < grid; ++i) {
        double t = (i + 0.5) / grid;
        diff[i] = a.cdf(t) - b.cdf(t);
    }
    std::vector<double> sorted = diff;
    std::nth_element(sorted.begin(), sorted.begin() + grid / 2, sorted.end());
    double med = sorted[grid / 2];
    double w1 = 0;
    for (double d : diff) w1 += std::abs(d - med);
    return w1 / grid;
}

CircleMeasure pushforward(const CircleMeasure& mu, const CircleMap& f, int bins) {
    std::vector<double> mass(bins, 0.0);
    // Push each bin's mass by sampling its image interval.
    for (std::size_t i = 0; i < mu.bin_masses.size(); ++i) {
        if (mu.bin_masses[i] <= 0) continue;
        const int sub = 8;
        for (int k = 0; k < sub; ++k) {
            double t = mu.bin_edges[i] +
                       (k + 0.5) / sub * (mu.bin_edges[i + 1] - mu.bin_edges[i]);
            double y = f(t);
            double frac = y - std::floor(y);
            int bidx = std::min(bins - 1, static_cast<int>(frac * bins));
            mass[bidx] += mu.bin_masses[i] / sub;
        }
    }
    for (const auto& at : mu.atoms) {
        double y = f(at.position);
        double frac = y - std::floor(y);
        int bidx = std::min(bins - 1, static_cast<int>(frac * bins));
        mass[bidx] += at.mass;
    }
    std::vector<double> edges(bins + 1);
    for (int i = 0; i <= bins; ++i) edges[i] = static_cast<double>(i) / bins;
    CircleMeasure out = CircleMeasure::from_bins(std::move(edges), std::move(mass));
    return out;
}

}  // namespace orbi
