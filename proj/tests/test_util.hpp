#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

#include "orbi/circle.hpp"

namespace orbi::test {

// Small deterministic generator for property-style tests.
struct Rng {
    std::uint64_t state;
    explicit Rng(std::uint64_t seed) : state(seed ^ 0x9e3779b97f4a7c15ull) {}
    std::uint64_t next() {
        state += 0x9e3779b97f4a7c15ull;
        std::uint64_t x = state;
        x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
        x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
        return x ^ (x >> 31);
    }
    double uniform() { return (next() >> 11) * 0x1.0p-53; }
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
    std::int64_t integer(std::int64_t lo, std::int64_t hi) {
        return lo + static_cast<std::int64_t>(next() % static_cast<std::uint64_t>(hi - lo + 1));
    }
};

// Random strictly increasing PL lift with `segments` breakpoints and an
// optional integer part added to the displacement.
inline CircleMap random_pl_lift(Rng& rng, int segments = 8, std::int64_t shift = 0) {
    std::vector<double> xs, inc;
    double xacc = 0, iacc = 0;
    for (int i = 0; i < segments; ++i) {
        xs.push_back(xacc);
        xacc += rng.uniform(0.2, 1.0);
        inc.push_back(rng.uniform(0.05, 1.0));
        iacc += inc.back();
    }
    double y0 = rng.uniform();
    std::vector<std::pair<double, double>> pts;
    double ysum = 0;
    for (int i = 0; i < segments; ++i) {
        pts.emplace_back(xs[i] / xacc, y0 + ysum + static_cast<double>(shift));
        ysum += inc[i] / iacc;
    }
    return CircleMap::piecewise_linear(std::move(pts));
}

// Long-iteration translation-number oracle, error <= 1/n.
inline double tau_oracle(const CircleMap& f, int n = 100000) {
    double x = 0;
    for (int i = 0; i < n; ++i) x = f(x);
    return x / n;
}

}  // namespace orbi::test
