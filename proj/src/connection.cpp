#include "orbi/connection.hpp"

#include <algorithm>
#include <cmath>

#include "orbi/errors.hpp"

namespace orbi {

namespace {

// d/dx_j of the lifted boundary-angle coordinate Phi_z(t) of the Mobius map
// taking z to 0 (branch-independent once used in differences), packed as
// dPhi_1 + i dPhi_2.
Complex dPhi(Complex z, double t) {
    Complex e = std::polar(1.0, 2.0 * M_PI * t);
    Complex A = 1.0 / (e - z);
    Complex B = e / (1.0 - std::conj(z) * e);
    double d1 = ((-A + B).imag()) / (2.0 * M_PI);
    double d2 = -((A + B).real()) / (2.0 * M_PI);
    return Complex(d1, d2);
}

// d/dx_j of the Poisson kernel P(z, s), packed as a complex number.
Complex dPoisson(Complex z, double s) {
    double n = std::norm(z);
    Complex e = std::polar(1.0, 2.0 * M_PI * s);
    double p = (1.0 - n) / std::norm(e - z);
    Complex glog = -2.0 * z / (1.0 - n) + 2.0 * (e - z) / std::norm(e - z);
    return p * glog;
}

// Walks the linear pieces of a PL lift over [0, t] and accumulates
// closed-form integrals of P(z, m(s)) ds (and the spatial gradient version).
template <typename Scalar, typename PhiDiff, typename Plateau>
Scalar integrate_pl(const CircleMap& m, double t, PhiDiff phi_diff, Plateau plateau) {
    const auto& xs = m.pl_x();
    const auto& ys = m.pl_y();
    std::size_t n = xs.size();
    Scalar acc{};
    double sign = t < 0 ? -1.0 : 1.0;
    double lo = std::min(0.0, t), hi = std::max(0.0, t);
    // Segment grid shifted by integers to cover [lo, hi].
    double base = xs.front();
    double kstart = std::floor(lo - base);
    for (double k = kstart;; k += 1.0) {
        bool done = false;
        for (std::size_t i = 0; i < n; ++i) {
            double x0 = xs[i] + k;
            double x1 = (i + 1 < n ? xs[i + 1] : xs.front() + 1.0) + k;
            double y0 = ys[i] + k;
            double y1 = (i + 1 < n ? ys[i + 1] : ys.front() + 1.0) + k;
            double a = std::max(x0, lo), b = std::min(x1, hi);
            if (a >= hi) { done = true; break; }
            if (b <= a) continue;
            double slope = (y1 - y0) / (x1 - x0);
            double ya = y0 + slope * (a - x0);
            double yb = y0 + slope * (b - x0);
            if (slope > 1e-9) {
                acc += phi_diff(ya, yb) / slope;
            } else {
                acc += plateau(0.5 * (ya + yb)) * (b - a);
            }
        }
        if (done) break;
        if (k - kstart > 1e6) throw Error("integrate_pl: runaway interval");
    }
    return sign * acc;
}

}  // namespace

// Per-point evaluator with the closed-form machinery for a fixed z.
class FiberEval {
public:
    FiberEval(const HarmonicFamily& fam, Complex z, double guard) : fam_(fam), z_(z) {
        if (std::abs(z) > guard)
            throw InvalidInput("connection: evaluation refused for |z| > " +
                               std::to_string(guard));
        phi_lift_ = CircleMap::mobius(DiskMobius::translation_to(-z).to_half_plane(), 0);
    }

    double h(double t) const { return fam_.density(z_, t); }

    double phi(double t) const {
        double acc = 0;
        for (const auto& cpt : fam_.components) acc += cpt.weight * phi_component(cpt.map, t);
        return acc;
    }

    // Spatial gradient of phi(z, t) with the fiber coordinate based at t = 0
    // (phi(z, 0) = 0 for every z). The omega-curve, the averaged connection
    // and the deck translations below all live in this one gauge; only
    // gauge-invariant combinations (curvature, closed-loop holonomy, arc
    // integrals minus deck terms) are reported as results.
    Complex dphi(double t) const {
        Complex acc(0, 0);
        for (const auto& cpt : fam_.components) acc += cpt.weight * dphi_component(cpt.map, t);
        return acc;
    }

    double mass() const { return phi(1.0); }

    double phi_inverse(double theta) const {
        double t = theta;  // good start: mass is 1
        for (int it = 0; it < 100; ++it) {
            double f = phi(t) - theta;
            if (std::abs(f) < 1e-12) return t;
            t -= f / std::max(1e-12, h(t));
        }
        // Bisection fallback.
        double lo = theta - 1.0, hi = theta + 1.0;
        while (phi(lo) > theta) lo -= 1.0;
        while (phi(hi) < theta) hi += 1.0;
        for (int it = 0; it < 200; ++it) {
            double mid = 0.5 * (lo + hi);
            (phi(mid) < theta ? lo : hi) = mid;
        }
        return 0.5 * (lo + hi);
    }

private:
    double phi_component(const CircleMap& m, double t) const {
        using K = CircleMap::Kind;
        if (m.kind() == K::rotation) {
            double dlt = m.rotation_value();
            return phi_lift_(t + dlt) - phi_lift_(dlt);
        }
        if (m.kind() == K::pl) {
            auto diff = [&](double ya, double yb) { return phi_lift_(yb) - phi_lift_(ya); };
            auto flat = [&](double y) { return poisson_kernel(z_, y); };
            return integrate_pl<double>(m, t, diff, flat);
        }
        // generic fallback: adaptive Simpson on h
        return simpson([&](double s) { return poisson_kernel(z_, m(s)); }, 0.0, t, 1e-11, 24);
    }

    Complex dphi_component(const CircleMap& m, double t) const {
        using K = CircleMap::Kind;
        if (m.kind() == K::rotation) {
            double dlt = m.rotation_value();
            return dPhi(z_, t + dlt) - dPhi(z_, dlt);
        }
        if (m.kind() == K::pl) {
            auto diff = [&](double ya, double yb) { return dPhi(z_, yb) - dPhi(z_, ya); };
            auto flat = [&](double y) { return dPoisson(z_, y); };
            return integrate_pl<Complex>(m, t, diff, flat);
        }
        return simpson([&](double s) { return dPoisson(z_, m(s)); }, 0.0, t, 1e-11, 24);
    }

    template <typename F>
    auto simpson(F f, double a, double b, double tol, int depth) const -> decltype(f(a)) {
        auto whole = simpson_rule(f, a, b);
        return simpson_rec(f, a, b, whole, tol, depth);
    }
    template <typename F>
    auto simpson_rule(F f, double a, double b) const -> decltype(f(a)) {
        return (b - a) / 6.0 * (f(a) + 4.0 * f(0.5 * (a + b)) + f(b));
    }
    template <typename F, typename V>
    V simpson_rec(F f, double a, double b, V whole, double tol, int depth) const {
        double m = 0.5 * (a + b);
        V left = simpson_rule(f, a, m), right = simpson_rule(f, m, b);
        V sum = left + right;
        if (depth <= 0 || std::abs(sum - whole) < 15 * tol) return sum + (sum - whole) / 15.0;
        return simpson_rec(f, a, m, left, tol / 2, depth - 1) +
               simpson_rec(f, m, b, right, tol / 2, depth - 1);
    }

    const HarmonicFamily& fam_;
    Complex z_;
    CircleMap phi_lift_;
};

ConnectionEvaluator::ConnectionEvaluator(HarmonicFamily fam, int nodes)
    : family(std::move(fam)), theta_nodes(nodes) {
    // the quotient connection needs constant unit fiber mass
    for (Complex z : {Complex(0, 0), Complex(0.31, -0.12), Complex(-0.05, 0.55)}) {
        double m = FiberEval(family, z, 0.9999).mass();
        if (std::abs(m - 1.0) > 1e-6)
            throw InvalidInput("ConnectionEvaluator: fiber mass " + std::to_string(m) +
                               " is not constant 1");
    }
}

double phi(const ConnectionEvaluator& ev, Complex z, double t) {
    return FiberEval(ev.family, z, ev.boundary_guard).phi(t);
}

double phi_inverse(const ConnectionEvaluator& ev, Complex z, double theta) {
    return FiberEval(ev.family, z, ev.boundary_guard).phi_inverse(theta);
}

Complex omega(const ConnectionEvaluator& ev, Complex z, double theta) {
    FiberEval f(ev.family, z, ev.boundary_guard);
    return f.dphi(f.phi_inverse(theta));
}

namespace {

double omega_curve_area(const FiberEval& f, int nodes) {
    // Signed area of the omega-curve; parametrizing by t traverses the same
    // curve as the theta parametrization.
    double area = 0;
    Complex prev = f.dphi(0.0), first = prev;
    for (int i = 1; i <= nodes; ++i) {
        Complex cur = (i == nodes) ? first : f.dphi(static_cast<double>(i) / nodes);
        area += prev.real() * cur.imag() - cur.real() * prev.imag();
        prev = cur;
    }
    return 0.5 * area;
}

}  // namespace

double curvature_K(const ConnectionEvaluator& ev, Complex z) {
    FiberEval f(ev.family, z, ev.boundary_guard);
    int n = ev.theta_nodes;
    // Inscribed-polygon areas converge at 1/N^2; Richardson kills the
    // leading term and the doubling stops once the extrapolant settles.
    double s1 = omega_curve_area(f, n);
    double s2 = omega_curve_area(f, 2 * n);
    double area = s2 + (s2 - s1) / 3.0;
    for (int it = 0; it < 5; ++it) {
        n *= 2;
        s1 = s2;
        s2 = omega_curve_area(f, 2 * n);
        double refined = s2 + (s2 - s1) / 3.0;
        double change = std::abs(refined - area);
        area = refined;
        if (change <= ev.curvature_tol * (1.0 + std::abs(s2))) break;
    }
    double g = 1.0 - std::norm(z);
    return -M_PI * g * g * area;
}

Complex average_connection(const ConnectionEvaluator& ev, Complex z) {
    FiberEval f(ev.family, z, ev.boundary_guard);
    int n = ev.theta_nodes;
    Complex acc(0, 0);
    for (int i = 0; i < n; ++i) {
        double t = static_cast<double>(i) / n;
        acc += f.dphi(t) * f.h(t);
    }
    return acc / static_cast<double>(n);
}

// ---------------------------------------------------------------------------
// holonomy
// ---------------------------------------------------------------------------

namespace {

Complex poincare_to_klein(Complex p) { return 2.0 * p / (1.0 + std::norm(p)); }

// z(s) on the Klein chord between two Poincare points and its s-derivative.
struct ChordPoint {
    Complex z;
    Complex dz;
};

ChordPoint chord_point(Complex ka, Complex kb, double s) {
    Complex k = ka + s * (kb - ka);
    Complex dk = kb - ka;
    double n = std::norm(k);
    double q = std::sqrt(std::max(1e-16, 1.0 - n));
    double den = 1.0 + q;
    double ndot = 2.0 * (k.real() * dk.real() + k.imag() * dk.imag());
    Complex z = k / den;
    Complex dz = dk / den + k * (ndot / (2.0 * q * den * den));
    return {z, dz};
}

constexpr double kGauss4X[4] = {0.0694318442029737, 0.3300094782075719, 0.6699905217924281,
                                0.9305681557970263};
constexpr double kGauss4W[4] = {0.1739274225687269, 0.3260725774312731, 0.3260725774312731,
                                0.1739274225687269};

double holonomy_pass(const ConnectionEvaluator& ev, const std::vector<Complex>& kl, int steps) {
    double total = 0;
    for (std::size_t i = 0; i + 1 < kl.size(); ++i) {
        for (int sub = 0; sub < steps; ++sub) {
            double a = static_cast<double>(sub) / steps;
            double w = 1.0 / steps;
            for (int gq = 0; gq < 4; ++gq) {
                ChordPoint cp = chord_point(kl[i], kl[i + 1], a + kGauss4X[gq] * w);
                Complex A = average_connection(ev, cp.z);
                total += kGauss4W[gq] * w *
                         (A.real() * cp.dz.real() + A.imag() * cp.dz.imag());
            }
        }
    }
    return total;
}

}  // namespace

double holonomy_translation(const ConnectionEvaluator& ev, const std::vector<Complex>& polyline,
                            int steps, double tol) {
    if (polyline.size() < 2) throw InvalidInput("holonomy_translation: need a polyline");
    std::vector<Complex> kl;
    kl.reserve(polyline.size());
    for (Complex p : polyline) kl.push_back(poincare_to_klein(p));
    double coarse = holonomy_pass(ev, kl, steps);
    for (int it = 0; it < 3; ++it) {
        double fine = holonomy_pass(ev, kl, steps * 2);
        double err = std::abs(fine - coarse) / 15.0;
        if (err <= tol) return fine;
        coarse = fine;
        steps *= 2;
    }
    throw StepTooCoarse("holonomy_translation: Richardson estimate above tolerance");
}

// ---------------------------------------------------------------------------
// Gauss-Bonnet schedule
// ---------------------------------------------------------------------------

namespace {

// Straightened deck translation r_gamma(z) = phi(gz, lift(phi^{-1}(z, 0)))
// for an equivariant family; `lift` must carry the trivialization branch.
double deck_translation(const ConnectionEvaluator& ev, const Mat2& gamma, const CircleMap& lift,
                        Complex z) {
    FiberEval at_z(ev.family, z, ev.boundary_guard);
    Complex gz = DiskMobius::from_half_plane(gamma).apply(z);
    FiberEval at_gz(ev.family, gz, ev.boundary_guard);
    double t0 = at_z.phi_inverse(0.0);
    return at_gz.phi(lift(t0));
}

// Branch of the deck lift pinned to tau = target (integer shift of the
// normalized lift; throws if the shift is not an integer).
CircleMap lift_with_tau(const CircleMap& f, const Rational& target) {
    NormalizedLift n = normalize_lift(f);
    if (!n.tau.exact) throw Error("lift_with_tau: deck translation number not certified");
    Rational k = *n.tau.exact - target;
    if (!k.is_integer()) throw Error("lift_with_tau: target branch unreachable");
    return n.map.shifted(-k.num());
}

}  // namespace

GaussBonnetReport gauss_bonnet_report(const ConnectionEvaluator& ev,
                                      const LatticePresentation& pres,
                                      const RepresentationSpec& rep,
                                      const GaussBonnetOptions& opts) {
    GaussBonnetReport rpt;
    EulerNumber e = euler_number(rep);
    rpt.e_exact = e.value.str();
    rpt.e_exact_value = e.estimate;

    bool frozen = false;
    for (int s = 1; s <= opts.levels; ++s) {
        TruncatedDomain dom = truncated_domain(pres, s, opts.domain);
        GaussBonnetLevel lvl;
        lvl.level = s;
        lvl.mesh_area = dom.mesh_area;
        lvl.removed_area = dom.removed_area;
        for (const auto& tri : dom.triangles)
            lvl.interior += curvature_K(ev, tri.centroid) * tri.area;
        lvl.interior /= 2.0 * M_PI;

        double cone_sum = 0, cusp_sum = 0, delta0 = 0;
        for (const auto& loop : dom.loops) {
            LoopValue lv;
            lv.type = loop.type;
            lv.index = loop.index;
            lv.delta = holonomy_translation(ev, loop.polyline, opts.holonomy_steps, 1e-9);
            switch (loop.type) {
                case BoundaryLoop::Type::free_fiber: {
                    delta0 = lv.delta;
                    lv.target = static_cast<double>(e.seifert.beta0);
                    break;
                }
                case BoundaryLoop::Type::cone: {
                    auto [alpha, beta] = e.seifert.pairs[loop.index];
                    Rational frac(beta, alpha);
                    CircleMap lift =
                        lift_with_tau(boundary_lift(loop.deck), -frac);
                    lv.deck_r = deck_translation(ev, loop.deck, lift, loop.polyline.front());
                    lv.value = lv.delta - lv.deck_r;
                    lv.target = frac.to_double();
                    cone_sum += lv.value;
                    break;
                }
                case BoundaryLoop::Type::cusp: {
                    const TranslationNumber& td = e.seifert.cusp_tau_dec[loop.index];
                    Rational target = td.exact ? *td.exact : Rational(0);
                    CircleMap lift = lift_with_tau(boundary_lift(loop.deck), target);
                    lv.deck_r = deck_translation(ev, loop.deck, lift, loop.polyline.front());
                    lv.value = lv.delta - lv.deck_r;
                    lv.target = -target.to_double();
                    cusp_sum += lv.value;
                    break;
                }
            }
            lvl.loops.push_back(lv);
        }
        if (!frozen) {
            rpt.beta0_frozen = static_cast<std::int64_t>(
                std::llround(-lvl.interior - delta0 - cone_sum + cusp_sum));
            frozen = true;
        }
        for (auto& lv : lvl.loops)
            if (lv.type == BoundaryLoop::Type::free_fiber)
                lv.value = static_cast<double>(rpt.beta0_frozen) + lv.delta;
        double v0 = static_cast<double>(rpt.beta0_frozen) + delta0;
        lvl.boundary = -v0 - cone_sum + cusp_sum;
        lvl.residual = lvl.interior - lvl.boundary;
        rpt.levels.push_back(std::move(lvl));
    }

    rpt.beta0_matches = (rpt.beta0_frozen == e.seifert.beta0);

    // Aitken extrapolation of the interior integrals.
    std::size_t n = rpt.levels.size();
    rpt.e_estimate = rpt.levels.back().interior;
    if (n >= 3) {
        double i0 = rpt.levels[n - 3].interior, i1 = rpt.levels[n - 2].interior,
               i2 = rpt.levels[n - 1].interior;
        double den = (i2 - i1) - (i1 - i0);
        if (std::abs(den) > 1e-14) rpt.e_estimate = i2 - (i2 - i1) * (i2 - i1) / den;
    }

    // Per-loop monotone convergence over the last three levels.
    if (n >= 3) {
        for (std::size_t li = 0; li < rpt.levels[0].loops.size(); ++li) {
            double d0 = std::abs(rpt.levels[n - 3].loops[li].value -
                                 rpt.levels[n - 3].loops[li].target);
            double d1 = std::abs(rpt.levels[n - 2].loops[li].value -
                                 rpt.levels[n - 2].loops[li].target);
            double d2 = std::abs(rpt.levels[n - 1].loops[li].value -
                                 rpt.levels[n - 1].loops[li].target);
            if (!(d1 <= d0 + 1e-12 && d2 <= d1 + 1e-12)) rpt.per_loop_monotone = false;
        }
    }
    return rpt;
}

double omega_circle_fit_residual(const ConnectionEvaluator& ev, Complex z, int nodes) {
    FiberEval f(ev.family, z, ev.boundary_guard);
    std::vector<Complex> pts;
    pts.reserve(nodes);
    for (int i = 0; i < nodes; ++i) pts.push_back(f.dphi(static_cast<double>(i) / nodes));
    // Kasa algebraic fit: minimize sum (|p|^2 - 2 c.p - r2)^2 over (c, r2).
    double sxx = 0, sxy = 0, syy = 0, sx = 0, sy = 0, sxz = 0, syz = 0, sz = 0;
    for (Complex p : pts) {
        double x = p.real(), y = p.imag(), q = x * x + y * y;
        sxx += x * x; sxy += x * y; syy += y * y;
        sx += x; sy += y;
        sxz += x * q; syz += y * q; sz += q;
    }
    double nn = static_cast<double>(nodes);
    // Solve [2sxx 2sxy sx; 2sxy 2syy sy; 2sx 2sy n] [cx cy r2]' = [sxz syz sz]'
    double m[3][4] = {{2 * sxx, 2 * sxy, sx, sxz},
                      {2 * sxy, 2 * syy, sy, syz},
                      {2 * sx, 2 * sy, nn, sz}};
    for (int col = 0; col < 3; ++col) {
        int piv = col;
        for (int r = col + 1; r < 3; ++r)
            if (std::abs(m[r][col]) > std::abs(m[piv][col])) piv = r;
        std::swap(m[piv], m[col]);
        if (std::abs(m[col][col]) < 1e-300) throw Error("circle fit: singular system");
        for (int r = 0; r < 3; ++r) {
            if (r == col) continue;
            double f2 = m[r][col] / m[col][col];
            for (int c2 = col; c2 < 4; ++c2) m[r][c2] -= f2 * m[col][c2];
        }
    }
    double cx = m[0][3] / m[0][0], cy = m[1][3] / m[1][1], r2 = m[2][3] / m[2][2];
    double radius = std::sqrt(std::max(1e-300, r2 + cx * cx + cy * cy));
    double worst = 0;
    for (Complex p : pts)
        worst = std::max(worst, std::abs(std::abs(p - Complex(cx, cy)) - radius));
    return worst / radius;
}

}  // namespace orbi
