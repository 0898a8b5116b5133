#include "orbi/circle.hpp"

#include <algorithm>
#include <cmath>
#include <queue>

#include "orbi/errors.hpp"

namespace orbi {

namespace {

constexpr double kIntTol = 1e-7;  // integer-snap tolerance for branch bookkeeping

double frac01(double x) {
    double f = x - std::floor(x);
    if (f >= 1.0) f = 0.0;
    return f;
}

std::int64_t round_to_int(double x, double tol, const char* what) {
    double r = std::round(x);
    if (std::abs(x - r) > tol) throw Error(std::string(what) + ": value " + std::to_string(x) +
                                          " is not an integer within tolerance");
    return static_cast<std::int64_t>(r);
}

}  // namespace

struct CircleMap::Node {
    Kind kind = Kind::rotation;

    // rotation
    std::optional<Rational> rot_exact;
    double rot_value = 0;

    // mobius
    Mat2 mat;
    DiskMobius disk;
    std::int64_t branch = 0;
    double base_angle = 0;  // raw circle angle of the image of 0, in [0,1)

    // pl: strictly increasing xs with xs.back() - xs.front() < 1; the pair
    // (xs[0]+1, ys[0]+1) closes the period. ys non-decreasing (strict unless
    // flat_ok).
    std::vector<double> xs, ys;
    bool flat_ok = false;

    // compose: parts[0] applied last
    std::vector<CircleMap> parts;

    double eval(double x) const;
};

namespace {

double mobius_raw_angle(const DiskMobius& dm, double x) {
    Complex z = std::polar(1.0, 2.0 * M_PI * x);
    Complex w = dm.apply(z);
    return frac01(std::arg(w) / (2.0 * M_PI));
}

}  // namespace

double CircleMap::Node::eval(double x) const {
    switch (kind) {
        case Kind::rotation:
            return x + rot_value;
        case Kind::mobius: {
            double k = std::floor(x);
            double xf = x - k;
            double a = mobius_raw_angle(disk, xf);
            double v = a + (a < base_angle - 1e-15 ? 1.0 : 0.0);
            // f(0) = base_angle; increasing on [0,1); the epsilon keeps the
            // jump detection stable when xf is the preimage of angle 0.
            return v + k + static_cast<double>(branch);
        }
        case Kind::pl: {
            double x0 = xs.front();
            double k = std::floor(x - x0);
            double xf = x - k;
            if (xf >= x0 + 1.0) { xf -= 1.0; k += 1.0; }
            if (xf < x0) { xf += 1.0; k -= 1.0; }
            auto it = std::upper_bound(xs.begin(), xs.end(), xf);
            std::size_t i = static_cast<std::size_t>(it - xs.begin());
            double xa, ya, xb, yb;
            if (i == 0) { xa = xs.front(); ya = ys.front(); }  // xf == x0 edge
            else { xa = xs[i - 1]; ya = ys[i - 1]; }
            if (i >= xs.size()) { xb = xs.front() + 1.0; yb = ys.front() + 1.0; }
            else { xb = xs[i]; yb = ys[i]; }
            double t = (xb > xa) ? (xf - xa) / (xb - xa) : 0.0;
            return ya + t * (yb - ya) + k;
        }
        case Kind::compose: {
            double v = x;
            for (auto it = parts.rbegin(); it != parts.rend(); ++it) v = (*it)(v);
            return v;
        }
    }
    return x;
}

CircleMap::CircleMap() {
    auto n = std::make_shared<Node>();
    n->kind = Kind::rotation;
    n->rot_exact = Rational(0);
    n->rot_value = 0;
    node_ = std::move(n);
}

CircleMap CircleMap::rotation(const Rational& turns) {
    auto n = std::make_shared<Node>();
    n->kind = Kind::rotation;
    n->rot_exact = turns;
    n->rot_value = turns.to_double();
    return CircleMap(std::move(n));
}

CircleMap CircleMap::rotation(double turns) {
    auto n = std::make_shared<Node>();
    n->kind = Kind::rotation;
    n->rot_value = turns;
    return CircleMap(std::move(n));
}

CircleMap CircleMap::mobius(const Mat2& m, std::int64_t branch) {
    if (std::abs(m.det() - 1.0) > 1e-9)
        throw InvalidInput("CircleMap::mobius: determinant must be 1");
    auto n = std::make_shared<Node>();
    n->kind = Kind::mobius;
    n->mat = m;
    n->disk = DiskMobius::from_half_plane(m);
    n->branch = branch;
    n->base_angle = mobius_raw_angle(n->disk, 0.0);
    return CircleMap(std::move(n));
}

CircleMap CircleMap::piecewise_linear(std::vector<std::pair<double, double>> points,
                                      bool allow_flat) {
    if (points.size() < 1) throw InvalidInput("piecewise_linear: need at least one breakpoint");
    // Canonicalize x into [0,1) shifting y by the same integer, then sort.
    for (auto& p : points) {
        double k = std::floor(p.first);
        p.first -= k;
        p.second -= k;
    }
    std::sort(points.begin(), points.end());
    points.erase(std::unique(points.begin(), points.end(),
                             [](const auto& a, const auto& b) {
                                 return std::abs(a.first - b.first) < 1e-15;
                             }),
                 points.end());
    auto n = std::make_shared<Node>();
    n->kind = Kind::pl;
    n->flat_ok = allow_flat;
    n->xs.reserve(points.size());
    n->ys.reserve(points.size());
    for (auto& p : points) {
        n->xs.push_back(p.first);
        n->ys.push_back(p.second);
    }
    // Monotonicity across the period closure (ys[0]+1 after ys.back()).
    for (std::size_t i = 0; i + 1 <= n->ys.size(); ++i) {
        double y0 = n->ys[i];
        double y1 = (i + 1 < n->ys.size()) ? n->ys[i + 1] : n->ys.front() + 1.0;
        if (allow_flat ? (y1 < y0 - 1e-12) : (y1 <= y0 + 1e-15))
            throw InvalidInput("piecewise_linear: breakpoints not monotone increasing");
    }
    return CircleMap(std::move(n));
}

CircleMap CircleMap::from_function(const std::function<double(double)>& f, int breakpoints) {
    if (breakpoints < 2) throw InvalidInput("from_function: need at least 2 breakpoints");
    std::vector<std::pair<double, double>> pts;
    pts.reserve(breakpoints);
    for (int i = 0; i < breakpoints; ++i) {
        double x = static_cast<double>(i) / breakpoints;
        pts.emplace_back(x, f(x));
    }
    return piecewise_linear(std::move(pts));
}

CircleMap CircleMap::composition(std::vector<CircleMap> parts) {
    if (parts.empty()) return identity();
    if (parts.size() == 1) return parts[0];
    auto n = std::make_shared<Node>();
    n->kind = Kind::compose;
    n->parts = std::move(parts);
    return CircleMap(std::move(n));
}

double CircleMap::operator()(double x) const { return node_->eval(x); }

CircleMap::Kind CircleMap::kind() const { return node_->kind; }
const std::optional<Rational>& CircleMap::rotation_exact() const { return node_->rot_exact; }
double CircleMap::rotation_value() const { return node_->rot_value; }
const Mat2& CircleMap::mobius_matrix() const { return node_->mat; }
std::int64_t CircleMap::mobius_branch() const { return node_->branch; }
const std::vector<double>& CircleMap::pl_x() const { return node_->xs; }
const std::vector<double>& CircleMap::pl_y() const { return node_->ys; }
bool CircleMap::pl_allows_flat() const { return node_->flat_ok; }
const std::vector<CircleMap>& CircleMap::parts() const { return node_->parts; }

CircleMap CircleMap::shifted(std::int64_t k) const {
    if (k == 0) return *this;
    switch (node_->kind) {
        case Kind::rotation:
            if (node_->rot_exact) return rotation(*node_->rot_exact + Rational(k));
            return rotation(node_->rot_value + static_cast<double>(k));
        case Kind::mobius:
            return mobius(node_->mat, node_->branch + k);
        case Kind::pl: {
            std::vector<std::pair<double, double>> pts;
            pts.reserve(node_->xs.size());
            for (std::size_t i = 0; i < node_->xs.size(); ++i)
                pts.emplace_back(node_->xs[i], node_->ys[i] + static_cast<double>(k));
            return piecewise_linear(std::move(pts), node_->flat_ok);
        }
        case Kind::compose: {
            std::vector<CircleMap> p = node_->parts;
            p.insert(p.begin(), rotation(Rational(k)));
            return composition(std::move(p));
        }
    }
    return *this;
}

CircleMap CircleMap::inverse() const {
    switch (node_->kind) {
        case Kind::rotation:
            if (node_->rot_exact) return rotation(-*node_->rot_exact);
            return rotation(-node_->rot_value);
        case Kind::mobius: {
            Mat2 mi = node_->mat.inverse();
            CircleMap canon_inv = mobius(mi, 0);
            CircleMap canon_fwd = mobius(node_->mat, 0);
            std::int64_t r =
                round_to_int(canon_inv(canon_fwd(0.0)), kIntTol, "mobius inverse branch");
            return mobius(mi, -node_->branch - r);
        }
        case Kind::pl: {
            std::vector<std::pair<double, double>> pts;
            pts.reserve(node_->xs.size());
            for (std::size_t i = 0; i < node_->xs.size(); ++i) {
                if (node_->flat_ok && i + 1 < node_->ys.size() &&
                    node_->ys[i + 1] <= node_->ys[i] + 1e-15)
                    throw InvalidInput("inverse: map has flat segments");
                pts.emplace_back(node_->ys[i], node_->xs[i]);
            }
            return piecewise_linear(std::move(pts));
        }
        case Kind::compose: {
            std::vector<CircleMap> p;
            p.reserve(node_->parts.size());
            for (auto it = node_->parts.rbegin(); it != node_->parts.rend(); ++it)
                p.push_back(it->inverse());
            return composition(std::move(p));
        }
    }
    return *this;
}

CircleMap CircleMap::reversed() const {
    switch (node_->kind) {
        case Kind::rotation:
            if (node_->rot_exact) return rotation(-*node_->rot_exact);
            return rotation(-node_->rot_value);
        case Kind::mobius: {
            // Conjugation by z -> conj(z) on the disk flips b and c signs
            // in the half-plane form.
            Mat2 m{node_->mat.a, -node_->mat.b, -node_->mat.c, node_->mat.d};
            CircleMap raw = mobius(m, 0);
            double want = -(*this)(0.0);
            std::int64_t k = round_to_int(want - raw(0.0), kIntTol, "reversed branch");
            return mobius(m, k);
        }
        case Kind::pl: {
            std::vector<std::pair<double, double>> pts;
            pts.reserve(node_->xs.size());
            for (std::size_t i = 0; i < node_->xs.size(); ++i)
                pts.emplace_back(-node_->xs[i], -node_->ys[i]);
            return piecewise_linear(std::move(pts), node_->flat_ok);
        }
        case Kind::compose: {
            std::vector<CircleMap> p;
            p.reserve(node_->parts.size());
            for (auto& part : node_->parts) p.push_back(part.reversed());
            return composition(std::move(p));
        }
    }
    return *this;
}

namespace {

// Exact PL composition f(g(x)). Breakpoints: g's breakpoints plus g-preimages
// of f's breakpoints.
CircleMap compose_pl(const CircleMap& f, const CircleMap& g) {
    const auto& gx = g.pl_x();
    std::vector<double> xs(gx.begin(), gx.end());
    CircleMap ginv = g.inverse();
    double lo = g(gx.front());
    for (double bf : f.pl_x()) {
        // g maps [x0, x0+1) onto [g(x0), g(x0)+1); pull back every translate
        // of bf landing there.
        double m = std::ceil(lo - bf);
        double y = bf + m;
        if (y < lo - 1e-15) y += 1.0;
        if (y < lo + 1.0 - 1e-15) xs.push_back(ginv(y));
    }
    std::vector<std::pair<double, double>> pts;
    pts.reserve(xs.size());
    for (double x : xs) pts.emplace_back(x, f(g(x)));
    bool flat = f.pl_allows_flat() || g.pl_allows_flat();
    return CircleMap::piecewise_linear(std::move(pts), flat);
}

CircleMap rotation_sum(const CircleMap& a, const CircleMap& b) {
    if (a.rotation_exact() && b.rotation_exact())
        return CircleMap::rotation(*a.rotation_exact() + *b.rotation_exact());
    return CircleMap::rotation(a.rotation_value() + b.rotation_value());
}

CircleMap pl_from_rotation(const CircleMap& r) {
    return CircleMap::piecewise_linear({{0.0, r.rotation_value()}});
}

}  // namespace

CircleMap compose(const CircleMap& f, const CircleMap& g) {
    using K = CircleMap::Kind;
    K kf = f.kind(), kg = g.kind();

    if (kf == K::rotation && kg == K::rotation) return rotation_sum(f, g);
    if (kf == K::mobius && kg == K::mobius) {
        Mat2 mn = f.mobius_matrix() * g.mobius_matrix();
        CircleMap canon = CircleMap::mobius(mn, 0);
        double r = f(g(0.0)) - canon(0.0);
        return CircleMap::mobius(mn, round_to_int(r, kIntTol, "mobius compose branch"));
    }
    bool f_pl_like = (kf == K::pl) || (kf == K::rotation && !f.rotation_exact());
    bool g_pl_like = (kg == K::pl) || (kg == K::rotation && !g.rotation_exact());
    // Exact-rational rotations stay symbolic; float rotations may be absorbed.
    if ((kf == K::pl || kg == K::pl) &&
        (f_pl_like || kf == K::rotation) && (g_pl_like || kg == K::rotation)) {
        CircleMap fp = (kf == K::pl) ? f : pl_from_rotation(f);
        CircleMap gp = (kg == K::pl) ? g : pl_from_rotation(g);
        return compose_pl(fp, gp);
    }

    std::vector<CircleMap> parts;
    auto append = [&parts](const CircleMap& m) {
        if (m.kind() == K::compose)
            for (auto& p : m.parts()) parts.push_back(p);
        else
            parts.push_back(m);
    };
    append(f);
    append(g);
    return CircleMap::composition(std::move(parts));
}

CircleMap power(const CircleMap& f, std::int64_t n) {
    if (n == 0) return CircleMap::identity();
    if (n < 0) return power(f.inverse(), -n);
    if (f.kind() == CircleMap::Kind::rotation) {
        if (f.rotation_exact()) return CircleMap::rotation(*f.rotation_exact() * Rational(n));
        return CircleMap::rotation(f.rotation_value() * static_cast<double>(n));
    }
    // Repeated squaring over composition.
    CircleMap acc = CircleMap::identity();
    CircleMap base = f;
    bool acc_set = false;
    std::int64_t m = n;
    while (m > 0) {
        if (m & 1) {
            acc = acc_set ? compose(acc, base) : base;
            acc_set = true;
        }
        m >>= 1;
        if (m > 0) base = compose(base, base);
    }
    return acc;
}

std::vector<double> CircleMap::breakpoint_grid() const {
    std::vector<double> grid;
    switch (node_->kind) {
        case Kind::pl:
            grid = node_->xs;
            break;
        case Kind::compose:
            for (auto& p : node_->parts) {
                auto sub = p.breakpoint_grid();
                grid.insert(grid.end(), sub.begin(), sub.end());
            }
            break;
        default:
            break;
    }
    for (auto& x : grid) x = frac01(x);
    std::sort(grid.begin(), grid.end());
    grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
    return grid;
}

// ---------------------------------------------------------------------------
// displacement bounds
// ---------------------------------------------------------------------------

namespace {

bool is_pl_exact(const CircleMap& f) {
    return f.kind() == CircleMap::Kind::pl || f.kind() == CircleMap::Kind::rotation;
}

DisplacementInterval pl_displacement(const CircleMap& f) {
    DisplacementInterval r;
    if (f.kind() == CircleMap::Kind::rotation) {
        r.lower = r.upper = f.rotation_value();
        return r;
    }
    const auto& xs = f.pl_x();
    const auto& ys = f.pl_y();
    double mn = ys[0] - xs[0], mx = mn;
    for (std::size_t i = 1; i < xs.size(); ++i) {
        double d = ys[i] - xs[i];
        mn = std::min(mn, d);
        mx = std::max(mx, d);
    }
    r.lower = mn;
    r.upper = mx;
    r.tolerance = 0;
    return r;
}

// Monotone branch-and-bound: on [a,b], f(x) - x lies in [f(a)-b, f(b)-a].
struct Seg {
    double a, b, fa, fb;
    double lo() const { return fa - b; }
    double hi() const { return fb - a; }
};

DisplacementInterval bnb_displacement(const CircleMap& f, double tol) {
    std::vector<Seg> segs;
    const int init = 16;
    double prev = f(0.0);
    for (int i = 0; i < init; ++i) {
        double a = static_cast<double>(i) / init, b = static_cast<double>(i + 1) / init;
        double fb = f(b);
        segs.push_back({a, b, prev, fb});
        prev = fb;
    }
    auto refine = [&](bool want_min) {
        double best_pt, bound;
        for (int iter = 0; iter < 1000000; ++iter) {
            best_pt = 1e300;
            bound = 1e300;
            std::size_t worst = 0;
            if (want_min) {
                for (std::size_t i = 0; i < segs.size(); ++i) {
                    best_pt = std::min(best_pt, std::min(segs[i].fa - segs[i].a,
                                                         segs[i].fb - segs[i].b));
                }
                bound = 1e300;
                for (std::size_t i = 0; i < segs.size(); ++i)
                    if (segs[i].lo() < bound) { bound = segs[i].lo(); worst = i; }
                if (best_pt - bound <= tol) return std::pair<double, double>(bound, best_pt);
            } else {
                best_pt = -1e300;
                for (std::size_t i = 0; i < segs.size(); ++i)
                    best_pt = std::max(best_pt, std::max(segs[i].fa - segs[i].a,
                                                         segs[i].fb - segs[i].b));
                bound = -1e300;
                for (std::size_t i = 0; i < segs.size(); ++i)
                    if (segs[i].hi() > bound) { bound = segs[i].hi(); worst = i; }
                if (bound - best_pt <= tol) return std::pair<double, double>(bound, best_pt);
            }
            Seg s = segs[worst];
            double m = 0.5 * (s.a + s.b), fm = f(m);
            segs[worst] = {s.a, m, s.fa, fm};
            segs.push_back({m, s.b, fm, s.fb});
        }
        return std::pair<double, double>(bound, best_pt);
    };
    auto [min_lo, min_hi] = refine(true);
    auto [max_hi, max_lo] = refine(false);
    DisplacementInterval r;
    r.lower = min_lo;
    r.upper = max_hi;
    r.tolerance = std::max(min_hi - min_lo, max_hi - max_lo);
    return r;
}

}  // namespace

DisplacementInterval displacement_bounds(const CircleMap& f, double tol) {
    if (tol <= 0) throw InvalidInput("displacement_bounds: tol must be positive");
    if (is_pl_exact(f)) return pl_displacement(f);
    return bnb_displacement(f, tol);
}

// ---------------------------------------------------------------------------
// translation number
// ---------------------------------------------------------------------------

namespace {

TranslationNumber exact_tau(Rational v) {
    TranslationNumber t;
    t.exact = v;
    t.estimate = v.to_double();
    t.error = 0;
    t.certified = true;
    return t;
}

// Mobius lifts: boundary fixed point (trace >= 2) forces an integer tau;
// elliptics rotate by the derivative argument at the interior fixed point.
std::optional<TranslationNumber> mobius_tau(const CircleMap& f, double tol) {
    const Mat2& m = f.mobius_matrix();
    double tr = std::abs(m.trace());
    DiskMobius dm = DiskMobius::from_half_plane(m);
    if (tr >= 2.0 - 1e-12) {
        auto fp = boundary_fixed_points(m);
        double k = f(fp.attracting) - fp.attracting;
        std::int64_t ki = static_cast<std::int64_t>(std::llround(k));
        if (std::abs(k - static_cast<double>(ki)) > std::max(tol, 1e-7)) return std::nullopt;
        return exact_tau(Rational(ki));
    }
    Complex z0 = dm.elliptic_fixed_point();
    double rot = frac01(std::arg(dm.derivative(z0)) / (2.0 * M_PI));
    // Integer part via a short iteration.
    const int N = 256;
    double x = 0;
    for (int i = 0; i < N; ++i) x = f(x);
    double est = x / N;
    std::int64_t n = static_cast<std::int64_t>(std::llround(est - rot));
    double value = rot + static_cast<double>(n);
    // Snap to a small-denominator rational and certify via f^alpha.
    for (std::int64_t alpha = 1; alpha <= 64; ++alpha) {
        double scaled = rot * static_cast<double>(alpha);
        double rr = std::round(scaled);
        if (std::abs(scaled - rr) < 1e-9 * alpha) {
            std::int64_t beta = static_cast<std::int64_t>(rr);
            double y = 0;
            for (std::int64_t i = 0; i < alpha; ++i) y = f(y);
            double kk = y;
            std::int64_t ki = static_cast<std::int64_t>(std::llround(kk));
            if (std::abs(kk - static_cast<double>(ki)) < std::max(tol, 1e-7) &&
                ki == beta + n * alpha)
                return exact_tau(Rational(ki, alpha));
            break;
        }
    }
    TranslationNumber t;
    t.estimate = value;
    t.error = 1e-9;
    t.certified = true;
    return t;
}

// Periodic-point certification: look for f^q(x) = x + p on the breakpoint
// grid (plus a uniform fallback grid). A straddle of the integer p by the
// sampled displacement certifies tau = p/q by the intermediate value theorem.
std::optional<Rational> periodic_point_tau(const CircleMap& f, std::int64_t qmax, double tol) {
    std::vector<double> grid = f.breakpoint_grid();
    for (int i = 0; i < 64; ++i) grid.push_back(i / 64.0);
    std::sort(grid.begin(), grid.end());
    grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
    if (grid.size() > 20000) {
        std::vector<double> g2;
        for (std::size_t i = 0; i < grid.size(); i += grid.size() / 16384) g2.push_back(grid[i]);
        grid.swap(g2);
    }
    std::vector<double> y = grid;
    double tol_int = std::max(tol, 1e-9);
    for (std::int64_t q = 1; q <= qmax; ++q) {
        double dmin = 1e300, dmax = -1e300;
        for (std::size_t i = 0; i < grid.size(); ++i) {
            y[i] = f(y[i]);
            double d = y[i] - grid[i];
            dmin = std::min(dmin, d);
            dmax = std::max(dmax, d);
        }
        std::int64_t plo = static_cast<std::int64_t>(std::ceil(dmin - tol_int));
        std::int64_t phi = static_cast<std::int64_t>(std::floor(dmax + tol_int));
        if (plo == phi) return Rational(plo, q);
    }
    return std::nullopt;
}

}  // namespace

TranslationNumber translation_number(const CircleMap& f, std::int64_t max_iter, double tol) {
    if (max_iter < 1) throw InvalidInput("translation_number: max_iter must be >= 1");
    using K = CircleMap::Kind;
    if (f.kind() == K::rotation) {
        if (f.rotation_exact()) return exact_tau(*f.rotation_exact());
        TranslationNumber t;
        t.estimate = f.rotation_value();
        t.error = 0;
        t.certified = true;
        return t;
    }
    if (f.kind() == K::mobius) {
        if (auto t = mobius_tau(f, tol)) return *t;
    }
    if (auto r = periodic_point_tau(f, std::min<std::int64_t>(64, max_iter), tol))
        return exact_tau(*r);

    double x = 0;
    std::int64_t n = 0;
    for (; n < max_iter; ++n) {
        x = f(x);
        if (1.0 / static_cast<double>(n + 1) <= tol) { ++n; break; }
    }
    TranslationNumber t;
    t.estimate = x / static_cast<double>(n);
    t.error = 1.0 / static_cast<double>(n);
    t.certified = (t.error <= tol);
    return t;
}

Rational translation_number_finite_order(const CircleMap& f, std::int64_t alpha, double tol) {
    if (alpha < 1) throw InvalidInput("translation_number_finite_order: alpha must be positive");
    auto check_at = [&](double x0) {
        double y = x0;
        for (std::int64_t i = 0; i < alpha; ++i) y = f(y);
        return y - x0;
    };
    double k0 = check_at(0.0);
    std::int64_t k = static_cast<std::int64_t>(std::llround(k0));
    if (std::abs(k0 - static_cast<double>(k)) > tol)
        throw NotFiniteOrder("f^alpha(0) displacement " + std::to_string(k0) +
                             " is not an integer within tolerance");
    for (double probe : {0.37, 0.71}) {
        double d = check_at(probe);
        if (std::abs(d - static_cast<double>(k)) > 8 * tol)
            throw NotFiniteOrder("f^alpha is not a uniform integer translation");
    }
    return Rational(k, alpha);
}

NormalizedLift normalize_lift(const CircleMap& f, std::int64_t max_iter, double tol) {
    TranslationNumber t = translation_number(f, max_iter, tol);
    std::int64_t k;
    if (t.exact) {
        k = t.exact->floor();
    } else {
        if (t.error >= 0.25)
            throw AmbiguousLift("translation number enclosure too wide to normalize");
        double lo = t.lo(), hi = t.hi();
        double flo = std::floor(lo), fhi = std::floor(hi);
        if (flo != fhi) {
            // Enclosure straddles an integer: only acceptable when it hugs the
            // integer within tolerance on one side... refuse rather than guess.
            throw AmbiguousLift("translation number enclosure straddles an integer");
        }
        k = static_cast<std::int64_t>(flo);
    }
    NormalizedLift out{f.shifted(-k), -k, {}};
    if (t.exact) {
        out.tau = exact_tau(*t.exact - Rational(k));
    } else {
        out.tau.estimate = t.estimate - static_cast<double>(k);
        out.tau.error = t.error;
        out.tau.certified = t.certified;
    }
    return out;
}

TranslationNumber tau_dec(const CircleMap& f, std::int64_t max_iter, double tol) {
    return normalize_lift(f, max_iter, tol).tau;
}

LemmaTrBounds lemma_tr_bounds(const CircleMap& f, double tol) {
    DisplacementInterval d = displacement_bounds(f, tol);
    LemmaTrBounds out;
    // max displacement in [upper - tol', upper]; any candidate ceil minus one
    // is a valid lower bound, take the conservative one.
    out.lower = static_cast<std::int64_t>(std::ceil(d.upper - d.tolerance - 1e-12)) - 1;
    out.upper = static_cast<std::int64_t>(std::floor(d.lower + d.tolerance + 1e-12)) + 1;
    TranslationNumber t = translation_number(f);
    out.holds = (t.lo() >= static_cast<double>(out.lower) - 1e-9) &&
                (t.hi() <= static_cast<double>(out.upper) + 1e-9);
    return out;
}

}  // namespace orbi
