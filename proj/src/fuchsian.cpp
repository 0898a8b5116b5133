#include "orbi/fuchsian.hpp"

#include <algorithm>
#include <cmath>

#include "orbi/errors.hpp"

namespace orbi {

Rational chi_orb(const OrbifoldSignature& sig) {
    Rational chi(2 - 2 * static_cast<std::int64_t>(sig.genus) -
                 static_cast<std::int64_t>(sig.cusps));
    for (auto alpha : sig.cone_orders) {
        if (alpha < 2) throw InvalidInput("chi_orb: cone orders must be >= 2");
        chi -= Rational(alpha - 1, alpha);
    }
    return chi;
}

Mat2 LatticePresentation::relator() const {
    Mat2 r = Mat2::identity();
    for (std::size_t i = 0; i < a.size(); ++i) r = r * commutator(a[i], b[i]);
    for (const auto& m : d) r = r * m;
    for (const auto& m : c) r = r * m;
    return r;
}

double LatticePresentation::relator_residual() const { return relator().dist_to_identity(); }

CircleMap boundary_lift(const Mat2& m) { return CircleMap::mobius(m, 0); }

double poisson_kernel(Complex z, double t) {
    double n = std::norm(z);
    if (n >= 1.0) throw InvalidInput("poisson_kernel: |z| must be < 1");
    Complex e = std::polar(1.0, 2.0 * M_PI * t);
    return (1.0 - n) / std::norm(e - z);
}

double hyperbolic_angle(Complex at, Complex p, Complex q) {
    // Move `at` to the origin; geodesics through 0 are straight.
    DiskMobius t = DiskMobius::translation_to(at).inverse();
    Complex u = t.apply(p), v = t.apply(q);
    double du = std::abs(u), dv = std::abs(v);
    if (du < 1e-14 || dv < 1e-14) throw InvalidInput("hyperbolic_angle: coincident vertices");
    double ang = std::abs(std::arg(u / v));
    return ang;
}

double hyperbolic_triangle_area(Complex v0, Complex v1, Complex v2) {
    const Complex vs[3] = {v0, v1, v2};
    double angle_sum = 0;
    for (int i = 0; i < 3; ++i) {
        Complex at = vs[i], p = vs[(i + 1) % 3], q = vs[(i + 2) % 3];
        if (std::abs(at) >= 1.0 - 1e-12) continue;  // ideal vertex, zero angle
        angle_sum += hyperbolic_angle(at, p, q);
    }
    double area = M_PI - angle_sum;
    return area;
}

// ---------------------------------------------------------------------------
// catalog
// ---------------------------------------------------------------------------

namespace {

Mat2 su11_to_mat2(const DiskMobius& u) { return u.to_half_plane(); }

// Elliptic rotating by `turns` about the disk point `center`.
Mat2 disk_rotation_matrix(Complex center, double turns) {
    return su11_to_mat2(DiskMobius::rotation_about(center, turns));
}

void check_entry(LatticePresentation& pres, const char* name) {
    if (pres.relator_residual() > 1e-9)
        throw Error(std::string("catalog ") + name + ": relator residual " +
                    std::to_string(pres.relator_residual()));
    for (std::size_t i = 0; i < pres.d.size(); ++i) {
        double want = 2.0 * std::cos(M_PI / static_cast<double>(pres.signature.cone_orders[i]));
        if (std::abs(std::abs(pres.d[i].trace()) - want) > 1e-9)
            throw Error(std::string("catalog ") + name + ": elliptic trace off");
    }
    for (const auto& m : pres.c)
        if (std::abs(std::abs(m.trace()) - 2.0) > 1e-9)
            throw Error(std::string("catalog ") + name + ": parabolic trace off");
}

void fill_fixed_points(LatticePresentation& pres) {
    for (const auto& m : pres.d)
        pres.cone_points.push_back(DiskMobius::from_half_plane(m).elliptic_fixed_point());
    for (const auto& m : pres.c)
        pres.cusp_turns.push_back(boundary_fixed_points(m).attracting);
}

// Conjugation by the reflection w -> -conj(w): swaps the group with its
// complex conjugate, negating the Euler number of the boundary action.
Mat2 mirror(const Mat2& m) { return {m.a, -m.b, -m.c, m.d}; }

// One-holed torus with A = diag(lambda, 1/lambda) and B the translation along
// the unit semicircle; tr [A,B] = 2 - sinh(t)^2 (lambda - 1/lambda)^2.
Mat2 holed_torus_b(double t) {
    double ch = std::cosh(t), sh = std::sinh(t);
    return {ch, sh, sh, ch};
}

LatticePresentation catalog_genus2() {
    LatticePresentation pres;
    pres.signature = {2, {}, 0};
    const double lambda = 2.0;
    Mat2 A{lambda, 0, 0, 1.0 / lambda};
    Mat2 B = holed_torus_b(std::asinh(2.0));  // tr [A,B] = -7, a one-holed torus group
    Mat2 X = commutator(A, B);

    // Point on the axis of X: top of the semicircle through its boundary
    // fixed points.
    double tr = X.trace();
    double s = std::sqrt(tr * tr - 4.0);
    double x1 = (X.a - X.d + s) / (2.0 * X.c);
    double x2 = (X.a - X.d - s) / (2.0 * X.c);
    double u = 0.5 * (x1 + x2), v = 0.5 * std::abs(x1 - x2);

    // Rotation by pi about u + iv conjugates X to X^{-1}; conjugating the
    // holed torus by it doubles it to a closed genus-2 group.
    double rv = std::sqrt(v);
    Mat2 Mp{rv, u / rv, 0, 1.0 / rv};
    Mat2 R{0, -1, 1, 0};
    Mat2 E = Mp * R * Mp.inverse();

    // Mirror for the calibrated orientation: e(fuchsian) = chi = -2.
    A = mirror(A);
    B = mirror(B);
    E = mirror(E);
    pres.a = {A, E * A * E.inverse()};
    pres.b = {B, E * B * E.inverse()};
    check_entry(pres, "genus-2");
    return pres;
}

LatticePresentation catalog_triangle(std::int64_t p, std::int64_t q, std::int64_t r) {
    LatticePresentation pres;
    pres.signature = {0, {p, q, r}, 0};
    double A = M_PI / static_cast<double>(p);
    double B = M_PI / static_cast<double>(q);
    double C = M_PI / static_cast<double>(r);
    if (A + B + C >= M_PI - 1e-12) throw UnsupportedSignature("triangle group is not hyperbolic");
    // Hyperbolic law of cosines: side AB (opposite C) etc.
    double cosh_c = (std::cos(A) * std::cos(B) + std::cos(C)) / (std::sin(A) * std::sin(B));
    double cosh_b = (std::cos(A) * std::cos(C) + std::cos(B)) / (std::sin(A) * std::sin(C));
    Complex vA = 0;
    Complex vB = std::tanh(0.5 * std::acosh(cosh_c));
    Complex vC = std::tanh(0.5 * std::acosh(cosh_b)) * std::polar(1.0, A);

    for (double sign : {1.0, -1.0}) {
        Mat2 d1 = disk_rotation_matrix(vA, sign / static_cast<double>(p));
        Mat2 d2 = disk_rotation_matrix(vB, sign / static_cast<double>(q));
        Mat2 d3 = disk_rotation_matrix(vC, sign / static_cast<double>(r));
        if ((d1 * d2 * d3).dist_to_identity() < 1e-9) {
            // Mirror for the calibrated orientation: e = chi with every
            // beta = alpha - 1.
            pres.d = {mirror(d1), mirror(d2), mirror(d3)};
            break;
        }
    }
    if (pres.d.empty()) throw Error("catalog triangle: no orientation satisfies the relator");
    check_entry(pres, "triangle");
    fill_fixed_points(pres);
    return pres;
}

LatticePresentation catalog_modular() {
    LatticePresentation pres;
    pres.signature = {0, {2, 3}, 1};
    Mat2 d1{0, -1, 1, 0};   // order 2 at i
    Mat2 d2{0, -1, 1, 1};   // order 3, trace 1
    Mat2 c = (d1 * d2).inverse();  // parabolic; d1 d2 c = I exactly
    pres.d = {d1, d2};
    pres.c = {c};
    check_entry(pres, "modular");
    fill_fixed_points(pres);
    return pres;
}

LatticePresentation catalog_one_cone_torus(std::int64_t alpha) {
    LatticePresentation pres;
    pres.signature = {1, {alpha}, 0};
    const double lambda = 2.0;
    Mat2 A{lambda, 0, 0, 1.0 / lambda};
    double target = -2.0 * std::cos(M_PI / static_cast<double>(alpha));
    // tr [A, B(t)] = 2 - sinh(t)^2 (lambda - 1/lambda)^2, decreasing in t.
    double lo = 0.0, hi = 5.0;
    for (int it = 0; it < 200; ++it) {
        double mid = 0.5 * (lo + hi);
        double tr = commutator(A, holed_torus_b(mid)).trace();
        if (tr > target) lo = mid;
        else hi = mid;
    }
    Mat2 B = mirror(holed_torus_b(0.5 * (lo + hi)));  // mirrored: e = chi orientation
    Mat2 dmat = commutator(A, B).inverse();  // [a,b] d = I exactly
    pres.a = {A};
    pres.b = {B};
    pres.d = {dmat};
    pres.note = "relator-exact, discreteness unverified";
    check_entry(pres, "one-cone torus");
    fill_fixed_points(pres);
    return pres;
}

}  // namespace

LatticePresentation catalog(const OrbifoldSignature& sig) {
    if (!is_hyperbolic(sig)) throw UnsupportedSignature("signature is not hyperbolic");
    if (sig.genus == 2 && sig.cone_orders.empty() && sig.cusps == 0) return catalog_genus2();
    if (sig.genus == 0 && sig.cone_orders.size() == 3 && sig.cusps == 0)
        return catalog_triangle(sig.cone_orders[0], sig.cone_orders[1], sig.cone_orders[2]);
    if (sig.genus == 0 && sig.cone_orders == std::vector<std::int64_t>{2, 3} && sig.cusps == 1)
        return catalog_modular();
    if (sig.genus == 1 && sig.cone_orders.size() == 1 && sig.cusps == 0)
        return catalog_one_cone_torus(sig.cone_orders[0]);
    throw UnsupportedSignature("no catalog entry for this signature");
}

}  // namespace orbi
