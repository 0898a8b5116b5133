#pragma once

#include <cmath>
#include <complex>

#include "orbi/errors.hpp"

namespace orbi {

using Complex = std::complex<double>;

// Real 2x2 matrix acting on the upper half-plane (det assumed 1 for group
// elements; stored unnormalized).
struct Mat2 {
    double a = 1, b = 0, c = 0, d = 1;

    static Mat2 identity() { return {}; }

    double det() const { return a * d - b * c; }
    double trace() const { return a + d; }

    Mat2 inverse() const { return {d, -b, -c, a}; }

    friend Mat2 operator*(const Mat2& m, const Mat2& n) {
        return {m.a * n.a + m.b * n.c, m.a * n.b + m.b * n.d,
                m.c * n.a + m.d * n.c, m.c * n.b + m.d * n.d};
    }

    // max |entry| distance to +I or -I, whichever is closer
    double dist_to_identity() const {
        auto d1 = std::max(std::max(std::abs(a - 1), std::abs(d - 1)),
                           std::max(std::abs(b), std::abs(c)));
        auto d2 = std::max(std::max(std::abs(a + 1), std::abs(d + 1)),
                           std::max(std::abs(b), std::abs(c)));
        return std::min(d1, d2);
    }
};

inline Mat2 commutator(const Mat2& m, const Mat2& n) {
    return m * n * m.inverse() * n.inverse();
}

// Disk-model Mobius map  z -> (alpha z + beta) / (conj(beta) z + conj(alpha)),
// |alpha|^2 - |beta|^2 = 1.  Obtained from the half-plane form by the Cayley
// transform w -> (w - i)/(w + i).
struct DiskMobius {
    Complex alpha{1, 0};
    Complex beta{0, 0};

    static DiskMobius from_half_plane(const Mat2& m) {
        DiskMobius u;
        u.alpha = Complex((m.a + m.d) / 2, (m.b - m.c) / 2);
        u.beta = Complex((m.a - m.d) / 2, -(m.b + m.c) / 2);
        return u;
    }

    Mat2 to_half_plane() const {
        Mat2 m;
        m.a = alpha.real() + beta.real();
        m.d = alpha.real() - beta.real();
        m.b = alpha.imag() - beta.imag();
        m.c = -alpha.imag() - beta.imag();
        return m;
    }

    Complex apply(Complex z) const {
        return (alpha * z + beta) / (std::conj(beta) * z + std::conj(alpha));
    }

    // (Complex) derivative; |alpha|^2-|beta|^2 = 1 assumed.
    Complex derivative(Complex z) const {
        Complex q = std::conj(beta) * z + std::conj(alpha);
        return 1.0 / (q * q);
    }

    DiskMobius compose(const DiskMobius& o) const {
        DiskMobius r;
        r.alpha = alpha * o.alpha + beta * std::conj(o.beta);
        r.beta = alpha * o.beta + beta * std::conj(o.alpha);
        return r;
    }

    DiskMobius inverse() const { return {std::conj(alpha), -beta}; }

    // Interior fixed point of an elliptic element.
    Complex elliptic_fixed_point() const {
        // conj(beta) z^2 + (conj(alpha) - alpha) z - beta = 0
        Complex A = std::conj(beta), B = std::conj(alpha) - alpha, C = -beta;
        if (std::abs(A) < 1e-300) {
            if (std::abs(B) < 1e-300) throw InvalidInput("elliptic_fixed_point: identity map");
            return -C / B;  // rotation about 0 -> beta = 0 -> z = 0
        }
        Complex disc = std::sqrt(B * B - 4.0 * A * C);
        Complex z1 = (-B + disc) / (2.0 * A);
        Complex z2 = (-B - disc) / (2.0 * A);
        return std::abs(z1) < std::abs(z2) ? z1 : z2;
    }

    // Translation from 0 to w:  z -> (z + w)/(1 + conj(w) z).
    static DiskMobius translation_to(Complex w) {
        double n = 1.0 - std::norm(w);
        if (n <= 0) throw InvalidInput("translation_to: point outside open disk");
        double s = 1.0 / std::sqrt(n);
        return {Complex(s, 0), w * s};
    }

    // Rotation about 0 by `turns` of a full revolution.
    static DiskMobius rotation_about_origin(double turns) {
        double half = M_PI * turns;  // theta/2 with theta = 2*pi*turns
        return {Complex(std::cos(half), std::sin(half)), Complex(0, 0)};
    }

    static DiskMobius rotation_about(Complex center, double turns) {
        DiskMobius t = translation_to(center);
        return t.compose(rotation_about_origin(turns)).compose(t.inverse());
    }
};

inline double poincare_distance(Complex z, Complex w) {
    if (std::abs(z) >= 1.0 || std::abs(w) >= 1.0)
        throw InvalidInput("poincare_distance: point outside open disk");
    double q = std::abs((z - w) / (1.0 - std::conj(w) * z));
    return 2.0 * std::atanh(q);
}

// Boundary fixed points (turn coordinates in [0,1)) of a non-elliptic
// half-plane matrix; first entry is the attracting point when hyperbolic.
struct BoundaryFixedPoints {
    double attracting;
    double repelling;  // equals attracting for parabolics
};

BoundaryFixedPoints boundary_fixed_points(const Mat2& m);

// Turn coordinate in [0,1) of the Cayley image of x in R u {inf}.
double half_plane_boundary_to_turns(double x, bool at_infinity = false);

}  // namespace orbi
