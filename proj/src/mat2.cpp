#include "orbi/mat2.hpp"

#include <cmath>

namespace orbi {

double half_plane_boundary_to_turns(double x, bool at_infinity) {
    // Cayley image of the half-plane boundary point: (x - i)/(x + i), inf -> 1.
    Complex z = at_infinity ? Complex(1, 0) : (Complex(x, -1) / Complex(x, 1));
    double t = std::arg(z) / (2.0 * M_PI);
    t -= std::floor(t);
    if (t >= 1.0) t = 0.0;
    return t;
}

BoundaryFixedPoints boundary_fixed_points(const Mat2& m) {
    double t = m.trace();
    if (std::abs(t) < 2.0 - 1e-12)
        throw InvalidInput("boundary_fixed_points: elliptic matrix has no boundary fixed point");

    // Fixed points of (a x + b)/(c x + d) = x on R u {inf}.
    if (std::abs(m.c) < 1e-14) {
        // x = inf is fixed; the other (if hyperbolic) solves (a - d) x = -b.
        double inf_turn = half_plane_boundary_to_turns(0, true);
        if (std::abs(m.a - m.d) < 1e-14) return {inf_turn, inf_turn};  // parabolic
        double other = -m.b / (m.a - m.d);
        double other_turn = half_plane_boundary_to_turns(other);
        // |a/d| > 1 means inf attracts.
        if (std::abs(m.a) > std::abs(m.d)) return {inf_turn, other_turn};
        return {other_turn, inf_turn};
    }

    double disc = t * t - 4.0;
    if (disc < 0) disc = 0;  // parabolic within rounding
    double s = std::sqrt(disc);
    double x1 = (m.a - m.d + s) / (2.0 * m.c);
    double x2 = (m.a - m.d - s) / (2.0 * m.c);
    // Attracting fixed point has |derivative| = 1/(c x + d)^2 < 1.
    double d1 = std::abs(m.c * x1 + m.d);
    double u1 = half_plane_boundary_to_turns(x1);
    double u2 = half_plane_boundary_to_turns(x2);
    if (d1 >= 1.0) return {u1, u2};
    return {u2, u1};
}

}  // namespace orbi
