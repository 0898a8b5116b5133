#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "orbi/circle.hpp"
#include "orbi/mat2.hpp"
#include "orbi/rational.hpp"

namespace orbi {

struct OrbifoldSignature {
    int genus = 0;
    std::vector<std::int64_t> cone_orders;  // each >= 2
    int cusps = 0;

    bool operator==(const OrbifoldSignature&) const = default;
};

// chi = 2 - 2g - m - sum (alpha_i - 1)/alpha_i, exact.
Rational chi_orb(const OrbifoldSignature& sig);
inline bool is_hyperbolic(const OrbifoldSignature& sig) { return chi_orb(sig) < Rational(0); }

// Half-plane matrices for the generators of a lattice realizing the
// signature, satisfying [a1,b1]...[ag,bg] d1...dl c1...cm = +-I.
struct LatticePresentation {
    OrbifoldSignature signature;
    std::vector<Mat2> a, b;  // hyperbolic, genus pairs
    std::vector<Mat2> d;     // elliptic, d[i] of order cone_orders[i]
    std::vector<Mat2> c;     // parabolic
    std::vector<Complex> cone_points;  // disk fixed point of each d[i]
    std::vector<double> cusp_turns;    // boundary turn coordinate of each c[j] fixed point
    std::string note;                  // discreteness caveats for solver-built entries

    Mat2 relator() const;
    double relator_residual() const;  // distance of the relator product to +-I
};

// Explicit entries: closed genus-2 (doubled one-holed torus), triangle
// groups (0; p,q,r), the modular orbifold (0; 2,3; one cusp), and one-cone
// genus-1 groups found by a trace root-solve. UnsupportedSignature otherwise.
LatticePresentation catalog(const OrbifoldSignature& sig);

// Boundary circle action of a half-plane matrix, canonical lift branch.
CircleMap boundary_lift(const Mat2& m);

// P(z,t) = (1 - |z|^2) / |e^{2 pi i t} - z|^2; integrates to 1 over a turn.
double poisson_kernel(Complex z, double t);

// Geodesic triangle area by angle defect; vertices on the closed disk,
// |v| = 1 treated as ideal (zero angle).
double hyperbolic_triangle_area(Complex v0, Complex v1, Complex v2);

// Interior angle at `at` between geodesics toward p and q.
double hyperbolic_angle(Complex at, Complex p, Complex q);

// ---------------------------------------------------------------------------
// Truncated fundamental domains
// ---------------------------------------------------------------------------

struct MeshTriangle {
    Complex v0, v1, v2;  // Poincare coordinates
    double area;         // hyperbolic, angle defect
    Complex centroid;
};

struct BoundaryLoop {
    enum class Type { free_fiber, cone, cusp };
    Type type = Type::free_fiber;
    int index = -1;                 // cone / cusp index in the signature
    std::int64_t alpha = 1;         // cone order (1 otherwise)
    std::vector<Complex> polyline;  // Poincare vertices in traversal order
    Mat2 deck;                      // closes polyline.back() = deck(polyline.front())
    bool closed = false;            // free-fiber loops close on themselves
};

struct TruncatedDomain {
    int level = 0;
    std::vector<MeshTriangle> triangles;
    std::vector<BoundaryLoop> loops;  // free fiber, then cones, then cusps
    double mesh_area = 0;             // hyperbolic area of the meshed region
    double removed_area = 0;          // quotient area of the removed disks/horoballs
    double total_area_target = 0;     // -2 pi chi_orb
    Complex base;                     // Dirichlet base point (free-fiber center)
};

struct DomainOptions {
    int mesh_res = 12;        // radial layers; also sets the angular fill density
    int bite_segments = 60;   // polyline segments per removed-disk boundary
    double cone_radius0 = 0;  // base hyperbolic radius of cone/free disks (0 = auto)
    double cusp_length0 = 0.5;  // base quotient horocycle length
    int word_radius = 10;       // group ball radius for the Dirichlet domain
};

// Fundamental polygon of the group (Dirichlet domain about a generic base
// point), computed once per presentation.
struct FundamentalPolygon {
    std::vector<Complex> vertices;  // Poincare, ccw; ideal vertices on |z| = 1
    std::vector<bool> ideal;
    Complex base;
    double area = 0;
    std::vector<Mat2> ball;  // group elements used (identity excluded)
};

FundamentalPolygon dirichlet_polygon(const LatticePresentation& pres, int word_radius = 10);

// Mesh of the polygon minus the level-s truncation disks/horoballs. The
// boundary-length schedule halves per level; s >= 1.
TruncatedDomain truncated_domain(const LatticePresentation& pres, int s,
                                 const DomainOptions& opts = {});

}  // namespace orbi
