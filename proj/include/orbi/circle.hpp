#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <utility>
#include <vector>

#include "orbi/mat2.hpp"
#include "orbi/rational.hpp"

namespace orbi {

// All angles and displacements are measured in turns: the circle is R/Z and
// lifts commute with x -> x + 1.

struct TranslationNumber {
    std::optional<Rational> exact;  // set only when certified
    double estimate = 0;            // always populated (exact value if exact)
    double error = 0;               // |estimate - true value| <= error
    bool certified = false;

    double value() const { return exact ? exact->to_double() : estimate; }
    double lo() const { return estimate - error; }
    double hi() const { return estimate + error; }
};

// Certified enclosure of the displacement range of f(x) - x:
//   min displacement in [lower, lower + tolerance]
//   max displacement in [upper - tolerance, upper]
struct DisplacementInterval {
    double lower = 0;
    double upper = 0;
    double tolerance = 0;
};

struct LemmaTrBounds {
    std::int64_t lower = 0;  // <= tau
    std::int64_t upper = 0;  // >= tau
    bool holds = false;      // translation-number enclosure inside [lower, upper]
};

class CircleMap;
CircleMap compose(const CircleMap& f, const CircleMap& g);

// A lift of an orientation-preserving circle homeomorphism: a monotone map
// of R with f(x + 1) = f(x) + 1. Immutable; cheap to copy.
class CircleMap {
public:
    enum class Kind { rotation, mobius, pl, compose };

    CircleMap();  // identity (rotation 0)

    static CircleMap rotation(const Rational& turns);
    static CircleMap rotation(double turns);
    static CircleMap identity() { return CircleMap(); }

    // Boundary action of a half-plane matrix (det 1), canonical branch
    // f(0) in [0,1), then shifted by `branch` turns.
    static CircleMap mobius(const Mat2& m, std::int64_t branch = 0);

    // Breakpoints (x, f(x)) covering one period; strictly increasing in both
    // coordinates unless allow_flat (monotone gadgets may have zero slopes).
    static CircleMap piecewise_linear(std::vector<std::pair<double, double>> points,
                                      bool allow_flat = false);

    // Sample an arbitrary lift onto a uniform PL grid.
    static CircleMap from_function(const std::function<double(double)>& f, int breakpoints = 4096);

    static CircleMap composition(std::vector<CircleMap> parts);  // parts[0] applied last

    double operator()(double x) const;

    Kind kind() const;
    CircleMap inverse() const;
    CircleMap shifted(std::int64_t k) const;  // x -> f(x) + k
    CircleMap reversed() const;               // x -> -f(-x)

    // Accessors for serialization / structure-aware algorithms.
    const std::optional<Rational>& rotation_exact() const;
    double rotation_value() const;
    const Mat2& mobius_matrix() const;
    std::int64_t mobius_branch() const;
    const std::vector<double>& pl_x() const;
    const std::vector<double>& pl_y() const;
    bool pl_allows_flat() const;
    const std::vector<CircleMap>& parts() const;

    // Breakpoint x-grid used by periodic-point certification (empty for
    // analytic kinds).
    std::vector<double> breakpoint_grid() const;

private:
    struct Node;
    explicit CircleMap(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
    std::shared_ptr<const Node> node_;

    friend CircleMap compose(const CircleMap&, const CircleMap&);
};

CircleMap power(const CircleMap& f, std::int64_t n);

DisplacementInterval displacement_bounds(const CircleMap& f, double tol = 1e-9);

// tau(f) = lim f^n(0)/n. Certifies a rational value for rotations, analytic
// Mobius data, and maps with a periodic point of f^q (q <= 64) detectable on
// the breakpoint grid; otherwise iterates with error <= 1/n.
TranslationNumber translation_number(const CircleMap& f, std::int64_t max_iter = 100000,
                                     double tol = 1e-6);

// Requires f^alpha to be translation by an integer k (within tol);
// returns k/alpha. Throws NotFiniteOrder otherwise.
Rational translation_number_finite_order(const CircleMap& f, std::int64_t alpha,
                                         double tol = 1e-6);

struct NormalizedLift {
    CircleMap map;          // f shifted so tau in [0,1)
    std::int64_t shift;     // integer added to f
    TranslationNumber tau;  // of the normalized map
};

// Shift f by an integer so tau lands in [0,1); AmbiguousLift when the tau
// enclosure straddles an integer beyond tolerance.
NormalizedLift normalize_lift(const CircleMap& f, std::int64_t max_iter = 100000,
                              double tol = 1e-6);

TranslationNumber tau_dec(const CircleMap& f, std::int64_t max_iter = 100000, double tol = 1e-6);

// ceil(max displacement) - 1 <= tau <= floor(min displacement) + 1.
LemmaTrBounds lemma_tr_bounds(const CircleMap& f, double tol = 1e-9);

}  // namespace orbi
