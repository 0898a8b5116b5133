#include "orbi/inequalities.hpp"

#include <cmath>

#include "orbi/errors.hpp"

namespace orbi {

namespace {

void finish_window(InequalityReport& rpt) {
    // slack: distance of e to the nearer endpoint, negative part = violation
    Rational dl = rpt.e - rpt.lower;
    Rational du = rpt.upper - rpt.e;
    rpt.holds = !(dl < Rational(0)) && !(du < Rational(0));
    rpt.slack = dl < du ? dl : du;
    rpt.left_equality = (dl == Rational(0));
    rpt.right_equality = (du == Rational(0));
}

}  // namespace

InequalityReport milnor_wood_check(const EulerNumber& e, const OrbifoldSignature& sig) {
    InequalityReport rpt;
    rpt.kind = "milnor-wood";
    Rational chi = chi_orb(sig);
    rpt.lower = chi;
    rpt.upper = -chi;
    rpt.e = e.value;
    rpt.e_estimate = e.estimate;
    rpt.e_exact = e.exact;
    finish_window(rpt);
    if (!e.exact) {
        // estimate path: holds only if the whole enclosure is inside
        double lo = e.estimate - e.error, hi = e.estimate + e.error;
        rpt.holds = lo >= chi.to_double() - 1e-12 && hi <= -chi.to_double() + 1e-12;
        rpt.slack = Rational(0);
    }
    return rpt;
}

InequalityReport milnor_wood_check(const RepresentationSpec& rep) {
    return milnor_wood_check(euler_number(rep), rep.signature);
}

namespace {

// Certified ceil of a value enclosed in [lo, lo + tol].
std::int64_t certified_ceil(double lo, double tol) {
    double c1 = std::ceil(lo - 1e-12), c2 = std::ceil(lo + tol + 1e-12);
    if (c1 != c2)
        throw InconclusiveDisplacement("ceil ambiguous on displacement enclosure [" +
                                       std::to_string(lo) + ", " + std::to_string(lo + tol) +
                                       "]");
    return static_cast<std::int64_t>(c1);
}

std::int64_t certified_floor(double hi, double tol) {
    double f1 = std::floor(hi - tol - 1e-12), f2 = std::floor(hi + 1e-12);
    if (f1 != f2)
        throw InconclusiveDisplacement("floor ambiguous on displacement enclosure [" +
                                       std::to_string(hi - tol) + ", " + std::to_string(hi) +
                                       "]");
    return static_cast<std::int64_t>(f1);
}

}  // namespace

InequalityReport ehn_bounds(const EulerNumber& e, const OrbifoldSignature& sig,
                            const std::vector<DisplacementInterval>& cusp_displacements) {
    InequalityReport rpt;
    Rational chi = chi_orb(sig);
    Rational left = chi, right = -chi;
    for (auto [alpha, beta] : e.seifert.pairs) {
        left += Rational(alpha - 1 - beta, alpha);
        right -= Rational(beta - 1, alpha);
    }
    if (sig.genus == 0) {
        rpt.kind = "ehn-genus0";
        left -= Rational(1);
        right += Rational(1);
        rpt.weaker_than_mw = true;  // can be weaker than Milnor-Wood
    } else {
        rpt.kind = "ehn";
    }
    rpt.lower = left;
    rpt.upper = right;
    rpt.e = e.value;
    rpt.e_estimate = e.estimate;
    rpt.e_exact = e.exact;
    finish_window(rpt);

    if (sig.genus >= 1 && !cusp_displacements.empty()) {
        if (cusp_displacements.size() != static_cast<std::size_t>(sig.cusps))
            throw InvalidInput("ehn_bounds: one displacement interval per cusp expected");
        std::int64_t g = sig.genus;
        std::int64_t l = static_cast<std::int64_t>(sig.cone_orders.size());
        std::int64_t lo = 2 - 2 * g - l, hi = 2 * g - 2;
        for (const auto& di : cusp_displacements) {
            lo -= certified_ceil(di.lower, di.tolerance);
            hi -= certified_floor(di.upper, di.tolerance);
        }
        rpt.has_beta0_window = true;
        rpt.beta0_lo = lo;
        rpt.beta0_hi = hi;
        rpt.beta0 = e.seifert.beta0;
        rpt.beta0_inside = (lo <= rpt.beta0 && rpt.beta0 <= hi);
    }
    return rpt;
}

InequalityReport ehn_bounds_certified(const EulerNumber& e, const OrbifoldSignature& sig,
                                      double disp_tol) {
    if (sig.genus == 0 || e.seifert.c_normalized.empty()) return ehn_bounds(e, sig, {});

    // Per cusp, the certified ceil/floor may be ambiguous when a displacement
    // extreme sits on an integer (tau_dec = 0 boundary case); collect the
    // admissible integer choices for both ends.
    struct Choice {
        std::vector<std::int64_t> ceils, floors;
    };
    std::vector<Choice> choices;
    for (const auto& h : e.seifert.c_normalized) {
        DisplacementInterval d = displacement_bounds(h, disp_tol);
        Choice ch;
        double c1 = std::ceil(d.lower - 1e-12), c2 = std::ceil(d.lower + d.tolerance + 1e-12);
        ch.ceils.push_back(static_cast<std::int64_t>(c1));
        if (c2 != c1) ch.ceils.push_back(static_cast<std::int64_t>(c2));
        double f1 = std::floor(d.upper - d.tolerance - 1e-12),
               f2 = std::floor(d.upper + 1e-12);
        ch.floors.push_back(static_cast<std::int64_t>(f2));
        if (f1 != f2) ch.floors.push_back(static_cast<std::int64_t>(f1));
        choices.push_back(std::move(ch));
    }

    std::int64_t g = sig.genus;
    std::int64_t l = static_cast<std::int64_t>(sig.cone_orders.size());
    // Enumerate the (few) ambiguous combinations; keep the tightest window
    // containing the computed beta0, else the union, flagged.
    std::int64_t best_lo = 0, best_hi = 0, uni_lo = 0, uni_hi = 0;
    bool have_best = false, have_any = false;
    std::size_t m = choices.size();
    std::vector<std::size_t> idx(2 * m, 0);
    for (;;) {
        std::int64_t lo = 2 - 2 * g - l, hi = 2 * g - 2;
        for (std::size_t j = 0; j < m; ++j) {
            lo -= choices[j].ceils[idx[2 * j] % choices[j].ceils.size()];
            hi -= choices[j].floors[idx[2 * j + 1] % choices[j].floors.size()];
        }
        if (!have_any) { uni_lo = lo; uni_hi = hi; have_any = true; }
        uni_lo = std::min(uni_lo, lo);
        uni_hi = std::max(uni_hi, hi);
        bool inside = lo <= e.seifert.beta0 && e.seifert.beta0 <= hi;
        if (inside && (!have_best || hi - lo < best_hi - best_lo)) {
            best_lo = lo;
            best_hi = hi;
            have_best = true;
        }
        std::size_t k = 0;
        while (k < 2 * m) {
            std::size_t cap = (k % 2 == 0) ? choices[k / 2].ceils.size()
                                           : choices[k / 2].floors.size();
            if (++idx[k] < cap) break;
            idx[k] = 0;
            ++k;
        }
        if (k == 2 * m) break;
    }

    InequalityReport rpt = ehn_bounds(e, sig, {});
    rpt.has_beta0_window = true;
    rpt.beta0 = e.seifert.beta0;
    if (have_best) {
        rpt.beta0_lo = best_lo;
        rpt.beta0_hi = best_hi;
        rpt.beta0_inside = true;
    } else {
        rpt.beta0_lo = uni_lo;
        rpt.beta0_hi = uni_hi;
        rpt.beta0_inside = uni_lo <= rpt.beta0 && rpt.beta0 <= uni_hi;
        rpt.beta0_window_flagged = true;
    }
    return rpt;
}

EhnEqualityDiagnosis ehn_equality_diagnosis(const InequalityReport& report,
                                            const SeifertData& seifert) {
    EhnEqualityDiagnosis d;
    bool all_max = true, all_one = true;
    for (auto [alpha, beta] : seifert.pairs) {
        if (beta != alpha - 1) all_max = false;
        if (beta != 1) all_one = false;
    }
    d.maximal_negative = report.left_equality && all_max;
    d.maximal_positive = report.right_equality && all_one;
    if (d.maximal_negative)
        d.summary = "maximal negative (semiconjugate to the Fuchsian action)";
    else if (d.maximal_positive)
        d.summary = "maximal positive (semiconjugate to the conjugate Fuchsian action)";
    else
        d.summary = "interior";
    return d;
}

}  // namespace orbi
