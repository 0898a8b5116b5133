#include "orbi/euler.hpp"

#include <cmath>

#include "orbi/errors.hpp"

namespace orbi {

RepresentationSpec RepresentationSpec::fuchsian(const LatticePresentation& pres, double tol) {
    RepresentationSpec rep;
    rep.signature = pres.signature;
    rep.tol = tol;
    for (const auto& m : pres.a) rep.a.push_back(boundary_lift(m));
    for (const auto& m : pres.b) rep.b.push_back(boundary_lift(m));
    for (const auto& m : pres.d) rep.d.push_back(boundary_lift(m));
    for (const auto& m : pres.c) rep.c.push_back(boundary_lift(m));
    return rep;
}

RepresentationSpec RepresentationSpec::reversed() const {
    RepresentationSpec out;
    out.signature = signature;
    out.tol = tol;
    for (const auto& f : a) out.a.push_back(f.reversed());
    for (const auto& f : b) out.b.push_back(f.reversed());
    for (const auto& f : d) out.d.push_back(f.reversed());
    for (const auto& f : c) out.c.push_back(f.reversed());
    return out;
}

CircleMap RepresentationSpec::relator_lift() const {
    std::vector<CircleMap> word;
    for (std::size_t i = 0; i < a.size(); ++i) {
        word.push_back(a[i]);
        word.push_back(b[i]);
        word.push_back(a[i].inverse());
        word.push_back(b[i].inverse());
    }
    for (const auto& f : d) word.push_back(f);
    for (const auto& f : c) word.push_back(f);
    return CircleMap::composition(std::move(word));
}

namespace {

// The relator lift covers the identity, hence is translation by an integer.
// Sign convention pinned by the calibration e(fuchsian) = chi_orb.
std::int64_t relator_translation(const CircleMap& relator, double tol, double* residual) {
    double v0 = relator(0.0);
    std::int64_t k = static_cast<std::int64_t>(std::llround(v0));
    double res = std::abs(v0 - static_cast<double>(k));
    for (double x : {0.31, 0.77}) {
        double v = relator(x) - x;
        res = std::max(res, std::abs(v - static_cast<double>(k)));
    }
    if (residual) *residual = res;
    if (res > tol)
        throw RelatorNotIdentity("relator lift displacement deviates from integer by " +
                                 std::to_string(res));
    return k;
}

}  // namespace

SeifertData seifert_data(const RepresentationSpec& rep) {
    const auto& sig = rep.signature;
    if (rep.a.size() != static_cast<std::size_t>(sig.genus) || rep.a.size() != rep.b.size() ||
        rep.d.size() != sig.cone_orders.size() ||
        rep.c.size() != static_cast<std::size_t>(sig.cusps))
        throw InvalidInput("seifert_data: generator counts do not match the signature");
    if (sig.genus == 0 && sig.cone_orders.size() + static_cast<std::size_t>(sig.cusps) <= 2)
        throw InvalidInput("seifert_data: degenerate genus-0 signature rejected");

    SeifertData out;
    out.genus = sig.genus;

    for (std::size_t i = 0; i < rep.d.size(); ++i) {
        std::int64_t alpha = sig.cone_orders[i];
        Rational tau = translation_number_finite_order(rep.d[i], alpha, rep.tol);
        Rational dec = tau.frac();
        Rational beta_r = dec * Rational(alpha);
        if (!beta_r.is_integer())
            throw NotFiniteOrder("seifert_data: tau(d) is not a multiple of 1/alpha");
        out.pairs.emplace_back(alpha, beta_r.num());
        out.d_normalized.push_back(rep.d[i].shifted(-tau.floor()));
    }
    for (std::size_t j = 0; j < rep.c.size(); ++j) {
        NormalizedLift n = normalize_lift(rep.c[j], 100000, rep.tol);
        out.cusp_tau_dec.push_back(n.tau);
        out.c_normalized.push_back(n.map);
    }

    RepresentationSpec normalized = rep;
    normalized.d = out.d_normalized;
    normalized.c = out.c_normalized;
    std::int64_t k = relator_translation(normalized.relator_lift(), rep.tol,
                                         &out.relator_residual);
    out.beta0 = -k;
    return out;
}

EulerNumber euler_number(const RepresentationSpec& rep) {
    EulerNumber e;
    e.seifert = seifert_data(rep);
    Rational v(-e.seifert.beta0);
    for (auto [alpha, beta] : e.seifert.pairs) v -= Rational(beta, alpha);
    e.exact = true;
    e.error = 0;
    for (const auto& t : e.seifert.cusp_tau_dec) {
        if (t.exact) {
            v -= *t.exact;
        } else {
            e.exact = false;
            e.error += t.error;
        }
    }
    e.value = v;
    e.estimate = v.to_double();
    for (const auto& t : e.seifert.cusp_tau_dec)
        if (!t.exact) e.estimate -= t.estimate;
    return e;
}

RepresentationSpec conjugate_rep(const RepresentationSpec& rep, const CircleMap& h) {
    CircleMap hinv = h.inverse();
    auto conj = [&](const CircleMap& g) { return compose(compose(h, g), hinv); };
    RepresentationSpec out;
    out.signature = rep.signature;
    out.tol = rep.tol;
    for (const auto& g : rep.a) out.a.push_back(conj(g));
    for (const auto& g : rep.b) out.b.push_back(conj(g));
    for (const auto& g : rep.d) out.d.push_back(conj(g));
    for (const auto& g : rep.c) out.c.push_back(conj(g));
    return out;
}

CircleMap monotone_section(const CircleMap& psi) {
    if (psi.kind() != CircleMap::Kind::pl)
        throw InvalidInput("monotone_section: expected a PL lift");
    const auto& xs = psi.pl_x();
    const auto& ys = psi.pl_y();
    // Swap coordinates keeping the left endpoint of each plateau.
    std::vector<std::pair<double, double>> pts;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (!pts.empty() && ys[i] <= pts.back().first + 1e-15) continue;
        pts.emplace_back(ys[i], xs[i]);
    }
    return CircleMap::piecewise_linear(std::move(pts));
}

RepresentationSpec semiconjugate_deform(const RepresentationSpec& rep,
                                        const CircleMap& monotone) {
    if (monotone.kind() == CircleMap::Kind::pl && monotone.pl_allows_flat()) {
        const auto& ys = monotone.pl_y();
        bool has_flat = false;
        for (std::size_t i = 0; i + 1 < ys.size(); ++i)
            if (ys[i + 1] <= ys[i] + 1e-15) has_flat = true;
        if (has_flat) {
            CircleMap section = monotone_section(monotone);
            auto push = [&](const CircleMap& g) {
                return compose(compose(monotone, g), section);
            };
            RepresentationSpec out;
            out.signature = rep.signature;
            out.tol = rep.tol;
            for (const auto& g : rep.a) out.a.push_back(push(g));
            for (const auto& g : rep.b) out.b.push_back(push(g));
            for (const auto& g : rep.d) out.d.push_back(push(g));
            for (const auto& g : rep.c) out.c.push_back(push(g));
            return out;
        }
    }
    // Invertible case: plain conjugation.
    return conjugate_rep(rep, monotone);
}

}  // namespace orbi
