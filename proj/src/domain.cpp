#include <algorithm>
#include <cmath>
#include <map>
#include <tuple>

#include "orbi/errors.hpp"
#include "orbi/fuchsian.hpp"

namespace orbi {

namespace {

// ---- model conversions ----------------------------------------------------

Complex poincare_to_klein(Complex p) { return 2.0 * p / (1.0 + std::norm(p)); }

Complex klein_to_poincare(Complex k) {
    double n = std::min(1.0, std::norm(k));
    return k / (1.0 + std::sqrt(std::max(0.0, 1.0 - n)));
}

struct HPoint {
    double x, y, z;
};

HPoint hyperboloid(Complex p) {
    double n = std::norm(p), d = 1.0 - n;
    return {2.0 * p.real() / d, 2.0 * p.imag() / d, (1.0 + n) / d};
}

Complex apply_disk(const DiskMobius& u, Complex z) { return u.apply(z); }

// ---- group ball -----------------------------------------------------------

std::uint64_t mat_key(const Mat2& m) {
    // Sign-normalize (PSL) and quantize.
    double v[4] = {m.a, m.b, m.c, m.d};
    int lead = 0;
    for (int i = 0; i < 4; ++i)
        if (std::abs(v[i]) > std::abs(v[lead])) lead = i;
    double s = v[lead] < 0 ? -1.0 : 1.0;
    std::uint64_t h = 1469598103934665603ull;
    for (int i = 0; i < 4; ++i) {
        auto q = static_cast<std::int64_t>(std::llround(s * v[i] * 1e7));
        h ^= static_cast<std::uint64_t>(q) + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    }
    return h;
}

std::vector<Mat2> group_ball(const LatticePresentation& pres, int radius, Complex base,
                             double dist_cutoff) {
    std::vector<Mat2> gens;
    auto add_gen = [&gens](const Mat2& m) {
        gens.push_back(m);
        gens.push_back(m.inverse());
    };
    for (const auto& m : pres.a) add_gen(m);
    for (const auto& m : pres.b) add_gen(m);
    for (const auto& m : pres.d) add_gen(m);
    for (const auto& m : pres.c) add_gen(m);

    std::map<std::uint64_t, Mat2> seen;
    seen[mat_key(Mat2::identity())] = Mat2::identity();
    std::vector<Mat2> frontier{Mat2::identity()};
    for (int layer = 0; layer < radius; ++layer) {
        std::vector<Mat2> next;
        for (const auto& g : frontier) {
            for (const auto& s : gens) {
                Mat2 w = g * s;
                auto key = mat_key(w);
                if (seen.count(key)) continue;
                Complex img = apply_disk(DiskMobius::from_half_plane(w), base);
                if (poincare_distance(base, img) > dist_cutoff) continue;
                seen[key] = w;
                next.push_back(w);
            }
        }
        if (next.empty()) break;
        frontier.swap(next);
    }
    std::vector<Mat2> out;
    out.reserve(seen.size());
    auto id_key = mat_key(Mat2::identity());
    for (auto& [k, m] : seen)
        if (k != id_key) out.push_back(m);
    return out;
}

// ---- Dirichlet polygon ----------------------------------------------------

// Clip a Klein-model polygon by the bisector half-space of base vs w
// (keep points hyperbolically closer to base).
void clip_bisector(std::vector<Complex>& poly, Complex base_p, Complex w_p) {
    if (poly.empty()) return;
    HPoint pb = hyperboloid(base_p), pw = hyperboloid(w_p);
    double nx = pw.x - pb.x, ny = pw.y - pb.y, nz = pw.z - pb.z;
    auto side = [&](Complex k) { return nz - nx * k.real() - ny * k.imag(); };
    std::vector<Complex> out;
    out.reserve(poly.size() + 2);
    std::size_t n = poly.size();
    for (std::size_t i = 0; i < n; ++i) {
        Complex p = poly[i], q = poly[(i + 1) % n];
        double sp = side(p), sq = side(q);
        if (sp >= 0) out.push_back(p);
        if ((sp >= 0) != (sq >= 0)) {
            double t = sp / (sp - sq);
            out.push_back(p + t * (q - p));
        }
    }
    poly.swap(out);
}

}  // namespace

FundamentalPolygon dirichlet_polygon(const LatticePresentation& pres, int word_radius) {
    FundamentalPolygon fp;
    fp.base = Complex(0.031, 0.0173);  // generic: fixed by no group element
    double target = -2.0 * M_PI * chi_orb(pres.signature).to_double();

    double cutoff = 9.0;
    for (int attempt = 0; attempt < 3; ++attempt) {
        fp.ball = group_ball(pres, word_radius + 2 * attempt, fp.base, cutoff);

        std::vector<Complex> poly;
        const int n0 = 2048;
        poly.reserve(n0);
        for (int i = 0; i < n0; ++i)
            poly.push_back(std::polar(1.0, 2.0 * M_PI * (i + 0.5) / n0));
        for (const auto& g : fp.ball) {
            Complex w = apply_disk(DiskMobius::from_half_plane(g), fp.base);
            clip_bisector(poly, fp.base, w);
        }
        if (poly.size() < 3) throw MeshFailure("dirichlet_polygon: polygon collapsed");

        // Collapse runs of leftover ideal-circle vertices to exact cusp points.
        std::vector<Complex> cusp_orbit;
        for (std::size_t j = 0; j < pres.c.size(); ++j) {
            Complex xi = std::polar(1.0, 2.0 * M_PI * pres.cusp_turns[j]);
            cusp_orbit.push_back(xi);
            for (const auto& g : fp.ball)
                cusp_orbit.push_back(apply_disk(DiskMobius::from_half_plane(g), xi));
        }
        std::vector<Complex> cleaned;
        std::vector<bool> ideal;
        std::size_t n = poly.size();
        for (std::size_t i = 0; i < n; ++i) {
            Complex k = poly[i];
            if (std::abs(k) > 1.0 - 1e-4) {
                bool run_start = std::abs(poly[(i + n - 1) % n]) <= 1.0 - 1e-4;
                if (!run_start) continue;
                Complex dir = k / std::abs(k);
                if (!cusp_orbit.empty()) {
                    double best = 1e300;
                    Complex snap = dir;
                    for (Complex cp : cusp_orbit) {
                        // cusp points in Poincare lie on |z| = 1, same in Klein
                        if (std::abs(cp - dir) < best) {
                            best = std::abs(cp - dir);
                            snap = cp;
                        }
                    }
                    if (best < 0.05) dir = snap;
                }
                cleaned.push_back(dir);
                ideal.push_back(true);
            } else {
                cleaned.push_back(k);
                ideal.push_back(false);
            }
        }
        // Merge duplicates.
        std::vector<Complex> verts;
        std::vector<bool> vflags;
        for (std::size_t i = 0; i < cleaned.size(); ++i) {
            if (!verts.empty() && std::abs(cleaned[i] - verts.back()) < 1e-10) continue;
            verts.push_back(cleaned[i]);
            vflags.push_back(ideal[i]);
        }
        if (verts.size() > 2 && std::abs(verts.front() - verts.back()) < 1e-10) {
            verts.pop_back();
            vflags.pop_back();
        }

        fp.vertices.clear();
        fp.ideal = vflags;
        for (Complex k : verts) fp.vertices.push_back(klein_to_poincare(k));

        fp.area = 0;
        for (std::size_t i = 0; i < fp.vertices.size(); ++i) {
            Complex v1 = fp.vertices[i], v2 = fp.vertices[(i + 1) % fp.vertices.size()];
            fp.area += hyperbolic_triangle_area(fp.base, v1, v2);
        }
        if (std::abs(fp.area - target) < 1e-5 * std::max(1.0, target)) return fp;
        cutoff += 2.0;
    }
    throw MeshFailure("dirichlet_polygon: area " + std::to_string(fp.area) +
                      " does not match -2*pi*chi = " + std::to_string(target));
}

// ---------------------------------------------------------------------------
// truncated domain
// ---------------------------------------------------------------------------

namespace {

struct Bite {
    std::vector<Complex> klein;  // closed polygon, Klein coordinates
};

bool point_in_convex(const std::vector<Complex>& poly, Complex p, double eps = 1e-12) {
    std::size_t n = poly.size();
    int sign = 0;
    for (std::size_t i = 0; i < n; ++i) {
        Complex a = poly[i], b = poly[(i + 1) % n];
        double cr = (b.real() - a.real()) * (p.imag() - a.imag()) -
                    (b.imag() - a.imag()) * (p.real() - a.real());
        if (std::abs(cr) < eps) continue;
        int s = cr > 0 ? 1 : -1;
        if (sign == 0) sign = s;
        else if (s != sign) return false;
    }
    return true;
}

bool segments_cross(Complex a, Complex b, Complex c, Complex d, Complex* where) {
    Complex r = b - a, s = d - c;
    double den = r.real() * s.imag() - r.imag() * s.real();
    if (std::abs(den) < 1e-16) return false;
    Complex cq = c - a;
    double t = (cq.real() * s.imag() - cq.imag() * s.real()) / den;
    double u = (cq.real() * r.imag() - cq.imag() * r.real()) / den;
    if (t < -1e-12 || t > 1 + 1e-12 || u < -1e-12 || u > 1 + 1e-12) return false;
    if (where) *where = a + t * r;
    return true;
}

// Hyperbolic circle about `center` with radius r, sampled as an M-gon;
// vertex k sits at angle k/M of a turn in the centered chart.
std::vector<Complex> circle_polygon(Complex center, double r, int M) {
    DiskMobius t = DiskMobius::translation_to(center);
    double rho = std::tanh(0.5 * r);
    std::vector<Complex> out;
    out.reserve(M);
    for (int k = 0; k < M; ++k)
        out.push_back(t.apply(std::polar(rho, 2.0 * M_PI * k / M)));
    return out;
}

struct CuspFrame {
    Mat2 to_infinity;       // J with J(fixed point) = infinity, half-plane
    double translation;     // J c J^{-1} : w -> w + translation
    Complex cusp_disk;      // boundary point in the disk model
};

CuspFrame cusp_frame(const Mat2& c) {
    CuspFrame f;
    // Fixed point on the real line or at infinity.
    if (std::abs(c.c) < 1e-12) {
        f.to_infinity = Mat2::identity();
        f.translation = c.b / c.a;  // [[a, b],[0, a]] with a = +-1
        f.cusp_disk = Complex(1, 0);
        return f;
    }
    double xi = (c.a - c.d) / (2.0 * c.c);
    f.to_infinity = Mat2{0, -1, 1, -xi};
    Mat2 t = f.to_infinity * c * f.to_infinity.inverse();
    f.translation = t.b / t.a;
    double turn = half_plane_boundary_to_turns(xi);
    f.cusp_disk = std::polar(1.0, 2.0 * M_PI * turn);
    return f;
}

Complex half_plane_to_disk(Complex w) { return (w - Complex(0, 1)) / (w + Complex(0, 1)); }

// Horocycle arc at height Y in the J-frame, spanning `translates` copies of
// the fundamental segment with M points each; returns disk points.
std::vector<Complex> horo_polyline(const CuspFrame& f, double Y, int M, int k0, int k1) {
    DiskMobius Jinv = DiskMobius::from_half_plane(f.to_infinity.inverse());
    std::vector<Complex> pts;
    pts.reserve((k1 - k0) + 1);
    for (int k = k0; k <= k1; ++k) {
        double x = f.translation * static_cast<double>(k) / M;
        Complex w(x, Y);
        pts.push_back(Jinv.apply(half_plane_to_disk(w)));
    }
    return pts;
}

}  // namespace

TruncatedDomain truncated_domain(const LatticePresentation& pres, int s,
                                 const DomainOptions& opts) {
    if (s < 1) throw InvalidInput("truncated_domain: truncation level must be >= 1");
    FundamentalPolygon fp = dirichlet_polygon(pres, opts.word_radius);

    TruncatedDomain dom;
    dom.level = s;
    dom.base = fp.base;
    dom.total_area_target = -2.0 * M_PI * chi_orb(pres.signature).to_double();

    std::vector<Complex> fp_klein;
    fp_klein.reserve(fp.vertices.size());
    for (Complex v : fp.vertices) fp_klein.push_back(poincare_to_klein(v));

    const auto& sig = pres.signature;
    std::size_t ncone = sig.cone_orders.size();

    // Base radii: keep all removed disks disjoint.
    double min_sep = 1e9;
    std::vector<Complex> specials{fp.base};
    for (Complex p : pres.cone_points) specials.push_back(p);
    for (std::size_t i = 0; i < specials.size(); ++i)
        for (const auto& g : fp.ball) {
            Complex img = apply_disk(DiskMobius::from_half_plane(g), specials[i]);
            for (std::size_t j = 0; j < specials.size(); ++j) {
                double dist = poincare_distance(img, specials[j]);
                if (dist > 1e-9) min_sep = std::min(min_sep, dist);
            }
        }
    double r0 = opts.cone_radius0 > 0 ? opts.cone_radius0 : std::min(0.35, 0.3 * min_sep);
    double shrink = std::pow(2.0, -(s - 1));
    double rs = std::asinh(std::sinh(r0) * shrink);

    // --- removed pieces -----------------------------------------------------
    std::vector<Bite> bites;
    double removed = 0;

    // free-fiber disk at the base point
    int M0 = 4 * ((opts.bite_segments + 3) / 4);
    std::vector<Complex> d0_poly = circle_polygon(fp.base, rs, M0);
    {
        Bite b;
        for (Complex p : d0_poly) b.klein.push_back(poincare_to_klein(p));
        bites.push_back(std::move(b));
        for (int k = 0; k < M0; ++k)
            removed += hyperbolic_triangle_area(fp.base, d0_poly[k], d0_poly[(k + 1) % M0]);
    }

    // cone disks, orbit copies
    std::vector<std::vector<Complex>> cone_polys(ncone);
    for (std::size_t i = 0; i < ncone; ++i) {
        std::int64_t alpha = sig.cone_orders[i];
        int M = static_cast<int>(((opts.bite_segments + alpha - 1) / alpha) * alpha);
        cone_polys[i] = circle_polygon(pres.cone_points[i], rs, M);
        double disk_area = 0;
        for (int k = 0; k < M; ++k)
            disk_area += hyperbolic_triangle_area(pres.cone_points[i], cone_polys[i][k],
                                                  cone_polys[i][(k + 1) % M]);
        removed += disk_area / static_cast<double>(alpha);

        std::vector<Mat2> copies{Mat2::identity()};
        copies.insert(copies.end(), fp.ball.begin(), fp.ball.end());
        std::map<std::uint64_t, bool> placed;
        for (const auto& g : copies) {
            DiskMobius dg = DiskMobius::from_half_plane(g);
            Complex q = dg.apply(pres.cone_points[i]);
            auto key = mat_key(Mat2{q.real(), q.imag(), 0, 1});
            if (placed.count(key)) continue;
            Bite b;
            bool near = false;
            for (Complex p : cone_polys[i]) {
                Complex img = dg.apply(p);
                Complex k = poincare_to_klein(img);
                b.klein.push_back(k);
                if (point_in_convex(fp_klein, k)) near = true;
            }
            if (!near) {
                // also keep copies whose bite contains a polygon vertex
                for (Complex v : fp_klein)
                    if (point_in_convex(b.klein, v)) near = true;
            }
            if (near) {
                placed[key] = true;
                bites.push_back(std::move(b));
            }
        }
    }

    // cusp horoballs, orbit copies
    std::vector<CuspFrame> frames;
    std::vector<double> heights;
    std::vector<std::vector<Complex>> cusp_arcs(pres.c.size());
    int Mc = opts.bite_segments;
    for (std::size_t j = 0; j < pres.c.size(); ++j) {
        CuspFrame f = cusp_frame(pres.c[j]);
        double L = opts.cusp_length0 * shrink;  // quotient horocycle length
        double Y = std::abs(f.translation) / L;
        frames.push_back(f);
        heights.push_back(Y);
        cusp_arcs[j] = horo_polyline(f, Y, Mc, 0, Mc);
        // quotient area above the polyline: fan from the cusp point
        for (int k = 0; k < Mc; ++k)
            removed += hyperbolic_triangle_area(f.cusp_disk, cusp_arcs[j][k], cusp_arcs[j][k + 1]);

        std::vector<Complex> wide = horo_polyline(f, Y, Mc, -2 * Mc, 3 * Mc);
        std::vector<Mat2> copies{Mat2::identity()};
        copies.insert(copies.end(), fp.ball.begin(), fp.ball.end());
        std::map<std::uint64_t, bool> placed;
        for (const auto& g : copies) {
            DiskMobius dg = DiskMobius::from_half_plane(g);
            Complex xi = dg.apply(f.cusp_disk);
            auto key = mat_key(Mat2{xi.real(), xi.imag(), 0, 1});
            if (placed.count(key)) continue;
            Bite b;
            bool near = false;
            for (Complex p : wide) {
                Complex img = dg.apply(p);
                Complex k = poincare_to_klein(img);
                b.klein.push_back(k);
                if (point_in_convex(fp_klein, k)) near = true;
            }
            b.klein.push_back(poincare_to_klein(xi));  // close the fan through the cusp point
            if (!near)
                for (Complex v : fp.vertices)
                    if (std::abs(v - xi) < 1e-6) near = true;
            if (near) {
                placed[key] = true;
                bites.push_back(std::move(b));
            }
        }
    }
    dom.removed_area = removed;

    // --- star-shaped raycast mesh -------------------------------------------
    Complex k0 = poincare_to_klein(fp.base);
    std::vector<std::pair<Complex, Complex>> segs;  // boundary segments (Klein)
    std::vector<Complex> kleinverts;
    for (std::size_t i = 0; i < fp.vertices.size(); ++i) {
        Complex a = poincare_to_klein(fp.vertices[i]);
        Complex b = poincare_to_klein(fp.vertices[(i + 1) % fp.vertices.size()]);
        segs.emplace_back(a, b);
        kleinverts.push_back(a);
    }
    std::size_t outer_count = segs.size();
    for (std::size_t bi = 1; bi < bites.size(); ++bi) {  // skip D0 (index 0): inner ring
        const auto& b = bites[bi];
        for (std::size_t i = 0; i < b.klein.size(); ++i) {
            segs.emplace_back(b.klein[i], b.klein[(i + 1) % b.klein.size()]);
            kleinverts.push_back(b.klein[i]);
        }
    }

    std::vector<double> angles;
    auto add_angle = [&](Complex p) {
        Complex dvec = p - k0;
        if (std::abs(dvec) < 1e-14) return;
        angles.push_back(std::atan2(dvec.imag(), dvec.real()));
    };
    for (Complex v : kleinverts) add_angle(v);
    for (Complex v : bites[0].klein) add_angle(v);
    // boundary-boundary crossings refine the fan so each sector sees one segment
    for (std::size_t i = outer_count; i < segs.size(); ++i)
        for (std::size_t j = 0; j < outer_count; ++j) {
            Complex w;
            if (segments_cross(segs[i].first, segs[i].second, segs[j].first, segs[j].second, &w))
                add_angle(w);
        }
    int fill = std::max(48, 6 * opts.mesh_res);
    for (int i = 0; i < fill; ++i) angles.push_back(-M_PI + 2.0 * M_PI * i / fill);
    std::sort(angles.begin(), angles.end());
    angles.erase(std::unique(angles.begin(), angles.end(),
                             [](double x, double y) { return std::abs(x - y) < 1e-12; }),
                 angles.end());

    auto ray_hit = [&](double theta, const std::vector<std::pair<Complex, Complex>>& ss,
                       bool nearest) {
        Complex u = std::polar(1.0, theta);
        double best = nearest ? 1e300 : -1.0;
        for (const auto& [p, q] : ss) {
            Complex r = q - p;
            double den = u.real() * r.imag() - u.imag() * r.real();
            if (std::abs(den) < 1e-16) continue;
            Complex cq = p - k0;
            double t = (cq.real() * r.imag() - cq.imag() * r.real()) / den;
            double w = (cq.real() * u.imag() - cq.imag() * u.real()) / den;
            if (w < -1e-12 || w > 1 + 1e-12 || t <= 1e-12) continue;
            if (nearest) best = std::min(best, t);
            else best = std::max(best, t);
        }
        return best;
    };

    std::vector<std::pair<Complex, Complex>> d0segs;
    for (std::size_t i = 0; i < bites[0].klein.size(); ++i)
        d0segs.emplace_back(bites[0].klein[i], bites[0].klein[(i + 1) % bites[0].klein.size()]);

    std::size_t nray = angles.size();
    std::vector<double> t_in(nray), t_out(nray);
    for (std::size_t i = 0; i < nray; ++i) {
        t_in[i] = ray_hit(angles[i], d0segs, true);
        t_out[i] = ray_hit(angles[i], segs, true);
        if (!(t_in[i] < 1e290) || !(t_out[i] < 1e290))
            throw MeshFailure("truncated_domain: ray escaped the domain");
    }

    int layers = std::max(2, opts.mesh_res);
    dom.mesh_area = 0;
    for (std::size_t i = 0; i < nray; ++i) {
        std::size_t i2 = (i + 1) % nray;
        Complex u1 = std::polar(1.0, angles[i]), u2 = std::polar(1.0, angles[i2]);
        if (t_out[i] <= t_in[i] + 1e-13 || t_out[i2] <= t_in[i2] + 1e-13) continue;
        for (int l = 0; l < layers; ++l) {
            double f0 = static_cast<double>(l) / layers, f1 = static_cast<double>(l + 1) / layers;
            Complex p00 = k0 + u1 * (t_in[i] + f0 * (t_out[i] - t_in[i]));
            Complex p01 = k0 + u1 * (t_in[i] + f1 * (t_out[i] - t_in[i]));
            Complex p10 = k0 + u2 * (t_in[i2] + f0 * (t_out[i2] - t_in[i2]));
            Complex p11 = k0 + u2 * (t_in[i2] + f1 * (t_out[i2] - t_in[i2]));
            Complex tri[2][3] = {{p00, p10, p11}, {p00, p11, p01}};
            for (auto& t : tri) {
                MeshTriangle mt;
                mt.v0 = klein_to_poincare(t[0]);
                mt.v1 = klein_to_poincare(t[1]);
                mt.v2 = klein_to_poincare(t[2]);
                if (std::abs(mt.v0) > 0.9995 || std::abs(mt.v1) > 0.9995 ||
                    std::abs(mt.v2) > 0.9995)
                    continue;
                mt.area = hyperbolic_triangle_area(mt.v0, mt.v1, mt.v2);
                if (!(mt.area > 1e-15)) continue;
                mt.centroid = klein_to_poincare((t[0] + t[1] + t[2]) / 3.0);
                dom.mesh_area += mt.area;
                dom.triangles.push_back(mt);
            }
        }
    }

    double covered = dom.mesh_area + dom.removed_area;
    if (std::abs(covered - dom.total_area_target) > 0.02 * dom.total_area_target)
        throw MeshFailure("truncated_domain: mesh area " + std::to_string(covered) +
                          " vs target " + std::to_string(dom.total_area_target));

    // --- boundary loops -------------------------------------------------------
    {
        BoundaryLoop lp;
        lp.type = BoundaryLoop::Type::free_fiber;
        lp.index = -1;
        lp.polyline = d0_poly;
        lp.polyline.push_back(d0_poly.front());
        lp.deck = Mat2::identity();
        lp.closed = true;
        dom.loops.push_back(std::move(lp));
    }
    for (std::size_t i = 0; i < ncone; ++i) {
        std::int64_t alpha = sig.cone_orders[i];
        // counterclockwise primitive rotation at the fixed point
        DiskMobius dd = DiskMobius::from_half_plane(pres.d[i]);
        double rot = std::arg(dd.derivative(pres.cone_points[i]));
        Mat2 w_ccw = rot > 0 ? pres.d[i] : pres.d[i].inverse();
        BoundaryLoop lp;
        lp.type = BoundaryLoop::Type::cone;
        lp.index = static_cast<int>(i);
        lp.alpha = alpha;
        int M = static_cast<int>(cone_polys[i].size());
        int span = M / static_cast<int>(alpha);
        for (int k = 0; k <= span; ++k) lp.polyline.push_back(cone_polys[i][k % M]);
        lp.deck = w_ccw;
        dom.loops.push_back(std::move(lp));
    }
    for (std::size_t j = 0; j < pres.c.size(); ++j) {
        BoundaryLoop lp;
        lp.type = BoundaryLoop::Type::cusp;
        lp.index = static_cast<int>(j);
        lp.polyline = cusp_arcs[j];
        lp.deck = pres.c[j];
        dom.loops.push_back(std::move(lp));
    }
    return dom;
}

}  // namespace orbi
