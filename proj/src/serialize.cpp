#include "orbi/serialize.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "orbi/errors.hpp"

namespace orbi {

namespace {

std::string double_str(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

double number_from(const Json& j, const char* what) {
    if (j.is_number()) return j.get<double>();
    if (j.is_string()) return Rational::parse(j.get<std::string>()).to_double();
    throw SchemaError(std::string(what) + ": expected number or numeric string");
}

// Angles keep exact rational form when given as strings.
Json angle_to_json(const std::optional<Rational>& exact, double value) {
    if (exact) return exact->str();
    return double_str(value);
}

}  // namespace

Json circle_map_to_json(const CircleMap& f) {
    Json j;
    switch (f.kind()) {
        case CircleMap::Kind::rotation:
            j["kind"] = "rotation";
            j["angle"] = angle_to_json(f.rotation_exact(), f.rotation_value());
            break;
        case CircleMap::Kind::mobius: {
            j["kind"] = "mobius";
            const Mat2& m = f.mobius_matrix();
            j["matrix"] = Json::array(
                {double_str(m.a), double_str(m.b), double_str(m.c), double_str(m.d)});
            j["branch"] = f.mobius_branch();
            break;
        }
        case CircleMap::Kind::pl: {
            j["kind"] = "pl";
            Json pts = Json::array();
            for (std::size_t i = 0; i < f.pl_x().size(); ++i)
                pts.push_back(Json::array({double_str(f.pl_x()[i]), double_str(f.pl_y()[i])}));
            j["points"] = std::move(pts);
            if (f.pl_allows_flat()) j["allow_flat"] = true;
            break;
        }
        case CircleMap::Kind::compose: {
            j["kind"] = "compose";
            Json maps = Json::array();
            for (const auto& p : f.parts()) maps.push_back(circle_map_to_json(p));
            j["maps"] = std::move(maps);
            break;
        }
    }
    return j;
}

CircleMap circle_map_from_json(const Json& j) {
    if (!j.is_object() || !j.contains("kind"))
        throw SchemaError("circle map: expected object with \"kind\"");
    std::string kind = j.at("kind").get<std::string>();
    if (kind == "rotation") {
        const Json& a = j.at("angle");
        if (a.is_string()) return CircleMap::rotation(Rational::parse(a.get<std::string>()));
        return CircleMap::rotation(a.get<double>());
    }
    if (kind == "mobius") {
        const Json& m = j.at("matrix");
        if (!m.is_array() || m.size() != 4)
            throw SchemaError("mobius: matrix must be 4 row-major entries");
        Mat2 mat{number_from(m[0], "matrix"), number_from(m[1], "matrix"),
                 number_from(m[2], "matrix"), number_from(m[3], "matrix")};
        std::int64_t branch = j.value("branch", 0);
        return CircleMap::mobius(mat, branch);
    }
    if (kind == "pl") {
        std::vector<std::pair<double, double>> pts;
        for (const Json& p : j.at("points")) {
            if (!p.is_array() || p.size() != 2) throw SchemaError("pl: points are [x, y] pairs");
            pts.emplace_back(number_from(p[0], "pl point"), number_from(p[1], "pl point"));
        }
        return CircleMap::piecewise_linear(std::move(pts), j.value("allow_flat", false));
    }
    if (kind == "compose") {
        std::vector<CircleMap> parts;
        for (const Json& p : j.at("maps")) parts.push_back(circle_map_from_json(p));
        return CircleMap::composition(std::move(parts));
    }
    throw SchemaError("circle map: unknown kind '" + kind + "'");
}

Json signature_to_json(const OrbifoldSignature& sig) {
    Json j;
    j["genus"] = sig.genus;
    j["cone_orders"] = sig.cone_orders;
    j["cusps"] = sig.cusps;
    return j;
}

OrbifoldSignature signature_from_json(const Json& j) {
    OrbifoldSignature sig;
    if (!j.is_object()) throw SchemaError("signature: expected object");
    for (auto& [k, v] : j.items()) {
        if (k == "genus") sig.genus = v.get<int>();
        else if (k == "cone_orders") sig.cone_orders = v.get<std::vector<std::int64_t>>();
        else if (k == "cusps") sig.cusps = v.get<int>();
        else throw SchemaError("signature: unknown key '" + k + "'");
    }
    return sig;
}

namespace {

Json mat_to_json(const Mat2& m) {
    return Json::array({double_str(m.a), double_str(m.b), double_str(m.c), double_str(m.d)});
}

Mat2 mat_from_json(const Json& j) {
    if (!j.is_array() || j.size() != 4) throw SchemaError("matrix: 4 row-major entries expected");
    return {number_from(j[0], "matrix"), number_from(j[1], "matrix"),
            number_from(j[2], "matrix"), number_from(j[3], "matrix")};
}

}  // namespace

Json presentation_to_json(const LatticePresentation& pres) {
    Json j;
    j["signature"] = signature_to_json(pres.signature);
    Json gens;
    Json a = Json::array(), b = Json::array(), d = Json::array(), c = Json::array();
    for (const auto& m : pres.a) a.push_back(mat_to_json(m));
    for (const auto& m : pres.b) b.push_back(mat_to_json(m));
    for (const auto& m : pres.d) d.push_back(mat_to_json(m));
    for (const auto& m : pres.c) c.push_back(mat_to_json(m));
    gens["a"] = std::move(a);
    gens["b"] = std::move(b);
    gens["d"] = std::move(d);
    gens["c"] = std::move(c);
    j["generators"] = std::move(gens);
    if (!pres.note.empty()) j["note"] = pres.note;
    return j;
}

LatticePresentation presentation_from_json(const Json& j) {
    if (j.is_object() && j.contains("catalog")) return catalog(signature_from_json(j.at("catalog")));
    LatticePresentation pres;
    if (!j.is_object() || !j.contains("signature") || !j.contains("generators"))
        throw SchemaError("presentation: need signature and generators (or catalog)");
    pres.signature = signature_from_json(j.at("signature"));
    const Json& g = j.at("generators");
    for (auto& [k, v] : g.items()) {
        std::vector<Mat2>* dst = nullptr;
        if (k == "a") dst = &pres.a;
        else if (k == "b") dst = &pres.b;
        else if (k == "d") dst = &pres.d;
        else if (k == "c") dst = &pres.c;
        else throw SchemaError("presentation: unknown generator family '" + k + "'");
        for (const Json& mj : v) dst->push_back(mat_from_json(mj));
    }
    if (pres.relator_residual() > 1e-9)
        throw InvalidInput("presentation: relator residual " +
                           std::to_string(pres.relator_residual()));
    for (const auto& m : pres.d)
        pres.cone_points.push_back(DiskMobius::from_half_plane(m).elliptic_fixed_point());
    for (const auto& m : pres.c)
        pres.cusp_turns.push_back(boundary_fixed_points(m).attracting);
    if (j.contains("note")) pres.note = j.at("note").get<std::string>();
    return pres;
}

Json representation_to_json(const RepresentationSpec& rep, const Json& presentation) {
    Json j;
    j["presentation"] = presentation;
    Json as;
    auto emit = [&](const char* prefix, const std::vector<CircleMap>& v) {
        for (std::size_t i = 0; i < v.size(); ++i)
            as[prefix + std::to_string(i + 1)] = circle_map_to_json(v[i]);
    };
    emit("a", rep.a);
    emit("b", rep.b);
    emit("d", rep.d);
    emit("c", rep.c);
    j["assignments"] = std::move(as);
    j["tol"] = rep.tol;
    return j;
}

RepresentationSpec representation_from_json(const Json& j, LatticePresentation* pres_out) {
    if (!j.is_object() || !j.contains("presentation"))
        throw SchemaError("representation: missing presentation");
    LatticePresentation pres = presentation_from_json(j.at("presentation"));
    if (pres_out) *pres_out = pres;
    double tol = j.value("tol", 1e-6);

    bool fuch = j.value("fuchsian", false);
    if (fuch) {
        RepresentationSpec rep = RepresentationSpec::fuchsian(pres, tol);
        if (j.value("reversed", false)) rep = rep.reversed();
        return rep;
    }
    if (!j.contains("assignments"))
        throw SchemaError("representation: need \"fuchsian\": true or assignments");
    RepresentationSpec rep;
    rep.signature = pres.signature;
    rep.tol = tol;
    const auto& sig = pres.signature;
    const Json& as = j.at("assignments");
    auto get = [&](const std::string& key) {
        if (!as.contains(key))
            throw SchemaError("representation: missing assignment for generator " + key);
        return circle_map_from_json(as.at(key));
    };
    for (int i = 1; i <= sig.genus; ++i) {
        rep.a.push_back(get("a" + std::to_string(i)));
        rep.b.push_back(get("b" + std::to_string(i)));
    }
    for (std::size_t i = 1; i <= sig.cone_orders.size(); ++i)
        rep.d.push_back(get("d" + std::to_string(i)));
    for (int i = 1; i <= sig.cusps; ++i) rep.c.push_back(get("c" + std::to_string(i)));
    std::size_t expected = rep.a.size() + rep.b.size() + rep.d.size() + rep.c.size();
    if (as.size() != expected)
        throw SchemaError("representation: unexpected extra assignments present");
    return rep;
}

Json measure_to_json(const CircleMeasure& m) {
    Json j;
    j["bin_edges"] = m.bin_edges;
    j["bin_masses"] = m.bin_masses;
    if (!m.atoms.empty()) {
        Json atoms = Json::array();
        for (const auto& a : m.atoms) atoms.push_back({{"position", a.position}, {"mass", a.mass}});
        j["atoms"] = std::move(atoms);
    }
    return j;
}

std::string measure_to_csv(const CircleMeasure& m) {
    std::ostringstream os;
    os << "bin_lo,bin_hi,mass\n";
    for (std::size_t i = 0; i < m.bin_masses.size(); ++i) {
        os << double_str(m.bin_edges[i]) << ',' << double_str(m.bin_edges[i + 1]) << ','
           << double_str(m.bin_masses[i]) << '\n';
    }
    return os.str();
}

HarmonicFamily family_from_json(const Json& j) {
    if (!j.is_object()) throw SchemaError("family: expected object");
    if (j.contains("poisson")) {
        const Json& p = j.at("poisson");
        CircleMap m = p.contains("map") ? circle_map_from_json(p.at("map")) : CircleMap::identity();
        return HarmonicFamily::poisson(m);
    }
    if (j.contains("mixture")) {
        std::vector<std::pair<double, double>> ws;
        for (const Json& c : j.at("mixture"))
            ws.emplace_back(number_from(c.at("weight"), "weight"),
                            number_from(c.at("shift"), "shift"));
        return HarmonicFamily::mixture(ws);
    }
    throw SchemaError("family: expected \"poisson\" or \"mixture\"");
}

Json family_to_json(const HarmonicFamily& f) {
    Json j;
    if (f.single_poisson()) {
        j["poisson"] = Json{{"map", circle_map_to_json(f.components[0].map)}};
        return j;
    }
    Json mix = Json::array();
    for (const auto& c : f.components) {
        double shift = c.map.rotation_value();
        mix.push_back({{"weight", double_str(c.weight)}, {"shift", double_str(shift)}});
    }
    j["mixture"] = std::move(mix);
    return j;
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open file: " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write file: " + path);
    out << content;
}

}  // namespace orbi
