#include "curvedist/io.hpp"

#include "curvedist/errors.hpp"

#include <filesystem>
#include <fstream>
#include <regex>
#include <sstream>

namespace curvedist::io {

namespace {

std::optional<Rational> bound_from_json(const json &v) {
    if (v.is_null()) return std::nullopt;
    if (v.is_string()) {
        const auto s = v.get<std::string>();
        if (s == "inf" || s == "+inf" || s == "-inf") return std::nullopt;
    }
    return rational_from_json(v);
}

Interval domain_from_json(const json &v) {
    if (!v.is_array() || v.size() != 2) throw ValidationError("domain must be a two-element array");
    return Interval(bound_from_json(v[0]), bound_from_json(v[1]));
}

Poly poly_from_json(const json &v) {
    if (!v.is_array()) throw ValidationError("polynomial coefficients must be an array (ascending powers)");
    std::vector<Rational> c;
    for (const auto &x : v) c.push_back(rational_from_json(x));
    return Poly(std::move(c));
}

const json &require(const json &spec, const char *key) {
    if (!spec.contains(key)) throw ValidationError(std::string("missing field '") + key + "'");
    return spec.at(key);
}

std::vector<double> doubles(const json &v) {
    std::vector<double> out;
    if (v.is_null()) return out;
    for (const auto &x : v) out.push_back(to_double(rational_from_json(x)));
    return out;
}

json bound_to_json(double v) {
    if (std::isinf(v)) return nullptr;
    return v;
}

} // namespace

Rational rational_from_json(const json &value) {
    if (value.is_string()) return parse_rational(value.get<std::string>());
    if (value.is_number_integer()) return Rational(value.get<long>());
    if (value.is_number()) return from_double(value.get<double>());
    throw ValidationError("expected a number or rational string, got " + value.dump());
}

json rational_to_json(const Rational &value) { return format_rational(value); }

Curve curve_from_json(const json &spec) {
    if (spec.is_string()) return parse_curve_arg(spec.get<std::string>());
    if (!spec.is_object()) throw ValidationError("curve spec must be an object");
    const std::string kind = require(spec, "kind").get<std::string>();
    std::optional<Interval> domain;
    if (spec.contains("domain")) domain = domain_from_json(spec.at("domain"));
    const std::string label = spec.value("label", kind);
    if (kind == "rational") {
        std::vector<RationalFunction> coords;
        for (const auto &c : require(spec, "coords")) {
            Poly num = poly_from_json(require(c, "num"));
            Poly den = c.contains("den") ? poly_from_json(c.at("den")) : Poly::constant(1);
            if (den.is_zero()) throw ValidationError("zero denominator in curve coordinate");
            coords.emplace_back(std::move(num), std::move(den));
        }
        return Curve(make_rational_curve(std::move(coords), domain.value_or(Interval())), label);
    }
    if (kind == "helix") {
        std::vector<double> drift = spec.contains("drift") ? doubles(spec.at("drift")) : std::vector<double>{};
        return Curve(make_helix_curve(doubles(require(spec, "radii")), doubles(require(spec, "frequencies")), std::move(drift),
                                      require(spec, "dimension").get<int>(), domain.value_or(Interval())),
                     label);
    }
    if (kind == "builtin") {
        Curve c = builtin_curve(require(spec, "name").get<std::string>());
        return domain ? c.restricted(*domain) : c;
    }
    throw ValidationError("unknown curve kind '" + kind + "'");
}

Quantity quantity_from_json(const json &spec) {
    if (!spec.is_object()) throw ValidationError("quantity spec must be an object");
    const std::string kind = require(spec, "kind").get<std::string>();
    if (kind == "sq_euclidean") return Quantity::squared_euclidean(spec.value("dimension", 2));
    if (kind == "pinned_area") {
        if (!spec.contains("apex")) return Quantity::pinned_area(0, 0);
        const auto &apex = spec.at("apex");
        if (!apex.is_array() || apex.size() != 2) throw ValidationError("apex must be a two-element array");
        return Quantity::pinned_area(rational_from_json(apex[0]), rational_from_json(apex[1]));
    }
    if (kind == "poly") {
        std::vector<Monomial> terms;
        for (const auto &t : require(spec, "terms"))
            terms.push_back({require(t, "exponents").get<std::vector<int>>(), rational_from_json(require(t, "coeff"))});
        return Quantity::polynomial(require(spec, "dimension").get<int>(), std::move(terms));
    }
    throw ValidationError("unknown quantity kind '" + kind + "'");
}

Framework framework_from_json(const json &spec) {
    if (!spec.is_object()) throw ValidationError("framework spec must be an object");
    const json &cspec = require(spec, "curve");
    Curve curve = cspec.is_string() ? builtin_curve(cspec.get<std::string>()) : curve_from_json(cspec);
    const json qspec = spec.contains("quantity") ? spec.at("quantity") : json("sq_euclidean");
    Quantity quantity = qspec.is_string() ? parse_quantity_arg(qspec.get<std::string>(), curve.dimension())
                                          : quantity_from_json(qspec);
    const json &emb = require(spec, "embedding");
    if (!emb.is_array()) throw ValidationError("embedding must be an array");
    std::vector<Edge> edges;
    if (spec.contains("edges")) {
        for (const auto &e : spec.at("edges")) {
            if (!e.is_array() || e.size() != 2) throw ValidationError("edges must be [u, w] pairs");
            edges.emplace_back(e[0].get<int>(), e[1].get<int>());
        }
    } else {
        edges = complete_graph_edges(static_cast<int>(emb.size()));
    }
    const bool exact = std::all_of(emb.begin(), emb.end(), [](const json &x) { return x.is_string() || x.is_number_integer(); });
    if (exact) {
        std::vector<Rational> params;
        for (const auto &x : emb) params.push_back(rational_from_json(x));
        return make_framework(std::move(curve), std::move(quantity), std::move(edges), std::move(params));
    }
    return make_framework(std::move(curve), std::move(quantity), std::move(edges), doubles(emb));
}

json load_spec(const std::string &text) {
    const auto first = text.find_first_not_of(" \t\n");
    if (first != std::string::npos && text[first] == '{') {
        try {
            return json::parse(text);
        } catch (const json::parse_error &e) {
            throw ValidationError(std::string("invalid inline JSON: ") + e.what());
        }
    }
    std::error_code ec;
    if (std::filesystem::is_regular_file(text, ec)) {
        std::ifstream in(text);
        try {
            return json::parse(in);
        } catch (const json::parse_error &e) {
            throw ValidationError("invalid JSON in " + text + ": " + e.what());
        }
    }
    return json(text);
}

Curve parse_curve_arg(const std::string &text) {
    json spec = load_spec(text);
    if (spec.is_string()) return builtin_curve(spec.get<std::string>());
    return curve_from_json(spec);
}

Quantity parse_quantity_arg(const std::string &text, int dimension) {
    json spec = load_spec(text);
    if (!spec.is_string()) {
        if (spec.value("kind", "") == "sq_euclidean" && !spec.contains("dimension")) spec["dimension"] = dimension;
        return quantity_from_json(spec);
    }
    static const std::regex pattern(R"(\s*([a-z_]+)\s*(?:\(([^,]*),([^,]*)\))?\s*)");
    std::smatch m;
    const std::string s = spec.get<std::string>();
    if (std::regex_match(s, m, pattern)) {
        if (m[1] == "sq_euclidean" && !m[2].matched) return Quantity::squared_euclidean(dimension);
        if (m[1] == "pinned_area") {
            if (!m[2].matched) return Quantity::pinned_area(0, 0);
            return Quantity::pinned_area(parse_rational(m[2].str()), parse_rational(m[3].str()));
        }
    }
    throw ValidationError("unknown quantity '" + s + "'");
}

json interval_to_json(const Interval &interval) {
    return json::array({bound_to_json(interval.lo()), bound_to_json(interval.hi())});
}

json to_json(const BiPoly &p) {
    json coeffs = json::array();
    for (std::size_t i = 0; i < p.grid().size(); ++i)
        for (std::size_t j = 0; j < p.grid()[i].size(); ++j)
            if (p.grid()[i][j] != 0) coeffs.push_back(json::array({i, j, format_rational(p.grid()[i][j])}));
    return {{"degree", p.total_degree()}, {"coeffs", coeffs}, {"text", p.to_string()}};
}

json to_json(const DistinctCount &c) {
    return {{"count", c.count},       {"pairs", c.pairs}, {"min", c.min_value}, {"max", c.max_value},
            {"max_multiplicity", c.max_multiplicity}, {"exact", c.exact}};
}

json to_json(const ExponentFit &fit) {
    json samples = json::array();
    for (const auto &[n, count] : fit.samples) samples.push_back({{"n", n}, {"count", count}});
    return {{"samples", samples}, {"slope", fit.slope}, {"intercept", fit.intercept}, {"r_squared", fit.r_squared}};
}

json to_json(const SimplicityReport &r) {
    json conditions = json::array();
    for (const auto &c : r.conditions)
        conditions.push_back({{"index", c.index}, {"name", c.name}, {"passed", c.passed}, {"witness", c.witness}});
    return {{"conditions", conditions}, {"all_passed", r.all_passed()}, {"grid_size", r.grid_size},
            {"tol", r.tol},             {"window", interval_to_json(r.window)}};
}

json to_json(const IntersectionReport &r) {
    json pts = json::array();
    for (const auto &p : r.points) pts.push_back({p[0], p[1]});
    return {{"points", pts},
            {"count", r.points.size()},
            {"same_algebraic_curve", r.same_algebraic_curve},
            {"exact_same_check", r.exact_same_check},
            {"unrefined_cells", r.unrefined_cells}};
}

json to_json(const IncidenceReport &r) {
    json failures = json::array();
    for (const auto &f : r.failures) failures.push_back({{"p", f.p}, {"q", f.q}, {"r", f.r}, {"detail", f.detail}});
    return {{"checked", r.checked},
            {"failures", failures},
            {"exact", r.exact},
            {"min_incidences", r.min_incidences},
            {"max_incidences", r.max_incidences}};
}

json to_json(const AdmissibilityReport &r) {
    json histogram = json::object();
    for (const auto &[k, v] : r.histogram) histogram[std::to_string(k)] = v;
    return {{"curves", r.curves},
            {"pairs_checked", r.pairs_checked},
            {"same_curve_pairs", r.same_curve_pairs},
            {"max_pairwise_intersections", r.max_pairwise_intersections},
            {"duplicate_curve_classes", r.duplicate_curve_classes},
            {"histogram", histogram},
            {"exact_classes", r.exact_classes},
            {"unrefined_cells", r.unrefined_cells}};
}

json to_json(const FlexibilityResult &r) {
    json out = {{"rows", r.rows},
                {"cols", r.cols},
                {"numerical_nullity", r.numerical_nullity},
                {"singular_values", r.singular_values},
                {"tol", r.tol},
                {"nullity", r.nullity()},
                {"infinitesimally_flexible", r.flexible()},
                {"paths_agree", r.paths_agree()}};
    out["exact_nullity"] = r.exact_nullity ? json(*r.exact_nullity) : json(nullptr);
    if (r.exact_kernel) {
        json basis = json::array();
        for (const auto &v : *r.exact_kernel) {
            json row = json::array();
            for (const auto &x : v) row.push_back(format_rational(x));
            basis.push_back(row);
        }
        out["exact_kernel"] = basis;
    }
    return out;
}

json to_json(const DegeneracyReport &r) {
    json out = {{"is_degenerate_candidate", r.is_degenerate_candidate},
                {"max_H_variation", r.max_H_variation},
                {"sign_changes", r.sign_changes},
                {"pairs_scanned", r.pairs_scanned},
                {"skipped_points", r.skipped_points},
                {"window", interval_to_json(r.window)}};
    if (r.witness) {
        const auto &w = *r.witness;
        out["witness"] = {{"alpha", w.alpha}, {"beta", w.beta}, {"tau1", w.tau1}, {"tau2", w.tau2}, {"H1", w.h1}, {"H2", w.h2}};
    } else {
        out["witness"] = nullptr;
    }
    return out;
}

json to_json(const MotionTrace &t) {
    json edges = json::array();
    for (std::size_t e = 0; e < t.edges.size(); ++e)
        edges.push_back({{"u", t.edges[e].first},
                         {"w", t.edges[e].second},
                         {"target", t.edge_targets[e]},
                         {"drift", t.edge_drift[e]},
                         {"defining", static_cast<bool>(t.defining[e])}});
    return {{"steps", t.steps},
            {"paths", t.paths},
            {"edges", edges},
            {"max_drift", t.max_drift},
            {"newton",
             {{"iterations", t.newton.iterations},
              {"solves", t.newton.solves},
              {"failures", t.newton.failures},
              {"halvings", t.newton.halvings}}},
            {"status", to_string(t.status)},
            {"message", t.message}};
}

json to_json(const DerivativeNormProfile &p) {
    return {{"orders", p.orders},   {"samples", p.samples}, {"norms", p.norms},
            {"variation", p.variation}, {"length", p.length}, {"step", p.step},
            {"helix_candidate", p.helix_candidate}};
}

json to_json(const HelixClassification &c) {
    json certs = json::array();
    for (const auto &cert : c.certificates) {
        json j = {{"index", cert.index}, {"ratio", cert.ratio}, {"found", cert.found}};
        if (cert.found) j["fraction"] = std::to_string(cert.p) + "/" + std::to_string(cert.q);
        certs.push_back(j);
    }
    return {{"is_generalized", c.is_generalized},
            {"is_algebraic", c.is_algebraic},
            {"k", c.k},
            {"l", c.l},
            {"ratio_certificates", certs},
            {"reason", c.reason}};
}

} // namespace curvedist::io
