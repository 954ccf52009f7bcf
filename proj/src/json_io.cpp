#include "nilmap/json_io.hpp"

#include <string>

namespace nilmap::json_io {

namespace {

json polys(const std::vector<Polynomial>& ps, const VarNames& names) {
    json out = json::array();
    for (const auto& p : ps) out.push_back(format_polynomial(p, names));
    return out;
}

}  // namespace

json to_json(const Rational& r) { return r.to_string(); }

json to_json(const RationalMatrix& m) {
    json rows = json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(to_json(m(i, j)));
        rows.push_back(std::move(row));
    }
    return rows;
}

json to_json(const PolyMatrix& m, const VarNames& names) {
    json rows = json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(format_polynomial(m(i, j), names));
        rows.push_back(std::move(row));
    }
    return rows;
}

json to_json(const PolyMap& map, const VarNames& names) {
    return json{{"n", map.dimension()}, {"components", polys(map.components(), names)}};
}

json to_json(const NilpotencyReport& report, const VarNames& names) {
    json j{{"nilpotent", report.nilpotent}, {"sigma", polys(report.sigma, names)}};
    if (report.witness)
        j["witness"] = json{{"k", report.witness->first}, {"sigma_k", format_polynomial(report.witness->second, names)}};
    return j;
}

json to_json(const DependenceCertificate& cert) {
    json c = json::array();
    for (const auto& r : cert.coefficients) c.push_back(to_json(r));
    return json{{"coefficients", std::move(c)}};
}

json to_json(const CanonicalFormA& params) {
    const VarNames z = VarNames::from_alias("z", 1);
    const VarNames tz = VarNames::from_alias("tz", 2);
    return json{{"a1", format_polynomial(params.a1, z)},
                {"a2", format_polynomial(params.a2, z)},
                {"c1", format_polynomial(params.c1, z)},
                {"c2", format_polynomial(params.c2, z)},
                {"h", format_polynomial(params.h, tz)}};
}

json to_json(const Conjugation& c, const VarNames& names) {
    return json{{"T", to_json(c.transform.matrix())}, {"map", to_json(c.map, names)}};
}

json to_json(const Reduction& r, const VarNames& names) {
    return json{{"status", to_string(r.status)}, {"T", to_json(r.transform.matrix())}, {"map", to_json(r.map, names)}};
}

json to_json(const ReducedForm4D& r) {
    const VarNames xy = VarNames::standard(2);
    return json{{"h1", format_polynomial(r.h1, xy)},
                {"h2", format_polynomial(r.h2, xy)},
                {"h3", format_polynomial(r.h3, xy)},
                {"h4", format_polynomial(r.h4, xy)}};
}

json to_json(const TameFactorization& f, const VarNames& names) {
    json factors = json::array();
    for (const auto& factor : f.factors) {
        if (const auto* e = std::get_if<ElementaryMap>(&factor))
            factors.push_back(json{{"type", "elementary"}, {"i", e->index() + 1}, {"Q", format_polynomial(e->q(), names)}});
        else
            factors.push_back(json{{"type", "linear"}, {"matrix", to_json(std::get<LinearMap>(factor).matrix())}});
    }
    return json{{"n", f.dimension}, {"factors", std::move(factors)}};
}

json to_json(const TheoremViolation& e) {
    return json{{"error", "TheoremViolation"},
                {"result", e.result()},
                {"detail", e.what()},
                {"instance", json::parse(e.instance())}};
}

TameFactorization factorization_from_json(const json& j, const VarNames& names) {
    TameFactorization f;
    f.dimension = j.at("n").get<std::size_t>();
    for (const auto& factor : j.at("factors")) {
        const std::string type = factor.at("type").get<std::string>();
        if (type == "elementary") {
            const auto i = factor.at("i").get<std::size_t>();
            if (i == 0) throw DimensionMismatch("elementary factor indices start at 1");
            f.factors.emplace_back(
                ElementaryMap(f.dimension, i - 1, parse_polynomial(factor.at("Q").get<std::string>(), names)));
        } else if (type == "linear") {
            const auto& rows = factor.at("matrix");
            RationalMatrix m(rows.size(), rows.empty() ? 0 : rows[0].size());
            for (std::size_t r = 0; r < m.rows(); ++r)
                for (std::size_t c = 0; c < m.cols(); ++c) m(r, c) = Rational::parse(rows[r][c].get<std::string>());
            f.factors.emplace_back(LinearMap(m));
        } else {
            throw PreconditionError("unknown factor type '" + type + "'");
        }
    }
    return f;
}

}  // namespace nilmap::json_io
