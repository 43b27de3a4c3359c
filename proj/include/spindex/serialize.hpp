// JSON serialization of series values, one document per line.
//
// Schema: {"variable": "q^(1/2)", "prec2": P|null, "terms": [[exp2, "coeff"], ...]}
// Coefficients are decimal strings so consumers never overflow.  prec2 null
// marks an exact Laurent polynomial.

#pragma once

#include <json.hpp>

#include "qseries.hpp"

namespace spindex {

inline nlohmann::ordered_json to_json(const QSeries& f) {
    nlohmann::ordered_json doc;
    doc["variable"] = "q^(1/2)";
    if (f.is_exact()) doc["prec2"] = nullptr;
    else doc["prec2"] = f.prec2();
    auto terms = nlohmann::ordered_json::array();
    for (size_t i = 0; i < f.coeffs().size(); ++i) {
        if (f.coeffs()[i] == 0) continue;
        terms.push_back({f.min_exp2() + static_cast<long long>(i), f.coeffs()[i].str()});
    }
    doc["terms"] = std::move(terms);
    return doc;
}

inline std::string to_json_line(const QSeries& f) { return to_json(f).dump(); }

inline QSeries from_json(const nlohmann::json& doc) {
    if (doc.at("variable").get<std::string>() != "q^(1/2)")
        throw std::invalid_argument("series document: unsupported variable");
    long long prec2 = kExactPrec;
    if (!doc.at("prec2").is_null()) prec2 = doc.at("prec2").get<long long>();
    QSeries f = QSeries::zero(prec2);
    for (const auto& t : doc.at("terms")) {
        long long e2 = t.at(0).get<long long>();
        Int c(t.at(1).get<std::string>());
        f += QSeries::monomial(c, e2, prec2);
    }
    return f;
}

}  // namespace spindex
