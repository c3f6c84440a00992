#include "momentlab/json_io.hpp"

#include <map>
#include <sstream>
#include <stdexcept>

namespace momentlab {

std::string verdict_name(Verdict v) {
    switch (v) {
    case Verdict::Interior:
        return "interior";
    case Verdict::Boundary:
        return "boundary";
    case Verdict::Outside:
        return "outside";
    }
    return {};
}

namespace {

Json rational_array(const std::vector<Rational>& xs) {
    Json out = Json::array();
    for (const auto& x : xs)
        out.push_back(format_rational(x));
    return out;
}

} // namespace

Json moments_json(const MomentVector& v) {
    if (v.is_rational())
        return rational_array(v.rationals());
    Json out = Json::array();
    for (const auto& e : v.elements())
        out.push_back(group_element_json(e));
    return out;
}

Json group_element_json(const GroupElement& e) {
    Json coords = Json::object();
    for (const auto& [symbol, coeff] : e.coords())
        coords[symbol] = format_rational(coeff);
    return Json{{"coords", coords}};
}

Json certificate_json(const InteriorCertificate& c) {
    return Json{{"pivots_lower", rational_array(c.pivots_lower)},
                {"pivots_upper", rational_array(c.pivots_upper)}};
}

Json membership_json(const MomentVector& v, const MembershipResult& r) {
    Json out;
    out["moments"] = moments_json(v);
    out["verdict"] = verdict_name(r.verdict);
    if (r.certificate) {
        out["pivots_lower"] = rational_array(r.certificate->pivots_lower);
        out["pivots_upper"] = rational_array(r.certificate->pivots_upper);
    }
    if (r.witness) {
        out["witness"] = Json{{"form", r.witness->form == Form::Lower ? "lower" : "upper"},
                              {"pivot_index", r.witness->pivot_index},
                              {"pivot_bound", format_rational(r.witness->pivot_bound)}};
    }
    return out;
}

Json witness_json(const GridWitness& w) {
    return Json{{"grid_size", w.grid_size},
                {"tolerance", format_rational(w.tolerance)},
                {"weights", rational_array(w.weights)}};
}

Json pascal_json(const PascalTable& t) {
    Json rows = Json::array();
    if (t.is_rational()) {
        for (const auto& row : t.rational_rows())
            rows.push_back(rational_array(row));
    } else {
        for (const auto& row : t.element_rows()) {
            Json jrow = Json::array();
            for (const auto& e : row)
                jrow.push_back(group_element_json(e));
            rows.push_back(jrow);
        }
    }
    return Json{{"depth", t.depth()}, {"rows", rows}};
}

std::string pascal_csv(const PascalTable& t) {
    if (!t.is_rational())
        throw std::invalid_argument("CSV output requires a rational table");
    std::ostringstream out;
    out << "n,k,value\n";
    const auto& rows = t.rational_rows();
    for (std::size_t n = 0; n < rows.size(); ++n)
        for (std::size_t k = 0; k < rows[n].size(); ++k)
            out << n << ',' << k << ',' << format_rational(rows[n][k]) << '\n';
    return out.str();
}

Json perturbation_json(const PerturbationRequest& req, const PerturbationResult& result) {
    Json out;
    out["group"] = req.subgroup->to_string();
    out["m"] = req.prefix_length;
    out["upto"] = req.total_length;
    out["epsilons"] = rational_array(req.epsilons);
    out["independent"] = req.independent;
    out["sequence"] = moments_json(result.sequence);
    out["deviations"] = rational_array(result.deviations);
    Json certs = Json::array();
    for (std::size_t i = 0; i < result.certificates.size(); ++i) {
        Json c = certificate_json(result.certificates[i]);
        c["prefix_length"] = i + 2;
        certs.push_back(std::move(c));
    }
    out["certificates"] = certs;
    return out;
}

Json embedding_json(const EmbeddingCertificate& cert) {
    Json functions = Json::array();
    for (std::size_t n = 0; n < cert.functions.size(); ++n)
        for (const auto& [word, value] : cert.functions[n].leaves())
            functions.push_back(
                Json{{"n", n}, {"w", word}, {"value", format_rational(value)}});
    return Json{{"N", cert.N},
                {"depth", cert.depth()},
                {"functions", functions},
                {"violations", Json::array()}};
}

EmbeddingCertificate embedding_from_json(const Json& j) {
    EmbeddingCertificate cert;
    cert.N = j.at("N").get<std::size_t>();
    std::vector<CylinderFunction::LeafMap> maps(cert.N + 1);
    for (const auto& record : j.at("functions")) {
        const std::size_t n = record.at("n").get<std::size_t>();
        if (n > cert.N)
            throw std::invalid_argument("certificate function index exceeds N");
        const std::string word = record.at("w").get<std::string>();
        if (!maps[n].emplace(word, parse_rational(record.at("value").get<std::string>())).second)
            throw std::invalid_argument("duplicate certificate leaf");
    }
    for (auto& leaves : maps)
        cert.functions.push_back(CylinderFunction::from_leaves(std::move(leaves)));
    return cert;
}

Json report_json(const VerificationReport& report) {
    Json violations = Json::array();
    for (const auto& v : report.violations)
        violations.push_back(Json{{"kind", v.kind}, {"w", v.word}, {"detail", v.detail}});
    return Json{{"ok", report.ok}, {"violations", violations}};
}

} // namespace momentlab
