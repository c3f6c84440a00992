#pragma once

#include "momentlab/cantor.hpp"
#include "momentlab/lp_oracle.hpp"
#include "momentlab/membership.hpp"
#include "momentlab/pascal.hpp"
#include "momentlab/perturbation.hpp"

#include <json.hpp>

#include <string>

namespace momentlab {

// ordered_json keeps key order stable, so identical configs serialize to
// identical bytes.
using Json = nlohmann::ordered_json;

Json moments_json(const MomentVector& v);
Json group_element_json(const GroupElement& e);
Json membership_json(const MomentVector& v, const MembershipResult& r);
Json certificate_json(const InteriorCertificate& c);
Json witness_json(const GridWitness& w);
Json pascal_json(const PascalTable& t);
std::string pascal_csv(const PascalTable& t);
Json perturbation_json(const PerturbationRequest& req, const PerturbationResult& result);

Json embedding_json(const EmbeddingCertificate& cert);
EmbeddingCertificate embedding_from_json(const Json& j);
Json report_json(const VerificationReport& report);

std::string verdict_name(Verdict v);

} // namespace momentlab
