#pragma once

#include <json.hpp>
#include <optional>
#include <string>
#include <vector>

#include "bkvg/bracket.hpp"
#include "bkvg/discretization.hpp"
#include "bkvg/extensions.hpp"
#include "bkvg/verification.hpp"

namespace bkvg {

using Json = nlohmann::ordered_json;

constexpr const char* kSchema = "bkvg-report/1";
constexpr const char* kToolVersion = "0.1.0";

// Two-space indent, floats as %.11e, non-finite floats as "inf"/"-inf"/"nan".
std::string dump_report(const Json& j);

Json real_field(double v, Certification c);
Json complex_field(cplx z, Certification c);
Json monomial_json(const MonomialSum& f, Certification c);

Json analyze_payload(const CertifiedFamily& cf);
Json extension_payload(const ExtensionSpec& spec, const AccretivityReport& r, const std::optional<VdDescription>& vd,
                       std::optional<double> rayleigh_inf);
Json compare_payload(const ExtensionSpec& s1, const ExtensionSpec& s2, Order o);
Json range_payload(const NumericalRangeReport& r, std::size_t matrix_order);
Json verify_payload(const std::vector<CriterionResult>& results, VerifyLevel level);

Json envelope(const std::string& command, Json config_echo, Json payload, std::vector<std::string> warnings);

// "theta,support_value" header, LF endings.
std::string support_csv(const NumericalRangeReport& r);

}  // namespace bkvg
