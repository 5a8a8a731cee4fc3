#ifndef BRNR_JSONIO_HPP
#define BRNR_JSONIO_HPP

#include <json.hpp>

#include "sections.hpp"

namespace brnr {

using nlohmann::json;

// throws Err::SchemaViolation with a JSON pointer in the message
[[noreturn]] void schema_fail(const std::string& pointer, const std::string& what);

GroupPtr group_from_json(const json& j, const std::string& ptr = "");
json group_to_json(const GroupPtr& g);

GModule module_from_json(const json& j, const GroupPtr& g, const std::string& ptr = "");
json module_to_json(const GModule& m);

struct GerbInput {
  Gerb gerb;
  std::optional<GerbCoeff> coeff;  // present when the gerb JSON carries mu data
};
GerbInput gerb_from_json(const json& j, const std::string& ptr = "");
json gerb_to_json(const Gerb& g);

LocalGaloisModel model_from_json(const json& j, const std::string& ptr = "");
json model_to_json(const LocalGaloisModel& m);

json cochain_to_json(const Cochain& c);
json cohomology_to_json(const CohomologyGroup& h);
json subgroup_lat_to_json(const SubgroupLat& s);
json sha_report_to_json(const ShaReport& r);
json evaluation_report_to_json(const EvaluationReport& r);

std::string canonical_dump(const json& j);  // deterministic serialization
uint64_t json_content_hash(const json& j);

}  // namespace brnr

#endif
