#ifndef MEASUREVAL_JSON_IO_HPP
#define MEASUREVAL_JSON_IO_HPP

#include <json.hpp>

#include "measureval/criteria.hpp"
#include "measureval/simulation.hpp"

namespace measureval {

// nlohmann ADL serializers; doubles round-trip bit-exactly through dump/parse.
void to_json(nlohmann::json& j, const SampleSummary& s);
void to_json(nlohmann::json& j, const AcceptanceInterval& i);
void to_json(nlohmann::json& j, const Verdict& v);
void to_json(nlohmann::json& j, const RejectionEstimate& e);
void to_json(nlohmann::json& j, const SimulationConfig& c);

void from_json(const nlohmann::json& j, RejectionEstimate& e);

}  // namespace measureval

#endif
