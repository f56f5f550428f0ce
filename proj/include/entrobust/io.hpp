#pragma once

#include <optional>
#include <string>
#include <string_view>

#include <json.hpp>

#include "entrobust/disentangle.hpp"
#include "entrobust/robustness.hpp"
#include "entrobust/search.hpp"

namespace entrobust::io {

using nlohmann::json;

// {"dims":[2,2,2],"amps":[{"idx":[0,0,0],"re":..,"im":..},...]}; omitted
// indices are zero, amplitudes need not be normalized.
PureState state_from_json(const json& j);
json state_to_json(const PureState& state);

/// Parses state JSON text. Malformed input throws ParseError naming the line
/// and column.
PureState parse_state(std::string_view text);

json complex_to_json(cplx z);
cplx complex_from_json(const json& j);

json bipartition_to_json(const Bipartition& part);

// {"lead":{..},"terms":[{"coeff":{..},"factors":[[{..},..],..]}],"verified":..}
json plan_to_json(const SuperpositionPlan& plan, std::optional<Kind> verified = std::nullopt);
SuperpositionPlan plan_from_json(const json& j);

// {"ranks":{"1|23":2,...},"r1_min":..,"r1_max":..,"r2_min":..,"tol":..}
json profile_to_json(const RankProfile& prof);
json certificate_to_json(const RobustnessCertificate& cert);
json classification_to_json(const Classification& c);
json search_report_to_json(const SearchReport& rep, const SearchConfig& cfg);

}  // namespace entrobust::io
