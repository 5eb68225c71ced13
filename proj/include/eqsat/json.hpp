#pragma once

#include "eqsat/classic.hpp"
#include "eqsat/saturate.hpp"

#include <json.hpp>

namespace eqsat {

/// Version of the report documents below.
inline constexpr int kReportVersion = 1;

nlohmann::ordered_json to_json(const SaturationParams& params);
nlohmann::ordered_json to_json(const SaturationReport& report);
nlohmann::ordered_json to_json(const RewriteOutcome& outcome);

} // namespace eqsat
