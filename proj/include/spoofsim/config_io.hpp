#pragma once

#include <string>

#include "json.hpp"

#include "spoofsim/scenario.hpp"

namespace spoofsim {

// Scenario config files are flat JSON objects whose keys are exactly the
// RadarScenario field names. Parsing is strict: every key is required,
// unknown keys are rejected, and all values are validated. Errors are
// reported as config_error with the offending field or byte offset.

RadarScenario scenario_from_json(const nlohmann::json& j);
RadarScenario load_scenario(const std::string& path);

nlohmann::ordered_json scenario_to_json(const RadarScenario& sc);

} // namespace spoofsim
