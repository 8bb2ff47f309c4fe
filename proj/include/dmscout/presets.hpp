#pragma once

#include <string>
#include <vector>

#include "dmscout/harness.hpp"

namespace dmscout {

// Shipped experiment configurations, one per reproduced table or figure.
std::vector<std::string> preset_names();
bool has_preset(const std::string& name);

// Throws ConfigError for an unknown name.
ExperimentConfig preset_config(const std::string& name);
std::string preset_json(const std::string& name);

}  // namespace dmscout
