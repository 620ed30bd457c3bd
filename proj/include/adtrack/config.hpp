#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "adtrack/synthetic.hpp"
#include "adtrack/tracker.hpp"

namespace adtrack {

/// JSON form of a TrackerConfig. Infinite thresholds are written as "inf".
nlohmann::json to_json(const TrackerConfig& cfg);

/// Missing keys keep the value of the preset named by "base" (default
/// "dcf_sasa"); unknown keys are rejected.
TrackerConfig config_from_json(const nlohmann::json& j);

/// `source` is a preset name or a path to a JSON config file.
nlohmann::json load_config_json(const std::string& source);

/// Applies "a.b.c=value" to `j`. The value is parsed as JSON when possible
/// and kept as a string otherwise.
void apply_override(nlohmann::json& j, const std::string& assignment);

nlohmann::json to_json(const SyntheticSpec& spec);
SyntheticSpec synthetic_spec_from_json(const nlohmann::json& j);

std::string to_string(ResizeMethod m);
ResizeMethod parse_resize_method(const std::string& text);

}  // namespace adtrack
