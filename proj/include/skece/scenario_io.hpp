// Copyright 2026 SKECE contributors. Licensed under the Apache License,
// Version 2.0. See http://www.apache.org/licenses/LICENSE-2.0

#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "skece/channel.hpp"

namespace skece {

// JSON scenario files. Keys mirror ScenarioConfig field names; an optional
// "base" key names a preset whose values the remaining keys override.
// Unknown keys are rejected.
ScenarioConfig parse_scenario_json(std::string_view text,
                                   const std::string& source = "<json>");
std::string scenario_to_json(const ScenarioConfig& config);

// Accepts a preset letter (A-F) or a path to a JSON scenario file.
ScenarioConfig resolve_scenario(std::string_view preset_or_path);

}  // namespace skece
