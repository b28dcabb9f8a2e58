// Copyright 2026 SKECE contributors. Licensed under the Apache License,
// Version 2.0. See http://www.apache.org/licenses/LICENSE-2.0

#include "skece/scenario_io.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"
#include "skece/error.hpp"

namespace skece {

using nlohmann::json;

ScenarioConfig parse_scenario_json(std::string_view text, const std::string& source) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    fail(ErrorCode::Parse, source + ": " + e.what());
  }
  if (!doc.is_object()) fail(ErrorCode::Parse, source + ": expected a JSON object");

  ScenarioConfig c;
  if (auto it = doc.find("base"); it != doc.end()) {
    auto p = parse_preset(it->get<std::string>());
    if (!p) fail(ErrorCode::Parse, source + ": unknown base preset");
    c = ScenarioConfig::preset_config(*p);
  }

  try {
    for (auto& [key, value] : doc.items()) {
      if (key == "base") continue;
      if (key == "preset") {
        auto p = parse_preset(value.get<std::string>());
        if (!p) fail(ErrorCode::Parse, source + ": unknown preset '" + value.get<std::string>() + "'");
        c.preset = *p;
      } else if (key == "subcarriers") c.subcarriers = value.get<std::size_t>();
      else if (key == "probe_count") c.probe_count = value.get<std::size_t>();
      else if (key == "probe_interval") c.probe_interval = value.get<double>();
      else if (key == "half_duplex_offset") c.half_duplex_offset = value.get<double>();
      else if (key == "mobility") {
        const auto s = value.get<std::string>();
        if (s == "mobile") c.mobility = Mobility::Mobile;
        else if (s == "static") c.mobility = Mobility::Static;
        else fail(ErrorCode::Parse, source + ": mobility must be 'static' or 'mobile'");
      }
      else if (key == "channel_std") c.channel_std = value.get<double>();
      else if (key == "coherence_time") c.coherence_time = value.get<double>();
      else if (key == "drift_std") c.drift_std = value.get<double>();
      else if (key == "drift_time") c.drift_time = value.get<double>();
      else if (key == "mean_level") c.mean_level = value.get<double>();
      else if (key == "noise_std") c.noise_std = value.get<double>();
      else if (key == "eve_correlation") c.eve_correlation = value.get<double>();
      else if (key == "attack_period") {
        if (value.is_null()) c.attack_period.reset();
        else c.attack_period = value.get<double>();
      }
      else if (key == "attack_depth") c.attack_depth = value.get<double>();
      else if (key == "distance_ae") c.distance_ae = value.get<double>();
      else if (key == "environment") c.environment = value.get<std::string>();
      else if (key == "rng_seed") c.rng_seed = value.get<std::uint64_t>();
      else fail(ErrorCode::Parse, source + ": unknown key '" + key + "'");
    }
  } catch (const json::exception& e) {
    fail(ErrorCode::Parse, source + ": " + e.what());
  }
  c.validate();
  return c;
}

std::string scenario_to_json(const ScenarioConfig& c) {
  json doc = {
      {"preset", to_string(c.preset)},
      {"subcarriers", c.subcarriers},
      {"probe_count", c.probe_count},
      {"probe_interval", c.probe_interval},
      {"half_duplex_offset", c.half_duplex_offset},
      {"mobility", to_string(c.mobility)},
      {"channel_std", c.channel_std},
      {"coherence_time", c.coherence_time},
      {"drift_std", c.drift_std},
      {"drift_time", c.drift_time},
      {"mean_level", c.mean_level},
      {"noise_std", c.noise_std},
      {"eve_correlation", c.eve_correlation},
      {"attack_period", c.attack_period ? json(*c.attack_period) : json(nullptr)},
      {"attack_depth", c.attack_depth},
      {"distance_ae", c.distance_ae},
      {"environment", c.environment},
      {"rng_seed", c.rng_seed},
  };
  return doc.dump(2);
}

ScenarioConfig resolve_scenario(std::string_view preset_or_path) {
  if (auto p = parse_preset(preset_or_path); p && *p != Preset::Custom) {
    return ScenarioConfig::preset_config(*p);
  }
  const std::string path(preset_or_path);
  std::ifstream in(path);
  if (!in) {
    fail(ErrorCode::Io, "scenario '" + path + "' is neither a preset A-F nor a readable file");
  }
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_scenario_json(buf.str(), path);
}

}  // namespace skece
