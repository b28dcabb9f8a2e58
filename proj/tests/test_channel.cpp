// Copyright 2026 SKECE contributors. Licensed under the Apache License,
// Version 2.0. See http://www.apache.org/licenses/LICENSE-2.0

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "skece/analysis.hpp"
#include "skece/channel.hpp"
#include "skece/error.hpp"
#include "skece/scenario_io.hpp"

using namespace skece;

namespace {

ScenarioConfig small_config() {
  auto c = ScenarioConfig::preset_config(Preset::C);
  c.subcarriers = 4;
  c.probe_count = 50;
  return c;
}

std::string error_of(const std::string& csv) {
  std::istringstream in(csv);
  try {
    load_trace(in, Party::Alice, "t.csv");
  } catch (const Error& e) {
    return e.what();
  }
  return "";
}

}  // namespace

TEST_CASE("noiseless, zero-offset traces are reciprocal") {
  auto c = small_config();
  c.noise_std = 0.0;
  c.half_duplex_offset = 0.0;
  const auto t = simulate(c);
  for (std::size_t i = 0; i < c.subcarriers; ++i) {
    const auto a = t.alice.amplitude(i);
    const auto b = t.bob.amplitude(i);
    CHECK(std::equal(a.begin(), a.end(), b.begin(), b.end()));
  }
}

TEST_CASE("simulation is deterministic in the seed") {
  const auto c = small_config();
  const auto x = simulate(c);
  const auto y = simulate(c);
  CHECK(x.alice == y.alice);
  CHECK(x.bob == y.bob);
  CHECK(x.eve == y.eve);
  auto d = c;
  d.rng_seed = 2;
  CHECK_FALSE(simulate(d).alice == x.alice);
}

TEST_CASE("Bob samples half_duplex_offset after Alice") {
  auto c = small_config();
  c.half_duplex_offset = 0.003;
  const auto t = simulate(c);
  for (std::size_t j = 0; j < t.length(); ++j) {
    CHECK(t.bob.times()[j] - t.alice.times()[j] == doctest::Approx(0.003).epsilon(1e-12));
  }
}

TEST_CASE("independent eavesdropper decorrelates per subcarrier") {
  auto c = ScenarioConfig::preset_config(Preset::C);
  c.probe_count = 10000;
  c.eve_correlation = 0.0;
  const auto t = simulate(c);
  for (std::size_t i = 0; i < c.subcarriers; ++i) {
    const auto r = pearson(t.alice.amplitude(i), t.eve.amplitude(i));
    REQUIRE(r.has_value());
    CHECK(std::abs(*r) < 0.05);
  }
}

TEST_CASE("eve_correlation mixes the shared channel") {
  auto c = ScenarioConfig::preset_config(Preset::C);
  c.subcarriers = 3;
  c.probe_count = 10000;
  c.eve_correlation = 0.8;
  c.noise_std = 0.0;
  c.drift_std = 0.0;
  const auto t = simulate(c);
  for (std::size_t i = 0; i < c.subcarriers; ++i) {
    CHECK(*pearson(t.alice.amplitude(i), t.eve.amplitude(i)) == doctest::Approx(0.8).epsilon(0.05));
  }
}

TEST_CASE("mobile fading varies faster per step than static") {
  const auto mobile = ScenarioConfig::preset_config(Preset::C);
  const auto still = ScenarioConfig::preset_config(Preset::A);
  CHECK(mobile.step_variance() > still.step_variance());

  auto step_var = [](ScenarioConfig c) {
    c.probe_count = 4000;
    c.subcarriers = 2;
    const auto t = simulate(c);
    const auto a = t.alice.amplitude(0);
    double s = 0;
    for (std::size_t j = 1; j < a.size(); ++j) s += (a[j] - a[j - 1]) * (a[j] - a[j - 1]);
    return s / static_cast<double>(a.size() - 1);
  };
  CHECK(step_var(mobile) > step_var(still));
}

TEST_CASE("attack attenuates the first half of each period") {
  auto c = small_config();
  c.channel_std = 0.0;
  c.drift_std = 0.0;
  c.noise_std = 0.0;
  c.half_duplex_offset = 0.0;
  c.attack_period = 8.0;
  c.attack_depth = 2.0;
  const auto t = simulate(c);
  const auto a = t.alice.amplitude(1);
  for (std::size_t j = 0; j < 16; ++j) {
    const bool blocked = (j % 8) < 4;
    CHECK(a[j] - a[4] == doctest::Approx(blocked ? -2.0 : 0.0));
  }
}

TEST_CASE("invalid configs are rejected with the field name") {
  auto c = small_config();
  c.eve_correlation = 1.5;
  CHECK_THROWS_WITH_AS(c.validate(), doctest::Contains("eve_correlation"), Error);
  c = small_config();
  c.subcarriers = 0;
  CHECK_THROWS_WITH_AS(simulate(c), doctest::Contains("subcarriers"), Error);
  c = small_config();
  c.probe_count = 0;
  CHECK_THROWS_AS(c.validate(), Error);
}

TEST_CASE("trace CSV round-trips exactly") {
  const auto t = simulate(small_config());
  std::stringstream buf;
  save_trace(t.alice, buf);
  const auto back = load_trace(buf, Party::Alice);
  CHECK(back == t.alice);
}

TEST_CASE("load_trace: small file") {
  std::istringstream in("time,subcarrier,amplitude_db,phase_rad\n0,0,1.5,0.1\n1,0,2.5,0.2\n");
  const auto t = load_trace(in, Party::Bob);
  CHECK(t.length() == 2);
  CHECK(t.subcarriers() == 1);
  CHECK(t.amplitude(0)[1] == 2.5);
  CHECK(t.party() == Party::Bob);
}

TEST_CASE("load_trace errors name the line") {
  const std::string h = "time,subcarrier,amplitude_db,phase_rad\n";
  CHECK(error_of(h + "1,0,1,0\n0.5,0,1,0\n").find("t.csv:3") != std::string::npos);
  CHECK(error_of(h + "0,0,1,0\n0,1,1,0\n1,0,1,0\n2,0,1,0\n").find("t.csv:5") !=
        std::string::npos);
  CHECK(error_of(h + "0,0,abc,0\n").find("t.csv:2: bad amplitude") != std::string::npos);
  CHECK(error_of(h + "0,0,1\n").find("expected 4 fields") != std::string::npos);
  CHECK(error_of("x,y\n").find("header") != std::string::npos);
  CHECK(error_of(h + "0,1,1,0\n").find("subcarrier 0") != std::string::npos);
  CHECK_THROWS_WITH_AS(load_trace(std::filesystem::path("/nonexistent/t.csv"), Party::Alice),
                       doctest::Contains("/nonexistent/t.csv"), Error);
}

TEST_CASE("bundled preset files match the compiled presets") {
  for (auto p : {Preset::A, Preset::B, Preset::C, Preset::D, Preset::E, Preset::F}) {
    const std::string path = std::string(SKECE_PRESETS_DIR) + "/" + to_string(p) + ".json";
    CAPTURE(path);
    const auto from_file = resolve_scenario(path);
    CHECK(scenario_to_json(from_file) == scenario_to_json(ScenarioConfig::preset_config(p)));
  }
}

TEST_CASE("scenario JSON: base preset with overrides; unknown keys rejected") {
  const auto c = parse_scenario_json(R"({"base": "E", "probe_count": 1000, "noise_std": 0.5})");
  CHECK(c.preset == Preset::E);
  CHECK(c.probe_count == 1000);
  CHECK(c.noise_std == 0.5);
  CHECK(c.channel_std == ScenarioConfig::preset_config(Preset::E).channel_std);
  CHECK_THROWS_AS(parse_scenario_json(R"({"probe_cont": 5})"), Error);
  CHECK_THROWS_AS(parse_scenario_json("{"), Error);
  CHECK(resolve_scenario("D").preset == Preset::D);
  CHECK_THROWS_AS(resolve_scenario("no-such-file.json"), Error);
}

TEST_CASE("presets follow the mobility column") {
  CHECK(ScenarioConfig::preset_config(Preset::A).mobility == Mobility::Static);
  CHECK(ScenarioConfig::preset_config(Preset::B).mobility == Mobility::Static);
  CHECK(ScenarioConfig::preset_config(Preset::E).mobility == Mobility::Static);
  CHECK(ScenarioConfig::preset_config(Preset::C).mobility == Mobility::Mobile);
  CHECK(ScenarioConfig::preset_config(Preset::D).mobility == Mobility::Mobile);
  CHECK(ScenarioConfig::preset_config(Preset::F).mobility == Mobility::Mobile);
  CHECK(ScenarioConfig::preset_config(Preset::C).default_alpha() == 0.4);
  CHECK(ScenarioConfig::preset_config(Preset::A).default_alpha() == 0.7);
}
