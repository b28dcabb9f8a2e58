// Copyright 2026 SKECE contributors. Licensed under the Apache License,
// Version 2.0. See http://www.apache.org/licenses/LICENSE-2.0

#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "skece/bits.hpp"

namespace skece {

enum class Mobility { Static, Mobile };
enum class Preset { A, B, C, D, E, F, Custom };

const char* to_string(Mobility mobility);
const char* to_string(Preset preset);
std::optional<Preset> parse_preset(std::string_view name);

struct ChannelSample {
  double time = 0.0;           // seconds
  std::size_t subcarrier = 0;  // 0..m-1
  double amplitude_db = 0.0;
  double phase_rad = 0.0;      // carried, never quantized
};

// Amplitude/phase record of one party. All subcarriers share one strictly
// increasing time axis, so every per-subcarrier sequence has the same length.
class CsiTrace {
 public:
  CsiTrace() = default;
  CsiTrace(Party party, std::vector<double> times,
           std::vector<std::vector<double>> amplitude_db,
           std::vector<std::vector<double>> phase_rad);

  Party party() const { return party_; }
  std::size_t subcarriers() const { return amplitude_.size(); }
  std::size_t length() const { return times_.size(); }

  std::span<const double> times() const { return times_; }
  std::span<const double> amplitude(std::size_t subcarrier) const {
    return amplitude_.at(subcarrier);
  }
  std::span<const double> phase(std::size_t subcarrier) const {
    return phase_.at(subcarrier);
  }
  ChannelSample sample(std::size_t subcarrier, std::size_t j) const;

  bool operator==(const CsiTrace&) const = default;

 private:
  Party party_ = Party::Alice;
  std::vector<double> times_;
  std::vector<std::vector<double>> amplitude_;
  std::vector<std::vector<double>> phase_;
};

// Parameters of the fading simulator. Presets A-F follow the six measurement
// scenarios (static/mobile, indoor/outdoor, Alice-Eve separation); numeric
// values are calibrated, not measured.
struct ScenarioConfig {
  Preset preset = Preset::Custom;
  std::size_t subcarriers = 30;
  std::size_t probe_count = 300;
  double probe_interval = 1.0;         // s
  double half_duplex_offset = 0.001;   // s, Bob samples this much after Alice
  Mobility mobility = Mobility::Mobile;
  double channel_std = 3.0;            // dB, stationary std of per-subcarrier fading
  double coherence_time = 0.2;         // s, AR(1) time constant
  double drift_std = 0.1;              // dB, shared slow drift across subcarriers
  double drift_time = 60.0;            // s
  double mean_level = 24.0;            // dB
  double noise_std = 0.15;             // dB, independent per party and sample
  double eve_correlation = 0.0;        // mixing coefficient in [-1, 1]
  std::optional<double> attack_period; // s, periodic line-of-sight blocking
  double attack_depth = 2.0;           // dB attenuation while blocked
  double distance_ae = 3.0;            // m, Alice-Eve separation (descriptive)
  std::string environment;             // descriptive
  std::uint64_t rng_seed = 1;

  // Throws Error(InvalidArgument) naming the offending field.
  void validate() const;

  // AR(1) coefficient between consecutive probes.
  double step_correlation() const;
  // Variance of the fading increment between consecutive probes, dB^2.
  double step_variance() const;

  // Customary quantizer alpha for this mobility.
  double default_alpha() const { return mobility == Mobility::Mobile ? 0.4 : 0.7; }

  static ScenarioConfig preset_config(Preset preset);
  // Fading scale that goes with each mobility class.
  void apply_mobility(Mobility m);
};

struct PairedTraceSet {
  CsiTrace alice;
  CsiTrace bob;
  CsiTrace eve;
  double half_duplex_offset = 0.0;

  std::size_t subcarriers() const { return alice.subcarriers(); }
  std::size_t length() const { return alice.length(); }
};

// Deterministic in config.rng_seed.
PairedTraceSet simulate(const ScenarioConfig& config);

// CSV: header `time,subcarrier,amplitude_db,phase_rad`, rows sorted by
// (time, subcarrier).
void save_trace(const CsiTrace& trace, std::ostream& out);
void save_trace(const CsiTrace& trace, const std::filesystem::path& path);
CsiTrace load_trace(std::istream& in, Party party, const std::string& source = "<stream>");
CsiTrace load_trace(const std::filesystem::path& path, Party party);

}  // namespace skece
