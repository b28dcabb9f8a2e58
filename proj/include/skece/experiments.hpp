// Copyright 2026 SKECE contributors. Licensed under the Apache License,
// Version 2.0. See http://www.apache.org/licenses/LICENSE-2.0

#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "skece/analysis.hpp"
#include "skece/channel.hpp"

namespace skece {

// Mismatch-versus-alpha sweep. Counts are per subcarrier stream, averaged
// over subcarriers and trials.
struct ExtractRow {
  double alpha = 0.0;
  double ignored = 0.0;
  double mismatched = 0.0;
  double matched = 0.0;
  double bit_rate = 0.0;  // aggregate matched bits per second over all subcarriers
};

std::vector<ExtractRow> run_extract(const ScenarioConfig& base, std::span<const double> alphas,
                                    std::size_t trials, std::uint64_t seed);

// SKECE against Cascade on the same synthetic stream pairs.
struct CompareConfig {
  std::size_t streams = 30;
  std::size_t stream_length = 300;
  std::size_t min_errors = 1;  // injected per stream, uniform in [min, max]
  std::size_t max_errors = 3;
  std::size_t key_length = 300;
  double gamma = 0.98;
  unsigned theta = 5;
  unsigned max_rounds = 10;
};

struct CompareTrial {
  std::size_t trial = 0;
  std::size_t errors = 0;  // total over all streams
  std::size_t skece_messages = 0;
  bool skece_agreed = false;   // a VERDICT matched
  bool skece_correct = false;  // and both parties hold the same key
  unsigned skece_rounds = 0;
  std::size_t cascade_messages = 0;
  bool cascade_corrected = false;
};

struct CompareSummary {
  std::vector<CompareTrial> trials;
  double skece_within_10 = 0.0;  // fraction with a correct key in <= 10 messages
  double median_skece = 0.0;
  double median_cascade = 0.0;
};

CompareSummary run_compare(const CompareConfig& cfg, std::size_t trials, std::uint64_t seed);

// Fraction of values <= x, for every distinct x.
std::vector<std::pair<std::size_t, double>> empirical_cdf(std::vector<std::size_t> values);

double median(std::vector<double> values);

// Key material for the randomness tests: Alice's bits from the streams whose
// bits equal Bob's, stream after stream, truncated to `key_bits`. Probes are
// added until enough material exists.
struct KeyMaterial {
  std::vector<std::uint8_t> bits;
  std::size_t probe_count = 0;
  std::size_t matched_streams = 0;
};

KeyMaterial generate_key_material(const ScenarioConfig& config, double alpha,
                                  std::size_t key_bits);

struct RandomnessRun {
  std::string scenario;
  std::size_t run = 0;
  std::uint64_t seed = 0;
  std::size_t probe_count = 0;
  std::vector<TestReport> reports;

  bool all_pass() const;
};

// One run per seed in [seed, seed + trials).
std::vector<RandomnessRun> run_randomness(const ScenarioConfig& base, std::size_t trials,
                                          std::uint64_t seed, std::optional<double> alpha,
                                          std::size_t key_bits = 10000);

struct AttackConfig {
  double period_probes = 8.0;  // attack period in probe intervals
  double depth = 2.0;          // dB
  double rss_noise_std = 0.3;  // dB, extra noise of the single-stream emulation
};

struct AttackRun {
  std::uint64_t seed = 0;
  std::size_t lag = 0;
  // Single averaged stream, as a received-signal-strength radio would see it.
  std::vector<double> rss_alice;
  std::vector<std::size_t> rss_kept;
  std::vector<std::uint8_t> rss_bits;
  PeriodicityScore rss_score;
  std::vector<double> csi0_alice;  // subcarrier 0 amplitude, for plotting
  // Per-subcarrier CSI keys, concatenated over streams that match.
  std::vector<std::uint8_t> csi_bits;
  PeriodicityScore csi_score;  // averaged over subcarriers
  TestReport csi_frequency;
};

AttackRun run_attack(const ScenarioConfig& base, const AttackConfig& attack, std::uint64_t seed,
                     std::optional<double> alpha);

}  // namespace skece
