// Copyright 2026 SKECE contributors. Licensed under the Apache License,
// Version 2.0. See http://www.apache.org/licenses/LICENSE-2.0

#include "skece/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "skece/cascade.hpp"
#include "skece/error.hpp"
#include "skece/protocol.hpp"
#include "skece/quantizer.hpp"

namespace skece {

namespace {

std::size_t hamming(const BitStream& a, const BitStream& b) {
  std::size_t d = 0;
  for (std::size_t i = 0; i < a.size(); ++i) d += a.bits[i] != b.bits[i];
  return d;
}

double resolve_alpha(const ScenarioConfig& c, std::optional<double> alpha) {
  return alpha.value_or(c.default_alpha());
}

struct Quantized {
  std::vector<std::size_t> kept;
  BitStream alice;
  BitStream bob;
};

Quantized quantize(std::span<const double> a, std::span<const double> b, double alpha) {
  const auto ta = compute_thresholds(a, alpha);
  const auto tb = compute_thresholds(b, alpha);
  Quantized q;
  q.kept = merge_kept(drop_indices(a, ta), drop_indices(b, tb), a.size());
  q.alice = extract_bits(a, ta, q.kept, {Party::Alice, 0});
  q.bob = extract_bits(b, tb, q.kept, {Party::Bob, 0});
  return q;
}

}  // namespace

std::vector<ExtractRow> run_extract(const ScenarioConfig& base, std::span<const double> alphas,
                                    std::size_t trials, std::uint64_t seed) {
  if (trials < 1) fail(ErrorCode::InvalidArgument, "trials must be >= 1");
  if (alphas.empty()) fail(ErrorCode::InvalidArgument, "alpha grid is empty");
  std::vector<ExtractRow> rows(alphas.size());
  for (std::size_t k = 0; k < alphas.size(); ++k) rows[k].alpha = alphas[k];
  const double duration = static_cast<double>(base.probe_count) * base.probe_interval;

  for (std::size_t t = 0; t < trials; ++t) {
    ScenarioConfig cfg = base;
    cfg.rng_seed = derive_seed(seed, t);
    const auto traces = simulate(cfg);
    const double m = static_cast<double>(traces.subcarriers());
    for (std::size_t k = 0; k < alphas.size(); ++k) {
      const auto q = quantize_pair(traces.alice, traces.bob, alphas[k]);
      std::vector<std::size_t> secret;
      for (std::size_t i = 0; i < q.alice.size(); ++i) {
        const std::size_t miss = hamming(q.alice[i], q.bob[i]);
        rows[k].ignored += static_cast<double>(q.ignored[i]) / m;
        rows[k].mismatched += static_cast<double>(miss) / m;
        rows[k].matched += static_cast<double>(q.alice[i].size() - miss) / m;
        secret.push_back(miss == 0 ? q.alice[i].size() : 0);
      }
      rows[k].bit_rate += secret_bit_rate(secret, duration).aggregate;
    }
  }
  const double n = static_cast<double>(trials);
  for (auto& r : rows) {
    r.ignored /= n;
    r.mismatched /= n;
    r.matched /= n;
    r.bit_rate /= n;
  }
  return rows;
}

std::vector<std::pair<std::size_t, double>> empirical_cdf(std::vector<std::size_t> values) {
  std::sort(values.begin(), values.end());
  std::vector<std::pair<std::size_t, double>> out;
  const double n = static_cast<double>(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i + 1 < values.size() && values[i + 1] == values[i]) continue;
    out.emplace_back(values[i], static_cast<double>(i + 1) / n);
  }
  return out;
}

double median(std::vector<double> values) {
  if (values.empty()) fail(ErrorCode::InvalidArgument, "median of empty set");
  std::sort(values.begin(), values.end());
  const std::size_t h = values.size() / 2;
  return values.size() % 2 ? values[h] : 0.5 * (values[h - 1] + values[h]);
}

CompareSummary run_compare(const CompareConfig& cfg, std::size_t trials, std::uint64_t seed) {
  if (trials < 1) fail(ErrorCode::InvalidArgument, "trials must be >= 1");
  if (cfg.streams < 1 || cfg.stream_length < 1) {
    fail(ErrorCode::InvalidArgument, "need at least one non-empty stream");
  }
  if (cfg.min_errors > cfg.max_errors || cfg.max_errors > cfg.stream_length) {
    fail(ErrorCode::InvalidArgument, "error range must satisfy min <= max <= stream length");
  }
  AgreementParams params;
  params.gamma = cfg.gamma;
  params.theta = cfg.theta;
  params.key_length = cfg.key_length;
  params.max_rounds = cfg.max_rounds;
  params.record_probes = false;

  CompareSummary summary;
  std::vector<double> skece, cascade;
  std::size_t within = 0;
  for (std::size_t t = 0; t < trials; ++t) {
    const std::uint64_t trial_seed = derive_seed(seed, t);
    std::mt19937_64 rng(derive_seed(trial_seed, 0));
    std::vector<BitStream> alice, bob;
    CompareTrial row;
    row.trial = t;
    std::vector<std::size_t> order(cfg.stream_length);
    for (std::size_t i = 0; i < cfg.streams; ++i) {
      BitStream a{random_bits(rng, cfg.stream_length), {Party::Alice, i}};
      BitStream b{a.bits, {Party::Bob, i}};
      const std::size_t flips =
          cfg.min_errors + uniform_below(rng, cfg.max_errors - cfg.min_errors + 1);
      for (std::size_t k = 0; k < order.size(); ++k) order[k] = k;
      for (std::size_t k = 0; k < flips; ++k) {
        std::swap(order[k], order[k + uniform_below(rng, order.size() - k)]);
        b.bits[order[k]] ^= 1u;
      }
      row.errors += flips;
      alice.push_back(std::move(a));
      bob.push_back(std::move(b));
    }

    CascadeConfig cc;
    cc.rng_seed = derive_seed(trial_seed, 2);
    const auto outcome = cascade_reconcile(alice[0], bob[0], cc);
    row.cascade_messages = outcome.messages_sent();
    row.cascade_corrected = outcome.corrected == alice[0];

    params.seed = derive_seed(trial_seed, 1);
    const auto result = reconcile_streams(std::move(alice), std::move(bob), params);
    row.skece_messages = result.counters().reconciliation_messages();
    row.skece_agreed = result.succeeded();
    row.skece_correct = row.skece_agreed && result.key == result.responder_key;
    row.skece_rounds = result.rounds_used;

    if (row.skece_correct && row.skece_messages <= 10) ++within;
    skece.push_back(static_cast<double>(row.skece_messages));
    cascade.push_back(static_cast<double>(row.cascade_messages));
    summary.trials.push_back(row);
  }
  summary.skece_within_10 = static_cast<double>(within) / static_cast<double>(trials);
  summary.median_skece = median(skece);
  summary.median_cascade = median(cascade);
  return summary;
}

KeyMaterial generate_key_material(const ScenarioConfig& config, double alpha,
                                  std::size_t key_bits) {
  if (key_bits < 1) fail(ErrorCode::InvalidArgument, "key length must be >= 1");
  ScenarioConfig cfg = config;
  cfg.probe_count = std::max(cfg.probe_count, 2 * key_bits / std::max<std::size_t>(cfg.subcarriers, 1));
  for (int attempt = 0; attempt < 12; ++attempt) {
    const auto traces = simulate(cfg);
    const auto q = quantize_pair(traces.alice, traces.bob, alpha);
    KeyMaterial km;
    km.probe_count = cfg.probe_count;
    for (std::size_t i = 0; i < q.alice.size() && km.bits.size() < key_bits; ++i) {
      if (q.alice[i] != q.bob[i]) continue;
      ++km.matched_streams;
      km.bits.insert(km.bits.end(), q.alice[i].bits.begin(), q.alice[i].bits.end());
    }
    if (km.bits.size() >= key_bits) {
      km.bits.resize(key_bits);
      return km;
    }
    cfg.probe_count *= 2;
  }
  fail(ErrorCode::InsufficientMaterial,
       "could not collect " + std::to_string(key_bits) + " matched bits");
}

bool RandomnessRun::all_pass() const {
  return std::all_of(reports.begin(), reports.end(), [](const TestReport& r) { return r.pass; });
}

std::vector<RandomnessRun> run_randomness(const ScenarioConfig& base, std::size_t trials,
                                          std::uint64_t seed, std::optional<double> alpha,
                                          std::size_t key_bits) {
  if (trials < 1) fail(ErrorCode::InvalidArgument, "trials must be >= 1");
  std::vector<RandomnessRun> out;
  for (std::size_t r = 0; r < trials; ++r) {
    ScenarioConfig cfg = base;
    cfg.rng_seed = seed + r;
    const auto km = generate_key_material(cfg, resolve_alpha(cfg, alpha), key_bits);
    RandomnessRun run;
    run.scenario = to_string(base.preset);
    run.run = r;
    run.seed = cfg.rng_seed;
    run.probe_count = km.probe_count;
    run.reports = nist_battery(km.bits);
    out.push_back(std::move(run));
  }
  return out;
}

AttackRun run_attack(const ScenarioConfig& base, const AttackConfig& attack, std::uint64_t seed,
                     std::optional<double> alpha) {
  if (!(attack.period_probes >= 2.0)) {
    fail(ErrorCode::InvalidArgument, "attack period must span at least 2 probes");
  }
  ScenarioConfig cfg = base;
  cfg.attack_period = attack.period_probes * cfg.probe_interval;
  cfg.attack_depth = attack.depth;
  cfg.rng_seed = seed;
  const double a = resolve_alpha(cfg, alpha);
  const auto traces = simulate(cfg);
  const std::size_t n = traces.length();
  const std::size_t m = traces.subcarriers();

  AttackRun run;
  run.seed = seed;
  run.lag = static_cast<std::size_t>(std::lround(attack.period_probes));

  std::vector<double> rss_bob(n, 0.0);
  run.rss_alice.assign(n, 0.0);
  for (std::size_t i = 0; i < m; ++i) {
    const auto ai = traces.alice.amplitude(i);
    const auto bi = traces.bob.amplitude(i);
    for (std::size_t j = 0; j < n; ++j) {
      run.rss_alice[j] += ai[j] / static_cast<double>(m);
      rss_bob[j] += bi[j] / static_cast<double>(m);
    }
  }
  std::mt19937_64 rng(derive_seed(seed, 0x525353));
  std::normal_distribution<double> unit(0.0, 1.0);
  for (std::size_t j = 0; j < n; ++j) {
    run.rss_alice[j] += attack.rss_noise_std * unit(rng);
    rss_bob[j] += attack.rss_noise_std * unit(rng);
  }
  const auto rss = quantize(run.rss_alice, rss_bob, a);
  run.rss_kept = rss.kept;
  run.rss_bits = rss.alice.bits;
  run.rss_score = periodicity_score(run.rss_kept, run.rss_bits, run.lag);

  const auto c0 = traces.alice.amplitude(0);
  run.csi0_alice.assign(c0.begin(), c0.end());
  double z_sum = 0.0, corr_sum = 0.0;
  std::size_t pairs = 0;
  for (std::size_t i = 0; i < m; ++i) {
    const auto q = quantize(traces.alice.amplitude(i), traces.bob.amplitude(i), a);
    const auto s = periodicity_score(q.kept, q.alice.bits, run.lag);
    z_sum += s.z;
    corr_sum += s.correlation;
    pairs += s.pairs;
    if (q.alice == q.bob) {
      run.csi_bits.insert(run.csi_bits.end(), q.alice.bits.begin(), q.alice.bits.end());
    }
  }
  run.csi_score.lag = run.lag;
  run.csi_score.pairs = pairs;
  run.csi_score.correlation = corr_sum / static_cast<double>(m);
  run.csi_score.z = z_sum / std::sqrt(static_cast<double>(m));
  run.csi_frequency = nist_frequency(run.csi_bits);
  return run;
}

}  // namespace skece
