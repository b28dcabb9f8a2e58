// Copyright 2026 SKECE contributors. Licensed under the Apache License,
// Version 2.0. See http://www.apache.org/licenses/LICENSE-2.0

#include "skece/channel.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <numbers>
#include <random>
#include <sstream>

#include "skece/error.hpp"

namespace skece {

const char* to_string(Mobility mobility) {
  return mobility == Mobility::Mobile ? "mobile" : "static";
}

const char* to_string(Preset preset) {
  switch (preset) {
    case Preset::A: return "A";
    case Preset::B: return "B";
    case Preset::C: return "C";
    case Preset::D: return "D";
    case Preset::E: return "E";
    case Preset::F: return "F";
    case Preset::Custom: return "custom";
  }
  return "custom";
}

std::optional<Preset> parse_preset(std::string_view name) {
  if (name.size() == 1) {
    switch (name[0]) {
      case 'A': case 'a': return Preset::A;
      case 'B': case 'b': return Preset::B;
      case 'C': case 'c': return Preset::C;
      case 'D': case 'd': return Preset::D;
      case 'E': case 'e': return Preset::E;
      case 'F': case 'f': return Preset::F;
      default: break;
    }
  }
  if (name == "custom") return Preset::Custom;
  return std::nullopt;
}

CsiTrace::CsiTrace(Party party, std::vector<double> times,
                   std::vector<std::vector<double>> amplitude_db,
                   std::vector<std::vector<double>> phase_rad)
    : party_(party),
      times_(std::move(times)),
      amplitude_(std::move(amplitude_db)),
      phase_(std::move(phase_rad)) {
  if (amplitude_.size() != phase_.size()) {
    fail(ErrorCode::InvalidArgument, "amplitude and phase subcarrier counts differ");
  }
  for (std::size_t j = 1; j < times_.size(); ++j) {
    if (!(times_[j] > times_[j - 1])) {
      fail(ErrorCode::InvalidArgument,
           "timestamps not strictly increasing at sample " + std::to_string(j));
    }
  }
  for (std::size_t i = 0; i < amplitude_.size(); ++i) {
    if (amplitude_[i].size() != times_.size() || phase_[i].size() != times_.size()) {
      fail(ErrorCode::InvalidArgument,
           "subcarrier " + std::to_string(i) + " length differs from time axis");
    }
    for (double a : amplitude_[i]) {
      if (!std::isfinite(a)) {
        fail(ErrorCode::InvalidArgument,
             "non-finite amplitude on subcarrier " + std::to_string(i));
      }
    }
  }
}

ChannelSample CsiTrace::sample(std::size_t subcarrier, std::size_t j) const {
  return {times_.at(j), subcarrier, amplitude_.at(subcarrier).at(j),
          phase_.at(subcarrier).at(j)};
}

void ScenarioConfig::validate() const {
  auto reject = [](const std::string& what) {
    fail(ErrorCode::InvalidArgument, "scenario: " + what);
  };
  if (subcarriers < 1) reject("subcarriers must be >= 1");
  if (probe_count < 1) reject("probe_count must be >= 1");
  if (!(probe_interval > 0.0)) reject("probe_interval must be > 0");
  if (!(half_duplex_offset >= 0.0) || half_duplex_offset >= probe_interval) {
    reject("half_duplex_offset must lie in [0, probe_interval)");
  }
  if (!(channel_std >= 0.0)) reject("channel_std must be >= 0");
  if (!(coherence_time > 0.0)) reject("coherence_time must be > 0");
  if (!(drift_std >= 0.0)) reject("drift_std must be >= 0");
  if (!(drift_time > 0.0)) reject("drift_time must be > 0");
  if (!std::isfinite(mean_level)) reject("mean_level must be finite");
  if (!(noise_std >= 0.0)) reject("noise_std must be >= 0");
  if (!(std::abs(eve_correlation) <= 1.0)) reject("|eve_correlation| must be <= 1");
  if (attack_period && !(*attack_period > 0.0)) reject("attack_period must be > 0");
  if (!(attack_depth >= 0.0)) reject("attack_depth must be >= 0");
}

double ScenarioConfig::step_correlation() const {
  return std::exp(-probe_interval / coherence_time);
}

double ScenarioConfig::step_variance() const {
  return 2.0 * channel_std * channel_std * (1.0 - step_correlation());
}

void ScenarioConfig::apply_mobility(Mobility m) {
  mobility = m;
  if (m == Mobility::Mobile) {
    channel_std = 3.0;
    coherence_time = 0.2;
    probe_interval = 1.0;
  } else {
    channel_std = 2.0;
    coherence_time = 2.0;
    probe_interval = 10.0;
  }
}

ScenarioConfig ScenarioConfig::preset_config(Preset preset) {
  ScenarioConfig c;
  c.preset = preset;
  switch (preset) {
    case Preset::A:
      c.apply_mobility(Mobility::Static);
      c.distance_ae = 1.5;
      c.environment = "indoor";
      c.noise_std = 0.10;
      break;
    case Preset::B:
      c.apply_mobility(Mobility::Static);
      c.distance_ae = 3.0;
      c.environment = "indoor, complex";
      c.channel_std = 2.5;
      c.noise_std = 0.15;
      break;
    case Preset::C:
      c.apply_mobility(Mobility::Mobile);
      c.distance_ae = 3.0;
      c.environment = "indoor";
      c.noise_std = 0.15;
      break;
    case Preset::D:
      c.apply_mobility(Mobility::Mobile);
      c.distance_ae = 0.10;
      c.environment = "indoor";
      c.channel_std = 3.5;
      c.noise_std = 0.15;
      break;
    case Preset::E:
      c.apply_mobility(Mobility::Static);
      c.distance_ae = 0.10;
      c.environment = "outdoor";
      c.channel_std = 1.5;
      c.noise_std = 0.08;
      break;
    case Preset::F:
      c.apply_mobility(Mobility::Mobile);
      c.distance_ae = 3.0;
      c.environment = "outdoor, complex";
      c.channel_std = 4.0;
      c.coherence_time = 0.15;
      c.noise_std = 0.20;
      break;
    case Preset::Custom:
      break;
  }
  return c;
}

namespace {

// Exact Ornstein-Uhlenbeck transition over dt; the AR(1) recursion between
// equally spaced probes is the special case dt = probe_interval.
class OuProcess {
 public:
  OuProcess(double stddev, double time_constant, std::uint64_t seed)
      : stddev_(stddev), tau_(time_constant), rng_(seed) {
    value_ = stddev_ * normal_(rng_);
  }

  double value() const { return value_; }

  double advance(double dt) {
    if (dt > 0.0) {
      const double phi = std::exp(-dt / tau_);
      value_ = phi * value_ + stddev_ * std::sqrt(1.0 - phi * phi) * normal_(rng_);
    }
    return value_;
  }

 private:
  double stddev_;
  double tau_;
  std::mt19937_64 rng_;
  std::normal_distribution<double> normal_;
  double value_ = 0.0;
};

enum SeedTag : std::uint64_t {
  kFading = 0x100,
  kEveFading = 0x200,
  kPhase = 0x300,
  kEvePhase = 0x400,
  kDrift = 1,
  kEveDrift = 2,
  kNoiseAlice = 3,
  kNoiseBob = 4,
  kNoiseEve = 5,
  kProfile = 6,
};

double wrap_phase(double p) {
  constexpr double two_pi = 2.0 * std::numbers::pi;
  p = std::fmod(p + std::numbers::pi, two_pi);
  if (p < 0) p += two_pi;
  return p - std::numbers::pi;
}

double attenuation(const ScenarioConfig& c, double t) {
  if (!c.attack_period) return 0.0;
  const double phase = std::fmod(t, *c.attack_period);
  return phase < 0.5 * *c.attack_period ? -c.attack_depth : 0.0;
}

}  // namespace

PairedTraceSet simulate(const ScenarioConfig& config) {
  config.validate();
  const std::size_t m = config.subcarriers;
  const std::size_t n = config.probe_count;
  const std::uint64_t seed = config.rng_seed;
  const double rho = config.eve_correlation;
  const double rho_c = std::sqrt(std::max(0.0, 1.0 - rho * rho));

  std::vector<double> t_alice(n), t_bob(n);
  for (std::size_t j = 0; j < n; ++j) {
    t_alice[j] = static_cast<double>(j) * config.probe_interval;
    t_bob[j] = t_alice[j] + config.half_duplex_offset;
  }

  // Static frequency-selective offset per subcarrier.
  std::vector<double> profile(m);
  {
    std::mt19937_64 rng(derive_seed(seed, kProfile));
    std::normal_distribution<double> normal(0.0, 2.0);
    for (auto& p : profile) p = normal(rng);
  }

  // Latent channel sampled at Alice's instants (index 0) and Bob's (index 1).
  auto sample_latent = [&](OuProcess& proc, std::vector<double>& at_alice,
                           std::vector<double>& at_bob) {
    at_alice.resize(n);
    at_bob.resize(n);
    double now = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      at_alice[j] = proc.advance(t_alice[j] - now);
      now = t_alice[j];
      at_bob[j] = proc.advance(t_bob[j] - now);
      now = t_bob[j];
    }
  };

  std::vector<double> drift_a, drift_b, eve_drift, unused;
  {
    OuProcess drift(config.drift_std, config.drift_time, derive_seed(seed, kDrift));
    sample_latent(drift, drift_a, drift_b);
    OuProcess edrift(config.drift_std, config.drift_time, derive_seed(seed, kEveDrift));
    sample_latent(edrift, eve_drift, unused);
  }

  std::mt19937_64 noise_a(derive_seed(seed, kNoiseAlice));
  std::mt19937_64 noise_b(derive_seed(seed, kNoiseBob));
  std::mt19937_64 noise_e(derive_seed(seed, kNoiseEve));
  std::normal_distribution<double> unit;
  auto noise = [&](std::mt19937_64& rng) { return config.noise_std * unit(rng); };
  auto pnoise = [&](std::mt19937_64& rng) { return 0.1 * config.noise_std * unit(rng); };

  std::vector<std::vector<double>> amp_a(m), amp_b(m), amp_e(m);
  std::vector<std::vector<double>> ph_a(m), ph_b(m), ph_e(m);
  std::vector<double> fade_a, fade_b, efade, phase_a, phase_b, ephase;
  for (std::size_t i = 0; i < m; ++i) {
    OuProcess fading(config.channel_std, config.coherence_time,
                     derive_seed(derive_seed(seed, kFading), i));
    sample_latent(fading, fade_a, fade_b);
    OuProcess eve_fading(config.channel_std, config.coherence_time,
                         derive_seed(derive_seed(seed, kEveFading), i));
    sample_latent(eve_fading, efade, unused);

    std::mt19937_64 prng(derive_seed(derive_seed(seed, kPhase), i));
    const double phase0 = std::uniform_real_distribution<double>(
        -std::numbers::pi, std::numbers::pi)(prng);
    OuProcess phase_walk(1.0, config.coherence_time, prng());
    sample_latent(phase_walk, phase_a, phase_b);
    std::mt19937_64 eprng(derive_seed(derive_seed(seed, kEvePhase), i));
    const double ephase0 = std::uniform_real_distribution<double>(
        -std::numbers::pi, std::numbers::pi)(eprng);
    OuProcess ephase_walk(1.0, config.coherence_time, eprng());
    sample_latent(ephase_walk, ephase, unused);

    amp_a[i].resize(n);
    amp_b[i].resize(n);
    amp_e[i].resize(n);
    ph_a[i].resize(n);
    ph_b[i].resize(n);
    ph_e[i].resize(n);
    const double base = config.mean_level + profile[i];
    for (std::size_t j = 0; j < n; ++j) {
      const double shared_a = fade_a[j] + drift_a[j];
      const double own_e = efade[j] + eve_drift[j];
      amp_a[i][j] = base + shared_a + attenuation(config, t_alice[j]) + noise(noise_a);
      const double shared_b = fade_b[j] + drift_b[j];
      amp_b[i][j] = base + shared_b + attenuation(config, t_bob[j]) + noise(noise_b);
      amp_e[i][j] = base + rho * shared_a + rho_c * own_e + noise(noise_e);
      ph_a[i][j] = wrap_phase(phase0 + phase_a[j] + pnoise(noise_a));
      ph_b[i][j] = wrap_phase(phase0 + phase_b[j] + pnoise(noise_b));
      ph_e[i][j] = wrap_phase(ephase0 + ephase[j] + pnoise(noise_e));
    }
  }

  PairedTraceSet out;
  out.half_duplex_offset = config.half_duplex_offset;
  out.alice = CsiTrace(Party::Alice, t_alice, std::move(amp_a), std::move(ph_a));
  out.bob = CsiTrace(Party::Bob, t_bob, std::move(amp_b), std::move(ph_b));
  out.eve = CsiTrace(Party::Eve, std::move(t_alice), std::move(amp_e), std::move(ph_e));
  return out;
}

namespace {

void append_double(std::string& line, double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  line.append(buf, res.ptr);
}

}  // namespace

void save_trace(const CsiTrace& trace, std::ostream& out) {
  out << "time,subcarrier,amplitude_db,phase_rad\n";
  std::string line;
  for (std::size_t j = 0; j < trace.length(); ++j) {
    for (std::size_t i = 0; i < trace.subcarriers(); ++i) {
      line.clear();
      append_double(line, trace.times()[j]);
      line.push_back(',');
      line.append(std::to_string(i));
      line.push_back(',');
      append_double(line, trace.amplitude(i)[j]);
      line.push_back(',');
      append_double(line, trace.phase(i)[j]);
      line.push_back('\n');
      out << line;
    }
  }
}

void save_trace(const CsiTrace& trace, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) fail(ErrorCode::Io, "cannot open " + path.string() + " for writing");
  save_trace(trace, out);
  if (!out) fail(ErrorCode::Io, "write failed: " + path.string());
}

namespace {

template <typename T>
bool parse_field(std::string_view s, T& out) {
  auto res = std::from_chars(s.data(), s.data() + s.size(), out);
  return res.ec == std::errc() && res.ptr == s.data() + s.size();
}

}  // namespace

CsiTrace load_trace(std::istream& in, Party party, const std::string& source) {
  auto parse_error = [&](std::size_t line_no, const std::string& what) {
    fail(ErrorCode::Parse, source + ":" + std::to_string(line_no) + ": " + what);
  };

  std::string line;
  std::size_t line_no = 0;
  if (!std::getline(in, line)) parse_error(1, "empty file, expected header");
  ++line_no;
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != "time,subcarrier,amplitude_db,phase_rad") {
    parse_error(line_no, "expected header 'time,subcarrier,amplitude_db,phase_rad'");
  }

  std::vector<double> times;
  std::vector<std::vector<double>> amp, phase;
  std::size_t m = 0;          // fixed once the first time group closes
  std::size_t expected_sc = 0;
  bool first_group = true;

  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;

    std::string_view fields[4];
    std::size_t count = 0, start = 0;
    for (std::size_t k = 0; k <= line.size(); ++k) {
      if (k == line.size() || line[k] == ',') {
        if (count < 4) fields[count] = std::string_view(line).substr(start, k - start);
        ++count;
        start = k + 1;
      }
    }
    if (count != 4) {
      parse_error(line_no, "expected 4 fields, found " + std::to_string(count));
    }
    double t, a, p;
    std::size_t sc;
    if (!parse_field(fields[0], t)) parse_error(line_no, "bad time value");
    if (!parse_field(fields[1], sc)) parse_error(line_no, "bad subcarrier index");
    if (!parse_field(fields[2], a) || !std::isfinite(a)) {
      parse_error(line_no, "bad amplitude value");
    }
    if (!parse_field(fields[3], p)) parse_error(line_no, "bad phase value");

    if (sc == 0) {
      if (!times.empty()) {
        if (first_group) {
          m = expected_sc;
          first_group = false;
        } else if (expected_sc != m) {
          parse_error(line_no, "time group ends with " + std::to_string(expected_sc) +
                                   " subcarriers, expected " + std::to_string(m));
        }
        if (!(t > times.back())) {
          parse_error(line_no, "time " + std::string(fields[0]) +
                                   " is not after previous time");
        }
      }
      times.push_back(t);
      expected_sc = 0;
    } else if (times.empty()) {
      parse_error(line_no, "first row must be subcarrier 0");
    } else if (t != times.back()) {
      parse_error(line_no, "time changes within a subcarrier group");
    }
    if (sc != expected_sc || (!first_group && sc >= m)) {
      parse_error(line_no, "subcarrier " + std::to_string(sc) + " out of order, expected " +
                               std::to_string(expected_sc));
    }
    if (first_group && amp.size() <= sc) {
      amp.resize(sc + 1);
      phase.resize(sc + 1);
    }
    amp[sc].push_back(a);
    phase[sc].push_back(p);
    ++expected_sc;
  }
  if (times.empty()) parse_error(line_no, "no samples");
  if (!first_group && expected_sc != m) {
    parse_error(line_no, "last time group has " + std::to_string(expected_sc) +
                             " subcarriers, expected " + std::to_string(m));
  }
  return CsiTrace(party, std::move(times), std::move(amp), std::move(phase));
}

CsiTrace load_trace(const std::filesystem::path& path, Party party) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::Io, "cannot open " + path.string());
  return load_trace(in, party, path.string());
}

}  // namespace skece
