// Copyright 2026 SKECE contributors. Licensed under the Apache License,
// Version 2.0. See http://www.apache.org/licenses/LICENSE-2.0

#include "skece/skece.h"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <limits>
#include <memory>
#include <sstream>
#include <string>

#include "json.hpp"
#include "skece/analysis.hpp"
#include "skece/error.hpp"
#include "skece/experiments.hpp"
#include "skece/protocol.hpp"
#include "skece/scenario_io.hpp"

struct skece_scenario {
  skece::ScenarioConfig config;
};

struct skece_traces {
  skece::PairedTraceSet set;
};

struct skece_agreement {
  skece::KeyAgreementResult result;
  skece::EveView eve;
  std::vector<skece::BitStream> alice_streams;
};

namespace {

using nlohmann::ordered_json;

thread_local std::string g_last_error;

skece_status status_of(skece::ErrorCode code) {
  switch (code) {
    case skece::ErrorCode::InvalidArgument: return SKECE_ERR_INVALID_ARGUMENT;
    case skece::ErrorCode::Parse: return SKECE_ERR_PARSE;
    case skece::ErrorCode::Io: return SKECE_ERR_IO;
    case skece::ErrorCode::Protocol: return SKECE_ERR_PROTOCOL;
    case skece::ErrorCode::InsufficientMaterial: return SKECE_ERR_INSUFFICIENT_MATERIAL;
    case skece::ErrorCode::Desync: return SKECE_ERR_DESYNC;
  }
  return SKECE_ERR_INTERNAL;
}

template <class F>
skece_status guarded(F&& body) {
  try {
    body();
    g_last_error.clear();
    return SKECE_OK;
  } catch (const skece::Error& e) {
    g_last_error = e.what();
    return status_of(e.code());
  } catch (const nlohmann::json::exception& e) {
    g_last_error = e.what();
    return SKECE_ERR_PARSE;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return SKECE_ERR_INTERNAL;
  } catch (...) {
    g_last_error = "unknown failure";
    return SKECE_ERR_INTERNAL;
  }
}

void require(const void* p, const char* what) {
  if (p == nullptr) skece::fail(skece::ErrorCode::InvalidArgument, std::string(what) + " is NULL");
}

// ---- experiment plumbing ----

struct Spec {
  std::string command;
  std::string scenario;
  std::size_t trials;
  std::uint64_t seed;
  std::optional<double> alpha;
  double gamma;
  unsigned theta;
  std::size_t key_length;
  std::string out;
  skece_format format;
};

Spec resolve_spec(const skece_experiment* e, const char* command, const char* scenario,
                  std::size_t trials, std::size_t key_length) {
  require(e, "experiment");
  Spec s;
  s.command = command;
  s.scenario = e->scenario && *e->scenario ? e->scenario : scenario;
  s.trials = e->trials ? e->trials : trials;
  s.seed = e->seed;
  if (e->alpha >= 0.0) s.alpha = e->alpha;
  if (std::isnan(e->alpha)) skece::fail(skece::ErrorCode::InvalidArgument, "alpha is NaN");
  s.gamma = e->gamma;
  s.theta = e->theta;
  s.key_length = e->key_length ? e->key_length : key_length;
  s.out = e->out ? e->out : "";
  s.format = e->format;
  if (s.format != SKECE_FORMAT_CSV && s.format != SKECE_FORMAT_JSON) {
    skece::fail(skece::ErrorCode::InvalidArgument, "unknown output format");
  }
  if (!(s.gamma > 0.0 && s.gamma < 1.0)) {
    skece::fail(skece::ErrorCode::InvalidArgument, "gamma must be in (0,1)");
  }
  return s;
}

ordered_json spec_json(const Spec& s, const std::vector<skece::ScenarioConfig>& scenarios) {
  ordered_json j = {{"command", s.command},
                    {"tool", std::string("skece ") + skece_version()},
                    {"scenario", s.scenario},
                    {"trials", s.trials},
                    {"seed", s.seed},
                    {"alpha", s.alpha ? ordered_json(*s.alpha) : ordered_json("default")},
                    {"gamma", s.gamma},
                    {"theta", s.theta},
                    {"key_length", s.key_length}};
  ordered_json configs = ordered_json::array();
  for (const auto& c : scenarios) configs.push_back(ordered_json::parse(skece::scenario_to_json(c)));
  j["scenario_config"] = std::move(configs);
  return j;
}

// Output sink: a file when a path was given, stdout otherwise.
class Sink {
 public:
  explicit Sink(const std::string& path) : path_(path) {
    if (!path.empty()) {
      file_.open(path);
      if (!file_) skece::fail(skece::ErrorCode::Io, "cannot open '" + path + "' for writing");
    }
    stream().precision(12);
  }
  std::ostream& stream() { return path_.empty() ? std::cout : file_; }
  void close() {
    stream().flush();
    if (!path_.empty()) {
      file_.close();
      if (!file_) skece::fail(skece::ErrorCode::Io, "write to '" + path_ + "' failed");
    }
  }

 private:
  std::string path_;
  std::ofstream file_;
};

void write_header(std::ostream& out, const ordered_json& spec) {
  out << "# " << spec.dump() << '\n';
}

// Extra CSV next to the main output, e.g. out.csv -> out.cdf.csv.
std::string sidecar(const std::string& out, const char* tag) {
  if (out.empty()) return {};
  std::filesystem::path p(out);
  const auto ext = p.extension().string();
  p.replace_extension(std::string(".") + tag + (ext.empty() ? ".csv" : ext));
  return p.string();
}

std::vector<skece::ScenarioConfig> scenarios_for(const std::string& name, bool allow_all) {
  if (name == "all") {
    if (!allow_all) {
      skece::fail(skece::ErrorCode::InvalidArgument, "scenario 'all' is only valid for randomness");
    }
    std::vector<skece::ScenarioConfig> out;
    for (auto p : {skece::Preset::A, skece::Preset::B, skece::Preset::C, skece::Preset::D,
                   skece::Preset::E, skece::Preset::F}) {
      out.push_back(skece::ScenarioConfig::preset_config(p));
    }
    return out;
  }
  return {skece::resolve_scenario(name)};
}

ordered_json report_json(const skece::TestReport& r) {
  return {{"test", r.name}, {"n", r.n}, {"statistic", r.statistic},
          {"p_value", r.p_value}, {"pass", r.pass}};
}

}  // namespace

extern "C" {

const char* skece_version(void) { return "1.0.0"; }

const char* skece_status_name(skece_status status) {
  switch (status) {
    case SKECE_OK: return "ok";
    case SKECE_ERR_INVALID_ARGUMENT: return "invalid_argument";
    case SKECE_ERR_PARSE: return "parse";
    case SKECE_ERR_IO: return "io";
    case SKECE_ERR_PROTOCOL: return "protocol";
    case SKECE_ERR_INSUFFICIENT_MATERIAL: return "insufficient_material";
    case SKECE_ERR_DESYNC: return "desync";
    case SKECE_ERR_INTERNAL: return "internal";
  }
  return "unknown";
}

const char* skece_last_error(void) { return g_last_error.c_str(); }

int skece_checking_length(double gamma) {
  int r = -1;
  if (guarded([&] { r = skece::checking_length(gamma); }) != SKECE_OK) return -1;
  return r;
}

skece_status skece_scenario_load(const char* preset_or_path, skece_scenario** out) {
  return guarded([&] {
    require(preset_or_path, "scenario");
    require(out, "out");
    *out = nullptr;
    auto s = std::make_unique<skece_scenario>();
    s->config = skece::resolve_scenario(preset_or_path);
    *out = s.release();
  });
}

skece_status skece_scenario_set_seed(skece_scenario* s, uint64_t seed) {
  return guarded([&] {
    require(s, "scenario");
    s->config.rng_seed = seed;
  });
}

skece_status skece_scenario_set_probe_count(skece_scenario* s, size_t probes) {
  return guarded([&] {
    require(s, "scenario");
    auto c = s->config;
    c.probe_count = probes;
    c.validate();
    s->config = c;
  });
}

skece_status skece_scenario_set_eve_correlation(skece_scenario* s, double rho) {
  return guarded([&] {
    require(s, "scenario");
    auto c = s->config;
    c.eve_correlation = rho;
    c.validate();
    s->config = c;
  });
}

skece_status skece_scenario_to_json(const skece_scenario* s, char* buf, size_t cap,
                                    size_t* needed) {
  return guarded([&] {
    require(s, "scenario");
    const std::string text = skece::scenario_to_json(s->config);
    if (needed) *needed = text.size() + 1;
    if (buf && cap >= text.size() + 1) {
      std::copy(text.begin(), text.end(), buf);
      buf[text.size()] = '\0';
    } else if (buf) {
      skece::fail(skece::ErrorCode::InvalidArgument,
                  "buffer holds " + std::to_string(cap) + " bytes, needs " +
                      std::to_string(text.size() + 1));
    }
  });
}

void skece_scenario_free(skece_scenario* s) { delete s; }

skece_status skece_simulate(const skece_scenario* s, skece_traces** out) {
  return guarded([&] {
    require(s, "scenario");
    require(out, "out");
    *out = nullptr;
    auto t = std::make_unique<skece_traces>();
    t->set = skece::simulate(s->config);
    *out = t.release();
  });
}

skece_status skece_traces_save(const skece_traces* t, const char* dir) {
  return guarded([&] {
    require(t, "traces");
    require(dir, "dir");
    const std::filesystem::path d(dir);
    if (!std::filesystem::is_directory(d)) {
      skece::fail(skece::ErrorCode::Io, "'" + d.string() + "' is not a directory");
    }
    skece::save_trace(t->set.alice, d / "alice.csv");
    skece::save_trace(t->set.bob, d / "bob.csv");
    skece::save_trace(t->set.eve, d / "eve.csv");
  });
}

skece_status skece_traces_load(const char* alice_path, const char* bob_path,
                               const char* eve_path, skece_traces** out) {
  return guarded([&] {
    require(alice_path, "alice path");
    require(bob_path, "bob path");
    require(out, "out");
    *out = nullptr;
    auto t = std::make_unique<skece_traces>();
    t->set.alice = skece::load_trace(std::filesystem::path(alice_path), skece::Party::Alice);
    t->set.bob = skece::load_trace(std::filesystem::path(bob_path), skece::Party::Bob);
    if (eve_path) t->set.eve = skece::load_trace(std::filesystem::path(eve_path), skece::Party::Eve);
    if (t->set.alice.subcarriers() != t->set.bob.subcarriers() ||
        t->set.alice.length() != t->set.bob.length()) {
      skece::fail(skece::ErrorCode::InvalidArgument, "Alice and Bob traces differ in shape");
    }
    *out = t.release();
  });
}

size_t skece_traces_subcarriers(const skece_traces* t) { return t ? t->set.subcarriers() : 0; }
size_t skece_traces_length(const skece_traces* t) { return t ? t->set.length() : 0; }
void skece_traces_free(skece_traces* t) { delete t; }

void skece_params_default(skece_params* p) {
  if (!p) return;
  const skece::AgreementParams d;
  p->alpha = d.alpha;
  p->gamma = d.gamma;
  p->theta = d.theta;
  p->key_length = d.key_length;
  p->max_rounds = d.max_rounds;
  p->seed = d.seed;
  p->circular_metric = 0;
}

skece_status skece_agree(const skece_traces* t, const skece_params* p, skece_agreement** out) {
  return guarded([&] {
    require(t, "traces");
    require(p, "params");
    require(out, "out");
    *out = nullptr;
    skece::AgreementParams params;
    params.alpha = p->alpha;
    params.gamma = p->gamma;
    params.theta = p->theta;
    params.key_length = p->key_length;
    params.max_rounds = p->max_rounds;
    params.seed = p->seed;
    params.metric = p->circular_metric ? skece::DiffMetric::Circular : skece::DiffMetric::AsWritten;
    auto [result, view] = skece::run_key_agreement(t->set, params);
    auto a = std::make_unique<skece_agreement>(
        skece_agreement{std::move(result), std::move(view), {}});
    a->alice_streams = skece::quantize_pair(t->set.alice, t->set.bob, params.alpha).alice;
    *out = a.release();
  });
}

int skece_agreement_succeeded(const skece_agreement* a) {
  return a && a->result.succeeded() ? 1 : 0;
}

const char* skece_agreement_status(const skece_agreement* a) {
  return a ? skece::to_string(a->result.status) : "";
}

const char* skece_agreement_matched_via(const skece_agreement* a) {
  return a ? skece::to_string(a->result.matched_via) : "";
}

unsigned skece_agreement_rounds(const skece_agreement* a) { return a ? a->result.rounds_used : 0; }

size_t skece_agreement_key_bits(const skece_agreement* a) {
  return a && a->result.key ? a->result.key->size() : 0;
}

skece_status skece_agreement_key(const skece_agreement* a, uint8_t* bits, size_t cap) {
  return guarded([&] {
    require(a, "agreement");
    if (!a->result.key) skece::fail(skece::ErrorCode::InvalidArgument, "no key was agreed");
    const auto& k = a->result.key->bits;
    if (cap < k.size()) {
      skece::fail(skece::ErrorCode::InvalidArgument,
                  "buffer holds " + std::to_string(cap) + " bits, key has " +
                      std::to_string(k.size()));
    }
    require(bits, "bits");
    std::copy(k.begin(), k.end(), bits);
  });
}

size_t skece_agreement_messages(const skece_agreement* a, skece_direction d) {
  if (!a) return 0;
  const auto& c = a->result.counters();
  switch (d) {
    case SKECE_ALICE_TO_BOB: return c.messages(skece::Direction::AliceToBob);
    case SKECE_BOB_TO_ALICE: return c.messages(skece::Direction::BobToAlice);
    case SKECE_BOTH: return c.messages();
  }
  return 0;
}

size_t skece_agreement_reconciliation_messages(const skece_agreement* a) {
  return a ? a->result.counters().reconciliation_messages() : 0;
}

size_t skece_agreement_bytes(const skece_agreement* a) {
  return a ? a->result.counters().bytes() : 0;
}

skece_status skece_agreement_write_transcript(const skece_agreement* a, const char* path) {
  return guarded([&] {
    require(a, "agreement");
    require(path, "path");
    std::ofstream out(path);
    if (!out) skece::fail(skece::ErrorCode::Io, std::string("cannot open '") + path + "'");
    a->result.transcript.write_json_lines(out);
    if (!out) skece::fail(skece::ErrorCode::Io, std::string("write to '") + path + "' failed");
  });
}

skece_status skece_agreement_eve_correlation(const skece_agreement* a, double* out, size_t cap,
                                             size_t* count) {
  return guarded([&] {
    require(a, "agreement");
    if (a->eve.eve_trace.subcarriers() == 0) {
      skece::fail(skece::ErrorCode::InvalidArgument, "no eavesdropper trace was loaded");
    }
    const auto report = skece::eve_attempt(a->eve, a->alice_streams);
    if (count) *count = report.correlation.size();
    if (!out) return;
    if (cap < report.correlation.size()) {
      skece::fail(skece::ErrorCode::InvalidArgument, "correlation buffer too small");
    }
    for (std::size_t i = 0; i < report.correlation.size(); ++i) {
      out[i] = report.correlation[i].value_or(std::numeric_limits<double>::quiet_NaN());
    }
  });
}

void skece_agreement_free(skece_agreement* a) { delete a; }

void skece_experiment_default(skece_experiment* e) {
  if (!e) return;
  e->scenario = nullptr;
  e->trials = 0;
  e->seed = 1;
  e->alpha = -1.0;
  e->gamma = 0.98;
  e->theta = 5;
  e->key_length = 0;
  e->out = nullptr;
  e->format = SKECE_FORMAT_CSV;
}

skece_status skece_run_simulate(const skece_experiment* e) {
  return guarded([&] {
    const Spec s = resolve_spec(e, "simulate", "C", 1, 128);
    auto cfg = scenarios_for(s.scenario, false).front();
    const std::filesystem::path dir = s.out.empty() ? "." : s.out;
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) skece::fail(skece::ErrorCode::Io, "cannot create '" + dir.string() + "': " + ec.message());
    for (std::size_t t = 0; t < s.trials; ++t) {
      cfg.rng_seed = s.seed + t;
      const auto set = skece::simulate(cfg);
      const std::string suffix = s.trials > 1 ? "_" + std::to_string(t) : "";
      skece::save_trace(set.alice, dir / ("alice" + suffix + ".csv"));
      skece::save_trace(set.bob, dir / ("bob" + suffix + ".csv"));
      skece::save_trace(set.eve, dir / ("eve" + suffix + ".csv"));
    }
    Sink meta((dir / "provenance.json").string());
    meta.stream() << spec_json(s, {cfg}).dump(2) << '\n';
    meta.close();
  });
}

skece_status skece_run_extract(const skece_experiment* e) {
  return guarded([&] {
    const Spec s = resolve_spec(e, "extract", "C", 20, 128);
    const auto cfg = scenarios_for(s.scenario, false).front();
    std::vector<double> alphas{0.0, 0.2, 0.4, 0.6, 0.8, 1.0};
    if (s.alpha) alphas = {*s.alpha};
    const auto rows = skece::run_extract(cfg, alphas, s.trials, s.seed);
    const auto spec = spec_json(s, {cfg});
    Sink sink(s.out);
    auto& out = sink.stream();
    if (s.format == SKECE_FORMAT_JSON) {
      ordered_json j = {{"provenance", spec}, {"rows", ordered_json::array()}};
      for (const auto& r : rows) {
        j["rows"].push_back({{"alpha", r.alpha}, {"ignored", r.ignored},
                             {"mismatched", r.mismatched}, {"matched", r.matched},
                             {"bit_rate", r.bit_rate}});
      }
      out << j.dump(2) << '\n';
    } else {
      write_header(out, spec);
      out << "alpha,ignored,mismatched,matched,bit_rate\n";
      for (const auto& r : rows) {
        out << r.alpha << ',' << r.ignored << ',' << r.mismatched << ',' << r.matched << ','
            << r.bit_rate << '\n';
      }
    }
    sink.close();
  });
}

skece_status skece_run_compare(const skece_experiment* e) {
  return guarded([&] {
    const Spec s = resolve_spec(e, "compare", "synthetic", 1000, 300);
    skece::CompareConfig cc;
    cc.key_length = s.key_length;
    cc.gamma = s.gamma;
    cc.theta = s.theta;
    const auto summary = skece::run_compare(cc, s.trials, s.seed);
    std::vector<std::size_t> sk, ca;
    for (const auto& t : summary.trials) {
      sk.push_back(t.skece_messages);
      ca.push_back(t.cascade_messages);
    }
    const auto cdf_s = skece::empirical_cdf(sk);
    const auto cdf_c = skece::empirical_cdf(ca);
    const auto spec = spec_json(s, {});
    Sink sink(s.out);
    auto& out = sink.stream();
    if (s.format == SKECE_FORMAT_JSON) {
      ordered_json j = {{"provenance", spec},
                        {"summary", {{"skece_within_10", summary.skece_within_10},
                                     {"median_skece", summary.median_skece},
                                     {"median_cascade", summary.median_cascade}}},
                        {"trials", ordered_json::array()},
                        {"cdf", {{"skece", ordered_json::array()},
                                 {"cascade", ordered_json::array()}}}};
      for (const auto& t : summary.trials) {
        j["trials"].push_back({{"trial", t.trial}, {"errors", t.errors},
                               {"skece_messages", t.skece_messages},
                               {"skece_agreed", t.skece_agreed},
                               {"skece_correct", t.skece_correct},
                               {"skece_rounds", t.skece_rounds},
                               {"cascade_messages", t.cascade_messages},
                               {"cascade_corrected", t.cascade_corrected}});
      }
      for (const auto& [x, f] : cdf_s) j["cdf"]["skece"].push_back({x, f});
      for (const auto& [x, f] : cdf_c) j["cdf"]["cascade"].push_back({x, f});
      out << j.dump(2) << '\n';
      sink.close();
      return;
    }
    write_header(out, spec);
    out << "trial,errors,skece_messages,skece_agreed,skece_correct,skece_rounds,cascade_messages,"
           "cascade_corrected\n";
    for (const auto& t : summary.trials) {
      out << t.trial << ',' << t.errors << ',' << t.skece_messages << ','
          << (t.skece_agreed ? "true" : "false") << ',' << (t.skece_correct ? "true" : "false")
          << ',' << t.skece_rounds << ','
          << t.cascade_messages << ',' << (t.cascade_corrected ? "true" : "false") << '\n';
    }
    sink.close();
    Sink cdf(sidecar(s.out, "cdf"));
    write_header(cdf.stream(), spec);
    cdf.stream() << "method,messages,cdf\n";
    for (const auto& [x, f] : cdf_s) cdf.stream() << "skece," << x << ',' << f << '\n';
    for (const auto& [x, f] : cdf_c) cdf.stream() << "cascade," << x << ',' << f << '\n';
    cdf.close();
  });
}

skece_status skece_run_randomness(const skece_experiment* e) {
  return guarded([&] {
    const Spec s = resolve_spec(e, "randomness", "all", 10, 10000);
    const auto configs = scenarios_for(s.scenario, true);
    std::vector<skece::RandomnessRun> runs;
    for (const auto& cfg : configs) {
      auto r = skece::run_randomness(cfg, s.trials, s.seed, s.alpha, s.key_length);
      runs.insert(runs.end(), r.begin(), r.end());
    }
    const auto spec = spec_json(s, configs);
    Sink sink(s.out);
    auto& out = sink.stream();
    if (s.format == SKECE_FORMAT_JSON) {
      ordered_json j = {{"provenance", spec}, {"runs", ordered_json::array()}};
      for (const auto& r : runs) {
        ordered_json tests = ordered_json::array();
        for (const auto& t : r.reports) tests.push_back(report_json(t));
        j["runs"].push_back({{"scenario", r.scenario}, {"run", r.run}, {"seed", r.seed},
                             {"probe_count", r.probe_count}, {"all_pass", r.all_pass()},
                             {"tests", std::move(tests)}});
      }
      out << j.dump(2) << '\n';
    } else {
      write_header(out, spec);
      std::vector<std::pair<std::string, skece::TestReport>> labelled;
      for (const auto& r : runs) {
        for (const auto& t : r.reports) {
          labelled.emplace_back(r.scenario + "/seed" + std::to_string(r.seed), t);
        }
      }
      skece::write_reports_csv(out, labelled);
    }
    sink.close();
  });
}

skece_status skece_run_attack(const skece_experiment* e) {
  return guarded([&] {
    const Spec s = resolve_spec(e, "attack", "A", 1, 128);
    const auto cfg = scenarios_for(s.scenario, false).front();
    const skece::AttackConfig ac;
    std::vector<skece::AttackRun> runs;
    for (std::size_t t = 0; t < s.trials; ++t) {
      runs.push_back(skece::run_attack(cfg, ac, s.seed + t, s.alpha));
    }
    const auto spec = spec_json(s, {cfg});
    Sink sink(s.out);
    auto& out = sink.stream();
    if (s.format == SKECE_FORMAT_JSON) {
      ordered_json j = {{"provenance", spec}, {"runs", ordered_json::array()}};
      for (const auto& r : runs) {
        ordered_json bits = ordered_json::array();
        for (std::size_t k = 0; k < r.rss_bits.size(); ++k) {
          bits.push_back({r.rss_kept[k], r.rss_bits[k]});
        }
        j["runs"].push_back(
            {{"seed", r.seed}, {"lag", r.lag},
             {"rss", {{"pairs", r.rss_score.pairs}, {"correlation", r.rss_score.correlation},
                      {"z", r.rss_score.z}, {"amplitude_db", r.rss_alice}, {"bits", bits}}},
             {"csi", {{"bits", r.csi_bits.size()}, {"correlation", r.csi_score.correlation},
                      {"z", r.csi_score.z}, {"frequency", report_json(r.csi_frequency)},
                      {"subcarrier0_db", r.csi0_alice}}}});
      }
      out << j.dump(2) << '\n';
      sink.close();
      return;
    }
    write_header(out, spec);
    out << "seed,lag,rss_pairs,rss_correlation,rss_z,csi_bits,csi_correlation,csi_z,"
           "csi_frequency_p,csi_frequency_pass\n";
    for (const auto& r : runs) {
      out << r.seed << ',' << r.lag << ',' << r.rss_score.pairs << ','
          << r.rss_score.correlation << ',' << r.rss_score.z << ',' << r.csi_bits.size() << ','
          << r.csi_score.correlation << ',' << r.csi_score.z << ',' << r.csi_frequency.p_value
          << ',' << (r.csi_frequency.pass ? "true" : "false") << '\n';
    }
    sink.close();
    Sink trace(sidecar(s.out, "trace"));
    write_header(trace.stream(), spec);
    trace.stream() << "seed,probe,rss_db,rss_bit,subcarrier0_db\n";
    for (const auto& r : runs) {
      std::size_t k = 0;
      for (std::size_t j = 0; j < r.rss_alice.size(); ++j) {
        trace.stream() << r.seed << ',' << j << ',' << r.rss_alice[j] << ',';
        if (k < r.rss_kept.size() && r.rss_kept[k] == j) trace.stream() << int(r.rss_bits[k++]);
        trace.stream() << ',' << r.csi0_alice[j] << '\n';
      }
    }
    trace.close();
  });
}

}  // extern "C"
