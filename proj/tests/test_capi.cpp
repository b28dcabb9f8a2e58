// Copyright 2026 SKECE contributors. Licensed under the Apache License,
// Version 2.0. See http://www.apache.org/licenses/LICENSE-2.0

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "skece/skece.h"

namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("skece_capi_" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

struct Sim {
  skece_scenario* scenario = nullptr;
  skece_traces* traces = nullptr;
  ~Sim() {
    skece_traces_free(traces);
    skece_scenario_free(scenario);
  }
};

}  // namespace

TEST_CASE("C API: version, status names and checking length") {
  CHECK(std::string(skece_version()).size() > 0);
  CHECK(std::string(skece_status_name(SKECE_ERR_PARSE)) == "parse");
  CHECK(std::string(skece_status_name(SKECE_ERR_DESYNC)) == "desync");
  CHECK(skece_checking_length(0.98) == 6);
  CHECK(skece_checking_length(1.0) == -1);
  CHECK(std::string(skece_last_error()).find("gamma") != std::string::npos);
}

TEST_CASE("C API: scenario handles") {
  skece_scenario* s = nullptr;
  REQUIRE(skece_scenario_load("D", &s) == SKECE_OK);
  CHECK(skece_scenario_set_seed(s, 9) == SKECE_OK);
  CHECK(skece_scenario_set_probe_count(s, 0) == SKECE_ERR_INVALID_ARGUMENT);
  CHECK(skece_scenario_set_eve_correlation(s, 2.0) == SKECE_ERR_INVALID_ARGUMENT);
  size_t needed = 0;
  CHECK(skece_scenario_to_json(s, nullptr, 0, &needed) == SKECE_OK);
  CHECK(needed > 10);
  char tiny[4];
  CHECK(skece_scenario_to_json(s, tiny, sizeof tiny, &needed) == SKECE_ERR_INVALID_ARGUMENT);
  std::vector<char> buf(needed);
  REQUIRE(skece_scenario_to_json(s, buf.data(), buf.size(), &needed) == SKECE_OK);
  const std::string json(buf.data());
  CHECK(json.find("\"rng_seed\": 9") != std::string::npos);
  skece_scenario_free(s);

  skece_scenario* none = nullptr;
  CHECK(skece_scenario_load(nullptr, &none) == SKECE_ERR_INVALID_ARGUMENT);
  CHECK(skece_scenario_load("/no/such/scenario.json", &none) == SKECE_ERR_IO);
  CHECK(none == nullptr);

  const auto dir = scratch("scen");
  std::ofstream(dir / "bad.json") << "{\"base\": \"A\", \"probe_count\": ";
  CHECK(skece_scenario_load((dir / "bad.json").c_str(), &none) == SKECE_ERR_PARSE);
  std::ofstream(dir / "ok.json") << "{\"base\": \"A\", \"probe_count\": 77}";
  REQUIRE(skece_scenario_load((dir / "ok.json").c_str(), &s) == SKECE_OK);
  skece_traces* t = nullptr;
  REQUIRE(skece_simulate(s, &t) == SKECE_OK);
  CHECK(skece_traces_length(t) == 77);
  skece_traces_free(t);
  skece_scenario_free(s);
}

TEST_CASE("C API: simulate, save, load and agree") {
  Sim sim;
  REQUIRE(skece_scenario_load("C", &sim.scenario) == SKECE_OK);
  REQUIRE(skece_scenario_set_probe_count(sim.scenario, 600) == SKECE_OK);
  REQUIRE(skece_simulate(sim.scenario, &sim.traces) == SKECE_OK);
  CHECK(skece_traces_subcarriers(sim.traces) == 30);
  CHECK(skece_traces_length(sim.traces) == 600);

  const auto dir = scratch("traces");
  REQUIRE(skece_traces_save(sim.traces, dir.c_str()) == SKECE_OK);
  CHECK(slurp(dir / "alice.csv").rfind("time,subcarrier,amplitude_db,phase_rad\n", 0) == 0);
  CHECK(skece_traces_save(sim.traces, (dir / "missing").c_str()) == SKECE_ERR_IO);

  skece_traces* loaded = nullptr;
  REQUIRE(skece_traces_load((dir / "alice.csv").c_str(), (dir / "bob.csv").c_str(),
                            (dir / "eve.csv").c_str(), &loaded) == SKECE_OK);

  skece_params p;
  skece_params_default(&p);
  CHECK(p.gamma == 0.98);
  CHECK(p.theta == 5u);
  skece_agreement* a = nullptr;
  skece_agreement* b = nullptr;
  REQUIRE(skece_agree(sim.traces, &p, &a) == SKECE_OK);
  REQUIRE(skece_agree(loaded, &p, &b) == SKECE_OK);
  REQUIRE(skece_agreement_succeeded(a));
  CHECK(std::string(skece_agreement_status(a)) == "agreed");
  const std::string via = skece_agreement_matched_via(a);
  CHECK((via == "direct" || via == "recombination"));
  REQUIRE(skece_agreement_key_bits(a) == p.key_length);

  // Saved traces reproduce the same session.
  std::vector<uint8_t> ka(p.key_length), kb(p.key_length);
  REQUIRE(skece_agreement_key(a, ka.data(), ka.size()) == SKECE_OK);
  REQUIRE(skece_agreement_key(b, kb.data(), kb.size()) == SKECE_OK);
  CHECK(ka == kb);
  CHECK(skece_agreement_key(a, ka.data(), 3) == SKECE_ERR_INVALID_ARGUMENT);

  CHECK(skece_agreement_messages(a, SKECE_BOTH) ==
        skece_agreement_messages(a, SKECE_ALICE_TO_BOB) +
            skece_agreement_messages(a, SKECE_BOB_TO_ALICE));
  CHECK(skece_agreement_messages(a, SKECE_BOTH) == 2 * 600 + 2 +
                                                       skece_agreement_reconciliation_messages(a));
  CHECK(skece_agreement_bytes(a) > 0);

  REQUIRE(skece_agreement_write_transcript(a, (dir / "t.jsonl").c_str()) == SKECE_OK);
  const auto transcript = slurp(dir / "t.jsonl");
  CHECK(transcript.find("\"type\":\"PROBE\"") != std::string::npos);
  CHECK(transcript.find("\"type\":\"DROP_LIST\"") != std::string::npos);

  std::size_t count = 0;
  REQUIRE(skece_agreement_eve_correlation(a, nullptr, 0, &count) == SKECE_OK);
  CHECK(count == 30);
  std::vector<double> corr(count);
  REQUIRE(skece_agreement_eve_correlation(a, corr.data(), corr.size(), &count) == SKECE_OK);
  for (double c : corr) CHECK((std::isnan(c) || std::abs(c) < 0.3));

  skece_agreement_free(a);
  skece_agreement_free(b);
  skece_traces_free(loaded);
}

TEST_CASE("C API: load errors carry file and line") {
  const auto dir = scratch("bad");
  std::ofstream(dir / "a.csv") << "time,subcarrier,amplitude_db,phase_rad\n1,0,1,0\n0.5,0,1,0\n";
  std::ofstream(dir / "b.csv") << "time,subcarrier,amplitude_db,phase_rad\n0,0,1,0\n";
  skece_traces* t = nullptr;
  CHECK(skece_traces_load((dir / "a.csv").c_str(), (dir / "b.csv").c_str(), nullptr, &t) ==
        SKECE_ERR_PARSE);
  CHECK(std::string(skece_last_error()).find("a.csv:3") != std::string::npos);
  CHECK(t == nullptr);
  CHECK(skece_traces_load("/nope.csv", (dir / "b.csv").c_str(), nullptr, &t) == SKECE_ERR_IO);
}

TEST_CASE("C API: insufficient material is a result, not an error") {
  Sim sim;
  REQUIRE(skece_scenario_load("A", &sim.scenario) == SKECE_OK);
  REQUIRE(skece_scenario_set_probe_count(sim.scenario, 20) == SKECE_OK);
  REQUIRE(skece_simulate(sim.scenario, &sim.traces) == SKECE_OK);
  skece_params p;
  skece_params_default(&p);
  p.key_length = 100000;
  skece_agreement* a = nullptr;
  REQUIRE(skece_agree(sim.traces, &p, &a) == SKECE_OK);
  CHECK_FALSE(skece_agreement_succeeded(a));
  CHECK(std::string(skece_agreement_status(a)) == "insufficient_material");
  CHECK(skece_agreement_key_bits(a) == 0);
  skece_agreement_free(a);

  p.gamma = 2.0;
  CHECK(skece_agree(sim.traces, &p, &a) == SKECE_ERR_INVALID_ARGUMENT);
}

TEST_CASE("C API: experiments write provenance and are reproducible") {
  const auto dir = scratch("exp");
  skece_experiment e;
  skece_experiment_default(&e);
  e.trials = 2;
  const std::string out1 = (dir / "x1.csv").string(), out2 = (dir / "x2.csv").string();
  e.out = out1.c_str();
  REQUIRE(skece_run_extract(&e) == SKECE_OK);
  e.out = out2.c_str();
  REQUIRE(skece_run_extract(&e) == SKECE_OK);
  const auto text = slurp(out1);
  CHECK(text == slurp(out2));
  CHECK(text.rfind("# {\"command\":\"extract\"", 0) == 0);
  CHECK(text.find("alpha,ignored,mismatched,matched,bit_rate\n") != std::string::npos);

  const std::string json_out = (dir / "c.json").string();
  e.out = json_out.c_str();
  e.format = SKECE_FORMAT_JSON;
  e.trials = 3;
  REQUIRE(skece_run_compare(&e) == SKECE_OK);
  CHECK(slurp(json_out).find("\"provenance\"") != std::string::npos);

  e.format = SKECE_FORMAT_CSV;
  const std::string cmp = (dir / "c.csv").string();
  e.out = cmp.c_str();
  REQUIRE(skece_run_compare(&e) == SKECE_OK);
  CHECK(fs::exists(dir / "c.cdf.csv"));

  const std::string sim_dir = (dir / "sim").string();
  e.out = sim_dir.c_str();
  e.trials = 1;
  REQUIRE(skece_run_simulate(&e) == SKECE_OK);
  CHECK(fs::exists(dir / "sim" / "alice.csv"));
  CHECK(slurp(dir / "sim" / "provenance.json").find("\"simulate\"") != std::string::npos);

  e.scenario = "all";
  e.out = out1.c_str();
  CHECK(skece_run_extract(&e) == SKECE_ERR_INVALID_ARGUMENT);
  e.scenario = nullptr;
  e.gamma = 0.0;
  CHECK(skece_run_compare(&e) == SKECE_ERR_INVALID_ARGUMENT);
  e.gamma = 0.98;
  const std::string blocked = (dir / "no_dir" / "x.csv").string();
  e.out = blocked.c_str();
  CHECK(skece_run_attack(&e) == SKECE_ERR_IO);
  CHECK(skece_run_extract(nullptr) == SKECE_ERR_INVALID_ARGUMENT);
}
