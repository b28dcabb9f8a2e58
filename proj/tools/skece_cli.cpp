// Copyright 2026 SKECE contributors. Licensed under the Apache License,
// Version 2.0. See http://www.apache.org/licenses/LICENSE-2.0

// skece: experiment runner over the C library.

#include <cstdint>
#include <iostream>
#include <map>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "skece/skece.h"

namespace {

struct Options {
  std::string scenario;
  std::size_t trials = 0;
  std::uint64_t seed = 1;
  std::optional<double> alpha;
  double gamma = 0.98;
  unsigned theta = 5;
  std::size_t key_length = 0;
  std::string out;
  std::string format = "csv";
};

constexpr int kUsageExit = 64;

// Machine-readable failure record on stderr; the exit code is the status.
int report_error(const char* command, int status, const char* code, const std::string& message) {
  const nlohmann::ordered_json rec = {
      {"error", {{"command", command}, {"code", code}, {"status", status}, {"message", message}}}};
  std::cerr << rec.dump() << '\n';
  return status;
}

void add_common(CLI::App* cmd, Options& o) {
  cmd->add_option("--scenario", o.scenario, "Preset A-F or scenario JSON path");
  cmd->add_option("--trials", o.trials, "Number of trials (default depends on command)")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--seed", o.seed, "Base RNG seed");
  cmd->add_option("--alpha", o.alpha, "Quantizer alpha (default: mobility default or sweep)")
      ->check(CLI::NonNegativeNumber);
  cmd->add_option("--gamma", o.gamma, "Validation confidence, sets checking length");
  cmd->add_option("--theta", o.theta, "Difference-degree modulus");
  cmd->add_option("--key-length", o.key_length, "Key length L in bits");
  cmd->add_option("--out", o.out, "Output file (directory for simulate); stdout if omitted");
  cmd->add_option("--format", o.format, "Output format")
      ->check(CLI::IsMember({"csv", "json"}));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"SKECE key extraction experiments"};
  app.set_version_flag("--version", std::string(skece_version()));
  app.require_subcommand(1);

  using Runner = skece_status (*)(const skece_experiment*);
  const std::map<std::string, std::pair<const char*, Runner>> commands = {
      {"simulate", {"Simulate paired CSI traces and write them as CSV", skece_run_simulate}},
      {"extract", {"Sweep alpha: ignored, mismatched and matched bits", skece_run_extract}},
      {"compare", {"Message counts of SKECE against Cascade", skece_run_compare}},
      {"randomness", {"NIST tests on generated keys ('all' runs A-F)", skece_run_randomness}},
      {"attack", {"Predictable channel attack: RSS emulation vs CSI", skece_run_attack}},
  };
  Options opts;
  for (const auto& [name, entry] : commands) add_common(app.add_subcommand(name, entry.first), opts);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    return report_error("", kUsageExit, "usage", e.what());
  }

  const std::string name = app.get_subcommands().front()->get_name();
  skece_experiment exp;
  skece_experiment_default(&exp);
  exp.scenario = opts.scenario.empty() ? nullptr : opts.scenario.c_str();
  exp.trials = opts.trials;
  exp.seed = opts.seed;
  if (opts.alpha) exp.alpha = *opts.alpha;
  exp.gamma = opts.gamma;
  exp.theta = opts.theta;
  exp.key_length = opts.key_length;
  exp.out = opts.out.empty() ? nullptr : opts.out.c_str();
  exp.format = opts.format == "json" ? SKECE_FORMAT_JSON : SKECE_FORMAT_CSV;

  const skece_status st = commands.at(name).second(&exp);
  if (st != SKECE_OK) {
    return report_error(name.c_str(), st, skece_status_name(st), skece_last_error());
  }
  return 0;
}
