// Copyright 2026 SKECE contributors. Licensed under the Apache License,
// Version 2.0. See http://www.apache.org/licenses/LICENSE-2.0

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "doctest.h"
#include "json.hpp"

namespace fs = std::filesystem;

namespace {

const fs::path& dir() {
  static const fs::path d = [] {
    const fs::path p = fs::temp_directory_path() / "skece_cli_test";
    fs::remove_all(p);
    fs::create_directories(p);
    return p;
  }();
  return d;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run cli(const std::string& args) {
  const auto out = dir() / "stdout.txt", err = dir() / "stderr.txt";
  const std::string cmd = std::string("\"") + SKECE_CLI + "\" " + args + " >" + out.string() +
                          " 2>" + err.string();
  const int raw = std::system(cmd.c_str());
  return {WIFEXITED(raw) ? WEXITSTATUS(raw) : -1, slurp(out), slurp(err)};
}

}  // namespace

TEST_CASE("cli: help lists the subcommands") {
  const auto r = cli("--help");
  CHECK(r.code == 0);
  for (const char* sub : {"simulate", "extract", "compare", "randomness", "attack"}) {
    CHECK(r.out.find(sub) != std::string::npos);
  }
}

TEST_CASE("cli: usage errors exit 64 with a JSON record") {
  auto r = cli("");
  CHECK(r.code == 64);
  r = cli("extract --format xml");
  CHECK(r.code == 64);
  const auto j = nlohmann::json::parse(r.err);
  CHECK(j["error"]["code"] == "usage");
}

TEST_CASE("cli: library failures map to status codes") {
  auto r = cli("extract --scenario /no/such.json --trials 1");
  CHECK(r.code == 3);
  auto j = nlohmann::json::parse(r.err);
  CHECK(j["error"]["command"] == "extract");
  CHECK(j["error"]["code"] == "io");
  CHECK(j["error"]["status"] == 3);
  CHECK(j["error"]["message"].get<std::string>().find("/no/such.json") != std::string::npos);

  std::ofstream(dir() / "bad.json") << "{\"base\": \"C\", \"noise\": 1}";
  r = cli("extract --trials 1 --scenario " + (dir() / "bad.json").string());
  CHECK(r.code == 2);
  j = nlohmann::json::parse(r.err);
  CHECK(j["error"]["code"] == "parse");

  r = cli("compare --trials 2 --gamma 1.5");
  CHECK(r.code == 1);
}

TEST_CASE("cli: fixed seed gives identical output files") {
  const auto a = dir() / "e1.csv", b = dir() / "e2.csv";
  REQUIRE(cli("extract --trials 2 --seed 7 --out " + a.string()).code == 0);
  REQUIRE(cli("extract --trials 2 --seed 7 --out " + b.string()).code == 0);
  const auto text = slurp(a);
  CHECK(text == slurp(b));
  CHECK(text.rfind("# {", 0) == 0);
  CHECK(text.find("\"seed\":7") != std::string::npos);
  REQUIRE(cli("extract --trials 2 --seed 8 --out " + b.string()).code == 0);
  CHECK(text != slurp(b));
}

TEST_CASE("cli: every command writes provenance") {
  REQUIRE(cli("simulate --seed 3 --out " + (dir() / "sim").string()).code == 0);
  CHECK(fs::exists(dir() / "sim" / "alice.csv"));
  CHECK(fs::exists(dir() / "sim" / "bob.csv"));
  CHECK(fs::exists(dir() / "sim" / "eve.csv"));
  CHECK(nlohmann::json::parse(slurp(dir() / "sim" / "provenance.json"))["seed"] == 3);

  REQUIRE(cli("compare --trials 5 --out " + (dir() / "cmp.csv").string()).code == 0);
  CHECK(slurp(dir() / "cmp.csv").rfind("# {\"command\":\"compare\"", 0) == 0);
  CHECK(slurp(dir() / "cmp.cdf.csv").find("method,messages,cdf") != std::string::npos);

  REQUIRE(cli("randomness --scenario B --trials 1 --key-length 2000 --format json --out " +
              (dir() / "rnd.json").string())
              .code == 0);
  const auto rnd = nlohmann::json::parse(slurp(dir() / "rnd.json"));
  CHECK(rnd["provenance"]["command"] == "randomness");
  CHECK(rnd["runs"].size() == 1);
  CHECK(rnd["runs"][0]["tests"].size() == 4);

  REQUIRE(cli("attack --out " + (dir() / "atk.csv").string()).code == 0);
  CHECK(slurp(dir() / "atk.csv").find("rss_z") != std::string::npos);
  CHECK(fs::exists(dir() / "atk.trace.csv"));
}

TEST_CASE("cli: stdout when --out is omitted") {
  const auto r = cli("extract --trials 1 --alpha 0.4 --format json");
  REQUIRE(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["rows"].size() == 1);
  CHECK(j["rows"][0]["alpha"] == 0.4);
}
