// Copyright 2026 SKECE contributors. Licensed under the Apache License,
// Version 2.0. See http://www.apache.org/licenses/LICENSE-2.0

#include "doctest.h"
#include "skece/error.hpp"
#include "skece/experiments.hpp"

using namespace skece;

TEST_CASE("empirical CDF and median") {
  const auto cdf = empirical_cdf({3, 1, 3, 2});
  REQUIRE(cdf.size() == 3);
  CHECK(cdf[0] == std::pair<std::size_t, double>{1, 0.25});
  CHECK(cdf[1] == std::pair<std::size_t, double>{2, 0.5});
  CHECK(cdf[2] == std::pair<std::size_t, double>{3, 1.0});
  CHECK(median({5, 1, 3}) == 3);
  CHECK(median({4, 1, 3, 2}) == 2.5);
  CHECK_THROWS_AS(median({}), Error);
}

TEST_CASE("extract sweep: no drops at alpha 0, mismatch falls with alpha") {
  auto c = ScenarioConfig::preset_config(Preset::C);
  c.subcarriers = 8;
  const std::vector<double> alphas{0.0, 0.4, 1.0};
  const auto rows = run_extract(c, alphas, 3, 5);
  REQUIRE(rows.size() == 3);
  CHECK(rows[0].ignored == 0.0);
  CHECK(rows[0].matched + rows[0].mismatched == doctest::Approx(300.0));
  CHECK(rows[1].mismatched <= rows[0].mismatched);
  CHECK(rows[2].mismatched <= rows[1].mismatched);
  CHECK(rows[2].ignored > rows[1].ignored);
  for (const auto& r : rows) CHECK(r.ignored + r.matched + r.mismatched == doctest::Approx(300.0));
  CHECK(run_extract(c, alphas, 3, 5)[1].matched == rows[1].matched);
}

TEST_CASE("compare bookkeeping") {
  CompareConfig cfg;
  const auto s = run_compare(cfg, 20, 3);
  REQUIRE(s.trials.size() == 20);
  for (const auto& t : s.trials) {
    CHECK(t.errors >= cfg.streams * cfg.min_errors);
    CHECK(t.errors <= cfg.streams * cfg.max_errors);
    CHECK(t.skece_messages >= 2);
    if (t.skece_correct) CHECK(t.skece_agreed);
  }
  CHECK(s.median_cascade > 0);
  const auto again = run_compare(cfg, 20, 3);
  CHECK(again.median_skece == s.median_skece);
  CompareConfig bad;
  bad.min_errors = 5;
  CHECK_THROWS_AS(run_compare(bad, 1, 1), Error);
}

TEST_CASE("key material reaches the requested length") {
  const auto c = ScenarioConfig::preset_config(Preset::B);
  const auto km = generate_key_material(c, c.default_alpha(), 2000);
  CHECK(km.bits.size() == 2000);
  CHECK(km.matched_streams >= 1);
  CHECK(km.probe_count >= 2000 / 30 * 2);
}

TEST_CASE("randomness runs are labelled and seeded consecutively") {
  const auto runs = run_randomness(ScenarioConfig::preset_config(Preset::D), 2, 40, std::nullopt, 2000);
  REQUIRE(runs.size() == 2);
  CHECK(runs[0].scenario == "D");
  CHECK(runs[0].seed == 40);
  CHECK(runs[1].seed == 41);
  CHECK(runs[0].reports.size() == 4);
}

TEST_CASE("attack exposes periodicity in the averaged stream") {
  auto c = ScenarioConfig::preset_config(Preset::A);
  c.probe_count = 600;
  const auto run = run_attack(c, {}, 1, std::nullopt);
  CHECK(run.lag == 8);
  CHECK(run.rss_alice.size() == 600);
  CHECK(run.rss_score.z > 5.0);
  CHECK_THROWS_AS(run_attack(c, {1.0, 2.0, 0.3}, 1, std::nullopt), Error);
}
