// Copyright 2026 SKECE contributors. Licensed under the Apache License,
// Version 2.0. See http://www.apache.org/licenses/LICENSE-2.0

#include <cmath>
#include <random>
#include <vector>

#include "doctest.h"
#include "skece/error.hpp"
#include "skece/quantizer.hpp"

using namespace skece;

TEST_CASE("thresholds use the population standard deviation") {
  const std::vector<double> x{1, 2, 3, 4, 5};
  const auto th = compute_thresholds(x, 0.5);
  CHECK(th.mu == doctest::Approx(3.0));
  CHECK(th.sigma == doctest::Approx(std::sqrt(2.0)));
  CHECK(th.q_plus == doctest::Approx(3.0 + 0.5 * std::sqrt(2.0)));
  CHECK(th.q_minus == doctest::Approx(3.0 - 0.5 * std::sqrt(2.0)));
}

TEST_CASE("hand-worked quantization") {
  const std::vector<double> x{1, 2, 3, 4, 5};
  const auto th = compute_thresholds(x, 0.5);
  const auto drop = drop_indices(x, th);
  CHECK(drop.indices == std::vector<std::size_t>{2});
  const auto kept = merge_kept(drop, DropList{{0}}, x.size());
  CHECK(kept == std::vector<std::size_t>{1, 3, 4});
  CHECK(extract_bits(x, th, kept).to_string() == "011");
}

TEST_CASE("alpha = 0 keeps everything; samples on a threshold are kept") {
  const std::vector<double> x{-1, 0, 1};
  const auto th = compute_thresholds(x, 0.0);
  CHECK(drop_indices(x, th).indices.empty());
  const std::vector<std::size_t> all{0, 1, 2};
  CHECK(extract_bits(x, th, all).to_string() == "011");

  // The band is open: samples equal to q_plus or q_minus survive.
  const std::vector<double> y{-1, 1, -1, 1};
  const auto ty = compute_thresholds(y, 1.0);
  CHECK(drop_indices(y, ty).indices.empty());
  CHECK(extract_bits(y, ty, all).to_string() == "010");
}

TEST_CASE("dropped fraction follows the Gaussian band mass") {
  std::mt19937_64 rng(3);
  std::normal_distribution<double> g(0.0, 1.0);
  std::vector<double> x(200000);
  for (auto& v : x) v = g(rng);
  for (double alpha : {0.2, 0.4, 0.7, 1.0}) {
    const auto th = compute_thresholds(x, alpha);
    const double frac = static_cast<double>(drop_indices(x, th).indices.size()) /
                        static_cast<double>(x.size());
    CHECK(frac == doctest::Approx(std::erf(alpha / std::sqrt(2.0))).epsilon(0.02));
  }
}

TEST_CASE("kept index inside the band is a desync") {
  const std::vector<double> x{1, 2, 3, 4, 5};
  const auto th = compute_thresholds(x, 0.5);
  const std::vector<std::size_t> kept{2};
  try {
    extract_bits(x, th, kept);
    FAIL("expected desync");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::Desync);
  }
}

TEST_CASE("quantizer input validation") {
  const std::vector<double> one{1.0};
  CHECK_THROWS_AS(compute_thresholds(one, 0.5), Error);
  const std::vector<double> x{1, 2};
  CHECK_THROWS_AS(compute_thresholds(x, -0.1), Error);
  CHECK_THROWS_AS(compute_thresholds(x, NAN), Error);
  CHECK_THROWS_AS(merge_kept(DropList{{5}}, DropList{}, 3), Error);
  CHECK_THROWS_AS(merge_kept(DropList{{1, 1}}, DropList{}, 3), Error);
}
