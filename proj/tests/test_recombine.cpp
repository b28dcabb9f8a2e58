// Copyright 2026 SKECE contributors. Licensed under the Apache License,
// Version 2.0. See http://www.apache.org/licenses/LICENSE-2.0

#include <algorithm>
#include <numeric>
#include <random>
#include <set>
#include <vector>

#include "doctest.h"
#include "skece/error.hpp"
#include "skece/recombine.hpp"
#include "skece/wire.hpp"

using namespace skece;

namespace {

std::vector<std::uint8_t> bits(const char* s) { return BitStream::from_string(s).bits; }

std::size_t naive_edit(const std::vector<std::uint8_t>& a, std::size_t i,
                       const std::vector<std::uint8_t>& b, std::size_t j) {
  if (i == a.size()) return b.size() - j;
  if (j == b.size()) return a.size() - i;
  return std::min({naive_edit(a, i + 1, b, j) + 1, naive_edit(a, i, b, j + 1) + 1,
                   naive_edit(a, i + 1, b, j + 1) + (a[i] != b[j])});
}

}  // namespace

TEST_CASE("edit distance: hand cases") {
  CHECK(edit_distance(bits(""), bits("111")) == 3);
  CHECK(edit_distance(bits("0101"), bits("1010")) == 2);
  CHECK(edit_distance(bits("0000"), bits("0000")) == 0);
  CHECK(edit_distance(bits("0110"), bits("0100")) == 1);
  CHECK(edit_distance(bits("11100"), bits("0111")) == 3);
}

TEST_CASE("edit distance agrees with the recursive definition") {
  std::mt19937_64 rng(11);
  for (int k = 0; k < 500; ++k) {
    const auto a = random_bits(rng, uniform_below(rng, 9));
    const auto b = random_bits(rng, uniform_below(rng, 9));
    CHECK(edit_distance(a, b) == naive_edit(a, 0, b, 0));
  }
}

TEST_CASE("difference degree, both metrics") {
  const std::vector<std::size_t> da{7, 3, 0}, db{4, 4, 4};
  const auto plain = difference_degree(da, db, 5);
  CHECK(plain.d_tilde == std::vector<unsigned>{2, 1, 4});
  const auto circ = difference_degree(da, db, 5, DiffMetric::Circular);
  CHECK(circ.d_tilde == std::vector<unsigned>{2, 1, 1});
  CHECK_THROWS_AS(difference_degree(da, std::vector<std::size_t>{1}, 5), Error);
}

TEST_CASE("weights are normalized complements of the degree") {
  const auto w = weights(DiffDegrees{{0, 1, 4}, 5});
  REQUIRE(w.size() == 3);
  CHECK(w[0] == doctest::Approx(0.5));
  CHECK(w[1] == doctest::Approx(0.4));
  CHECK(w[2] == doctest::Approx(0.1));
  CHECK(std::accumulate(w.begin(), w.end(), 0.0) == doctest::Approx(1.0));
  CHECK_THROWS_AS(weights(DiffDegrees{{5}, 5}), Error);
}

TEST_CASE("allocation: exact split") {
  const std::vector<double> w{0.5, 0.4, 0.1};
  const auto a = allocate(w, 300);
  CHECK(a.raw_picks == std::vector<std::size_t>{150, 120, 30});
  CHECK(a.picks == a.raw_picks);
}

TEST_CASE("allocation: ceiling excess removed from the largest, lowest index first") {
  const std::vector<double> w{1.0 / 3, 1.0 / 3, 1.0 / 3};
  const auto a = allocate(w, 100);
  CHECK(a.raw_picks == std::vector<std::size_t>{34, 34, 34});
  CHECK(a.picks == std::vector<std::size_t>{33, 33, 34});
}

TEST_CASE("allocation: caps at stream length and redistributes") {
  const std::vector<double> w{0.9, 0.1};
  const std::vector<std::size_t> len{50, 60};
  const auto a = allocate(w, 100, len);
  CHECK(a.picks == std::vector<std::size_t>{50, 50});
  const std::vector<std::size_t> tiny{10, 10};
  try {
    allocate(w, 30, tiny);
    FAIL("expected insufficient material");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::InsufficientMaterial);
  }
}

TEST_CASE("allocation always sums to L within the caps") {
  std::mt19937_64 rng(4);
  for (int k = 0; k < 300; ++k) {
    const std::size_t m = 1 + uniform_below(rng, 30);
    std::vector<unsigned> d(m);
    std::vector<std::size_t> len(m);
    for (std::size_t i = 0; i < m; ++i) {
      d[i] = static_cast<unsigned>(uniform_below(rng, 5));
      len[i] = 1 + uniform_below(rng, 400);
    }
    const std::size_t total = std::accumulate(len.begin(), len.end(), std::size_t{0});
    const std::size_t L = 1 + uniform_below(rng, total);
    const auto a = allocate(weights(DiffDegrees{d, 5}), L, len);
    CHECK(std::accumulate(a.picks.begin(), a.picks.end(), std::size_t{0}) == L);
    for (std::size_t i = 0; i < m; ++i) CHECK(a.picks[i] <= len[i]);
  }
}

TEST_CASE("plans are deterministic, distinct per stream and stream-ordered") {
  const std::vector<double> w{0.5, 0.3, 0.2};
  const std::vector<std::size_t> len{100, 80, 60};
  const auto a = allocate(w, 90, len);
  const auto p = plan(42, a, len);
  CHECK(p == plan(42, a, len));
  CHECK_FALSE(p == plan(43, a, len));
  REQUIRE(p.selections.size() == 90);
  std::vector<std::set<std::size_t>> seen(3);
  std::size_t last_stream = 0;
  for (const auto& s : p.selections) {
    CHECK(s.stream >= last_stream);
    last_stream = s.stream;
    CHECK(s.position < len[s.stream]);
    CHECK(seen[s.stream].insert(s.position).second);
  }
  for (std::size_t i = 0; i < 3; ++i) CHECK(seen[i].size() == a.picks[i]);
}

TEST_CASE("recombine reads the planned bits") {
  const std::vector<BitStream> s{BitStream::from_string("0011"), BitStream::from_string("10")};
  RecombinationPlan p;
  p.selections = {{0, 3}, {0, 0}, {1, 0}};
  CHECK(recombine(s, p).to_string() == "101");
  p.selections.push_back({1, 2});
  try {
    recombine(s, p);
    FAIL("expected desync");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::Desync);
  }
}

TEST_CASE("success probability telescopes for a single mismatch") {
  // prod_{t=0}^{l} (1 - 1/(L-t)) = (L-l-1)/L
  for (std::size_t l : {0u, 1u, 5u, 50u, 298u}) {
    CHECK(stream_success_probability(1, l, 300) ==
          doctest::Approx(static_cast<double>(300 - l - 1) / 300.0));
  }
  CHECK(stream_success_probability(0, 100, 300) == 1.0);
  CHECK(stream_success_probability(2, 1, 10) == doctest::Approx(0.8 * 7.0 / 9.0));
  CHECK_THROWS_AS(stream_success_probability(1, 300, 300), Error);

  const std::vector<std::size_t> d{1, 0}, l{1, 3};
  const double single = 0.8;
  CHECK(success_probability(d, l, 10, 1) == doctest::Approx(single));
  CHECK(success_probability(d, l, 10, 3) == doctest::Approx(1 - 0.2 * 0.2 * 0.2));
}

TEST_CASE("diff vector wire layout") {
  DiffProbe p;
  p.theta = 5;
  p.d_mod = {1, 4};
  p.x = bits("101");
  const auto bytes = encode_diff_probe(p);
  CHECK(to_hex(bytes) == "0500020104" "00000003" "a0");
  CHECK(decode_diff_probe(bytes) == p);
  auto bad = bytes;
  bad[3] = 5;
  CHECK_THROWS_AS(decode_diff_probe(bad), Error);
  bad = bytes;
  bad.pop_back();
  CHECK_THROWS_AS(decode_diff_probe(bad), Error);
}

TEST_CASE("diff probe residues are distances mod theta") {
  const std::vector<BitStream> s{BitStream::from_string("000000"),
                                 BitStream::from_string("111111")};
  const auto p = make_diff_probe(s, bits("000000"), 5);
  CHECK(p.d_mod == std::vector<unsigned>{0, 1});
}
