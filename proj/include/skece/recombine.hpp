// Copyright 2026 SKECE contributors. Licensed under the Apache License,
// Version 2.0. See http://www.apache.org/licenses/LICENSE-2.0

#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "skece/bits.hpp"

namespace skece {

// Unit-cost Levenshtein distance between two bit strings.
std::size_t edit_distance(std::span<const std::uint8_t> a, std::span<const std::uint8_t> b);

// Alice's public probe: the reference string X and her distances mod theta.
// Bob answers with the same structure and an empty X.
struct DiffProbe {
  std::vector<std::uint8_t> x;
  std::vector<unsigned> d_mod;
  unsigned theta = 5;

  bool operator==(const DiffProbe&) const = default;
};

DiffProbe make_diff_probe(std::span<const BitStream> streams,
                          std::vector<std::uint8_t> x, unsigned theta);

// theta (1 byte), m (2 bytes BE), m residues (1 byte each), X bit length
// (4 bytes BE) and X packed MSB-first.
std::vector<std::uint8_t> encode_diff_probe(const DiffProbe& probe);
DiffProbe decode_diff_probe(std::span<const std::uint8_t> bytes);

enum class DiffMetric {
  AsWritten,  // |a mod theta - b mod theta|
  Circular,   // min(d, theta - d) of the above
};

struct DiffDegrees {
  std::vector<unsigned> d_tilde;
  unsigned theta = 5;
};

DiffDegrees difference_degree(std::span<const std::size_t> d_a,
                              std::span<const std::size_t> d_b, unsigned theta,
                              DiffMetric metric = DiffMetric::AsWritten);

// omega_i = (theta - d_i) / sum_j (theta - d_j).
std::vector<double> weights(const DiffDegrees& dd);

struct Allocation {
  std::vector<double> weights;
  std::vector<std::size_t> raw_picks;  // ceil(L * omega_i)
  std::vector<std::size_t> picks;      // repaired, sums to key_length
  std::size_t key_length = 0;
};

// Raw picks are ceil(L * omega_i). The excess is removed one bit at a time
// from the stream with the most picks (lowest index on ties). Picks above a
// stream's length are capped first and the shortfall is handed, one bit at a
// time, to the stream with the most picks that still has room. An empty
// stream_lengths span means unbounded streams.
Allocation allocate(std::span<const double> weights, std::size_t key_length,
                    std::span<const std::size_t> stream_lengths = {});

struct Selection {
  std::size_t stream = 0;
  std::size_t position = 0;

  bool operator==(const Selection&) const = default;
};

struct RecombinationPlan {
  std::uint64_t seed = 0;
  std::vector<Selection> selections;

  bool operator==(const RecombinationPlan&) const = default;
};

// Positions drawn without replacement per stream from a generator seeded by
// (seed, stream index); ordered by stream, then draw order.
RecombinationPlan plan(std::uint64_t seed, const Allocation& allocation,
                       std::span<const std::size_t> stream_lengths);

BitStream recombine(std::span<const BitStream> streams, const RecombinationPlan& plan,
                    StreamOrigin origin = {});

// Per stream, prod_{t=0}^{picks_i} max(0, 1 - d_hat_i / (L - t)); the result
// is 1 - (1 - prod_i Pr_i)^rounds, clamped to [0, 1].
double stream_success_probability(std::size_t d_hat, std::size_t picks, std::size_t length);
double success_probability(std::span<const std::size_t> d_hat,
                           std::span<const std::size_t> picks, std::size_t length,
                           unsigned rounds);

}  // namespace skece
