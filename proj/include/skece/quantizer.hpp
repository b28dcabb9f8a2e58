// Copyright 2026 SKECE contributors. Licensed under the Apache License,
// Version 2.0. See http://www.apache.org/licenses/LICENSE-2.0

#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "skece/bits.hpp"

namespace skece {

// q_plus = mu + alpha*sigma, q_minus = mu - alpha*sigma, with mu the mean and
// sigma the population standard deviation of the whole trace.
struct Thresholds {
  double q_plus = 0.0;
  double q_minus = 0.0;
  double alpha = 0.0;
  double mu = 0.0;
  double sigma = 0.0;

  // Open band: samples strictly between the thresholds are dropped.
  bool inside_band(double x) const { return q_minus < x && x < q_plus; }
};

// Sample indices a party drops, strictly increasing.
struct DropList {
  std::vector<std::size_t> indices;

  bool operator==(const DropList&) const = default;
};

Thresholds compute_thresholds(std::span<const double> samples, double alpha);

DropList drop_indices(std::span<const double> samples, const Thresholds& th);

// Indices in [0, n) dropped by neither party, ascending.
std::vector<std::size_t> merge_kept(const DropList& drop_a, const DropList& drop_b,
                                    std::size_t n);

// 1 for samples >= q_plus, 0 for samples <= q_minus. A kept index that lies
// inside the open band means the parties' drop lists are out of sync and
// raises Error(Desync).
BitStream extract_bits(std::span<const double> samples, const Thresholds& th,
                       std::span<const std::size_t> kept, StreamOrigin origin = {});

}  // namespace skece
