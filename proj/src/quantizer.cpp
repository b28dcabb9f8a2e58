// Copyright 2026 SKECE contributors. Licensed under the Apache License,
// Version 2.0. See http://www.apache.org/licenses/LICENSE-2.0

#include "skece/quantizer.hpp"

#include <cmath>
#include <string>

#include "skece/error.hpp"

namespace skece {

Thresholds compute_thresholds(std::span<const double> samples, double alpha) {
  if (samples.size() < 2) {
    fail(ErrorCode::InvalidArgument, "thresholds need at least 2 samples");
  }
  if (!(alpha >= 0.0) || !std::isfinite(alpha)) {
    fail(ErrorCode::InvalidArgument, "alpha must be finite and >= 0");
  }
  double sum = 0.0;
  for (double x : samples) {
    if (!std::isfinite(x)) fail(ErrorCode::InvalidArgument, "non-finite sample");
    sum += x;
  }
  const double n = static_cast<double>(samples.size());
  const double mu = sum / n;
  double ss = 0.0;
  for (double x : samples) ss += (x - mu) * (x - mu);
  const double sigma = std::sqrt(ss / n);

  Thresholds th;
  th.alpha = alpha;
  th.mu = mu;
  th.sigma = sigma;
  th.q_plus = mu + alpha * sigma;
  th.q_minus = mu - alpha * sigma;
  return th;
}

DropList drop_indices(std::span<const double> samples, const Thresholds& th) {
  DropList out;
  for (std::size_t j = 0; j < samples.size(); ++j) {
    if (th.inside_band(samples[j])) out.indices.push_back(j);
  }
  return out;
}

std::vector<std::size_t> merge_kept(const DropList& drop_a, const DropList& drop_b,
                                    std::size_t n) {
  std::vector<bool> dropped(n, false);
  for (const DropList* list : {&drop_a, &drop_b}) {
    for (std::size_t k = 0; k < list->indices.size(); ++k) {
      const std::size_t j = list->indices[k];
      if (j >= n) {
        fail(ErrorCode::InvalidArgument, "drop index " + std::to_string(j) +
                                             " out of range for " + std::to_string(n) +
                                             " samples");
      }
      if (k > 0 && j <= list->indices[k - 1]) {
        fail(ErrorCode::InvalidArgument, "drop list not strictly increasing");
      }
      dropped[j] = true;
    }
  }
  std::vector<std::size_t> kept;
  for (std::size_t j = 0; j < n; ++j) {
    if (!dropped[j]) kept.push_back(j);
  }
  return kept;
}

BitStream extract_bits(std::span<const double> samples, const Thresholds& th,
                       std::span<const std::size_t> kept, StreamOrigin origin) {
  BitStream out;
  out.origin = origin;
  out.bits.reserve(kept.size());
  for (std::size_t j : kept) {
    if (j >= samples.size()) {
      fail(ErrorCode::InvalidArgument, "kept index " + std::to_string(j) + " out of range");
    }
    const double x = samples[j];
    if (x >= th.q_plus) {
      out.bits.push_back(1);
    } else if (x <= th.q_minus) {
      out.bits.push_back(0);
    } else {
      fail(ErrorCode::Desync, "kept index " + std::to_string(j) +
                                  " lies inside the drop band; drop lists out of sync");
    }
  }
  return out;
}

}  // namespace skece
