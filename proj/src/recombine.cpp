// Copyright 2026 SKECE contributors. Licensed under the Apache License,
// Version 2.0. See http://www.apache.org/licenses/LICENSE-2.0

#include "skece/recombine.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <string>

#include "skece/error.hpp"

namespace skece {

std::size_t edit_distance(std::span<const std::uint8_t> a, std::span<const std::uint8_t> b) {
  if (a.size() < b.size()) std::swap(a, b);
  std::vector<std::size_t> row(b.size() + 1);
  std::iota(row.begin(), row.end(), std::size_t{0});
  for (std::size_t i = 1; i <= a.size(); ++i) {
    std::size_t diag = row[0];
    row[0] = i;
    for (std::size_t j = 1; j <= b.size(); ++j) {
      const std::size_t up = row[j];
      row[j] = std::min({up + 1, row[j - 1] + 1, diag + (a[i - 1] != b[j - 1] ? 1u : 0u)});
      diag = up;
    }
  }
  return row[b.size()];
}

DiffProbe make_diff_probe(std::span<const BitStream> streams, std::vector<std::uint8_t> x,
                          unsigned theta) {
  if (theta < 2) fail(ErrorCode::InvalidArgument, "theta must be >= 2");
  DiffProbe probe;
  probe.theta = theta;
  probe.d_mod.reserve(streams.size());
  for (const auto& s : streams) {
    probe.d_mod.push_back(static_cast<unsigned>(edit_distance(s.bits, x) % theta));
  }
  probe.x = std::move(x);
  return probe;
}

std::vector<std::uint8_t> encode_diff_probe(const DiffProbe& p) {
  if (p.theta < 2 || p.theta > 255) fail(ErrorCode::InvalidArgument, "theta must fit one byte");
  if (p.d_mod.size() > 0xFFFF) fail(ErrorCode::InvalidArgument, "too many streams");
  std::vector<std::uint8_t> out;
  out.push_back(static_cast<std::uint8_t>(p.theta));
  out.push_back(static_cast<std::uint8_t>(p.d_mod.size() >> 8));
  out.push_back(static_cast<std::uint8_t>(p.d_mod.size()));
  for (unsigned d : p.d_mod) {
    if (d >= p.theta) fail(ErrorCode::InvalidArgument, "residue not reduced mod theta");
    out.push_back(static_cast<std::uint8_t>(d));
  }
  const auto n = static_cast<std::uint32_t>(p.x.size());
  for (int k = 0; k < 4; ++k) out.push_back(static_cast<std::uint8_t>(n >> (24 - 8 * k)));
  const auto packed = pack_bits(p.x);
  out.insert(out.end(), packed.begin(), packed.end());
  return out;
}

DiffProbe decode_diff_probe(std::span<const std::uint8_t> bytes) {
  if (bytes.size() < 3) fail(ErrorCode::Parse, "diff vector: truncated header");
  DiffProbe p;
  p.theta = bytes[0];
  if (p.theta < 2) fail(ErrorCode::Parse, "diff vector: theta < 2");
  const std::size_t m = (std::size_t{bytes[1]} << 8) | bytes[2];
  if (bytes.size() < 3 + m + 4) fail(ErrorCode::Parse, "diff vector: truncated residues");
  for (std::size_t i = 0; i < m; ++i) {
    const unsigned d = bytes[3 + i];
    if (d >= p.theta) fail(ErrorCode::Parse, "diff vector: residue >= theta");
    p.d_mod.push_back(d);
  }
  std::size_t off = 3 + m;
  std::uint32_t n = 0;
  for (int k = 0; k < 4; ++k) n = (n << 8) | bytes[off + k];
  off += 4;
  const std::size_t packed = (std::size_t{n} + 7) / 8;
  if (bytes.size() != off + packed) {
    fail(ErrorCode::Parse, "diff vector: X needs " + std::to_string(packed) + " bytes, got " +
                               std::to_string(bytes.size() - off));
  }
  p.x = unpack_bits(bytes.subspan(off), n);
  return p;
}

DiffDegrees difference_degree(std::span<const std::size_t> d_a,
                              std::span<const std::size_t> d_b, unsigned theta,
                              DiffMetric metric) {
  if (d_a.size() != d_b.size()) {
    fail(ErrorCode::InvalidArgument, "distance vectors differ in length");
  }
  if (theta < 2) fail(ErrorCode::InvalidArgument, "theta must be >= 2");
  DiffDegrees dd;
  dd.theta = theta;
  dd.d_tilde.reserve(d_a.size());
  for (std::size_t i = 0; i < d_a.size(); ++i) {
    const auto ra = static_cast<long>(d_a[i] % theta);
    const auto rb = static_cast<long>(d_b[i] % theta);
    auto d = static_cast<unsigned>(std::labs(ra - rb));
    if (metric == DiffMetric::Circular) d = std::min(d, theta - d);
    dd.d_tilde.push_back(d);
  }
  return dd;
}

std::vector<double> weights(const DiffDegrees& dd) {
  if (dd.d_tilde.empty()) fail(ErrorCode::InvalidArgument, "weights need at least one stream");
  std::size_t total = 0;
  for (unsigned d : dd.d_tilde) {
    if (d >= dd.theta) fail(ErrorCode::InvalidArgument, "difference degree >= theta");
    total += dd.theta - d;
  }
  std::vector<double> w;
  w.reserve(dd.d_tilde.size());
  for (unsigned d : dd.d_tilde) {
    w.push_back(static_cast<double>(dd.theta - d) / static_cast<double>(total));
  }
  return w;
}

Allocation allocate(std::span<const double> w, std::size_t key_length,
                    std::span<const std::size_t> stream_lengths) {
  if (key_length < 1) fail(ErrorCode::InvalidArgument, "key length must be >= 1");
  if (w.empty()) fail(ErrorCode::InvalidArgument, "allocation needs at least one stream");
  const bool bounded = !stream_lengths.empty();
  if (bounded && stream_lengths.size() != w.size()) {
    fail(ErrorCode::InvalidArgument, "stream length count differs from weight count");
  }
  if (bounded) {
    const std::size_t available =
        std::accumulate(stream_lengths.begin(), stream_lengths.end(), std::size_t{0});
    if (available < key_length) {
      fail(ErrorCode::InsufficientMaterial,
           "streams hold " + std::to_string(available) + " bits, key needs " +
               std::to_string(key_length));
    }
  }

  Allocation a;
  a.key_length = key_length;
  a.weights.assign(w.begin(), w.end());
  const double L = static_cast<double>(key_length);
  for (double omega : w) {
    if (!(omega >= 0.0)) fail(ErrorCode::InvalidArgument, "negative weight");
    // The tolerance absorbs representation error in L * omega for exact
    // rational weights such as 5/6 * 300.
    a.raw_picks.push_back(static_cast<std::size_t>(std::ceil(L * omega - 1e-9)));
  }

  auto& p = a.picks;
  p = a.raw_picks;
  auto cap = [&](std::size_t i) {
    return bounded ? stream_lengths[i] : static_cast<std::size_t>(-1);
  };
  for (std::size_t i = 0; i < p.size(); ++i) p[i] = std::min(p[i], cap(i));

  std::size_t sum = std::accumulate(p.begin(), p.end(), std::size_t{0});
  while (sum > key_length) {
    std::size_t best = 0;
    for (std::size_t i = 1; i < p.size(); ++i) {
      if (p[i] > p[best]) best = i;
    }
    --p[best];
    --sum;
  }
  while (sum < key_length) {
    std::size_t best = p.size();
    for (std::size_t i = 0; i < p.size(); ++i) {
      if (p[i] < cap(i) && (best == p.size() || p[i] > p[best])) best = i;
    }
    ++p[best];
    ++sum;
  }
  return a;
}

RecombinationPlan plan(std::uint64_t seed, const Allocation& allocation,
                       std::span<const std::size_t> stream_lengths) {
  if (stream_lengths.size() != allocation.picks.size()) {
    fail(ErrorCode::InvalidArgument, "stream length count differs from allocation");
  }
  RecombinationPlan out;
  out.seed = seed;
  out.selections.reserve(allocation.key_length);
  std::vector<std::size_t> positions;
  for (std::size_t i = 0; i < stream_lengths.size(); ++i) {
    const std::size_t n = stream_lengths[i];
    const std::size_t l = allocation.picks[i];
    if (l > n) {
      fail(ErrorCode::InvalidArgument, "stream " + std::to_string(i) + " has " +
                                           std::to_string(n) + " bits, plan wants " +
                                           std::to_string(l));
    }
    if (l == 0) continue;
    std::mt19937_64 rng(derive_seed(seed, i));
    positions.resize(n);
    std::iota(positions.begin(), positions.end(), std::size_t{0});
    for (std::size_t k = 0; k < l; ++k) {
      const std::size_t j = k + uniform_below(rng, n - k);
      std::swap(positions[k], positions[j]);
      out.selections.push_back({i, positions[k]});
    }
  }
  return out;
}

BitStream recombine(std::span<const BitStream> streams, const RecombinationPlan& plan,
                    StreamOrigin origin) {
  BitStream out;
  out.origin = origin;
  out.bits.reserve(plan.selections.size());
  for (const auto& sel : plan.selections) {
    if (sel.stream >= streams.size() || sel.position >= streams[sel.stream].size()) {
      fail(ErrorCode::Desync, "plan selects stream " + std::to_string(sel.stream) +
                                  " position " + std::to_string(sel.position) +
                                  " which does not exist");
    }
    out.bits.push_back(streams[sel.stream].bits[sel.position]);
  }
  return out;
}

double stream_success_probability(std::size_t d_hat, std::size_t picks, std::size_t length) {
  if (d_hat > length) fail(ErrorCode::InvalidArgument, "mismatch count exceeds length");
  if (picks >= length) {
    fail(ErrorCode::InvalidArgument, "degenerate product: L - t reaches 0 for t <= " +
                                         std::to_string(picks));
  }
  double pr = 1.0;
  for (std::size_t t = 0; t <= picks; ++t) {
    const double factor = 1.0 - static_cast<double>(d_hat) / static_cast<double>(length - t);
    pr *= std::max(0.0, factor);
  }
  return pr;
}

double success_probability(std::span<const std::size_t> d_hat,
                           std::span<const std::size_t> picks, std::size_t length,
                           unsigned rounds) {
  if (d_hat.size() != picks.size()) {
    fail(ErrorCode::InvalidArgument, "d_hat and picks differ in length");
  }
  double all = 1.0;
  for (std::size_t i = 0; i < d_hat.size(); ++i) {
    all *= stream_success_probability(d_hat[i], picks[i], length);
  }
  const double overall = 1.0 - std::pow(1.0 - all, static_cast<double>(rounds));
  return std::clamp(overall, 0.0, 1.0);
}

}  // namespace skece
