// Copyright 2026 SKECE contributors. Licensed under the Apache License,
// Version 2.0. See http://www.apache.org/licenses/LICENSE-2.0

#include "skece/cascade.hpp"

#include <deque>
#include <numeric>
#include <random>

#include "skece/error.hpp"

namespace skece {

void CascadeConfig::validate() const {
  if (initial_block_size < 1) fail(ErrorCode::InvalidArgument, "cascade: block size must be >= 1");
  if (rounds < 1) fail(ErrorCode::InvalidArgument, "cascade: rounds must be >= 1");
}

namespace {

struct Pass {
  std::vector<std::size_t> perm;         // permuted position -> stream index
  std::vector<std::size_t> block_of;     // stream index -> block
  std::size_t block_size = 0;
  std::vector<std::uint8_t> alice_parity;

  std::size_t blocks() const { return alice_parity.size(); }
  std::size_t begin(std::size_t blk) const { return blk * block_size; }
  std::size_t end(std::size_t blk) const { return std::min(perm.size(), (blk + 1) * block_size); }
};

std::uint8_t parity(const std::vector<std::uint8_t>& bits, const Pass& p, std::size_t lo,
                    std::size_t hi) {
  std::uint8_t x = 0;
  for (std::size_t k = lo; k < hi; ++k) x ^= bits[p.perm[k]];
  return x;
}

std::vector<std::uint8_t> parity_payload(unsigned round, const std::vector<std::uint8_t>& par) {
  std::vector<std::uint8_t> out{static_cast<std::uint8_t>(round)};
  const auto n = static_cast<std::uint32_t>(par.size());
  for (int k = 0; k < 4; ++k) out.push_back(static_cast<std::uint8_t>(n >> (24 - 8 * k)));
  const auto packed = pack_bits(par);
  out.insert(out.end(), packed.begin(), packed.end());
  return out;
}

std::vector<std::uint8_t> bisect_request(unsigned round, std::size_t lo, std::size_t mid) {
  std::vector<std::uint8_t> out{static_cast<std::uint8_t>(round)};
  for (auto v : {lo, mid}) {
    const auto w = static_cast<std::uint32_t>(v);
    for (int k = 0; k < 4; ++k) out.push_back(static_cast<std::uint8_t>(w >> (24 - 8 * k)));
  }
  return out;
}

}  // namespace

ReconciliationOutcome cascade_reconcile(const BitStream& a, const BitStream& b,
                                        const CascadeConfig& cfg) {
  cfg.validate();
  if (a.size() != b.size()) {
    fail(ErrorCode::InvalidArgument, "cascade: streams differ in length (" +
                                         std::to_string(a.size()) + " vs " +
                                         std::to_string(b.size()) + ")");
  }
  const std::size_t n = a.size();
  ReconciliationOutcome out;
  out.corrected = b;
  auto& bob = out.corrected.bits;
  const auto& alice = a.bits;

  auto send = [&](MessageType type, Direction dir, std::vector<std::uint8_t> payload) {
    (dir == Direction::AliceToBob ? out.messages_a_to_b : out.messages_b_to_a) += 1;
    out.transcript.record({type, std::move(payload), dir});
  };

  std::vector<Pass> passes;

  // Binary search inside one block; returns the stream index Bob flips.
  auto bisect = [&](unsigned round, std::size_t blk) {
    const Pass& p = passes[round];
    std::size_t lo = p.begin(blk), hi = p.end(blk);
    while (hi - lo > 1) {
      const std::size_t mid = lo + (hi - lo) / 2;
      send(MessageType::Bisect, Direction::BobToAlice, bisect_request(round, lo, mid));
      const std::uint8_t theirs = parity(alice, p, lo, mid);
      send(MessageType::Bisect, Direction::AliceToBob, {theirs});
      ++out.bits_leaked;
      if (theirs != parity(bob, p, lo, mid)) {
        hi = mid;
      } else {
        lo = mid;
      }
    }
    return p.perm[lo];
  };

  for (unsigned round = 0; round < cfg.rounds; ++round) {
    Pass p;
    p.perm.resize(n);
    std::iota(p.perm.begin(), p.perm.end(), std::size_t{0});
    std::mt19937_64 rng(derive_seed(cfg.rng_seed, round));
    for (std::size_t k = n; k > 1; --k) {
      std::swap(p.perm[k - 1], p.perm[uniform_below(rng, k)]);
    }
    p.block_size = std::max<std::size_t>(1, cfg.initial_block_size << round);
    p.block_size = std::min(p.block_size, std::max<std::size_t>(n, 1));
    const std::size_t blocks = n == 0 ? 0 : (n + p.block_size - 1) / p.block_size;
    p.block_of.resize(n);
    for (std::size_t k = 0; k < n; ++k) p.block_of[p.perm[k]] = k / p.block_size;
    std::vector<std::uint8_t> bob_parity(blocks);
    p.alice_parity.resize(blocks);
    for (std::size_t blk = 0; blk < blocks; ++blk) {
      p.alice_parity[blk] = parity(alice, p, p.begin(blk), p.end(blk));
      bob_parity[blk] = parity(bob, p, p.begin(blk), p.end(blk));
    }
    send(MessageType::Parity, Direction::AliceToBob, parity_payload(round, p.alice_parity));
    send(MessageType::Parity, Direction::BobToAlice, parity_payload(round, bob_parity));
    out.bits_leaked += blocks;
    passes.push_back(std::move(p));
    out.rounds_run = round + 1;

    std::deque<std::pair<unsigned, std::size_t>> odd;
    for (std::size_t blk = 0; blk < blocks; ++blk) {
      if (bob_parity[blk] != passes[round].alice_parity[blk]) odd.emplace_back(round, blk);
    }
    if (odd.empty()) {
      out.clean_round = true;
      break;
    }

    while (!odd.empty()) {
      const auto [r, blk] = odd.front();
      odd.pop_front();
      const Pass& q = passes[r];
      if (parity(bob, q, q.begin(blk), q.end(blk)) == q.alice_parity[blk]) continue;
      const std::size_t pos = bisect(r, blk);
      bob[pos] ^= 1;
      for (unsigned other = 0; other <= round; ++other) {
        if (other == r) continue;
        const Pass& o = passes[other];
        const std::size_t ob = o.block_of[pos];
        if (parity(bob, o, o.begin(ob), o.end(ob)) != o.alice_parity[ob]) {
          odd.emplace_back(other, ob);
        }
      }
    }
  }
  return out;
}

}  // namespace skece
