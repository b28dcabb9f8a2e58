// Copyright 2026 SKECE contributors. Licensed under the Apache License,
// Version 2.0. See http://www.apache.org/licenses/LICENSE-2.0

#pragma once

#include <cstddef>
#include <cstdint>

#include "skece/bits.hpp"
#include "skece/wire.hpp"

namespace skece {

struct CascadeConfig {
  std::size_t initial_block_size = 16;
  unsigned rounds = 4;
  std::uint64_t rng_seed = 0;  // public; drives the per-round permutations

  void validate() const;
};

struct ReconciliationOutcome {
  BitStream corrected;  // Bob's stream after all flips
  std::size_t messages_a_to_b = 0;
  std::size_t messages_b_to_a = 0;
  std::size_t bits_leaked = 0;  // parities disclosed by Alice
  unsigned rounds_run = 0;
  // True when a round found every block parity equal. With an even number of
  // errors left in every block this happens without convergence.
  bool clean_round = false;
  Transcript transcript;

  std::size_t messages_sent() const { return messages_a_to_b + messages_b_to_a; }
};

// Cascade between Alice's stream a and Bob's stream b; Bob's copy is corrected.
// Per round, both sides permute with the shared seed and split into blocks of
// initial_block_size * 2^round bits. One PARITY message per direction carries
// all block parities of the round; each bisection step is a BISECT request
// from Bob and a one-bit reply from Alice. A corrected bit re-opens the blocks
// of earlier rounds that contain it. Stops after the first round with no odd
// block, or after cfg.rounds rounds.
ReconciliationOutcome cascade_reconcile(const BitStream& a, const BitStream& b,
                                        const CascadeConfig& cfg);

}  // namespace skece
