// Copyright 2026 SKECE contributors. Licensed under the Apache License,
// Version 2.0. See http://www.apache.org/licenses/LICENSE-2.0

#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace skece {

enum class Party : std::uint8_t { Alice = 0, Bob = 1, Eve = 2 };

const char* to_string(Party party);

struct StreamOrigin {
  Party party = Party::Alice;
  std::size_t index = 0;

  bool operator==(const StreamOrigin&) const = default;
};

// Ordered 0/1 sequence. One byte per bit; every element is 0 or 1.
struct BitStream {
  std::vector<std::uint8_t> bits;
  StreamOrigin origin;

  std::size_t size() const { return bits.size(); }
  bool empty() const { return bits.empty(); }
  std::uint8_t operator[](std::size_t i) const { return bits[i]; }

  // Equality compares bit content only; provenance differs between parties.
  bool operator==(const BitStream& other) const { return bits == other.bits; }

  static BitStream from_string(std::string_view zeros_and_ones,
                               StreamOrigin origin = {});
  std::string to_string() const;
};

// MSB-first packing; the final partial byte is zero-padded.
std::vector<std::uint8_t> pack_bits(std::span<const std::uint8_t> bits);
std::vector<std::uint8_t> unpack_bits(std::span<const std::uint8_t> bytes,
                                      std::size_t bit_count);

// Derives an independent 64-bit seed for a named sub-stream.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream);

// Uniform integer in [0, bound) from raw engine output, identical on every
// platform (std::uniform_int_distribution is not).
std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t bound);

std::vector<std::uint8_t> random_bits(std::mt19937_64& rng, std::size_t n);

}  // namespace skece
