// Copyright 2026 SKECE contributors. Licensed under the Apache License,
// Version 2.0. See http://www.apache.org/licenses/LICENSE-2.0

#include "skece/bits.hpp"

#include "skece/error.hpp"

namespace skece {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument: return "invalid_argument";
    case ErrorCode::Parse: return "parse_error";
    case ErrorCode::Io: return "io_error";
    case ErrorCode::Protocol: return "protocol_error";
    case ErrorCode::InsufficientMaterial: return "insufficient_material";
    case ErrorCode::Desync: return "desync";
  }
  return "unknown";
}

const char* to_string(Party party) {
  switch (party) {
    case Party::Alice: return "alice";
    case Party::Bob: return "bob";
    case Party::Eve: return "eve";
  }
  return "unknown";
}

BitStream BitStream::from_string(std::string_view s, StreamOrigin origin) {
  BitStream out;
  out.origin = origin;
  out.bits.reserve(s.size());
  for (char c : s) {
    if (c != '0' && c != '1') {
      fail(ErrorCode::InvalidArgument,
           std::string("bit string contains '") + c + "'");
    }
    out.bits.push_back(c == '1' ? 1 : 0);
  }
  return out;
}

std::string BitStream::to_string() const {
  std::string s;
  s.reserve(bits.size());
  for (auto b : bits) s.push_back(b ? '1' : '0');
  return s;
}

std::vector<std::uint8_t> pack_bits(std::span<const std::uint8_t> bits) {
  std::vector<std::uint8_t> out((bits.size() + 7) / 8, 0);
  for (std::size_t i = 0; i < bits.size(); ++i) {
    if (bits[i]) out[i / 8] |= static_cast<std::uint8_t>(0x80u >> (i % 8));
  }
  return out;
}

std::vector<std::uint8_t> unpack_bits(std::span<const std::uint8_t> bytes,
                                      std::size_t bit_count) {
  if (bit_count > bytes.size() * 8) {
    fail(ErrorCode::Parse, "packed bit field holds " +
                               std::to_string(bytes.size() * 8) +
                               " bits, expected " + std::to_string(bit_count));
  }
  std::vector<std::uint8_t> out(bit_count);
  for (std::size_t i = 0; i < bit_count; ++i) {
    out[i] = (bytes[i / 8] >> (7 - i % 8)) & 1u;
  }
  return out;
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
  // splitmix64 finalizer over the combined words
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ull * (stream + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t bound) {
  if (bound <= 1) return 0;
  const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % bound);
  std::uint64_t x;
  do {
    x = rng();
  } while (x >= limit);
  return x % bound;
}

std::vector<std::uint8_t> random_bits(std::mt19937_64& rng, std::size_t n) {
  std::vector<std::uint8_t> out(n);
  for (std::size_t i = 0; i < n; i += 64) {
    std::uint64_t word = rng();
    for (std::size_t k = 0; k < 64 && i + k < n; ++k) {
      out[i + k] = static_cast<std::uint8_t>((word >> k) & 1u);
    }
  }
  return out;
}

}  // namespace skece
