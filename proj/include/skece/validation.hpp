// Copyright 2026 SKECE contributors. Licensed under the Apache License,
// Version 2.0. See http://www.apache.org/licenses/LICENSE-2.0

#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "skece/bits.hpp"

namespace skece {

using Sha1Digest = std::array<std::uint8_t, 20>;

// Plain SHA-1 over raw bytes.
Sha1Digest sha1(std::span<const std::uint8_t> data);

// 8-byte big-endian bit count followed by the bits packed MSB-first.
std::vector<std::uint8_t> canonical_encoding(const BitStream& bits);

// Least r with 1 - 2^-r >= gamma, for 0 < gamma < 1.
int checking_length(double gamma);

// Leading r bits of SHA-1(canonical_encoding(stream)), MSB-first, stored in
// ceil(r/8) bytes with unused trailing bits zero.
struct ValidationTag {
  int r = 6;
  std::vector<std::uint8_t> tag;
  std::size_t stream_index = 0;

  bool operator==(const ValidationTag&) const = default;
};

ValidationTag make_tag(const BitStream& bits, int r, std::size_t stream_index = 0);

enum class Verdict : std::uint8_t { Mismatch = 0, Match = 1 };

// Recomputes the tag over the local stream with the remote r. A caller that
// expected a different r gets Error(Protocol) and no verdict.
Verdict validate(const ValidationTag& remote, const BitStream& local, int expected_r);

// Wire form: 1 byte r, then ceil(r/8) tag bytes.
std::vector<std::uint8_t> encode_tag(const ValidationTag& tag);
ValidationTag decode_tag(std::span<const std::uint8_t> bytes, std::size_t stream_index = 0);

std::size_t tag_bytes(int r);

}  // namespace skece
