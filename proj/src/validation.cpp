// Copyright 2026 SKECE contributors. Licensed under the Apache License,
// Version 2.0. See http://www.apache.org/licenses/LICENSE-2.0

#include "skece/validation.hpp"

#include <openssl/evp.h>

#include <cmath>
#include <string>

#include "skece/error.hpp"

namespace skece {

Sha1Digest sha1(std::span<const std::uint8_t> data) {
  Sha1Digest out{};
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), out.data(), &len, EVP_sha1(), nullptr) != 1 ||
      len != out.size()) {
    fail(ErrorCode::InvalidArgument, "SHA-1 digest failed");
  }
  return out;
}

std::vector<std::uint8_t> canonical_encoding(const BitStream& bits) {
  std::vector<std::uint8_t> out(8);
  const std::uint64_t n = bits.size();
  for (int k = 0; k < 8; ++k) out[k] = static_cast<std::uint8_t>(n >> (56 - 8 * k));
  const auto packed = pack_bits(bits.bits);
  out.insert(out.end(), packed.begin(), packed.end());
  return out;
}

int checking_length(double gamma) {
  if (!(gamma > 0.0 && gamma < 1.0)) {
    fail(ErrorCode::InvalidArgument, "gamma must lie in (0, 1)");
  }
  int r = std::max(1, static_cast<int>(std::ceil(std::log2(1.0 / (1.0 - gamma)))));
  // Correct for rounding in log2 so r is exactly the least solution.
  while (1.0 - std::ldexp(1.0, -r) < gamma) ++r;
  while (r > 1 && 1.0 - std::ldexp(1.0, -(r - 1)) >= gamma) --r;
  if (r > 160) fail(ErrorCode::InvalidArgument, "gamma needs more than 160 digest bits");
  return r;
}

std::size_t tag_bytes(int r) { return static_cast<std::size_t>((r + 7) / 8); }

ValidationTag make_tag(const BitStream& bits, int r, std::size_t stream_index) {
  if (r < 1 || r > 160) fail(ErrorCode::InvalidArgument, "tag length r must be in [1, 160]");
  const auto digest = sha1(canonical_encoding(bits));
  ValidationTag t;
  t.r = r;
  t.stream_index = stream_index;
  t.tag.assign(digest.begin(), digest.begin() + tag_bytes(r));
  if (r % 8 != 0) t.tag.back() &= static_cast<std::uint8_t>(0xFFu << (8 - r % 8));
  return t;
}

Verdict validate(const ValidationTag& remote, const BitStream& local, int expected_r) {
  if (remote.r != expected_r) {
    fail(ErrorCode::Protocol, "tag length mismatch: remote r=" + std::to_string(remote.r) +
                                  ", local r=" + std::to_string(expected_r));
  }
  const auto mine = make_tag(local, expected_r, remote.stream_index);
  return mine.tag == remote.tag ? Verdict::Match : Verdict::Mismatch;
}

std::vector<std::uint8_t> encode_tag(const ValidationTag& tag) {
  std::vector<std::uint8_t> out;
  out.reserve(1 + tag.tag.size());
  out.push_back(static_cast<std::uint8_t>(tag.r));
  out.insert(out.end(), tag.tag.begin(), tag.tag.end());
  return out;
}

ValidationTag decode_tag(std::span<const std::uint8_t> bytes, std::size_t stream_index) {
  if (bytes.empty()) fail(ErrorCode::Parse, "tag: empty");
  const int r = bytes[0];
  if (r < 1 || r > 160) fail(ErrorCode::Parse, "tag: r out of range");
  if (bytes.size() != 1 + tag_bytes(r)) {
    fail(ErrorCode::Parse, "tag: expected " + std::to_string(1 + tag_bytes(r)) +
                               " bytes, got " + std::to_string(bytes.size()));
  }
  ValidationTag t;
  t.r = r;
  t.stream_index = stream_index;
  t.tag.assign(bytes.begin() + 1, bytes.end());
  return t;
}

}  // namespace skece
