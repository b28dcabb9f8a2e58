// Copyright 2026 SKECE contributors. Licensed under the Apache License,
// Version 2.0. See http://www.apache.org/licenses/LICENSE-2.0

#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "skece/quantizer.hpp"
#include "skece/validation.hpp"

namespace skece {

enum class MessageType : std::uint8_t {
  Probe = 1,
  DropList = 2,
  Tags = 3,
  DiffVector = 4,
  RecombSeed = 5,
  Verdict = 6,
  Parity = 7,
  Bisect = 8,
};
inline constexpr std::size_t kMessageTypeCount = 9;  // index 0 unused

enum class Direction : std::uint8_t { AliceToBob = 0, BobToAlice = 1 };

const char* to_string(MessageType type);
const char* to_string(Direction direction);
std::optional<MessageType> message_type_from_byte(std::uint8_t b);

struct ProtocolMessage {
  MessageType type = MessageType::Verdict;
  std::vector<std::uint8_t> payload;
  Direction direction = Direction::AliceToBob;

  bool operator==(const ProtocolMessage&) const = default;
};

inline constexpr std::size_t kFrameHeader = 5;
inline constexpr std::uint32_t kMaxPayload = 64u << 20;

// TLV frame: 1-byte type, 4-byte big-endian payload length, payload. The
// direction is a property of the link, not of the frame.
std::vector<std::uint8_t> encode(const ProtocolMessage& msg);
ProtocolMessage decode(std::span<const std::uint8_t> frame, Direction direction);

struct TypeCounter {
  std::size_t messages = 0;
  std::size_t bytes = 0;  // whole frames

  bool operator==(const TypeCounter&) const = default;
};

struct MessageCounters {
  // [direction][type]
  std::array<std::array<TypeCounter, kMessageTypeCount>, 2> by_type{};

  void add(const ProtocolMessage& msg);
  std::size_t messages(Direction d) const;
  std::size_t messages(MessageType t) const;
  std::size_t messages() const;
  std::size_t bytes() const;
  // Every type except PROBE and DROP_LIST.
  std::size_t reconciliation_messages() const;

  bool operator==(const MessageCounters&) const = default;
};

class Transcript {
 public:
  void record(ProtocolMessage msg);

  const std::vector<ProtocolMessage>& messages() const { return messages_; }
  const MessageCounters& counters() const { return counters_; }
  std::size_t size() const { return messages_.size(); }

  // One JSON object per line: type, direction, length, payload (hex).
  void write_json_lines(std::ostream& out) const;

  bool operator==(const Transcript&) const = default;

 private:
  std::vector<ProtocolMessage> messages_;
  MessageCounters counters_;
};

// Payload codecs shared by both endpoints and the eavesdropper.

// m (2 bytes), then per stream: count (4 bytes) and that many 4-byte indices.
std::vector<std::uint8_t> encode_drop_lists(std::span<const DropList> lists);
std::vector<DropList> decode_drop_lists(std::span<const std::uint8_t> payload);

// r (1 byte), count (2 bytes), then count * ceil(r/8) tag bytes.
std::vector<std::uint8_t> encode_tag_set(std::span<const ValidationTag> tags);
std::vector<ValidationTag> decode_tag_set(std::span<const std::uint8_t> payload);

std::vector<std::uint8_t> encode_seed(std::uint64_t seed);
std::uint64_t decode_seed(std::span<const std::uint8_t> payload);

// 1 byte verdict; a stream-selection verdict appends the 2-byte index of the
// stream both parties adopt.
struct VerdictPayload {
  Verdict verdict = Verdict::Mismatch;
  std::optional<std::uint16_t> stream;

  bool operator==(const VerdictPayload&) const = default;
};
std::vector<std::uint8_t> encode_verdict(const VerdictPayload& v);
VerdictPayload decode_verdict(std::span<const std::uint8_t> payload);

std::string to_hex(std::span<const std::uint8_t> bytes);

}  // namespace skece
