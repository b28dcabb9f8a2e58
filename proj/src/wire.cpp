// Copyright 2026 SKECE contributors. Licensed under the Apache License,
// Version 2.0. See http://www.apache.org/licenses/LICENSE-2.0

#include "skece/wire.hpp"

#include <ostream>

#include "json.hpp"
#include "skece/error.hpp"

namespace skece {

const char* to_string(MessageType type) {
  switch (type) {
    case MessageType::Probe: return "PROBE";
    case MessageType::DropList: return "DROP_LIST";
    case MessageType::Tags: return "TAGS";
    case MessageType::DiffVector: return "DIFF_VECTOR";
    case MessageType::RecombSeed: return "RECOMB_SEED";
    case MessageType::Verdict: return "VERDICT";
    case MessageType::Parity: return "PARITY";
    case MessageType::Bisect: return "BISECT";
  }
  return "UNKNOWN";
}

const char* to_string(Direction direction) {
  return direction == Direction::AliceToBob ? "A->B" : "B->A";
}

std::optional<MessageType> message_type_from_byte(std::uint8_t b) {
  if (b >= 1 && b <= 8) return static_cast<MessageType>(b);
  return std::nullopt;
}

namespace {

void put_u16(std::vector<std::uint8_t>& out, std::uint16_t v) {
  out.push_back(static_cast<std::uint8_t>(v >> 8));
  out.push_back(static_cast<std::uint8_t>(v));
}

void put_u32(std::vector<std::uint8_t>& out, std::uint32_t v) {
  for (int k = 0; k < 4; ++k) out.push_back(static_cast<std::uint8_t>(v >> (24 - 8 * k)));
}

class Reader {
 public:
  Reader(std::span<const std::uint8_t> bytes, const char* what) : bytes_(bytes), what_(what) {}

  std::uint8_t u8() {
    need(1);
    return bytes_[pos_++];
  }
  std::uint16_t u16() {
    need(2);
    std::uint16_t v = static_cast<std::uint16_t>((bytes_[pos_] << 8) | bytes_[pos_ + 1]);
    pos_ += 2;
    return v;
  }
  std::uint32_t u32() {
    need(4);
    std::uint32_t v = 0;
    for (int k = 0; k < 4; ++k) v = (v << 8) | bytes_[pos_ + k];
    pos_ += 4;
    return v;
  }
  std::span<const std::uint8_t> take(std::size_t n) {
    need(n);
    auto s = bytes_.subspan(pos_, n);
    pos_ += n;
    return s;
  }
  void finish() const {
    if (pos_ != bytes_.size()) {
      fail(ErrorCode::Parse, std::string(what_) + ": " + std::to_string(bytes_.size() - pos_) +
                                 " trailing bytes");
    }
  }

 private:
  void need(std::size_t n) const {
    if (bytes_.size() - pos_ < n) {
      fail(ErrorCode::Parse, std::string(what_) + ": truncated, needs " +
                                 std::to_string(pos_ + n) + " bytes, has " +
                                 std::to_string(bytes_.size()));
    }
  }

  std::span<const std::uint8_t> bytes_;
  const char* what_;
  std::size_t pos_ = 0;
};

}  // namespace

std::vector<std::uint8_t> encode(const ProtocolMessage& msg) {
  if (msg.payload.size() > kMaxPayload) {
    fail(ErrorCode::InvalidArgument, "payload of " + std::to_string(msg.payload.size()) +
                                         " bytes exceeds frame limit");
  }
  std::vector<std::uint8_t> out;
  out.reserve(kFrameHeader + msg.payload.size());
  out.push_back(static_cast<std::uint8_t>(msg.type));
  put_u32(out, static_cast<std::uint32_t>(msg.payload.size()));
  out.insert(out.end(), msg.payload.begin(), msg.payload.end());
  return out;
}

ProtocolMessage decode(std::span<const std::uint8_t> frame, Direction direction) {
  if (frame.size() < kFrameHeader) {
    fail(ErrorCode::Parse, "frame: expected at least " + std::to_string(kFrameHeader) +
                               " header bytes, got " + std::to_string(frame.size()));
  }
  const auto type = message_type_from_byte(frame[0]);
  if (!type) fail(ErrorCode::Parse, "frame: unknown message type " + std::to_string(frame[0]));
  std::uint32_t len = 0;
  for (int k = 1; k <= 4; ++k) len = (len << 8) | frame[k];
  if (len > kMaxPayload) {
    fail(ErrorCode::Parse, "frame: payload length " + std::to_string(len) + " exceeds limit");
  }
  const std::size_t expected = kFrameHeader + len;
  if (frame.size() != expected) {
    fail(ErrorCode::Parse, "frame: expected " + std::to_string(expected) +
                               " bytes, got " + std::to_string(frame.size()));
  }
  ProtocolMessage msg;
  msg.type = *type;
  msg.direction = direction;
  msg.payload.assign(frame.begin() + kFrameHeader, frame.end());
  return msg;
}

void MessageCounters::add(const ProtocolMessage& msg) {
  auto& c = by_type[static_cast<std::size_t>(msg.direction)][static_cast<std::size_t>(msg.type)];
  ++c.messages;
  c.bytes += kFrameHeader + msg.payload.size();
}

std::size_t MessageCounters::messages(Direction d) const {
  std::size_t n = 0;
  for (const auto& c : by_type[static_cast<std::size_t>(d)]) n += c.messages;
  return n;
}

std::size_t MessageCounters::messages(MessageType t) const {
  return by_type[0][static_cast<std::size_t>(t)].messages +
         by_type[1][static_cast<std::size_t>(t)].messages;
}

std::size_t MessageCounters::messages() const {
  return messages(Direction::AliceToBob) + messages(Direction::BobToAlice);
}

std::size_t MessageCounters::bytes() const {
  std::size_t n = 0;
  for (const auto& dir : by_type)
    for (const auto& c : dir) n += c.bytes;
  return n;
}

std::size_t MessageCounters::reconciliation_messages() const {
  return messages() - messages(MessageType::Probe) - messages(MessageType::DropList);
}

void Transcript::record(ProtocolMessage msg) {
  counters_.add(msg);
  messages_.push_back(std::move(msg));
}

std::string to_hex(std::span<const std::uint8_t> bytes) {
  static constexpr char digits[] = "0123456789abcdef";
  std::string s;
  s.reserve(bytes.size() * 2);
  for (auto b : bytes) {
    s.push_back(digits[b >> 4]);
    s.push_back(digits[b & 0xF]);
  }
  return s;
}

void Transcript::write_json_lines(std::ostream& out) const {
  for (const auto& m : messages_) {
    nlohmann::ordered_json line = {
        {"type", to_string(m.type)},
        {"direction", to_string(m.direction)},
        {"length", m.payload.size()},
        {"payload", to_hex(m.payload)},
    };
    out << line.dump() << '\n';
  }
}

std::vector<std::uint8_t> encode_drop_lists(std::span<const DropList> lists) {
  if (lists.size() > 0xFFFF) fail(ErrorCode::InvalidArgument, "too many drop lists");
  std::vector<std::uint8_t> out;
  put_u16(out, static_cast<std::uint16_t>(lists.size()));
  for (const auto& l : lists) {
    put_u32(out, static_cast<std::uint32_t>(l.indices.size()));
    for (auto j : l.indices) put_u32(out, static_cast<std::uint32_t>(j));
  }
  return out;
}

std::vector<DropList> decode_drop_lists(std::span<const std::uint8_t> payload) {
  Reader r(payload, "DROP_LIST");
  std::vector<DropList> out(r.u16());
  for (auto& l : out) {
    const std::uint32_t count = r.u32();
    l.indices.reserve(count);
    for (std::uint32_t k = 0; k < count; ++k) l.indices.push_back(r.u32());
  }
  r.finish();
  return out;
}

std::vector<std::uint8_t> encode_tag_set(std::span<const ValidationTag> tags) {
  if (tags.empty()) fail(ErrorCode::InvalidArgument, "empty tag set");
  const int r = tags.front().r;
  std::vector<std::uint8_t> out;
  out.push_back(static_cast<std::uint8_t>(r));
  put_u16(out, static_cast<std::uint16_t>(tags.size()));
  for (const auto& t : tags) {
    if (t.r != r) fail(ErrorCode::InvalidArgument, "tag set mixes checking lengths");
    out.insert(out.end(), t.tag.begin(), t.tag.end());
  }
  return out;
}

std::vector<ValidationTag> decode_tag_set(std::span<const std::uint8_t> payload) {
  Reader rd(payload, "TAGS");
  const int r = rd.u8();
  if (r < 1 || r > 160) fail(ErrorCode::Parse, "TAGS: r out of range");
  std::vector<ValidationTag> out(rd.u16());
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i].r = r;
    out[i].stream_index = i;
    auto bytes = rd.take(tag_bytes(r));
    out[i].tag.assign(bytes.begin(), bytes.end());
  }
  rd.finish();
  return out;
}

std::vector<std::uint8_t> encode_seed(std::uint64_t seed) {
  std::vector<std::uint8_t> out(8);
  for (int k = 0; k < 8; ++k) out[k] = static_cast<std::uint8_t>(seed >> (56 - 8 * k));
  return out;
}

std::uint64_t decode_seed(std::span<const std::uint8_t> payload) {
  if (payload.size() != 8) {
    fail(ErrorCode::Parse, "RECOMB_SEED: expected 8 bytes, got " + std::to_string(payload.size()));
  }
  std::uint64_t v = 0;
  for (auto b : payload) v = (v << 8) | b;
  return v;
}

std::vector<std::uint8_t> encode_verdict(const VerdictPayload& v) {
  std::vector<std::uint8_t> out{static_cast<std::uint8_t>(v.verdict)};
  if (v.stream) put_u16(out, *v.stream);
  return out;
}

VerdictPayload decode_verdict(std::span<const std::uint8_t> payload) {
  Reader r(payload, "VERDICT");
  VerdictPayload v;
  const auto code = r.u8();
  if (code > 1) fail(ErrorCode::Parse, "VERDICT: unknown code " + std::to_string(code));
  v.verdict = static_cast<Verdict>(code);
  if (payload.size() == 3) v.stream = r.u16();
  r.finish();
  return v;
}

}  // namespace skece
