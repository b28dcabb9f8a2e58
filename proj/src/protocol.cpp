// Copyright 2026 SKECE contributors. Licensed under the Apache License,
// Version 2.0. See http://www.apache.org/licenses/LICENSE-2.0

#include "skece/protocol.hpp"

#include <cmath>
#include <deque>
#include <numeric>

#include "skece/analysis.hpp"
#include "skece/error.hpp"

namespace skece {

namespace {

constexpr std::uint64_t kAliceRngTag = 0x414c494345ULL;

std::vector<ProtocolMessage> one(MessageType type, std::vector<std::uint8_t> payload,
                                 Direction dir) {
  std::vector<ProtocolMessage> out(1);
  out[0].type = type;
  out[0].payload = std::move(payload);
  out[0].direction = dir;
  return out;
}

[[noreturn]] void unexpected(const char* who, const ProtocolMessage& msg) {
  fail(ErrorCode::Protocol,
       std::string(who) + ": unexpected " + to_string(msg.type) + " message");
}

BitStream prefix(const BitStream& s, std::size_t n, StreamOrigin origin) {
  BitStream out;
  out.bits.assign(s.bits.begin(), s.bits.begin() + static_cast<std::ptrdiff_t>(n));
  out.origin = origin;
  return out;
}

std::vector<std::vector<double>> amplitudes(const CsiTrace& trace) {
  std::vector<std::vector<double>> out;
  out.reserve(trace.subcarriers());
  for (std::size_t i = 0; i < trace.subcarriers(); ++i) {
    auto a = trace.amplitude(i);
    out.emplace_back(a.begin(), a.end());
  }
  return out;
}

std::vector<std::size_t> lengths_of(const std::vector<BitStream>& streams) {
  std::vector<std::size_t> out;
  out.reserve(streams.size());
  for (const auto& s : streams) out.push_back(s.size());
  return out;
}

std::vector<std::size_t> widen(const std::vector<unsigned>& v) {
  return {v.begin(), v.end()};
}

void check_drop_count(const std::vector<DropList>& lists, std::size_t m) {
  if (lists.size() != m) {
    fail(ErrorCode::Protocol, "DROP_LIST: peer sent " + std::to_string(lists.size()) +
                                  " lists, expected " + std::to_string(m));
  }
}

}  // namespace

void AgreementParams::validate() const {
  if (!std::isfinite(alpha) || alpha < 0.0) fail(ErrorCode::InvalidArgument, "alpha must be >= 0");
  if (!(gamma > 0.0 && gamma < 1.0)) fail(ErrorCode::InvalidArgument, "gamma must be in (0,1)");
  if (theta < 2 || theta > 255) fail(ErrorCode::InvalidArgument, "theta must be in [2, 255]");
  if (key_length < 1) fail(ErrorCode::InvalidArgument, "key length must be >= 1");
}

const char* to_string(MatchedVia via) {
  switch (via) {
    case MatchedVia::None: return "none";
    case MatchedVia::DirectStream: return "direct";
    case MatchedVia::Recombination: return "recombination";
  }
  return "none";
}

const char* to_string(AgreementStatus status) {
  switch (status) {
    case AgreementStatus::Agreed: return "agreed";
    case AgreementStatus::RoundsExhausted: return "rounds_exhausted";
    case AgreementStatus::InsufficientMaterial: return "insufficient_material";
  }
  return "unknown";
}

// ---- Initiator ------------------------------------------------------------

Initiator::Initiator(const CsiTrace& trace, const AgreementParams& params)
    : params_(params), r_(0), rng_(derive_seed(params.seed, kAliceRngTag)) {
  params_.validate();
  r_ = checking_length(params_.gamma);
  samples_ = amplitudes(trace);
  for (const auto& s : samples_) {
    thresholds_.push_back(compute_thresholds(s, params_.alpha));
    drops_.push_back(drop_indices(s, thresholds_.back()));
  }
}

Initiator::Initiator(std::vector<BitStream> streams, const AgreementParams& params)
    : params_(params), r_(0), streams_(std::move(streams)),
      rng_(derive_seed(params.seed, kAliceRngTag)) {
  params_.validate();
  r_ = checking_length(params_.gamma);
  if (streams_.empty()) fail(ErrorCode::InvalidArgument, "need at least one stream");
  lengths_ = lengths_of(streams_);
}

std::vector<ProtocolMessage> Initiator::start() {
  if (state_ != State::Idle) fail(ErrorCode::Protocol, "initiator already started");
  if (!samples_.empty()) {
    state_ = State::AwaitDropList;
    return one(MessageType::DropList, encode_drop_lists(drops_), Direction::AliceToBob);
  }
  return send_tags();
}

std::vector<ProtocolMessage> Initiator::send_tags() {
  result_.stream_lengths = lengths_;
  const std::size_t total = std::accumulate(lengths_.begin(), lengths_.end(), std::size_t{0});
  if (total < params_.key_length) {
    finish_failure(AgreementStatus::InsufficientMaterial,
                   "streams hold " + std::to_string(total) + " bits, key needs " +
                       std::to_string(params_.key_length) + "; collect more probes");
    return {};
  }
  std::vector<ValidationTag> tags;
  tags.reserve(streams_.size());
  for (std::size_t i = 0; i < streams_.size(); ++i) tags.push_back(make_tag(streams_[i], r_, i));
  state_ = State::AwaitStreamVerdict;
  return one(MessageType::Tags, encode_tag_set(tags), Direction::AliceToBob);
}

std::vector<ProtocolMessage> Initiator::next_round() {
  if (result_.rounds_used >= params_.max_rounds) {
    finish_failure(AgreementStatus::RoundsExhausted,
                   "no match after " + std::to_string(result_.rounds_used) + " rounds");
    return {};
  }
  const std::uint64_t seed = rng_();
  const auto p = plan(seed, allocation_, lengths_);
  candidate_ = recombine(streams_, p, {Party::Alice, 0});
  ++result_.rounds_used;
  state_ = State::AwaitRoundVerdict;
  std::vector<ProtocolMessage> out = one(MessageType::RecombSeed, encode_seed(seed),
                                         Direction::AliceToBob);
  const ValidationTag tag = make_tag(candidate_, r_, 0);
  out.push_back(one(MessageType::Tags, encode_tag_set(std::span(&tag, 1)),
                    Direction::AliceToBob)[0]);
  return out;
}

void Initiator::finish_failure(AgreementStatus status, std::string why) {
  result_.status = status;
  result_.failure = std::move(why);
  state_ = State::Failed;
}

std::vector<ProtocolMessage> Initiator::handle(const ProtocolMessage& msg) {
  if (msg.direction != Direction::BobToAlice) unexpected("initiator", msg);
  switch (state_) {
    case State::AwaitDropList: {
      if (msg.type != MessageType::DropList) unexpected("initiator", msg);
      const auto theirs = decode_drop_lists(msg.payload);
      check_drop_count(theirs, samples_.size());
      streams_.clear();
      for (std::size_t i = 0; i < samples_.size(); ++i) {
        const auto kept = merge_kept(drops_[i], theirs[i], samples_[i].size());
        streams_.push_back(extract_bits(samples_[i], thresholds_[i], kept, {Party::Alice, i}));
      }
      lengths_ = lengths_of(streams_);
      return send_tags();
    }
    case State::AwaitStreamVerdict: {
      if (msg.type != MessageType::Verdict) unexpected("initiator", msg);
      const auto v = decode_verdict(msg.payload);
      if (v.verdict == Verdict::Match) {
        if (!v.stream || *v.stream >= streams_.size() ||
            streams_[*v.stream].size() < params_.key_length) {
          fail(ErrorCode::Protocol, "VERDICT: match names no usable stream");
        }
        result_.key = prefix(streams_[*v.stream], params_.key_length, {Party::Alice, *v.stream});
        result_.matched_via = MatchedVia::DirectStream;
        result_.matched_stream = *v.stream;
        result_.status = AgreementStatus::Agreed;
        state_ = State::Done;
        return {};
      }
      if (params_.max_rounds == 0) {
        finish_failure(AgreementStatus::RoundsExhausted, "no stream matched and max_rounds is 0");
        return {};
      }
      probe_ = make_diff_probe(streams_, random_bits(rng_, params_.key_length), params_.theta);
      state_ = State::AwaitDiffReply;
      return one(MessageType::DiffVector, encode_diff_probe(probe_), Direction::AliceToBob);
    }
    case State::AwaitDiffReply: {
      if (msg.type != MessageType::DiffVector) unexpected("initiator", msg);
      const auto reply = decode_diff_probe(msg.payload);
      if (reply.d_mod.size() != streams_.size() || reply.theta != probe_.theta) {
        fail(ErrorCode::Protocol, "DIFF_VECTOR: reply does not match probe shape");
      }
      const auto dd = difference_degree(widen(probe_.d_mod), widen(reply.d_mod), probe_.theta,
                                        params_.metric);
      allocation_ = allocate(weights(dd), params_.key_length, lengths_);
      return next_round();
    }
    case State::AwaitRoundVerdict: {
      if (msg.type != MessageType::Verdict) unexpected("initiator", msg);
      const auto v = decode_verdict(msg.payload);
      if (v.verdict == Verdict::Match) {
        result_.key = candidate_;
        result_.matched_via = MatchedVia::Recombination;
        result_.status = AgreementStatus::Agreed;
        state_ = State::Done;
        return {};
      }
      return next_round();
    }
    case State::Idle:
    case State::Done:
    case State::Failed:
      break;
  }
  unexpected("initiator", msg);
}

// ---- Responder ------------------------------------------------------------

Responder::Responder(const CsiTrace& trace, const AgreementParams& params)
    : params_(params), r_(0), state_(State::AwaitDropList) {
  params_.validate();
  r_ = checking_length(params_.gamma);
  samples_ = amplitudes(trace);
}

Responder::Responder(std::vector<BitStream> streams, const AgreementParams& params)
    : params_(params), r_(0), state_(State::AwaitTags), streams_(std::move(streams)) {
  params_.validate();
  r_ = checking_length(params_.gamma);
  lengths_ = lengths_of(streams_);
}

std::vector<ProtocolMessage> Responder::handle(const ProtocolMessage& msg) {
  if (msg.direction != Direction::AliceToBob) unexpected("responder", msg);
  switch (state_) {
    case State::AwaitDropList: {
      if (msg.type != MessageType::DropList) unexpected("responder", msg);
      const auto theirs = decode_drop_lists(msg.payload);
      check_drop_count(theirs, samples_.size());
      std::vector<DropList> mine;
      for (std::size_t i = 0; i < samples_.size(); ++i) {
        const auto th = compute_thresholds(samples_[i], params_.alpha);
        mine.push_back(drop_indices(samples_[i], th));
        const auto kept = merge_kept(theirs[i], mine.back(), samples_[i].size());
        streams_.push_back(extract_bits(samples_[i], th, kept, {Party::Bob, i}));
      }
      lengths_ = lengths_of(streams_);
      state_ = State::AwaitTags;
      return one(MessageType::DropList, encode_drop_lists(mine), Direction::BobToAlice);
    }
    case State::AwaitTags: {
      if (msg.type != MessageType::Tags) unexpected("responder", msg);
      const auto tags = decode_tag_set(msg.payload);
      if (tags.size() != streams_.size()) {
        fail(ErrorCode::Protocol, "TAGS: " + std::to_string(tags.size()) + " tags for " +
                                      std::to_string(streams_.size()) + " streams");
      }
      matched_.assign(streams_.size(), false);
      std::optional<std::size_t> pick;
      for (std::size_t i = 0; i < tags.size(); ++i) {
        matched_[i] = validate(tags[i], streams_[i], r_) == Verdict::Match;
        if (matched_[i] && !pick && streams_[i].size() >= params_.key_length) pick = i;
      }
      VerdictPayload v;
      if (pick) {
        v = {Verdict::Match, static_cast<std::uint16_t>(*pick)};
        key_ = prefix(streams_[*pick], params_.key_length, {Party::Bob, *pick});
        state_ = State::Done;
      } else {
        state_ = State::AwaitDiffProbe;
      }
      return one(MessageType::Verdict, encode_verdict(v), Direction::BobToAlice);
    }
    case State::AwaitDiffProbe: {
      if (msg.type != MessageType::DiffVector) unexpected("responder", msg);
      const auto probe = decode_diff_probe(msg.payload);
      if (probe.d_mod.size() != streams_.size() || probe.x.size() != params_.key_length) {
        fail(ErrorCode::Protocol, "DIFF_VECTOR: probe does not match stream set or key length");
      }
      auto mine = make_diff_probe(streams_, probe.x, probe.theta);
      const auto dd = difference_degree(widen(probe.d_mod), widen(mine.d_mod), probe.theta,
                                        params_.metric);
      allocation_ = allocate(weights(dd), params_.key_length, lengths_);
      own_probe_ = mine;
      mine.x.clear();
      state_ = State::AwaitSeed;
      return one(MessageType::DiffVector, encode_diff_probe(mine), Direction::BobToAlice);
    }
    case State::AwaitSeed: {
      if (msg.type != MessageType::RecombSeed) unexpected("responder", msg);
      const auto p = plan(decode_seed(msg.payload), allocation_, lengths_);
      candidate_ = recombine(streams_, p, {Party::Bob, 0});
      state_ = State::AwaitRoundTag;
      return {};
    }
    case State::AwaitRoundTag: {
      if (msg.type != MessageType::Tags) unexpected("responder", msg);
      const auto tags = decode_tag_set(msg.payload);
      if (tags.size() != 1) fail(ErrorCode::Protocol, "TAGS: round carries one tag");
      const Verdict v = validate(tags[0], candidate_, r_);
      if (v == Verdict::Match) {
        key_ = candidate_;
        state_ = State::Done;
      } else {
        state_ = State::AwaitSeed;
      }
      return one(MessageType::Verdict, encode_verdict({v, std::nullopt}), Direction::BobToAlice);
    }
    case State::Done:
      break;
  }
  unexpected("responder", msg);
}

// ---- Drivers --------------------------------------------------------------

KeyAgreementResult run_session(Initiator& alice, Responder& bob, std::size_t probes) {
  Transcript transcript;
  for (std::size_t j = 0; j < probes; ++j) {
    for (auto dir : {Direction::AliceToBob, Direction::BobToAlice}) {
      ProtocolMessage p;
      p.type = MessageType::Probe;
      p.direction = dir;
      p.payload = encode_seed(j);
      p.payload.erase(p.payload.begin(), p.payload.begin() + 4);
      transcript.record(decode(encode(p), dir));
    }
  }
  std::deque<ProtocolMessage> queue;
  for (auto& m : alice.start()) queue.push_back(std::move(m));
  while (!queue.empty()) {
    const ProtocolMessage sent = std::move(queue.front());
    queue.pop_front();
    ProtocolMessage delivered = decode(encode(sent), sent.direction);
    transcript.record(delivered);
    auto replies = delivered.direction == Direction::AliceToBob ? bob.handle(delivered)
                                                                : alice.handle(delivered);
    for (auto& m : replies) queue.push_back(std::move(m));
  }
  KeyAgreementResult result = alice.result();
  result.transcript = std::move(transcript);
  result.responder_key = bob.key();
  result.stream_matched = bob.stream_matched();
  if (!alice.finished()) {
    result.status = AgreementStatus::RoundsExhausted;
    result.failure = "session stalled before completion";
  }
  return result;
}

std::pair<KeyAgreementResult, EveView> run_key_agreement(const PairedTraceSet& traces,
                                                         const AgreementParams& params) {
  Initiator alice(traces.alice, params);
  Responder bob(traces.bob, params);
  auto result = run_session(alice, bob, params.record_probes ? traces.length() : 0);
  EveView view{result.transcript, traces.eve, params};
  return {std::move(result), std::move(view)};
}

KeyAgreementResult reconcile_streams(std::vector<BitStream> alice, std::vector<BitStream> bob,
                                     const AgreementParams& params) {
  if (alice.size() != bob.size()) {
    fail(ErrorCode::InvalidArgument, "parties hold different stream counts");
  }
  Initiator a(std::move(alice), params);
  Responder b(std::move(bob), params);
  return run_session(a, b, 0);
}

EveReport eve_attempt(const EveView& view, std::span<const BitStream> reference) {
  const auto& trace = view.eve_trace;
  const std::size_t m = trace.subcarriers();
  std::optional<std::vector<DropList>> from_a, from_b;
  for (const auto& msg : view.transcript.messages()) {
    if (msg.type != MessageType::DropList) continue;
    auto& slot = msg.direction == Direction::AliceToBob ? from_a : from_b;
    if (!slot) slot = decode_drop_lists(msg.payload);
  }
  if (!from_a) from_a.emplace(m);
  if (!from_b) from_b.emplace(m);
  check_drop_count(*from_a, m);
  check_drop_count(*from_b, m);
  if (!reference.empty() && reference.size() != m) {
    fail(ErrorCode::InvalidArgument, "reference holds " + std::to_string(reference.size()) +
                                         " streams, Eve has " + std::to_string(m));
  }

  EveReport report;
  for (std::size_t i = 0; i < m; ++i) {
    const auto samples = trace.amplitude(i);
    const auto th = compute_thresholds(samples, view.params.alpha);
    BitStream s;
    s.origin = {Party::Eve, i};
    for (auto j : merge_kept((*from_a)[i], (*from_b)[i], samples.size())) {
      const double x = samples[j];
      if (x >= th.q_plus) {
        s.bits.push_back(1);
      } else if (x <= th.q_minus) {
        s.bits.push_back(0);
      } else {
        s.bits.push_back(x >= th.mu ? 1 : 0);
      }
    }
    if (!reference.empty()) {
      const auto& ref = reference[i];
      if (ref.size() == s.size() && ref.size() >= 2) {
        report.correlation.push_back(pearson(s, ref));
      } else {
        report.correlation.push_back(std::nullopt);
      }
    }
    report.streams.push_back(std::move(s));
  }
  return report;
}

QuantizedPair quantize_pair(const CsiTrace& alice, const CsiTrace& bob, double alpha) {
  if (alice.subcarriers() != bob.subcarriers() || alice.length() != bob.length()) {
    fail(ErrorCode::InvalidArgument, "traces differ in shape");
  }
  QuantizedPair out;
  for (std::size_t i = 0; i < alice.subcarriers(); ++i) {
    const auto a = alice.amplitude(i);
    const auto b = bob.amplitude(i);
    const auto ta = compute_thresholds(a, alpha);
    const auto tb = compute_thresholds(b, alpha);
    const auto kept = merge_kept(drop_indices(a, ta), drop_indices(b, tb), a.size());
    out.alice.push_back(extract_bits(a, ta, kept, {Party::Alice, i}));
    out.bob.push_back(extract_bits(b, tb, kept, {Party::Bob, i}));
    out.ignored.push_back(a.size() - kept.size());
  }
  return out;
}

}  // namespace skece
