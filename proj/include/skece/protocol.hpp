// Copyright 2026 SKECE contributors. Licensed under the Apache License,
// Version 2.0. See http://www.apache.org/licenses/LICENSE-2.0

#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "skece/bits.hpp"
#include "skece/channel.hpp"
#include "skece/quantizer.hpp"
#include "skece/recombine.hpp"
#include "skece/validation.hpp"
#include "skece/wire.hpp"

namespace skece {

struct AgreementParams {
  double alpha = 0.4;
  double gamma = 0.98;
  unsigned theta = 5;
  std::size_t key_length = 128;
  unsigned max_rounds = 10;
  std::uint64_t seed = 1;  // Alice's private randomness: X and recombination seeds
  DiffMetric metric = DiffMetric::AsWritten;
  bool record_probes = true;

  void validate() const;
};

enum class MatchedVia { None, DirectStream, Recombination };
enum class AgreementStatus { Agreed, RoundsExhausted, InsufficientMaterial };

const char* to_string(MatchedVia via);
const char* to_string(AgreementStatus status);

struct KeyAgreementResult {
  AgreementStatus status = AgreementStatus::RoundsExhausted;
  std::optional<BitStream> key;            // Alice's key
  std::optional<BitStream> responder_key;  // Bob's copy; in-process diagnostic only
  unsigned rounds_used = 0;
  MatchedVia matched_via = MatchedVia::None;
  std::optional<std::size_t> matched_stream;
  std::vector<std::size_t> stream_lengths;  // bits per stream after quantization
  std::vector<bool> stream_matched;         // Bob's per-stream tag verdicts
  Transcript transcript;
  std::string failure;

  bool succeeded() const { return key.has_value(); }
  const MessageCounters& counters() const { return transcript.counters(); }
};

// Alice. Emits frames in response to events; never blocks.
class Initiator {
 public:
  // Quantizes each subcarrier of the trace; opens with DROP_LIST.
  Initiator(const CsiTrace& trace, const AgreementParams& params);
  // Starts from ready bit streams; opens with TAGS.
  Initiator(std::vector<BitStream> streams, const AgreementParams& params);

  std::vector<ProtocolMessage> start();
  std::vector<ProtocolMessage> handle(const ProtocolMessage& msg);

  bool finished() const { return state_ == State::Done || state_ == State::Failed; }
  const KeyAgreementResult& result() const { return result_; }
  const std::vector<BitStream>& streams() const { return streams_; }

 private:
  enum class State { Idle, AwaitDropList, AwaitStreamVerdict, AwaitDiffReply,
                     AwaitRoundVerdict, Done, Failed };

  std::vector<ProtocolMessage> send_tags();
  std::vector<ProtocolMessage> next_round();
  void finish_failure(AgreementStatus status, std::string why);

  AgreementParams params_;
  int r_;
  State state_ = State::Idle;
  std::vector<std::vector<double>> samples_;
  std::vector<Thresholds> thresholds_;
  std::vector<DropList> drops_;
  std::vector<BitStream> streams_;
  std::vector<std::size_t> lengths_;
  DiffProbe probe_;
  Allocation allocation_;
  BitStream candidate_;
  std::mt19937_64 rng_;
  KeyAgreementResult result_;
};

// Bob.
class Responder {
 public:
  Responder(const CsiTrace& trace, const AgreementParams& params);
  Responder(std::vector<BitStream> streams, const AgreementParams& params);

  std::vector<ProtocolMessage> handle(const ProtocolMessage& msg);

  bool finished() const { return state_ == State::Done; }
  const std::optional<BitStream>& key() const { return key_; }
  const std::vector<bool>& stream_matched() const { return matched_; }
  const std::vector<BitStream>& streams() const { return streams_; }

 private:
  enum class State { AwaitDropList, AwaitTags, AwaitDiffProbe, AwaitSeed, AwaitRoundTag, Done };

  AgreementParams params_;
  int r_;
  State state_;
  std::vector<std::vector<double>> samples_;
  std::vector<BitStream> streams_;
  std::vector<std::size_t> lengths_;
  std::vector<bool> matched_;
  DiffProbe own_probe_;
  Allocation allocation_;
  BitStream candidate_;
  std::optional<BitStream> key_;
};

// In-order, lossless delivery between the endpoints until neither has
// anything left to send. Every frame goes through encode/decode.
KeyAgreementResult run_session(Initiator& alice, Responder& bob, std::size_t probes = 0);

// Everything a passive eavesdropper holds: the public transcript, the public
// parameters, and her own channel measurements.
struct EveView {
  Transcript transcript;
  CsiTrace eve_trace;
  AgreementParams params;
};

std::pair<KeyAgreementResult, EveView> run_key_agreement(const PairedTraceSet& traces,
                                                         const AgreementParams& params);

// Reconciliation only: both parties already hold m streams of equal length.
KeyAgreementResult reconcile_streams(std::vector<BitStream> alice, std::vector<BitStream> bob,
                                     const AgreementParams& params);

struct EveReport {
  std::vector<BitStream> streams;
  // Pearson correlation of Eve's bits against the reference stream, per
  // stream; empty when the reference is degenerate (constant or empty).
  std::vector<std::optional<double>> correlation;
};

// Eve quantizes her own trace at the public alpha, keeps exactly the indices
// that survived the public drop lists, and guesses by sign around her mean
// where her sample falls inside her own band.
EveReport eve_attempt(const EveView& view, std::span<const BitStream> reference = {});

// Both parties' per-subcarrier quantization after the drop-list exchange,
// computed in one place for experiments that skip the wire.
struct QuantizedPair {
  std::vector<BitStream> alice;
  std::vector<BitStream> bob;
  std::vector<std::size_t> ignored;  // dropped samples per subcarrier
};

QuantizedPair quantize_pair(const CsiTrace& alice, const CsiTrace& bob, double alpha);

}  // namespace skece
