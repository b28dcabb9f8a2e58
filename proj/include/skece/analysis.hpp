// Copyright 2026 SKECE contributors. Licensed under the Apache License,
// Version 2.0. See http://www.apache.org/licenses/LICENSE-2.0

#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "skece/bits.hpp"

namespace skece {

struct KeyAgreementResult;

// Hamming distance over length; lengths must match and be non-zero.
double mismatch_ratio(const BitStream& a, const BitStream& b);

// Sample Pearson coefficient. nullopt when either input has zero variance.
std::optional<double> pearson(std::span<const double> x, std::span<const double> y);
std::optional<double> pearson(const BitStream& a, const BitStream& b);

struct TestReport {
  std::string name;
  std::size_t n = 0;
  double statistic = 0.0;
  double p_value = 0.0;
  bool pass = false;  // p_value > 0.01
};

inline constexpr double kSignificance = 0.01;

// NIST SP 800-22 tests used for key randomness.
TestReport nist_frequency(std::span<const std::uint8_t> bits);        // n >= 100
TestReport nist_longest_run(std::span<const std::uint8_t> bits);      // n >= 128
TestReport nist_fft(std::span<const std::uint8_t> bits);              // n >= 1000
TestReport nist_approx_entropy(std::span<const std::uint8_t> bits,
                               unsigned block_length);                // m <= log2(n) - 5

// Block length used when the caller does not choose one.
unsigned default_apen_block_length(std::size_t n);

// Frequency, longest run, FFT and approximate entropy, in that order.
std::vector<TestReport> nist_battery(std::span<const std::uint8_t> bits);

// Same computations without the minimum-length checks, for the standard's
// short worked examples.
namespace detail {
TestReport nist_fft_unchecked(std::span<const std::uint8_t> bits);
TestReport nist_approx_entropy_unchecked(std::span<const std::uint8_t> bits,
                                         unsigned block_length);
double igamc(double a, double x);
}  // namespace detail

// CSV with header `test,name,n,statistic,p_value,pass`; `test` is the test's
// name and `name` labels the key it ran on.
void write_reports_csv(std::ostream& out,
                       std::span<const std::pair<std::string, TestReport>> labelled);

struct BitRate {
  double aggregate = 0.0;        // secret bits per second over all streams
  double per_stream_mean = 0.0;  // aggregate / m
  std::vector<double> per_stream;
};

// Matched secret bits per stream come from the streams whose tags matched.
BitRate secret_bit_rate(const KeyAgreementResult& result, double duration, std::size_t streams);
BitRate secret_bit_rate(std::span<const std::size_t> matched_bits_per_stream, double duration);

struct PeriodicityScore {
  std::size_t lag = 0;
  std::size_t pairs = 0;
  double correlation = 0.0;
  double z = 0.0;  // correlation * sqrt(pairs); ~N(0,1) for independent bits
};

// Autocorrelation of +-1 key bits at a time lag, over pairs of kept samples
// whose time indices differ by exactly `lag`.
PeriodicityScore periodicity_score(std::span<const std::size_t> time_index,
                                   std::span<const std::uint8_t> bits, std::size_t lag);

}  // namespace skece
