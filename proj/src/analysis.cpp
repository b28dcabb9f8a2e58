// Copyright 2026 SKECE contributors. Licensed under the Apache License,
// Version 2.0. See http://www.apache.org/licenses/LICENSE-2.0

#include "skece/analysis.hpp"

#include <fftw3.h>

#include <algorithm>
#include <boost/math/special_functions/gamma.hpp>
#include <cmath>
#include <memory>
#include <ostream>

#include "skece/error.hpp"
#include "skece/protocol.hpp"

namespace skece {

double mismatch_ratio(const BitStream& a, const BitStream& b) {
  if (a.size() != b.size()) fail(ErrorCode::InvalidArgument, "mismatch ratio: unequal lengths");
  if (a.empty()) fail(ErrorCode::InvalidArgument, "mismatch ratio: empty streams");
  std::size_t diff = 0;
  for (std::size_t i = 0; i < a.size(); ++i) diff += a.bits[i] != b.bits[i];
  return static_cast<double>(diff) / static_cast<double>(a.size());
}

std::optional<double> pearson(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) fail(ErrorCode::InvalidArgument, "pearson: unequal lengths");
  if (x.size() < 2) fail(ErrorCode::InvalidArgument, "pearson: need at least 2 samples");
  const double n = static_cast<double>(x.size());
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxy = 0, sxx = 0, syy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double dx = x[i] - mx, dy = y[i] - my;
    sxy += dx * dy;
    sxx += dx * dx;
    syy += dy * dy;
  }
  if (sxx == 0.0 || syy == 0.0) return std::nullopt;
  return std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
}

std::optional<double> pearson(const BitStream& a, const BitStream& b) {
  std::vector<double> x(a.bits.begin(), a.bits.end());
  std::vector<double> y(b.bits.begin(), b.bits.end());
  return pearson(x, y);
}

namespace {

TestReport report(std::string name, std::size_t n, double statistic, double p) {
  p = std::clamp(p, 0.0, 1.0);
  return {std::move(name), n, statistic, p, p > kSignificance};
}

void require_length(std::span<const std::uint8_t> bits, std::size_t min, const char* test) {
  if (bits.size() < min) {
    fail(ErrorCode::InvalidArgument, std::string(test) + " needs n >= " + std::to_string(min) +
                                         ", got " + std::to_string(bits.size()));
  }
}

}  // namespace

double detail::igamc(double a, double x) {
  if (x <= 0.0) return 1.0;
  return boost::math::gamma_q(a, x);
}

TestReport nist_frequency(std::span<const std::uint8_t> bits) {
  require_length(bits, 100, "frequency test");
  long s = 0;
  for (auto b : bits) s += b ? 1 : -1;
  const double n = static_cast<double>(bits.size());
  const double s_obs = std::abs(static_cast<double>(s)) / std::sqrt(n);
  return report("frequency", bits.size(), s_obs, std::erfc(s_obs / std::sqrt(2.0)));
}

TestReport nist_longest_run(std::span<const std::uint8_t> bits) {
  require_length(bits, 128, "longest-run test");
  const std::size_t n = bits.size();
  std::size_t block;
  unsigned lowest;  // longest-run value of the first category
  std::vector<double> pi;
  if (n < 6272) {
    block = 8;
    lowest = 1;
    pi = {0.2148, 0.3672, 0.2305, 0.1875};
  } else if (n < 750000) {
    block = 128;
    lowest = 4;
    pi = {0.1174, 0.2430, 0.2493, 0.1752, 0.1027, 0.1124};
  } else {
    block = 10000;
    lowest = 10;
    pi = {0.0882, 0.2092, 0.2483, 0.1933, 0.1208, 0.0675, 0.0727};
  }
  const std::size_t k = pi.size() - 1;
  const std::size_t blocks = n / block;
  std::vector<double> counts(pi.size(), 0.0);
  for (std::size_t b = 0; b < blocks; ++b) {
    unsigned run = 0, longest = 0;
    for (std::size_t j = 0; j < block; ++j) {
      run = bits[b * block + j] ? run + 1 : 0;
      longest = std::max(longest, run);
    }
    const std::size_t cat = longest <= lowest ? 0 : std::min<std::size_t>(longest - lowest, k);
    counts[cat] += 1.0;
  }
  const double nb = static_cast<double>(blocks);
  double chi2 = 0.0;
  for (std::size_t i = 0; i < pi.size(); ++i) {
    const double expect = nb * pi[i];
    chi2 += (counts[i] - expect) * (counts[i] - expect) / expect;
  }
  return report("longest_run", n, chi2, detail::igamc(static_cast<double>(k) / 2.0, chi2 / 2.0));
}

TestReport detail::nist_fft_unchecked(std::span<const std::uint8_t> bits) {
  const std::size_t n = bits.size();
  if (n < 2) fail(ErrorCode::InvalidArgument, "FFT test needs at least 2 bits");
  struct Free {
    void operator()(void* p) const { fftw_free(p); }
  };
  std::unique_ptr<double, Free> in(fftw_alloc_real(n));
  std::unique_ptr<fftw_complex, Free> out(fftw_alloc_complex(n / 2 + 1));
  fftw_plan plan = fftw_plan_dft_r2c_1d(static_cast<int>(n), in.get(), out.get(), FFTW_ESTIMATE);
  for (std::size_t i = 0; i < n; ++i) in.get()[i] = bits[i] ? 1.0 : -1.0;
  fftw_execute(plan);
  fftw_destroy_plan(plan);

  const double nd = static_cast<double>(n);
  const double threshold = std::sqrt(std::log(1.0 / 0.05) * nd);
  const double expected = 0.95 * nd / 2.0;
  std::size_t below = 0;
  for (std::size_t k = 0; k < n / 2; ++k) {
    const double mag = std::hypot(out.get()[k][0], out.get()[k][1]);
    if (mag < threshold) ++below;
  }
  const double d = (static_cast<double>(below) - expected) / std::sqrt(nd * 0.95 * 0.05 / 4.0);
  return report("fft", n, d, std::erfc(std::abs(d) / std::sqrt(2.0)));
}

TestReport nist_fft(std::span<const std::uint8_t> bits) {
  require_length(bits, 1000, "FFT test");
  return detail::nist_fft_unchecked(bits);
}

namespace {

// Sum over observed patterns of pi * ln(pi), overlapping blocks with wrap.
double apen_phi(std::span<const std::uint8_t> bits, unsigned m) {
  if (m == 0) return 0.0;
  const std::size_t n = bits.size();
  std::vector<std::size_t> counts(std::size_t{1} << m, 0);
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t pattern = 0;
    for (unsigned k = 0; k < m; ++k) pattern = (pattern << 1) | bits[(i + k) % n];
    ++counts[pattern];
  }
  double phi = 0.0;
  for (auto c : counts) {
    if (c == 0) continue;
    const double p = static_cast<double>(c) / static_cast<double>(n);
    phi += p * std::log(p);
  }
  return phi;
}

}  // namespace

TestReport detail::nist_approx_entropy_unchecked(std::span<const std::uint8_t> bits,
                                                 unsigned m) {
  if (bits.empty() || m < 1 || m > 24) {
    fail(ErrorCode::InvalidArgument, "approximate entropy: block length must be in [1, 24]");
  }
  const double n = static_cast<double>(bits.size());
  const double apen = apen_phi(bits, m) - apen_phi(bits, m + 1);
  const double chi2 = 2.0 * n * (std::log(2.0) - apen);
  return report("approx_entropy", bits.size(), chi2,
                detail::igamc(std::ldexp(1.0, static_cast<int>(m) - 1), chi2 / 2.0));
}

TestReport nist_approx_entropy(std::span<const std::uint8_t> bits, unsigned m) {
  if (bits.empty() || m < 1 ||
      static_cast<double>(m) > std::log2(static_cast<double>(bits.size())) - 5.0) {
    fail(ErrorCode::InvalidArgument,
         "approximate entropy: block length " + std::to_string(m) +
             " too large for n=" + std::to_string(bits.size()) + " (need m <= log2(n) - 5)");
  }
  return detail::nist_approx_entropy_unchecked(bits, m);
}

unsigned default_apen_block_length(std::size_t n) {
  const double limit = std::floor(std::log2(static_cast<double>(std::max<std::size_t>(n, 1))));
  return static_cast<unsigned>(std::clamp(limit - 6.0, 1.0, 10.0));
}

std::vector<TestReport> nist_battery(std::span<const std::uint8_t> bits) {
  return {nist_frequency(bits), nist_longest_run(bits), nist_fft(bits),
          nist_approx_entropy(bits, default_apen_block_length(bits.size()))};
}

void write_reports_csv(std::ostream& out,
                       std::span<const std::pair<std::string, TestReport>> labelled) {
  out << "test,name,n,statistic,p_value,pass\n";
  for (const auto& [label, r] : labelled) {
    out << r.name << ',' << label << ',' << r.n << ',' << r.statistic << ',' << r.p_value << ','
        << (r.pass ? "true" : "false") << '\n';
  }
}

BitRate secret_bit_rate(std::span<const std::size_t> matched_bits, double duration) {
  if (!(duration > 0.0)) fail(ErrorCode::InvalidArgument, "duration must be > 0");
  BitRate rate;
  for (auto bits : matched_bits) {
    const double r = static_cast<double>(bits) / duration;
    rate.per_stream.push_back(r);
    rate.aggregate += r;
  }
  if (!matched_bits.empty()) {
    rate.per_stream_mean = rate.aggregate / static_cast<double>(matched_bits.size());
  }
  return rate;
}

BitRate secret_bit_rate(const KeyAgreementResult& result, double duration, std::size_t streams) {
  std::vector<std::size_t> matched(streams, 0);
  for (std::size_t i = 0; i < streams && i < result.stream_lengths.size(); ++i) {
    if (i < result.stream_matched.size() && result.stream_matched[i]) {
      matched[i] = result.stream_lengths[i];
    }
  }
  return secret_bit_rate(matched, duration);
}

PeriodicityScore periodicity_score(std::span<const std::size_t> time_index,
                                   std::span<const std::uint8_t> bits, std::size_t lag) {
  if (time_index.size() != bits.size()) {
    fail(ErrorCode::InvalidArgument, "periodicity: index and bit counts differ");
  }
  PeriodicityScore s;
  s.lag = lag;
  if (bits.empty()) return s;
  const std::size_t horizon = *std::max_element(time_index.begin(), time_index.end()) + 1;
  std::vector<int> sign(horizon, 0);
  for (std::size_t k = 0; k < bits.size(); ++k) sign[time_index[k]] = bits[k] ? 1 : -1;
  std::vector<double> x, y;
  for (std::size_t t = 0; t + lag < horizon; ++t) {
    if (sign[t] != 0 && sign[t + lag] != 0) {
      x.push_back(sign[t]);
      y.push_back(sign[t + lag]);
    }
  }
  s.pairs = x.size();
  if (s.pairs >= 2) {
    s.correlation = pearson(x, y).value_or(0.0);
    s.z = s.correlation * std::sqrt(static_cast<double>(s.pairs));
  }
  return s;
}

}  // namespace skece
