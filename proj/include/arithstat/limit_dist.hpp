#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <span>
#include <string>
#include <vector>

#include "arithstat/error.hpp"
#include "arithstat/prob_space.hpp"
#include "arithstat/sieve.hpp"

namespace arithstat {

/// Standard normal CDF via the complementary error function; absolute
/// error is at the level of double rounding (well under 1e-7).
inline double normal_cdf(double z) {
  return 0.5 * std::erfc(-z / std::numbers::sqrt2);
}

/// D(S_n) = Q (1 - Q/n) for a sum of n independent indicators with Q ones.
/// Evaluated as Q (n - Q) / n, which is symmetric under Q <-> n - Q.
inline double binomial_variance(std::uint64_t q, std::uint64_t n) {
  detail::require(n >= 1, "binomial_variance: n must be >= 1");
  detail::require(q <= n, "binomial_variance: Q must not exceed n");
  return static_cast<double>(q) * static_cast<double>(n - q) /
         static_cast<double>(n);
}

/// Normality of a single deterministic sequence is assessed on disjoint
/// block sums T_j, treated as approximately independent replicates. The
/// samples are standardized with their own mean and sd, so the test is
/// about shape, not location. Dependence between blocks inflates the KS
/// statistic; thresholds are configuration, not critical values.
struct NormalityReport {
  FunctionKind kind = KindTag::moebius;
  std::uint64_t n = 0;
  std::uint64_t block_size = 0;
  std::uint64_t block_count = 0;
  std::vector<double> block_sums;
  std::vector<double> standardized_samples;
  double ks_statistic = std::numeric_limits<double>::quiet_NaN();
  double sample_mean = 0.0;  // of the block sums
  double sample_sd = 0.0;    // of the block sums, 1/(J-1) normalization
};

inline constexpr std::uint64_t kMinBlockSize = 100;
inline constexpr std::uint64_t kMinBlockCount = 30;
inline constexpr std::size_t kMinKsSamples = 30;

namespace detail {

inline void standardize_blocks(NormalityReport& r) {
  const double j = static_cast<double>(r.block_sums.size());
  CompensatedSum s;
  for (double t : r.block_sums) s.add(t);
  r.sample_mean = s.value() / j;
  CompensatedSum ss;
  for (double t : r.block_sums) ss.add((t - r.sample_mean) * (t - r.sample_mean));
  r.sample_sd = std::sqrt(ss.value() / (j - 1.0));
  if (!(r.sample_sd > 0.0))
    throw DegenerateVariance("block sums have zero spread");
  r.standardized_samples.reserve(r.block_sums.size());
  for (double t : r.block_sums)
    r.standardized_samples.push_back((t - r.sample_mean) / r.sample_sd);
}

template <class T>
NormalityReport block_standardize_values(std::span<const T> x,
                                         std::uint64_t block) {
  require(block >= kMinBlockSize, "block size must be >= 100");
  const std::uint64_t count = x.size() / block;
  if (count < kMinBlockCount)
    throw InvalidArgument("too few blocks: " + std::to_string(count) +
                          " < 30");
  NormalityReport r;
  r.n = x.size();
  r.block_size = block;
  r.block_count = count;
  r.block_sums.reserve(count);
  for (std::uint64_t j = 0; j < count; ++j) {
    CompensatedSum t;
    for (std::uint64_t i = j * block; i < (j + 1) * block; ++i)
      t.add(static_cast<double>(x[i]));
    r.block_sums.push_back(t.value());
  }
  standardize_blocks(r);
  return r;
}

}  // namespace detail

template <class T>
NormalityReport block_standardize(std::span<const T> values,
                                  std::uint64_t block) {
  return detail::block_standardize_values(values, block);
}

/// Block sums of f over [1, n] with block size B, standardized.
inline NormalityReport block_standardize(const ValueTable& table,
                                         std::uint64_t n, std::uint64_t block) {
  detail::require_prefix(table, n);
  auto r = table.visit([&](auto span) {
    return detail::block_standardize_values(span.first(n), block);
  });
  r.kind = table.kind();
  return r;
}

/// Kolmogorov-Smirnov distance sup |F_hat - Phi|, checked on both sides of
/// every jump of the empirical CDF.
inline double ks_normal(std::span<const double> samples) {
  if (samples.size() < kMinKsSamples)
    throw InvalidArgument("ks_normal needs at least 30 samples");
  std::vector<double> sorted(samples.begin(), samples.end());
  for (double x : sorted)
    if (!std::isfinite(x)) throw InvalidArgument("non-finite sample");
  std::sort(sorted.begin(), sorted.end());
  const double n = static_cast<double>(sorted.size());
  double d = 0.0;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    const double phi = normal_cdf(sorted[i]);
    d = std::max({d, static_cast<double>(i + 1) / n - phi,
                  phi - static_cast<double>(i) / n});
  }
  return d;
}

inline NormalityReport normality_report(const ValueTable& table,
                                        std::uint64_t n, std::uint64_t block) {
  auto r = block_standardize(table, n, block);
  r.ks_statistic = ks_normal(r.standardized_samples);
  return r;
}

struct MeanVariance {
  double mean;
  double variance;
};

/// Limiting moments of the weight 2 / -1 / 0 (even squarefree / odd
/// squarefree / not squarefree): mean 3/pi^2, variance 15/pi^2 - 9/pi^4.
inline constexpr MeanVariance section4_moments() {
  constexpr double pi2 = std::numbers::pi * std::numbers::pi;
  return {3.0 / pi2, 15.0 / pi2 - 9.0 / (pi2 * pi2)};
}

/// Limiting variance of mu(n): 6/pi^2 (the mean tends to 0).
inline constexpr double mertens_increment_variance() {
  return 6.0 / (std::numbers::pi * std::numbers::pi);
}

}  // namespace arithstat
