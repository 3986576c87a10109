#pragma once

// The probability space on [1, n]: every k in [1, n] has mass 1/n and f(k)
// is a random variable on it.

#include <algorithm>
#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <span>
#include <vector>

#include "arithstat/error.hpp"
#include "arithstat/sieve.hpp"
#include "arithstat/summation.hpp"

namespace arithstat {

struct EmpiricalMoments {
  std::uint64_t n = 0;
  double mean = 0.0;
  double variance = 0.0;
  double min_value = 0.0;
  double max_value = 0.0;
  /// value -> count; absent when more than kMaxHistogramValues distinct
  /// values occur.
  std::optional<std::map<double, std::uint64_t>> histogram;

  static constexpr std::size_t kMaxHistogramValues = 64;
};

/// F(y) = P{f(k) < y}, strict inequality.
struct EmpiricalCdf {
  std::uint64_t n = 0;
  std::vector<double> support;  // sorted distinct values
  /// cdf_at_support[i] = F(support[i]); one extra trailing entry for +inf.
  std::vector<double> cdf_at_support;

  double cdf_below(double y) const {
    const auto it = std::lower_bound(support.begin(), support.end(), y);
    // values strictly below y are exactly support[0 .. it)
    if (it == support.end()) return cdf_at_support.back();
    return cdf_at_support[static_cast<std::size_t>(it - support.begin())];
  }
};

namespace detail {

inline void require_prefix(const ValueTable& table, std::uint64_t n) {
  require(n >= 1, "n must be >= 1");
  if (!(table.lo() == 1 && table.hi() >= n))
    throw InvalidArgument("table [" + std::to_string(table.lo()) + ", " +
                          std::to_string(table.hi()) +
                          "] does not cover [1, " + std::to_string(n) + "]");
}

template <class T>
EmpiricalMoments moments_of(std::span<const T> values) {
  EmpiricalMoments m;
  m.n = values.size();
  require(m.n >= 1, "moments of an empty sample");
  std::map<double, std::uint64_t> hist;
  bool keep_hist = true;
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  if constexpr (std::is_integral_v<T>) {
    __int128 s = 0, s2 = 0;
    for (T v : values) {
      s += v;
      s2 += static_cast<__int128>(v) * v;
    }
    const auto n = static_cast<__int128>(m.n);
    m.mean = static_cast<double>(s) / static_cast<double>(m.n);
    // exact integer numerator n*sum(f^2) - S^2, one rounding at the end
    m.variance = static_cast<double>(n * s2 - s * s) /
                 (static_cast<double>(m.n) * static_cast<double>(m.n));
  } else {
    CompensatedSum s, s2;
    for (T v : values) {
      s.add(v);
      s2.add(static_cast<double>(v) * v);
    }
    m.mean = s.value() / static_cast<double>(m.n);
    m.variance =
        std::max(0.0, s2.value() / static_cast<double>(m.n) - m.mean * m.mean);
  }
  for (T v : values) {
    const auto x = static_cast<double>(v);
    lo = std::min(lo, x);
    hi = std::max(hi, x);
    if (keep_hist) {
      ++hist[x];
      if (hist.size() > EmpiricalMoments::kMaxHistogramValues) {
        keep_hist = false;
        hist.clear();
      }
    }
  }
  m.min_value = lo;
  m.max_value = hi;
  if (keep_hist) m.histogram = std::move(hist);
  return m;
}

}  // namespace detail

/// Moments of an arbitrary sample under the uniform measure.
template <class T>
EmpiricalMoments moments(std::span<const T> values) {
  return detail::moments_of(values);
}

/// Mean and variance of f on [1, n] under the uniform measure.
inline EmpiricalMoments moments(const ValueTable& table, std::uint64_t n) {
  detail::require_prefix(table, n);
  return table.visit(
      [&](auto span) { return detail::moments_of(span.first(n)); });
}

/// p_n = Q(n) / n for an indicator kind.
inline double density(const FunctionKind& kind, std::uint64_t n,
                      const SieveConfig& config = {}) {
  detail::require(kind.is_indicator(), "density requires an indicator kind");
  detail::require(n >= 1, "density: n must be >= 1");
  const auto q = accumulate(kind, n, {n}, config).exact(0);
  return static_cast<double>(q) / static_cast<double>(n);
}

inline EmpiricalCdf empirical_cdf(const ValueTable& table, std::uint64_t n) {
  constexpr std::uint64_t kRealKindLimit = 10'000'000;
  detail::require_prefix(table, n);
  if (!table.kind().has_finite_alphabet() && n > kRealKindLimit)
    throw Unsupported("empirical_cdf: " + table.kind().name() +
                      " alphabet too large above n = 10^7");
  std::map<double, std::uint64_t> counts;
  table.visit([&](auto span) {
    for (auto v : span.first(n)) ++counts[static_cast<double>(v)];
  });
  EmpiricalCdf cdf;
  cdf.n = n;
  std::uint64_t below = 0;
  for (const auto& [value, count] : counts) {
    cdf.support.push_back(value);
    cdf.cdf_at_support.push_back(static_cast<double>(below) /
                                 static_cast<double>(n));
    below += count;
  }
  cdf.cdf_at_support.push_back(1.0);
  return cdf;
}

}  // namespace arithstat
