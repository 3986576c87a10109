#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "arithstat/error.hpp"
#include "arithstat/prob_space.hpp"
#include "arithstat/sieve.hpp"
#include "arithstat/summation.hpp"

namespace arithstat {

struct CovarianceSequence {
  std::uint64_t n = 0;
  std::vector<std::uint64_t> lags;
  std::vector<double> r_hat;
  double mean_used = 0.0;
};

/// Mixing coefficients estimated from single-coordinate events
/// {f(k) in B1}, {f(k + lag) in B2}, with frequencies averaged over k.
/// Each value is a lower bound for the supremum over the full past/future
/// sigma-algebras.
struct MixingEstimate {
  std::uint64_t n = 0;
  std::vector<std::uint64_t> lags;
  std::vector<double> alpha_hat;
  std::string event_family = "single-coordinate value subsets";
};

struct SummabilityDiagnostic {
  std::vector<double> partial_sums;
  /// Least-squares slope of the partial sums over the last half of lags.
  double tail_slope = 0.0;
  /// partial_sums[L-1] - partial_sums[L/2 - 1]
  double tail_growth = 0.0;
  double growth_threshold = 0.0;
  bool looks_bounded = false;
};

struct StationarityConfig {
  double oscillation_tolerance = 0.01;  // (2.2): tail_osc <= tol * (1 + |C|)
  double covariance_sigmas = 3.0;       // (2.3): |r(h)| <= s * r(0) / sqrt(n)
  std::uint64_t first_tested_lag = 10;  // H_0
  std::uint64_t tested_lag_count = 11;  // lags H_0 .. H_0 + count - 1
  unsigned windows = 4;                 // for covariance_stability
};

struct StationarityReport {
  FunctionKind kind = KindTag::moebius;
  std::uint64_t n = 0;
  std::vector<std::uint64_t> checkpoints;
  std::vector<double> mean_trajectory;
  double mean_limit_estimate = 0.0;
  double tail_oscillation = 0.0;
  double sup_abs_value = 0.0;
  bool sup_unbounded = false;
  std::vector<std::uint64_t> tested_lags;
  std::vector<double> tested_r_hat;
  double r_hat_zero = 0.0;
  double covariance_stability = 0.0;
  bool verdict_2_2 = false;
  bool verdict_2_3 = false;
  bool verdict_2_4 = false;
  StationarityConfig thresholds;
};

namespace detail {

template <class T>
double centered_lag_sum(std::span<const T> x, std::uint64_t lag, double mean) {
  CompensatedSum acc;
  for (std::size_t k = 0; k + lag < x.size(); ++k)
    acc.add((static_cast<double>(x[k]) - mean) *
            (static_cast<double>(x[k + lag]) - mean));
  return acc.value();
}

/// Empirical autocovariance with the sample mean of the whole span, one
/// normalization 1/(n - h) per lag. Integer data uses exact integer sums.
template <class T>
CovarianceSequence autocovariance_of(std::span<const T> x,
                                     std::span<const std::uint64_t> lags) {
  CovarianceSequence out;
  out.n = x.size();
  out.lags.assign(lags.begin(), lags.end());
  const std::uint64_t n = out.n;
  for (std::uint64_t h : lags) {
    if (h >= n)
      throw InvalidArgument("lag " + std::to_string(h) +
                            " must be smaller than n = " + std::to_string(n));
    require(2 * h < n, "lag " + std::to_string(h) + " must be below n / 2");
  }
  if constexpr (std::is_integral_v<T>) {
    __int128 s = 0;
    for (T v : x) s += v;
    out.mean_used = static_cast<double>(s) / static_cast<double>(n);
    for (std::uint64_t h : lags) {
      __int128 p = 0, a = 0, b = 0;
      for (std::size_t k = 0; k + h < n; ++k) {
        p += static_cast<__int128>(x[k]) * x[k + h];
        a += x[k];
        b += x[k + h];
      }
      const auto nn = static_cast<__int128>(n);
      const double d = static_cast<double>(n) * static_cast<double>(n);
      if (h == 0) {
        out.r_hat.push_back(static_cast<double>(nn * p - s * s) / d);
      } else {
        // n^2 * (n - h) * r(h) = n^2 P - n S (A + B) + (n - h) S^2
        const __int128 num = nn * nn * p - nn * s * (a + b) +
                             static_cast<__int128>(n - h) * s * s;
        out.r_hat.push_back(static_cast<double>(num) /
                            (d * static_cast<double>(n - h)));
      }
    }
  } else {
    CompensatedSum s;
    for (T v : x) s.add(v);
    out.mean_used = s.value() / static_cast<double>(n);
    for (std::uint64_t h : lags)
      out.r_hat.push_back(centered_lag_sum(x, h, out.mean_used) /
                          static_cast<double>(n - h));
  }
  return out;
}

/// Maps each value to its index in the kind's alphabet.
inline std::vector<std::uint8_t> alphabet_codes(const ValueTable& table,
                                                std::uint64_t n) {
  if (!table.kind().has_finite_alphabet())
    throw Unsupported("mixing estimation needs a finite alphabet; " +
                      table.kind().name() + " is unbounded");
  const auto alphabet = table.kind().alphabet();
  int offset = -alphabet.front();
  std::vector<std::uint8_t> lut(alphabet.back() - alphabet.front() + 1, 0);
  for (std::size_t i = 0; i < alphabet.size(); ++i)
    lut[alphabet[i] + offset] = static_cast<std::uint8_t>(i);
  std::vector<std::uint8_t> codes(n);
  const auto& v = table.ints();
  for (std::size_t i = 0; i < n; ++i) codes[i] = lut[v[i] + offset];
  return codes;
}

}  // namespace detail

template <class T>
CovarianceSequence autocovariance(std::span<const T> values,
                                  std::span<const std::uint64_t> lags) {
  return detail::autocovariance_of(values, lags);
}

inline CovarianceSequence autocovariance(const ValueTable& table,
                                         std::uint64_t n,
                                         std::span<const std::uint64_t> lags) {
  detail::require_prefix(table, n);
  return table.visit([&](auto span) {
    return detail::autocovariance_of(span.first(n), lags);
  });
}

/// |P(f(k) in B1, f(k+lag) in B2) - P(f(k) in B1) P(f(k+lag) in B2)| with
/// frequencies over k in [1, n - lag]. Computed by a direct scan.
inline double independence_gap(const ValueTable& table, std::uint64_t n,
                               std::uint64_t lag, const std::set<int>& b1,
                               const std::set<int>& b2) {
  detail::require_prefix(table, n);
  detail::require(lag >= 1, "independence_gap: lag must be >= 1");
  if (lag >= n) throw InvalidArgument("empty range after lag shift");
  if (!table.kind().has_finite_alphabet())
    throw Unsupported("independence_gap needs a finite alphabet");
  const auto alphabet = table.kind().alphabet();
  for (const auto* b : {&b1, &b2})
    for (int v : *b)
      detail::require(std::find(alphabet.begin(), alphabet.end(), v) !=
                          alphabet.end(),
                      "subset value " + std::to_string(v) +
                          " outside the alphabet");
  const auto& x = table.ints();
  const std::uint64_t m = n - lag;
  std::uint64_t ca = 0, cb = 0, cab = 0;
  for (std::uint64_t k = 0; k < m; ++k) {
    const bool in_a = b1.count(x[k]) != 0;
    const bool in_b = b2.count(x[k + lag]) != 0;
    ca += in_a;
    cb += in_b;
    cab += in_a && in_b;
  }
  const double dm = static_cast<double>(m);
  return std::abs(static_cast<double>(cab) / dm -
                  (static_cast<double>(ca) / dm) *
                      (static_cast<double>(cb) / dm));
}

/// Exhaustive scan over nonempty proper subsets of an alphabet of
/// `alphabet_size` symbols. `codes` holds symbol indices.
inline MixingEstimate alpha_hat_codes(std::span<const std::uint8_t> codes,
                                      unsigned alphabet_size,
                                      std::span<const std::uint64_t> lags) {
  detail::require(alphabet_size >= 1 && alphabet_size <= 8,
                  "alphabet must have 1..8 symbols");
  MixingEstimate est;
  est.n = codes.size();
  est.lags.assign(lags.begin(), lags.end());
  const unsigned full = (1u << alphabet_size) - 1;
  for (std::uint64_t lag : lags) {
    detail::require(lag >= 1, "alpha_hat: lag must be >= 1");
    detail::require(2 * lag < est.n, "alpha_hat: lag must be below n / 2");
    const std::uint64_t m = est.n - lag;
    std::vector<std::uint64_t> joint(alphabet_size * alphabet_size, 0);
    for (std::uint64_t k = 0; k < m; ++k)
      ++joint[codes[k] * alphabet_size + codes[k + lag]];
    const double dm = static_cast<double>(m);
    double best = 0.0;
    for (unsigned s1 = 1; s1 < full; ++s1) {
      for (unsigned s2 = 1; s2 < full; ++s2) {
        std::uint64_t ca = 0, cb = 0, cab = 0;
        for (unsigned a = 0; a < alphabet_size; ++a) {
          for (unsigned b = 0; b < alphabet_size; ++b) {
            const auto c = joint[a * alphabet_size + b];
            const bool in_a = (s1 >> a) & 1u;
            const bool in_b = (s2 >> b) & 1u;
            if (in_a) ca += c;
            if (in_b) cb += c;
            if (in_a && in_b) cab += c;
          }
        }
        best = std::max(best, std::abs(static_cast<double>(cab) / dm -
                                       (static_cast<double>(ca) / dm) *
                                           (static_cast<double>(cb) / dm)));
      }
    }
    est.alpha_hat.push_back(best);
  }
  return est;
}

inline MixingEstimate alpha_hat(const ValueTable& table, std::uint64_t n,
                                std::span<const std::uint64_t> lags) {
  detail::require_prefix(table, n);
  const auto codes = detail::alphabet_codes(table, n);
  return alpha_hat_codes(
      codes, static_cast<unsigned>(table.kind().alphabet().size()), lags);
}

/// Windowed variant: the same estimate on `windows` disjoint equal windows
/// of [1, n]; returns the per-lag maximum over windows.
inline std::vector<double> alpha_hat_windowed(
    const ValueTable& table, std::uint64_t n,
    std::span<const std::uint64_t> lags, unsigned windows) {
  detail::require_prefix(table, n);
  detail::require(windows >= 1, "windows must be >= 1");
  const auto codes = detail::alphabet_codes(table, n);
  const auto size = static_cast<unsigned>(table.kind().alphabet().size());
  const std::uint64_t w = n / windows;
  std::vector<double> out(lags.size(), 0.0);
  for (unsigned i = 0; i < windows; ++i) {
    const auto est = alpha_hat_codes(
        std::span<const std::uint8_t>(codes).subspan(i * w, w), size, lags);
    for (std::size_t j = 0; j < out.size(); ++j)
      out[j] = std::max(out[j], est.alpha_hat[j]);
  }
  return out;
}

inline SummabilityDiagnostic alpha_summability(
    const MixingEstimate& estimate, double growth_threshold = 0.01) {
  const auto& lags = estimate.lags;
  detail::require(!lags.empty(), "alpha_summability: no lags");
  for (std::size_t i = 0; i < lags.size(); ++i)
    detail::require(lags[i] == i + 1,
                    "alpha_summability: lags must be exactly 1..L");
  SummabilityDiagnostic d;
  d.growth_threshold = growth_threshold;
  double run = 0.0;
  for (double a : estimate.alpha_hat) d.partial_sums.push_back(run += a);
  const std::size_t L = lags.size();
  const std::size_t half = L / 2;
  d.tail_growth =
      d.partial_sums[L - 1] - (half == 0 ? 0.0 : d.partial_sums[half - 1]);
  // slope over indices [half, L)
  const std::size_t m = L - half;
  if (m >= 2) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = half; i < L; ++i) {
      const double x = static_cast<double>(lags[i]);
      sx += x;
      sy += d.partial_sums[i];
      sxx += x * x;
      sxy += x * d.partial_sums[i];
    }
    const double dm = static_cast<double>(m);
    d.tail_slope = (dm * sxy - sx * sy) / (dm * sxx - sx * sx);
  }
  d.looks_bounded = d.tail_growth <= growth_threshold;
  return d;
}

/// Checks the three wide-sense stationarity conditions on f over [1, n].
inline StationarityReport stationarity_report(
    const FunctionKind& kind, std::uint64_t n,
    std::vector<std::uint64_t> checkpoints,
    const StationarityConfig& config = {},
    const SieveConfig& sieve_config = {}) {
  SummationSeries::validate_checkpoints(checkpoints, n);
  detail::require(config.windows >= 1, "windows must be >= 1");
  const auto table = sieve_table(kind, 1, n, sieve_config);

  StationarityReport r;
  r.kind = kind;
  r.n = n;
  r.thresholds = config;
  const auto series = accumulate(table, checkpoints);
  r.checkpoints = std::move(checkpoints);
  for (std::size_t i = 0; i < series.size(); ++i)
    r.mean_trajectory.push_back(series.value(i) /
                                static_cast<double>(r.checkpoints[i]));
  r.mean_limit_estimate = r.mean_trajectory.back();
  for (std::size_t i = r.mean_trajectory.size() / 2;
       i < r.mean_trajectory.size(); ++i)
    r.tail_oscillation =
        std::max(r.tail_oscillation,
                 std::abs(r.mean_trajectory[i] - r.mean_limit_estimate));
  r.verdict_2_2 = r.tail_oscillation <= config.oscillation_tolerance *
                                            (1.0 + std::abs(r.mean_limit_estimate));

  r.sup_unbounded = !kind.has_finite_alphabet();
  table.visit([&](auto span) {
    for (auto v : span)
      r.sup_abs_value = std::max(r.sup_abs_value, std::abs(double(v)));
  });
  r.verdict_2_4 = !r.sup_unbounded;

  std::vector<std::uint64_t> lags{0};
  for (std::uint64_t i = 0; i < config.tested_lag_count; ++i)
    lags.push_back(config.first_tested_lag + i);
  const auto global = autocovariance(table, n, lags);
  r.r_hat_zero = global.r_hat[0];
  r.tested_lags.assign(lags.begin() + 1, lags.end());
  r.tested_r_hat.assign(global.r_hat.begin() + 1, global.r_hat.end());
  const double bound =
      config.covariance_sigmas * r.r_hat_zero / std::sqrt(static_cast<double>(n));
  r.verdict_2_3 = std::all_of(r.tested_r_hat.begin(), r.tested_r_hat.end(),
                              [&](double c) { return std::abs(c) <= bound; });

  const std::uint64_t w = n / config.windows;
  table.visit([&](auto span) {
    for (unsigned i = 0; i < config.windows; ++i) {
      const auto local =
          detail::autocovariance_of(span.subspan(i * w, w), lags);
      for (std::size_t j = 0; j < lags.size(); ++j)
        r.covariance_stability =
            std::max(r.covariance_stability,
                     std::abs(local.r_hat[j] - global.r_hat[j]));
    }
  });
  return r;
}

}  // namespace arithstat
