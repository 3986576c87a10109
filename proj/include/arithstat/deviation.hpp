#pragma once

// Deviation of S(n) from its mean. Throughout, the mean M_S(n) is read as
// the linear trend n*C with C = lim S(n)/n; for the Mertens function C = 0.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "arithstat/error.hpp"
#include "arithstat/limit_dist.hpp"
#include "arithstat/prob_space.hpp"
#include "arithstat/sieve.hpp"
#include "arithstat/summation.hpp"

namespace arithstat {

/// Slowly growing Psi(n) for the Chebyshev-type bound.
struct Psi {
  enum class Shape { constant, log, loglog };
  Shape shape = Shape::constant;
  double c = 1.0;

  static Psi constant(double c) { return {Shape::constant, c}; }
  static Psi log() { return {Shape::log, 0.0}; }
  static Psi loglog() { return {Shape::loglog, 0.0}; }

  /// "const:C", "log" or "loglog".
  static Psi parse(const std::string& text) {
    if (text == "log") return log();
    if (text == "loglog") return loglog();
    if (text.rfind("const:", 0) == 0) {
      try {
        std::size_t used = 0;
        const double c = std::stod(text.substr(6), &used);
        if (used == text.size() - 6 && c > 0.0) return constant(c);
      } catch (const std::exception&) {
      }
    }
    throw InvalidArgument("bad psi descriptor: " + text);
  }

  std::string name() const {
    switch (shape) {
      case Shape::constant:
        return "const:" + io::format_real(c);
      case Shape::log:
        return "log";
      case Shape::loglog:
        return "loglog";
    }
    return "";
  }
};

inline double psi(const Psi& descriptor, std::uint64_t n) {
  detail::require(n >= 1, "psi: n must be >= 1");
  const double x = static_cast<double>(n);
  switch (descriptor.shape) {
    case Psi::Shape::constant:
      return descriptor.c;
    case Psi::Shape::log:
      return std::log(std::max(x, 3.0));
    case Psi::Shape::loglog:
      return std::log(std::log(std::max(x, 16.0)));
  }
  return 0.0;
}

struct DeviationPoint {
  std::uint64_t n;
  double deviation;  // S(n) - n C
  double ratio;
};

struct DeviationReport {
  FunctionKind kind = KindTag::moebius;
  std::uint64_t n_lo = 0;
  std::uint64_t n_hi = 0;
  double trend_constant = 0.0;
  std::string check;            // "counting" or "exponent"
  std::string psi_descriptor;   // counting check only
  double xi = 0.0;              // exponent check only
  double worst_ratio = 0.0;
  std::uint64_t argmax_n = 0;
  std::uint64_t skipped = 0;    // exponent check: points with |dev| < 1
  bool pass = false;
  std::string mean_reading = "M_S(n) = n * C (linear trend)";
  std::vector<DeviationPoint> trajectory;
};

struct VarianceBound {
  double sup_bound;  // n / 4
  double tighter;    // n p_hat (1 - p_hat)
};

/// Variance bound for a sum of n independent indicators.
inline VarianceBound independent_variance_bound(const FunctionKind& kind,
                                                std::uint64_t n,
                                                const SieveConfig& config = {}) {
  detail::require(kind.is_indicator(),
                  "independent_variance_bound requires an indicator kind");
  const double p = density(kind, n, config);
  const double dn = static_cast<double>(n);
  return {dn / 4.0, dn * p * (1.0 - p)};
}

/// max over checkpoints of |S(n) - n C| / (0.5 sqrt(n) Psi(n)).
inline DeviationReport counting_deviation_check(const SummationSeries& series,
                                                double trend,
                                                const Psi& descriptor) {
  detail::require(series.kind().is_indicator(),
                  "counting_deviation_check requires an indicator kind");
  detail::require(trend >= 0.0 && trend <= 1.0, "C must lie in [0, 1]");
  DeviationReport r;
  r.kind = series.kind();
  r.check = "counting";
  r.trend_constant = trend;
  r.psi_descriptor = descriptor.name();
  r.n_lo = series.checkpoints().front();
  r.n_hi = series.checkpoints().back();
  r.argmax_n = r.n_lo;
  for (std::size_t i = 0; i < series.size(); ++i) {
    const std::uint64_t n = series.checkpoints()[i];
    const double dn = static_cast<double>(n);
    const double dev = series.value(i) - dn * trend;
    const double ratio =
        std::abs(dev) / (0.5 * std::sqrt(dn) * psi(descriptor, n));
    r.trajectory.push_back({n, dev, ratio});
    if (ratio > r.worst_ratio) {
      r.worst_ratio = ratio;
      r.argmax_n = n;
    }
  }
  r.pass = r.worst_ratio <= 1.0;
  return r;
}

namespace detail {

/// Exponent ratio ln|dev| / ((1/2 + xi) ln n), or NaN when skipped.
inline double exponent_ratio(std::uint64_t n, double dev, double xi) {
  if (n < 2 || std::abs(dev) < 1.0)
    return std::numeric_limits<double>::quiet_NaN();
  return std::log(std::abs(dev)) /
         ((0.5 + xi) * std::log(static_cast<double>(n)));
}

inline void finish_exponent(DeviationReport& r) {
  if (r.argmax_n == 0)
    throw InvalidArgument(
        "every point was skipped (n < 2 or |S(n) - nC| < 1)");
  r.pass = r.worst_ratio <= 1.0;
}

}  // namespace detail

/// max of ln|S(n) - nC| / ((1/2 + xi) ln n); pass means
/// |S(n) - nC| <= n^(1/2 + xi) on every retained checkpoint.
inline DeviationReport exponent_check(const SummationSeries& series,
                                      double trend, double xi) {
  detail::require(xi >= 0.0, "xi must be >= 0");
  DeviationReport r;
  r.kind = series.kind();
  r.check = "exponent";
  r.trend_constant = trend;
  r.xi = xi;
  r.n_lo = series.checkpoints().front();
  r.n_hi = series.checkpoints().back();
  for (std::size_t i = 0; i < series.size(); ++i) {
    const std::uint64_t n = series.checkpoints()[i];
    const double dev = series.value(i) - static_cast<double>(n) * trend;
    const double ratio = detail::exponent_ratio(n, dev, xi);
    if (std::isnan(ratio)) {
      ++r.skipped;
      continue;
    }
    r.trajectory.push_back({n, dev, ratio});
    if (r.argmax_n == 0 || ratio > r.worst_ratio) {
      r.worst_ratio = ratio;
      r.argmax_n = n;
    }
  }
  detail::finish_exponent(r);
  return r;
}

/// |M(n)| <= n^(1/2 + xi) on every n in [2, n_max], by a dense scan.
/// The trajectory keeps the record-setting points only.
inline DeviationReport mertens_riemann_check(std::uint64_t n_max, double xi,
                                             const SieveConfig& config = {}) {
  detail::require(n_max >= 2, "n_max must be >= 2");
  detail::require(xi >= 0.0, "xi must be >= 0");
  DeviationReport r;
  r.kind = KindTag::moebius;
  r.check = "exponent";
  r.xi = xi;
  r.n_lo = 2;
  r.n_hi = n_max;
  std::int64_t m = 0;
  const double scale = 0.5 + xi;
  for_each_segment(KindTag::moebius, 1, n_max, config,
                   [&](std::uint64_t lo, auto span) {
                     for (std::size_t i = 0; i < span.size(); ++i) {
                       m += static_cast<std::int64_t>(span[i]);
                       const std::uint64_t n = lo + i;
                       if (n < 2) continue;
                       if (m == 0) {
                         ++r.skipped;
                         continue;
                       }
                       const double ratio =
                           std::log(std::abs(static_cast<double>(m))) /
                           (scale * std::log(static_cast<double>(n)));
                       if (r.argmax_n == 0 || ratio > r.worst_ratio) {
                         r.worst_ratio = ratio;
                         r.argmax_n = n;
                         r.trajectory.push_back(
                             {n, static_cast<double>(m), ratio});
                       }
                     }
                   });
  detail::finish_exponent(r);
  return r;
}

struct VarianceGrowthPoint {
  std::uint64_t n;  // J * B
  double h_hat;     // sample variance of the first J block sums / B
};

struct VarianceGrowth {
  std::uint64_t block_size = 0;
  std::vector<VarianceGrowthPoint> points;
  /// Least-squares slope of ln h_hat against ln n; 0 when h_hat is
  /// identically 0, NaN when only some points are 0.
  double log_log_slope = 0.0;
};

/// D(S_n) estimated as (n / B) times the sample variance of the first n / B
/// block sums, reported as h(n) = D(S_n) / n at roughly ten n per decade.
template <class T>
VarianceGrowth variance_growth(std::span<const T> values, std::uint64_t block) {
  detail::require(block >= kMinBlockSize, "block size must be >= 100");
  const std::uint64_t j_max = values.size() / block;
  if (j_max < kMinBlockCount)
    throw InvalidArgument("too few blocks for variance growth");
  std::vector<double> sums(j_max);
  for (std::uint64_t j = 0; j < j_max; ++j) {
    CompensatedSum t;
    for (std::uint64_t i = j * block; i < (j + 1) * block; ++i)
      t.add(static_cast<double>(values[i]));
    sums[j] = t.value();
  }
  VarianceGrowth g;
  g.block_size = block;
  for (std::uint64_t j : log_checkpoints(kMinBlockCount, j_max, 10)) {
    CompensatedSum s;
    for (std::uint64_t i = 0; i < j; ++i) s.add(sums[i]);
    const double mean = s.value() / static_cast<double>(j);
    CompensatedSum ss;
    for (std::uint64_t i = 0; i < j; ++i)
      ss.add((sums[i] - mean) * (sums[i] - mean));
    g.points.push_back({j * block, ss.value() / static_cast<double>(j - 1) /
                                       static_cast<double>(block)});
  }
  const bool all_zero = std::all_of(g.points.begin(), g.points.end(),
                                    [](auto p) { return p.h_hat == 0.0; });
  const bool any_zero = std::any_of(g.points.begin(), g.points.end(),
                                    [](auto p) { return p.h_hat <= 0.0; });
  if (all_zero) {
    g.log_log_slope = 0.0;
  } else if (any_zero || g.points.size() < 2) {
    g.log_log_slope = std::numeric_limits<double>::quiet_NaN();
  } else {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (const auto& p : g.points) {
      const double x = std::log(static_cast<double>(p.n));
      const double y = std::log(p.h_hat);
      sx += x;
      sy += y;
      sxx += x * x;
      sxy += x * y;
    }
    const double m = static_cast<double>(g.points.size());
    g.log_log_slope = (m * sxy - sx * sy) / (m * sxx - sx * sx);
  }
  return g;
}

inline VarianceGrowth variance_growth(const FunctionKind& kind,
                                      std::uint64_t n_max, std::uint64_t block,
                                      const SieveConfig& config = {}) {
  const auto table = sieve_table(kind, 1, n_max, config);
  return table.visit(
      [&](auto span) { return variance_growth(span, block); });
}

}  // namespace arithstat
