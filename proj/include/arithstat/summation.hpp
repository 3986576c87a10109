#pragma once

#include <cmath>
#include <cstdint>
#include <ostream>
#include <span>
#include <vector>

#include "arithstat/error.hpp"
#include "arithstat/function_kind.hpp"
#include "arithstat/io.hpp"
#include "arithstat/sieve.hpp"

namespace arithstat {

/// Neumaier-compensated running sum.
class CompensatedSum {
 public:
  void add(double x) noexcept {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x))
      comp_ += (sum_ - t) + x;
    else
      comp_ += (x - t) + sum_;
    sum_ = t;
  }
  double value() const noexcept { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

/// S(n) = f(1) + ... + f(n) at a list of checkpoints. Integer kinds keep
/// exact 64-bit sums; von Mangoldt keeps compensated real sums.
class SummationSeries {
 public:
  SummationSeries(FunctionKind kind, std::vector<std::uint64_t> checkpoints,
                  std::vector<std::int64_t> sums)
      : kind_(kind),
        checkpoints_(std::move(checkpoints)),
        int_sums_(std::move(sums)) {
    detail::require(kind.is_integer_valued(),
                    "integer sums given for a real-valued kind");
    detail::require(int_sums_.size() == checkpoints_.size(),
                    "one sum per checkpoint required");
    validate_checkpoints(checkpoints_, UINT64_MAX);
  }

  SummationSeries(FunctionKind kind, std::vector<std::uint64_t> checkpoints,
                  std::vector<double> sums)
      : kind_(kind),
        checkpoints_(std::move(checkpoints)),
        real_sums_(std::move(sums)) {
    detail::require(!kind.is_integer_valued(),
                    "real sums given for an integer-valued kind");
    detail::require(real_sums_.size() == checkpoints_.size(),
                    "one sum per checkpoint required");
    validate_checkpoints(checkpoints_, UINT64_MAX);
  }

  FunctionKind kind() const noexcept { return kind_; }
  std::size_t size() const noexcept { return checkpoints_.size(); }
  const std::vector<std::uint64_t>& checkpoints() const noexcept {
    return checkpoints_;
  }
  bool is_exact() const noexcept { return kind_.is_integer_valued(); }

  /// Exact sum at checkpoint index i (integer kinds only).
  std::int64_t exact(std::size_t i) const { return int_sums_.at(i); }

  double value(std::size_t i) const {
    return is_exact() ? static_cast<double>(int_sums_.at(i))
                      : real_sums_.at(i);
  }

  static void validate_checkpoints(std::span<const std::uint64_t> points,
                                   std::uint64_t n_max) {
    detail::require(!points.empty(), "at least one checkpoint required");
    for (std::size_t i = 0; i < points.size(); ++i) {
      detail::require(points[i] >= 1, "checkpoints must be positive");
      detail::require(points[i] <= n_max,
                      "checkpoint " + std::to_string(points[i]) +
                          " exceeds n_max " + std::to_string(n_max));
      detail::require(i == 0 || points[i - 1] < points[i],
                      "checkpoints must be strictly increasing");
    }
  }

 private:
  FunctionKind kind_;
  std::vector<std::uint64_t> checkpoints_;
  std::vector<std::int64_t> int_sums_;
  std::vector<double> real_sums_;
};

namespace detail {

/// Shared walk: feeds values in order and records the running sum each time
/// a checkpoint is reached.
template <class Acc>
class CheckpointRecorder {
 public:
  CheckpointRecorder(std::span<const std::uint64_t> points, Acc& acc)
      : points_(points), acc_(acc) {}

  template <class T>
  void feed(std::uint64_t seg_lo, std::span<const T> values) {
    for (std::size_t i = 0; i < values.size(); ++i) {
      acc_.add(values[i]);
      while (next_ < points_.size() && points_[next_] == seg_lo + i) {
        acc_.record();
        ++next_;
      }
    }
  }

 private:
  std::span<const std::uint64_t> points_;
  Acc& acc_;
  std::size_t next_ = 0;
};

struct ExactAcc {
  std::int64_t sum = 0;
  std::vector<std::int64_t> out;
  void add(std::int8_t x) { sum += x; }
  void record() { out.push_back(sum); }
};

struct RealAcc {
  CompensatedSum sum;
  std::vector<double> out;
  void add(double x) { sum.add(x); }
  void record() { out.push_back(sum.value()); }
};

}  // namespace detail

/// Exact prefix sums at `checkpoints`, streamed over sieve segments.
inline SummationSeries accumulate(const FunctionKind& kind,
                                  std::uint64_t n_max,
                                  std::vector<std::uint64_t> checkpoints,
                                  const SieveConfig& config = {}) {
  SummationSeries::validate_checkpoints(checkpoints, n_max);
  if (kind.is_integer_valued()) {
    detail::ExactAcc acc;
    detail::CheckpointRecorder rec(checkpoints, acc);
    for_each_segment(kind, 1, checkpoints.back(), config,
                     [&](std::uint64_t lo, auto span) { rec.feed(lo, span); });
    return {kind, std::move(checkpoints), std::move(acc.out)};
  }
  detail::RealAcc acc;
  detail::CheckpointRecorder rec(checkpoints, acc);
  for_each_segment(kind, 1, checkpoints.back(), config,
                   [&](std::uint64_t lo, auto span) { rec.feed(lo, span); });
  return {kind, std::move(checkpoints), std::move(acc.out)};
}

/// Series from an already materialized table starting at 1.
inline SummationSeries accumulate(const ValueTable& table,
                                  std::vector<std::uint64_t> checkpoints) {
  detail::require(table.lo() == 1, "table must start at 1");
  SummationSeries::validate_checkpoints(checkpoints, table.hi());
  auto run = [&](auto acc) {
    detail::CheckpointRecorder rec(checkpoints, acc);
    table.visit([&](auto span) { rec.feed(1, span); });
    return SummationSeries(table.kind(), std::move(checkpoints),
                           std::move(acc.out));
  };
  if (table.kind().is_integer_valued()) return run(detail::ExactAcc{});
  return run(detail::RealAcc{});
}

/// Mertens function M(n) = mu(1) + ... + mu(n).
inline std::int64_t mertens(std::uint64_t n, const SieveConfig& config = {}) {
  detail::require(n >= 1, "mertens: n must be >= 1");
  return accumulate(KindTag::moebius, n, {n}, config).exact(0);
}

/// Full prefix array S(1..n) for integer kinds; limited to n <= 10^7.
inline std::vector<std::int64_t> prefix_sums(const FunctionKind& kind,
                                             std::uint64_t n,
                                             const SieveConfig& config = {}) {
  constexpr std::uint64_t kDenseLimit = 10'000'000;
  detail::require(kind.is_integer_valued(),
                  "prefix_sums supports integer kinds only");
  detail::require(n <= kDenseLimit,
                  "full prefix arrays are limited to n <= 10^7; use "
                  "checkpoints");
  std::vector<std::int64_t> out;
  out.reserve(n);
  std::int64_t sum = 0;
  for_each_segment(kind, 1, n, config, [&](std::uint64_t, auto span) {
    for (auto v : span) out.push_back(sum += static_cast<std::int64_t>(v));
  });
  return out;
}

/// Log-spaced checkpoints: `per_decade` points per power of ten from `from`
/// up to and including `to`.
inline std::vector<std::uint64_t> log_checkpoints(std::uint64_t from,
                                                  std::uint64_t to,
                                                  unsigned per_decade = 10) {
  detail::require(from >= 1 && from <= to, "bad checkpoint range");
  detail::require(per_decade >= 1, "per_decade must be >= 1");
  std::vector<std::uint64_t> out;
  const double step = std::pow(10.0, 1.0 / per_decade);
  for (double x = static_cast<double>(from); x < static_cast<double>(to);
       x *= step) {
    const auto n = static_cast<std::uint64_t>(std::llround(x));
    if (out.empty() || n > out.back()) out.push_back(n);
  }
  if (out.empty() || out.back() < to) out.push_back(to);
  return out;
}

inline void write_series_csv(std::ostream& out, const SummationSeries& s) {
  out << "n,S\n";
  for (std::size_t i = 0; i < s.size(); ++i) {
    out << s.checkpoints()[i] << ','
        << (s.is_exact() ? io::format_int(s.exact(i))
                         : io::format_real(s.value(i)))
        << '\n';
  }
}

}  // namespace arithstat
