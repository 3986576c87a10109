#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <istream>
#include <ostream>
#include <span>
#include <string>
#include <thread>
#include <utility>
#include <variant>
#include <vector>

#include "arithstat/error.hpp"
#include "arithstat/function_kind.hpp"
#include "arithstat/io.hpp"

namespace arithstat {

struct SieveConfig {
  std::uint64_t max_hi = 1'000'000'000;
  std::size_t segment_size = std::size_t{1} << 20;
  /// Segments are sieved by this many workers; results never depend on it.
  unsigned threads = 1;
};

struct FactorSignature {
  unsigned omega = 0;      // distinct prime divisors
  unsigned big_omega = 0;  // prime divisors with multiplicity
  bool squarefree = true;

  friend bool operator==(const FactorSignature&,
                         const FactorSignature&) = default;
};

/// Trial factorization. Slow; meant for spot checks and tests.
inline FactorSignature factor_signature(std::uint64_t n) {
  detail::require(n >= 1, "factor_signature: n must be >= 1");
  FactorSignature sig;
  for (std::uint64_t p = 2; p * p <= n; ++p) {
    if (n % p != 0) continue;
    unsigned e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    ++sig.omega;
    sig.big_omega += e;
    if (e >= 2) sig.squarefree = false;
  }
  if (n > 1) {
    ++sig.omega;
    ++sig.big_omega;
  }
  return sig;
}

/// Dense values of one arithmetic function on [lo, hi]. Integer kinds are
/// stored as int8, von Mangoldt as double. Immutable once built.
class ValueTable {
 public:
  using IntValues = std::vector<std::int8_t>;
  using RealValues = std::vector<double>;

  ValueTable(FunctionKind kind, std::uint64_t lo, IntValues values)
      : kind_(kind), lo_(lo), values_(std::move(values)) {
    detail::require(kind.is_integer_valued(),
                    "integer storage used for a real-valued kind");
    validate();
  }

  ValueTable(FunctionKind kind, std::uint64_t lo, RealValues values)
      : kind_(kind), lo_(lo), values_(std::move(values)) {
    detail::require(!kind.is_integer_valued(),
                    "real storage used for an integer-valued kind");
    validate();
  }

  FunctionKind kind() const noexcept { return kind_; }
  std::uint64_t lo() const noexcept { return lo_; }
  std::uint64_t hi() const noexcept { return lo_ + size() - 1; }
  std::size_t size() const noexcept {
    return std::visit([](const auto& v) { return v.size(); }, values_);
  }

  bool covers(std::uint64_t a, std::uint64_t b) const noexcept {
    return a >= lo_ && b <= hi() && a <= b;
  }

  /// f(n) as a double.
  double operator()(std::uint64_t n) const {
    detail::require(n >= lo_ && n <= hi(), "ValueTable: index out of range");
    return std::visit(
        [&](const auto& v) { return static_cast<double>(v[n - lo_]); },
        values_);
  }

  /// Calls `fn` with a span over the stored values (int8 or double).
  template <class Fn>
  decltype(auto) visit(Fn&& fn) const {
    return std::visit(
        [&](const auto& v) {
          using T = typename std::decay_t<decltype(v)>::value_type;
          return fn(std::span<const T>(v));
        },
        values_);
  }

  const IntValues& ints() const { return std::get<IntValues>(values_); }
  const RealValues& reals() const { return std::get<RealValues>(values_); }

 private:
  void validate() const {
    detail::require(lo_ >= 1, "ValueTable: lo must be >= 1");
    detail::require(size() >= 1, "ValueTable: empty range");
    if (!kind_.has_finite_alphabet()) {
      for (double x : reals())
        detail::require(x >= 0.0 && std::isfinite(x),
                        "von_mangoldt values must be finite and >= 0");
      return;
    }
    const auto alphabet = kind_.alphabet();
    for (std::int8_t x : ints())
      detail::require(
          std::find(alphabet.begin(), alphabet.end(), x) != alphabet.end(),
          "value " + std::to_string(x) + " outside the alphabet of " +
              kind_.name());
  }

  FunctionKind kind_;
  std::uint64_t lo_;
  std::variant<IntValues, RealValues> values_;
};

namespace detail {

inline std::uint64_t isqrt(std::uint64_t n) {
  auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(n)));
  while (r * r > n) --r;
  while ((r + 1) * (r + 1) <= n) ++r;
  return r;
}

inline std::vector<std::uint32_t> primes_up_to(std::uint64_t limit) {
  std::vector<std::uint32_t> primes;
  if (limit < 2) return primes;
  std::vector<bool> composite(limit + 1, false);
  for (std::uint64_t p = 2; p <= limit; ++p) {
    if (composite[p]) continue;
    primes.push_back(static_cast<std::uint32_t>(p));
    for (std::uint64_t m = p * p; m <= limit; m += p) composite[m] = true;
  }
  return primes;
}

/// Factor counts for every integer of one segment.
struct SegmentFactors {
  std::uint64_t lo = 0;
  std::vector<std::uint64_t> residual;
  std::vector<std::uint8_t> omega;
  std::vector<std::uint8_t> big_omega;
  std::vector<std::uint8_t> squarefree;
  std::vector<std::uint64_t> some_prime;  // a prime divisor (0 for n = 1)

  void compute(std::span<const std::uint32_t> base_primes, std::uint64_t a,
               std::size_t len) {
    lo = a;
    residual.resize(len);
    omega.assign(len, 0);
    big_omega.assign(len, 0);
    squarefree.assign(len, 1);
    some_prime.assign(len, 0);
    for (std::size_t i = 0; i < len; ++i) residual[i] = a + i;

    const std::uint64_t b = a + len - 1;
    for (std::uint64_t p : base_primes) {
      if (p * p > b) break;
      std::uint64_t m = (a + p - 1) / p * p;
      for (; m <= b; m += p) {
        const std::size_t i = m - a;
        std::uint64_t r = residual[i];
        unsigned e = 0;
        do {
          r /= p;
          ++e;
        } while (r % p == 0);
        residual[i] = r;
        ++omega[i];
        big_omega[i] = static_cast<std::uint8_t>(big_omega[i] + e);
        if (e >= 2) squarefree[i] = 0;
        some_prime[i] = p;
      }
    }
    for (std::size_t i = 0; i < len; ++i) {
      if (residual[i] > 1) {
        ++omega[i];
        ++big_omega[i];
        some_prime[i] = residual[i];
      }
    }
  }

  bool is_prime(std::size_t i) const {
    return omega[i] == 1 && big_omega[i] == 1;
  }
};

inline std::int8_t integer_value(const FunctionKind& kind,
                                 const SegmentFactors& f, std::size_t i) {
  const bool sf = f.squarefree[i] != 0;
  switch (kind.tag()) {
    case KindTag::prime_indicator:
      return f.is_prime(i) ? 1 : 0;
    case KindTag::twin_prime_indicator:
      return f.is_prime(i) && f.is_prime(i + 2) ? 1 : 0;
    case KindTag::squarefree_indicator:
      return sf ? 1 : 0;
    case KindTag::moebius:
      return sf ? (f.omega[i] % 2 ? -1 : 1) : 0;
    case KindTag::liouville:
      return f.big_omega[i] % 2 ? -1 : 1;
    case KindTag::omega_equals:
      return f.omega[i] == kind.k() ? 1 : 0;
    case KindTag::section4_weight:
      return sf ? (f.big_omega[i] % 2 ? -1 : 2) : 0;
    case KindTag::von_mangoldt:
      break;
  }
  return 0;
}

}  // namespace detail

/// Segmented sieve over [1, max_hi]. Base primes are computed once; each
/// segment is sieved independently so segments can run on any thread.
class SegmentedSieve {
 public:
  SegmentedSieve(std::uint64_t hi, SieveConfig config = {})
      : config_(config),
        base_primes_(detail::primes_up_to(detail::isqrt(hi + 2))) {
    detail::require(config.segment_size >= 1, "segment size must be >= 1");
  }

  const SieveConfig& config() const noexcept { return config_; }

  /// Writes f(lo), ..., f(lo + out.size() - 1) into `out`.
  void fill(const FunctionKind& kind, std::uint64_t lo,
            std::span<std::int8_t> out) const {
    detail::SegmentFactors f;
    // twin primes look two past the end
    const std::size_t extra =
        kind.tag() == KindTag::twin_prime_indicator ? 2 : 0;
    f.compute(base_primes_, lo, out.size() + extra);
    for (std::size_t i = 0; i < out.size(); ++i)
      out[i] = detail::integer_value(kind, f, i);
  }

  void fill(const FunctionKind& kind, std::uint64_t lo,
            std::span<double> out) const {
    detail::require(kind.tag() == KindTag::von_mangoldt,
                    "real-valued fill requested for an integer kind");
    detail::SegmentFactors f;
    f.compute(base_primes_, lo, out.size());
    for (std::size_t i = 0; i < out.size(); ++i)
      out[i] = f.omega[i] == 1
                   ? std::log(static_cast<double>(f.some_prime[i]))
                   : 0.0;
  }

  /// Runs `job(index, seg_lo, seg_len)` for each segment of [lo, hi],
  /// spreading segments over the configured worker count.
  template <class Job>
  void parallel_segments(std::uint64_t lo, std::uint64_t hi, Job&& job) const {
    const std::uint64_t seg = config_.segment_size;
    const std::uint64_t count = (hi - lo) / seg + 1;
    const unsigned workers = static_cast<unsigned>(
        std::clamp<std::uint64_t>(config_.threads, 1, count));
    auto run = [&](unsigned w) {
      for (std::uint64_t s = w; s < count; s += workers) {
        const std::uint64_t a = lo + s * seg;
        const std::uint64_t len = std::min(seg, hi - a + 1);
        job(static_cast<std::size_t>(s), a, static_cast<std::size_t>(len));
      }
    };
    if (workers == 1) {
      run(0);
      return;
    }
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(run, w);
    for (auto& t : pool) t.join();
  }

 private:
  SieveConfig config_;
  std::vector<std::uint32_t> base_primes_;
};

namespace detail {

inline void check_range(std::uint64_t lo, std::uint64_t hi,
                        const SieveConfig& config) {
  require(lo >= 1, "range must start at 1 or above");
  require(lo <= hi, "range is inverted (lo > hi)");
  require(hi <= config.max_hi,
          "hi = " + std::to_string(hi) + " exceeds configured maximum " +
              std::to_string(config.max_hi));
}

}  // namespace detail

/// Materializes f on [lo, hi].
inline ValueTable sieve_table(const FunctionKind& kind, std::uint64_t lo,
                              std::uint64_t hi, const SieveConfig& config = {}) {
  detail::check_range(lo, hi, config);
  const SegmentedSieve sieve(hi, config);
  const std::size_t len = hi - lo + 1;
  auto build = [&](auto values) {
    using T = typename decltype(values)::value_type;
    sieve.parallel_segments(lo, hi, [&](std::size_t, std::uint64_t a,
                                        std::size_t n) {
      sieve.fill(kind, a, std::span<T>(values.data() + (a - lo), n));
    });
    return ValueTable(kind, lo, std::move(values));
  };
  if (kind.is_integer_valued()) return build(ValueTable::IntValues(len));
  return build(ValueTable::RealValues(len));
}

/// Streams f over [lo, hi] one segment at a time, in increasing order.
/// `fn(seg_lo, span)` receives int8 spans for integer kinds and double
/// spans for von Mangoldt. With several threads, a batch of segments is
/// sieved concurrently and then delivered in order.
template <class Fn>
void for_each_segment(const FunctionKind& kind, std::uint64_t lo,
                      std::uint64_t hi, const SieveConfig& config, Fn&& fn) {
  detail::check_range(lo, hi, config);
  const SegmentedSieve sieve(hi, config);
  const std::uint64_t batch_span =
      static_cast<std::uint64_t>(config.segment_size) *
      std::max(1u, config.threads);
  auto stream = [&](auto tag) {
    using T = decltype(tag);
    std::vector<T> buffer;
    for (std::uint64_t a = lo; a <= hi;) {
      const std::uint64_t b = std::min(hi, a + batch_span - 1);
      buffer.resize(b - a + 1);
      sieve.parallel_segments(a, b, [&](std::size_t, std::uint64_t s,
                                        std::size_t n) {
        sieve.fill(kind, s, std::span<T>(buffer.data() + (s - a), n));
      });
      fn(a, std::span<const T>(buffer));
      if (b == hi) break;
      a = b + 1;
    }
  };
  if (kind.is_integer_valued())
    stream(std::int8_t{});
  else
    stream(double{});
}

/// Writes the on-disk cache form: `kind,lo,hi` header, one metadata row,
/// then one value per line.
inline void write_table_csv(std::ostream& out, const ValueTable& table) {
  out << "kind,lo,hi\n"
      << table.kind().name() << ',' << table.lo() << ',' << table.hi()
      << '\n';
  if (table.kind().is_integer_valued()) {
    for (std::int8_t v : table.ints()) out << static_cast<int>(v) << '\n';
  } else {
    for (double v : table.reals()) out << io::format_real(v) << '\n';
  }
}

inline ValueTable read_table_csv(std::istream& in) {
  std::string line;
  std::size_t line_no = 1;
  if (!std::getline(in, line) || line != "kind,lo,hi")
    throw ParseError("expected header 'kind,lo,hi'", line_no);
  ++line_no;
  if (!std::getline(in, line)) throw ParseError("missing metadata row", 2);
  const auto c1 = line.find(',');
  const auto c2 = line.find(',', c1 == std::string::npos ? c1 : c1 + 1);
  if (c1 == std::string::npos || c2 == std::string::npos)
    throw ParseError("metadata row must be kind,lo,hi", line_no);
  const FunctionKind kind = FunctionKind::parse(line.substr(0, c1));
  std::uint64_t lo = 0, hi = 0;
  try {
    lo = std::stoull(line.substr(c1 + 1, c2 - c1 - 1));
    hi = std::stoull(line.substr(c2 + 1));
  } catch (const std::exception&) {
    throw ParseError("bad range in metadata row", line_no);
  }
  if (lo < 1 || hi < lo) throw ParseError("invalid range", line_no);
  const std::size_t len = hi - lo + 1;
  auto read_values = [&](auto& values, auto convert) {
    values.reserve(len);
    while (std::getline(in, line)) {
      ++line_no;
      if (line.empty()) continue;
      try {
        std::size_t used = 0;
        values.push_back(convert(line, used));
        if (used != line.size()) throw std::invalid_argument(line);
      } catch (const std::exception&) {
        throw ParseError("bad value '" + line + "'", line_no);
      }
    }
    if (values.size() != len)
      throw ParseError("expected " + std::to_string(len) + " values, got " +
                           std::to_string(values.size()),
                       line_no);
  };
  if (kind.is_integer_valued()) {
    ValueTable::IntValues values;
    read_values(values, [](const std::string& s, std::size_t& used) {
      return static_cast<std::int8_t>(std::stoi(s, &used));
    });
    return ValueTable(kind, lo, std::move(values));
  }
  ValueTable::RealValues values;
  read_values(values, [](const std::string& s, std::size_t& used) {
    return std::stod(s, &used);
  });
  return ValueTable(kind, lo, std::move(values));
}

}  // namespace arithstat
