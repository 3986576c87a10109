#pragma once

// Command orchestration shared by the command-line tool and the tests.
// run() turns a RunConfig into named artifacts (CSV / JSON text), writes
// them to the output directory, and reports whether every check passed.

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <map>
#include <numbers>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "arithstat/arithstat.hpp"
#include "arithstat/json.hpp"

namespace arithstat::app {

struct RunConfig {
  std::string command;
  std::string kind = "moebius";
  std::uint64_t lo = 1;
  std::uint64_t hi = 10;
  std::uint64_t n = 1'000'000;  // n_max for streaming commands
  std::vector<std::uint64_t> checkpoints;  // empty: log-spaced
  unsigned per_decade = 10;
  std::uint64_t block_size = 1000;
  std::uint64_t max_lag = 10;
  std::uint64_t seed = 1;
  std::uint64_t replicates = 200;
  std::uint64_t length = 1000;  // realization length for ensemble covariance
  std::string atoms;            // "lambda:sigma2,..."
  double mean = 0.0;
  double xi = 0.0;
  std::optional<double> trend;  // C; defaults to the known limit of the kind
  std::string psi = "const:2";
  std::string mode = "exponent";  // deviation: counting | exponent | growth
  std::optional<double> bernoulli;  // normality: synthetic control instead
  double ks_threshold = 0.15;
  std::optional<double> alpha_threshold;
  std::string bfile;
  std::string series = "mertens";
  std::string out_dir;  // empty: primary artifact to the stream
  unsigned threads = 1;
  std::uint64_t segment_size = std::uint64_t{1} << 20;
};

struct Artifact {
  std::string name;
  std::string content;
};

struct RunResult {
  int exit_code = 0;  // 0 when every check passed
  std::vector<Artifact> artifacts;
};

namespace detail {

using arithstat::json::Json;

inline std::string dump(const Json& j) { return j.dump(2) + "\n"; }

inline SieveConfig sieve_config(const RunConfig& c) {
  SieveConfig s;
  s.threads = c.threads;
  s.segment_size = static_cast<std::size_t>(c.segment_size);
  return s;
}

inline std::vector<std::uint64_t> checkpoints_for(const RunConfig& c,
                                                  std::uint64_t from = 1) {
  if (!c.checkpoints.empty()) return c.checkpoints;
  return log_checkpoints(std::min(from, c.n), c.n, c.per_decade);
}

inline std::vector<std::uint64_t> lag_range(std::uint64_t max_lag) {
  arithstat::detail::require(max_lag >= 1, "max lag must be >= 1");
  std::vector<std::uint64_t> lags;
  for (std::uint64_t h = 1; h <= max_lag; ++h) lags.push_back(h);
  return lags;
}

/// C = lim S(n)/n where it is known in closed form.
inline double default_trend(const FunctionKind& kind) {
  constexpr double pi2 = std::numbers::pi * std::numbers::pi;
  switch (kind.tag()) {
    case KindTag::moebius:
    case KindTag::liouville:
    case KindTag::prime_indicator:
    case KindTag::twin_prime_indicator:
      return 0.0;
    case KindTag::squarefree_indicator:
      return 6.0 / pi2;
    case KindTag::section4_weight:
      return 3.0 / pi2;
    default:
      throw InvalidArgument("no known trend constant for " + kind.name() +
                            "; pass --trend");
  }
}

inline SpectralSpec parse_atoms(const std::string& text, double mean) {
  SpectralSpec spec;
  spec.mean = mean;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto colon = item.find(':');
    if (colon == std::string::npos)
      throw InvalidArgument("atom must be lambda:sigma2, got '" + item + "'");
    try {
      spec.atoms.push_back(
          {std::stod(item.substr(0, colon)), std::stod(item.substr(colon + 1))});
    } catch (const std::exception&) {
      throw InvalidArgument("bad atom '" + item + "'");
    }
  }
  arithstat::detail::require(!spec.atoms.empty(), "no atoms given");
  spec.validate();
  return spec;
}

inline std::string csv_real(double x) { return io::format_real(x); }

inline RunResult cmd_table(const RunConfig& c) {
  const auto table = sieve_table(FunctionKind::parse(c.kind), c.lo, c.hi,
                                 sieve_config(c));
  std::ostringstream out;
  write_table_csv(out, table);
  return {0, {{"table.csv", out.str()}}};
}

inline RunResult cmd_sum(const RunConfig& c) {
  const auto series = accumulate(FunctionKind::parse(c.kind), c.n,
                                 checkpoints_for(c), sieve_config(c));
  std::ostringstream out;
  write_series_csv(out, series);
  return {0, {{"sum.csv", out.str()}}};
}

inline RunResult cmd_stats(const RunConfig& c) {
  const auto kind = FunctionKind::parse(c.kind);
  const auto table = sieve_table(kind, 1, c.n, sieve_config(c));
  Json j;
  j["kind"] = kind.name();
  j["moments"] = json::to_json(moments(table, c.n));
  j["cdf"] = json::to_json(empirical_cdf(table, c.n));
  if (kind.is_indicator()) {
    const auto m = moments(table, c.n);
    j["density"] = json::real(m.mean);
  }
  return {0, {{"stats.json", dump(j)}}};
}

inline RunResult cmd_dependence(const RunConfig& c) {
  const auto kind = FunctionKind::parse(c.kind);
  const auto lags = lag_range(c.max_lag);
  const auto table = sieve_table(kind, 1, c.n, sieve_config(c));
  const auto cov = autocovariance(table, c.n, lags);
  std::optional<MixingEstimate> mix;
  if (kind.has_finite_alphabet()) mix = alpha_hat(table, c.n, lags);

  std::ostringstream csv;
  csv << "lag,r_hat,alpha_hat\n";
  for (std::size_t i = 0; i < lags.size(); ++i)
    csv << lags[i] << ',' << csv_real(cov.r_hat[i]) << ','
        << (mix ? csv_real(mix->alpha_hat[i]) : std::string("nan")) << '\n';

  StationarityConfig sc;
  const auto report = stationarity_report(kind, c.n, checkpoints_for(c, 1000),
                                          sc, sieve_config(c));
  Json j;
  j["stationarity"] = json::to_json(report);
  int exit_code = 0;
  if (mix) {
    j["event_family"] = mix->event_family;
    j["summability"] = json::to_json(alpha_summability(*mix));
    if (c.alpha_threshold) {
      double worst = 0.0;
      for (double a : mix->alpha_hat) worst = std::max(worst, a);
      j["alpha_threshold"] = *c.alpha_threshold;
      j["alpha_max"] = worst;
      j["alpha_pass"] = worst <= *c.alpha_threshold;
      if (worst > *c.alpha_threshold) exit_code = 1;
    }
  } else {
    j["event_family"] = nullptr;
    j["summability"] = nullptr;
  }
  return {exit_code,
          {{"dependence.json", dump(j)}, {"dependence.csv", csv.str()}}};
}

inline RunResult cmd_normality(const RunConfig& c) {
  NormalityReport r;
  if (c.bernoulli) {
    const auto x = rng::bernoulli_sequence(c.n, *c.bernoulli, c.seed);
    r = block_standardize(std::span<const std::int8_t>(x), c.block_size);
  } else {
    const auto kind = FunctionKind::parse(c.kind);
    r = block_standardize(sieve_table(kind, 1, c.n, sieve_config(c)), c.n,
                          c.block_size);
  }
  r.ks_statistic = ks_normal(r.standardized_samples);
  Json j = json::to_json(r, c.ks_threshold);
  if (c.bernoulli) {
    j["kind"] = "synthetic_bernoulli";
    j["bernoulli_p"] = *c.bernoulli;
    j["seed"] = c.seed;
  }
  std::ostringstream csv;
  csv << "block,T,z\n";
  for (std::size_t i = 0; i < r.block_sums.size(); ++i)
    csv << i << ',' << csv_real(r.block_sums[i]) << ','
        << csv_real(r.standardized_samples[i]) << '\n';
  return {r.ks_statistic <= c.ks_threshold ? 0 : 1,
          {{"normality.json", dump(j)}, {"blocks.csv", csv.str()}}};
}

inline RunResult cmd_ergodic(const RunConfig& c) {
  const auto spec = parse_atoms(c.atoms, c.mean);
  const auto ns = log_checkpoints(1, c.n, c.per_decade);

  std::ostringstream avg;
  avg << "n,covariance_average_re,covariance_average_im\n";
  for (std::uint64_t n : ns) {
    const auto a = covariance_average(spec, n);
    avg << n << ',' << csv_real(a.real()) << ',' << csv_real(a.imag()) << '\n';
  }

  const auto mse_ns = log_checkpoints(std::min<std::uint64_t>(10, c.n), c.n,
                                      std::min(c.per_decade, 2u));
  const auto mse = mse_study(spec, mse_ns, c.replicates, c.seed);
  std::ostringstream mse_csv;
  mse_csv << "n,mse,median\n";
  for (const auto& p : mse)
    mse_csv << p.n << ',' << csv_real(p.mse) << ',' << csv_real(p.median)
            << '\n';

  const std::uint64_t max_h = std::min<std::uint64_t>(10, c.length - 1);
  std::vector<std::uint64_t> lags;
  for (std::uint64_t h = 0; h <= max_h; ++h) lags.push_back(h);
  const auto cmp =
      ensemble_autocovariance(spec, c.length, c.replicates, lags, c.seed);
  std::ostringstream cov;
  cov << "h,R_theoretical,R_empirical,standard_error\n";
  for (const auto& p : cmp)
    cov << p.lag << ',' << csv_real(p.theoretical.real()) << ','
        << csv_real(p.empirical.real()) << ',' << csv_real(p.standard_error)
        << '\n';

  Json j;
  j["atoms"] = c.atoms;
  j["mean"] = c.mean;
  j["seed"] = c.seed;
  j["replicates"] = c.replicates;
  const auto f0 = covariance_average(spec, c.n);
  j["covariance_average_at_n"] = Json::array({json::real(f0.real()),
                                              json::real(f0.imag())});
  const auto z0 = spec.zero_atom();
  j["spectral_mass_at_zero"] =
      z0 < 0 ? 0.0 : spec.atoms[static_cast<std::size_t>(z0)].sigma2;
  return {0,
          {{"covariance_average.csv", avg.str()},
           {"mse.csv", mse_csv.str()},
           {"covariance.csv", cov.str()},
           {"ergodic.json", dump(j)}}};
}

inline std::string trajectory_csv(const DeviationReport& r) {
  std::ostringstream out;
  out << "n,deviation,ratio\n";
  for (const auto& p : r.trajectory)
    out << p.n << ',' << csv_real(p.deviation) << ',' << csv_real(p.ratio)
        << '\n';
  return out.str();
}

inline RunResult cmd_deviation(const RunConfig& c) {
  const auto kind = FunctionKind::parse(c.kind);
  if (c.mode == "growth") {
    const auto g = variance_growth(kind, c.n, c.block_size, sieve_config(c));
    std::ostringstream csv;
    csv << "n,h_hat\n";
    for (const auto& p : g.points) csv << p.n << ',' << csv_real(p.h_hat) << '\n';
    Json j = json::to_json(g);
    j["kind"] = kind.name();
    return {0, {{"growth.json", dump(j)}, {"growth.csv", csv.str()}}};
  }
  const double trend = c.trend ? *c.trend : default_trend(kind);
  const auto series =
      accumulate(kind, c.n, checkpoints_for(c), sieve_config(c));
  DeviationReport r;
  if (c.mode == "counting")
    r = counting_deviation_check(series, trend, Psi::parse(c.psi));
  else if (c.mode == "exponent")
    r = exponent_check(series, trend, c.xi);
  else
    throw InvalidArgument("unknown deviation mode: " + c.mode);
  return {r.pass ? 0 : 1,
          {{"deviation.json", dump(json::to_json(r))},
           {"deviation.csv", trajectory_csv(r)}}};
}

inline RunResult cmd_riemann(const RunConfig& c) {
  const auto r = mertens_riemann_check(c.n, c.xi, sieve_config(c));
  return {r.pass ? 0 : 1,
          {{"riemann.json", dump(json::to_json(r))},
           {"riemann.csv", trajectory_csv(r)}}};
}

/// Dense values 1..n_max of the named series transform.
inline std::vector<std::int64_t> oeis_series(const std::string& name,
                                             std::uint64_t n_max,
                                             const SieveConfig& config) {
  if (name == "mertens") return prefix_sums(KindTag::moebius, n_max, config);
  if (name == "squarefree-count" || name == "squarefree-deviation") {
    auto q = prefix_sums(KindTag::squarefree_indicator, n_max, config);
    if (name == "squarefree-deviation") {
      const double c = 6.0 / (std::numbers::pi * std::numbers::pi);
      for (std::size_t i = 0; i < q.size(); ++i)
        q[i] -= std::llround(c * static_cast<double>(i + 1));
    }
    return q;
  }
  throw InvalidArgument("unknown series: " + name +
                        " (mertens, squarefree-count, squarefree-deviation)");
}

inline RunResult cmd_oeis(const RunConfig& c) {
  std::ifstream in(c.bfile, std::ios::binary);
  if (!in) throw Error("cannot read b-file: " + c.bfile);
  std::stringstream buf;
  buf << in.rdbuf();
  const auto bfile =
      parse_bfile(buf.str(), std::filesystem::path(c.bfile).stem().string());
  std::int64_t max_index = 0;
  for (const auto& e : bfile.entries) max_index = std::max(max_index, e.index);
  arithstat::detail::require(max_index >= 1, "b-file has no positive index");
  const auto values = oeis_series(
      c.series, static_cast<std::uint64_t>(max_index), sieve_config(c));
  const auto mismatches = oeis_check(values, 1, bfile);
  Json j;
  j["bfile"] = bfile.sequence_id;
  j["series"] = c.series;
  j["entries"] = bfile.entries.size();
  j["max_index"] = max_index;
  Json mm = Json::array();
  for (const auto& m : mismatches)
    mm.push_back({{"n", m.n}, {"computed", m.computed}, {"expected", m.expected}});
  j["mismatches"] = std::move(mm);
  j["pass"] = mismatches.empty();
  return {mismatches.empty() ? 0 : 1, {{"oeis.json", dump(j)}}};
}

}  // namespace detail

/// Computes the artifacts of one command without touching the filesystem
/// (except oeis-check, which reads its b-file).
inline RunResult evaluate(const RunConfig& c) {
  if (c.command == "table") return detail::cmd_table(c);
  if (c.command == "sum") return detail::cmd_sum(c);
  if (c.command == "stats") return detail::cmd_stats(c);
  if (c.command == "dependence") return detail::cmd_dependence(c);
  if (c.command == "normality") return detail::cmd_normality(c);
  if (c.command == "ergodic") return detail::cmd_ergodic(c);
  if (c.command == "deviation") return detail::cmd_deviation(c);
  if (c.command == "riemann-check") return detail::cmd_riemann(c);
  if (c.command == "oeis-check") return detail::cmd_oeis(c);
  throw InvalidArgument("unknown command: " + c.command);
}

/// evaluate() plus emission: every artifact goes to out_dir when set,
/// otherwise the first (primary) artifact is printed to `stream`.
inline RunResult run(const RunConfig& c, std::ostream& stream) {
  auto result = evaluate(c);
  if (c.out_dir.empty()) {
    if (!result.artifacts.empty()) stream << result.artifacts.front().content;
    return result;
  }
  std::filesystem::create_directories(c.out_dir);
  for (const auto& a : result.artifacts) {
    const auto path = std::filesystem::path(c.out_dir) / a.name;
    std::ofstream out(path, std::ios::binary);
    out << a.content;
    if (!out) throw Error("failed to write " + path.string());
  }
  return result;
}

}  // namespace arithstat::app
