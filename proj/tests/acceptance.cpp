// End-to-end acceptance run: one PASS/FAIL line per criterion. Exit status
// is nonzero when any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "arithstat/app.hpp"
#include "oracles.hpp"

using namespace arithstat;

namespace {

constexpr double pi = std::numbers::pi;

struct Outcome {
  bool pass;
  std::string detail;
};

std::string fmt(const char* f, double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, x);
  return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::vector<std::uint64_t> lags(std::uint64_t lo, std::uint64_t hi) {
  std::vector<std::uint64_t> v;
  for (std::uint64_t h = lo; h <= hi; ++h) v.push_back(h);
  return v;
}

Outcome oracle_equivalence() {
  const auto t0 = std::chrono::steady_clock::now();
  constexpr std::uint64_t N = 100000;
  const std::vector<std::pair<FunctionKind, std::function<int(std::uint64_t)>>> kinds = {
      {KindTag::moebius, oracle::moebius},
      {KindTag::prime_indicator, [](std::uint64_t n) { return int(oracle::is_prime(n)); }},
      {KindTag::squarefree_indicator, oracle::squarefree},
      {KindTag::twin_prime_indicator, oracle::twin},
      {KindTag::section4_weight, oracle::section4}};
  std::uint64_t mismatches = 0;
  for (const auto& [kind, f] : kinds) {
    const auto t = sieve_table(kind, 1, N);
    for (std::uint64_t n = 1; n <= N; ++n) mismatches += t.ints()[n - 1] != f(n);
  }
  const double secs = seconds_since(t0);
  return {mismatches == 0 && secs < 30.0,
          std::to_string(mismatches) + " mismatches over 5 kinds, n <= 1e5, " +
              fmt("%.2f s", secs)};
}

Outcome mertens_values() {
  const auto prefix = oracle::mertens_prefix(10000);
  bool ok = true;
  std::string vals;
  for (std::uint64_t n : {1u, 2u, 10u, 100u, 10000u}) {
    const auto m = mertens(n);
    ok = ok && m == prefix[n - 1];
    vals += " M(" + std::to_string(n) + ")=" + std::to_string(m);
  }
  ok = ok && mertens(1) == 1 && mertens(2) == 0 && mertens(10) == -1 && mertens(100) == 1 &&
       mertens(10000) == -23;
  std::ifstream in(ARITHSTAT_DATA_DIR "/b002321.txt", std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  const auto b = parse_bfile(ss.str(), "A002321");
  std::int64_t max_index = 0;
  for (const auto& e : b.entries) max_index = std::max(max_index, e.index);
  const auto mm = oeis_check(prefix_sums(KindTag::moebius, static_cast<std::uint64_t>(max_index)),
                             1, b);
  return {ok && mm.empty() && !b.entries.empty(),
          vals.substr(1) + "; b-file overlap " + std::to_string(b.entries.size()) + ", " +
              std::to_string(mm.size()) + " mismatches"};
}

Outcome squarefree_density() {
  const auto t0 = std::chrono::steady_clock::now();
  const double c = 6.0 / (pi * pi);
  const auto q = prefix_sums(KindTag::squarefree_indicator, 1'000'000);
  const double e4 = std::abs(q[9999] / 1e4 - c);
  const double e6 = std::abs(q[999999] / 1e6 - c);
  double worst = 0.0;
  for (std::uint64_t n = 100; n <= 1'000'000; ++n) {
    const double x = static_cast<double>(n);
    worst = std::max(worst, std::abs(static_cast<double>(q[n - 1]) - c * x) / std::sqrt(x));
  }
  const double secs = seconds_since(t0);
  return {e4 <= 1e-2 && e6 <= 1e-3 && worst <= 2.0 && secs < 10.0,
          "|Q/n-6/pi^2| " + fmt("%.2e", e4) + " @1e4, " + fmt("%.2e", e6) +
              " @1e6; sup |Q-6n/pi^2|/sqrt(n) = " + fmt("%.4f", worst) + ", " +
              fmt("%.2f s", secs)};
}

Outcome section4_moments_check() {
  const auto m = moments(sieve_table(KindTag::section4_weight, 1, 1'000'000), 1'000'000);
  const auto mu = moments(sieve_table(KindTag::moebius, 1, 1'000'000), 1'000'000);
  const auto target = section4_moments();
  const double dm = std::abs(m.mean - target.mean);
  const double dv = std::abs(m.variance - target.variance);
  const double dmu = std::abs(mu.variance - mertens_increment_variance());
  return {dm <= 0.01 && dv <= 0.02 && dmu <= 0.01,
          "mean " + fmt("%.6f", m.mean) + " (off " + fmt("%.1e", dm) + "), variance " +
              fmt("%.6f", m.variance) + " (off " + fmt("%.1e", dv) + "), mu variance " +
              fmt("%.6f", mu.variance) + " (off " + fmt("%.1e", dmu) + ")"};
}

Outcome mixing() {
  const auto sf = alpha_hat(sieve_table(KindTag::squarefree_indicator, 1, 1'000'000),
                            1'000'000, lags(1, 100));
  double sf_max = 0.0;
  std::uint64_t sf_arg = 0;
  for (std::size_t i = 0; i < sf.alpha_hat.size(); ++i)
    if (sf.alpha_hat[i] > sf_max) {
      sf_max = sf.alpha_hat[i];
      sf_arg = sf.lags[i];
    }
  const auto one = lags(1, 1);
  const double p4 =
      alpha_hat(sieve_table(KindTag::prime_indicator, 1, 10000), 10000, one).alpha_hat[0];
  const double p6 =
      alpha_hat(sieve_table(KindTag::prime_indicator, 1, 1'000'000), 1'000'000, one).alpha_hat[0];
  const bool sf_ok = sf_max <= 0.01;
  const bool prime_ok = p4 >= 0.010 && p4 <= 0.020 && p6 < p4;
  return {sf_ok && prime_ok,
          std::string("squarefree ") + (sf_ok ? "ok" : "FAIL") + ": max alpha-hat " +
              fmt("%.5f", sf_max) + " at lag " + std::to_string(sf_arg) +
              " (limit 0.01); primes " + (prime_ok ? "ok" : "FAIL") + ": alpha-hat(1) " +
              fmt("%.5f", p4) + " @1e4, " + fmt("%.5f", p6) + " @1e6"};
}

Outcome normality() {
  const auto t0 = std::chrono::steady_clock::now();
  auto ks = [](FunctionKind kind) {
    return normality_report(sieve_table(kind, 1, 1'000'000), 1'000'000, 1000).ks_statistic;
  };
  const double mu = ks(KindTag::moebius);
  const double sf = ks(KindTag::squarefree_indicator);
  const double s4 = ks(KindTag::section4_weight);
  const auto x = rng::bernoulli_sequence(1'000'000, 0.5, 20261016);
  const double bern =
      ks_normal(block_standardize(std::span<const std::int8_t>(x), 1000).standardized_samples);
  const double secs = seconds_since(t0);
  auto tag = [](double v, double lim) { return std::string(v <= lim ? "" : " FAIL"); };
  return {mu <= 0.15 && sf <= 0.10 && s4 <= 0.10 && bern <= 0.05 && secs < 60.0,
          "KS moebius " + fmt("%.4f", mu) + tag(mu, 0.15) + ", squarefree " + fmt("%.4f", sf) +
              tag(sf, 0.10) + ", section4 " + fmt("%.4f", s4) + tag(s4, 0.10) +
              ", bernoulli " + fmt("%.4f", bern) + tag(bern, 0.05) + ", " +
              fmt("%.2f s", secs)};
}

Outcome ergodic() {
  SpectralSpec zero;
  zero.atoms = {{0.0, 1.5}};
  const std::vector<std::uint64_t> zn{1, 100, 10000};
  double zero_mse = 0.0;
  for (const auto& p : mse_study(zero, zn, 200, 11)) zero_mse = std::max(zero_mse, p.mse);

  SpectralSpec generic;
  generic.atoms = {{pi / 3, 1.0}, {-pi / 2, 0.5}, {2.0, 0.25}};
  const std::vector<std::uint64_t> gn{100, 10000};
  const auto g = mse_study(generic, gn, 400, 20261016);
  const double ratio = g[1].mse / g[0].mse;

  SpectralSpec with_zero;
  with_zero.atoms = {{0.0, 2.0}, {1.0471, 1.0}};
  const double cov_err = std::abs(covariance_average(with_zero, 10000) - Complex(2.0, 0.0));

  MovingAverageSpec ma{{1.0, 1.0}, 0.0};
  bool ma_ok = true;
  double worst_se = 0.0;
  for (const auto& c : moving_average_check(ma, 100000, 20261016, lags(0, 3))) {
    ma_ok = ma_ok && c.within(3.0);
    worst_se = std::max(worst_se, std::abs(c.empirical - c.theoretical) / c.standard_error);
  }
  return {zero_mse == 0.0 && ratio <= 0.02 && cov_err <= 1e-3 && ma_ok,
          "zero-atom mse " + fmt("%g", zero_mse) + ", mse(1e4)/mse(1e2) " + fmt("%.2e", ratio) +
              ", |covariance_average - 2| " + fmt("%.2e", cov_err) + ", MA worst " +
              fmt("%.2f", worst_se) + " SE"};
}

Outcome riemann() {
  const auto t0 = std::chrono::steady_clock::now();
  const auto r = mertens_riemann_check(10'000'000, 0.0);
  const double secs = seconds_since(t0);
  return {r.pass && secs < 60.0,
          "worst ratio " + fmt("%.5f", r.worst_ratio) + " at n = " + std::to_string(r.argmax_n) +
              ", " + std::to_string(r.skipped) + " skipped, " + fmt("%.2f s", secs)};
}

Outcome determinism() {
  std::vector<app::RunConfig> configs;
  app::RunConfig c;
  c.command = "riemann-check";
  c.n = 1'000'000;
  configs.push_back(c);
  c = {};
  c.command = "normality";
  c.bernoulli = 0.5;
  c.n = 1'000'000;
  c.seed = 20261016;
  configs.push_back(c);
  c = {};
  c.command = "ergodic";
  c.atoms = "1.0471975511965976:1,-1.5707963267948966:0.5,2:0.25";
  c.n = 10000;
  c.seed = 20261016;
  configs.push_back(c);
  c = {};
  c.command = "dependence";
  c.kind = "squarefree_indicator";
  c.n = 1'000'000;
  c.max_lag = 100;
  c.threads = 4;
  configs.push_back(c);
  c = {};
  c.command = "oeis-check";
  c.bfile = ARITHSTAT_DATA_DIR "/b002321.txt";
  configs.push_back(c);

  std::size_t files = 0, differing = 0;
  for (const auto& cfg : configs) {
    const auto a = app::evaluate(cfg);
    const auto b = app::evaluate(cfg);
    files += a.artifacts.size();
    if (a.artifacts.size() != b.artifacts.size()) {
      ++differing;
      continue;
    }
    for (std::size_t i = 0; i < a.artifacts.size(); ++i)
      differing += a.artifacts[i].name != b.artifacts[i].name ||
                   a.artifacts[i].content != b.artifacts[i].content;
  }
  return {differing == 0, std::to_string(files) + " artifacts from " +
                              std::to_string(configs.size()) + " runs, " +
                              std::to_string(differing) + " differ"};
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, Outcome (*)()>> criteria = {
      {"oracle equivalence", oracle_equivalence},
      {"Mertens values and A002321", mertens_values},
      {"squarefree density", squarefree_density},
      {"weight moments", section4_moments_check},
      {"mixing", mixing},
      {"block-sum normality", normality},
      {"ergodic simulator", ergodic},
      {"|M(n)| <= sqrt(n) to 1e7", riemann},
      {"determinism", determinism}};
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failed += !o.pass;
    std::printf("%s %zu %s: %s\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first,
                o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria failed\n", failed, criteria.size());
  return failed ? 1 : 0;
}
