#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <numeric>

#include "arithstat/dependence.hpp"
#include "arithstat/rng.hpp"
#include "oracles.hpp"

using namespace arithstat;

namespace {

std::vector<std::uint64_t> lags_upto(std::uint64_t l) {
  std::vector<std::uint64_t> v(l);
  std::iota(v.begin(), v.end(), 1);
  return v;
}

// Sample autocovariance with the full-sample mean, lag h averaged over n - h
// pairs, in long double.
long double oracle_r(const std::vector<int>& x, std::size_t h) {
  long double mean = 0;
  for (int v : x) mean += v;
  mean /= static_cast<long double>(x.size());
  long double s = 0;
  for (std::size_t k = 0; k + h < x.size(); ++k) s += (x[k] - mean) * (x[k + h] - mean);
  return s / static_cast<long double>(x.size() - h);
}

// |P(x_k in b1, x_{k+h} in b2) - P(x_k in b1) P(x_{k+h} in b2)| over k <= n - h.
double oracle_gap(const std::vector<int>& x, std::size_t h, const std::set<int>& b1,
                  const std::set<int>& b2) {
  const std::size_t m = x.size() - h;
  std::size_t a = 0, b = 0, ab = 0;
  for (std::size_t k = 0; k < m; ++k) {
    const bool in1 = b1.count(x[k]) > 0;
    const bool in2 = b2.count(x[k + h]) > 0;
    a += in1;
    b += in2;
    ab += in1 && in2;
  }
  const double dm = static_cast<double>(m);
  return std::abs(ab / dm - (a / dm) * (b / dm));
}

ValueTable constant_table(std::uint64_t n) {
  return ValueTable(KindTag::squarefree_indicator, 1, ValueTable::IntValues(n, 1));
}

ValueTable bernoulli_table(std::uint64_t n, std::uint64_t seed) {
  return ValueTable(KindTag::prime_indicator, 1, rng::bernoulli_sequence(n, 0.5, seed));
}

// prod over primes of (1 - 2/p^2): density of k with k and k+1 squarefree.
double consecutive_squarefree_density() {
  double prod = 1.0;
  for (std::uint64_t p = 2; p < 2'000'000; ++p)
    if (oracle::is_prime(p)) prod *= 1.0 - 2.0 / (static_cast<double>(p) * p);
  return prod;
}

}  // namespace

TEST(Autocovariance, ConstantTableIsZero) {
  const auto r = autocovariance(constant_table(1000), 1000, std::vector<std::uint64_t>{0, 1, 7});
  for (double v : r.r_hat) EXPECT_EQ(v, 0.0);
}

TEST(Autocovariance, LagZeroIsVariance) {
  for (const FunctionKind kind :
       {FunctionKind(KindTag::moebius), FunctionKind(KindTag::section4_weight),
        FunctionKind(KindTag::prime_indicator)}) {
    const auto t = sieve_table(kind, 1, 12345);
    const std::vector<std::uint64_t> zero{0};
    EXPECT_EQ(autocovariance(t, 12345, zero).r_hat[0], moments(t, 12345).variance)
        << kind.name();
  }
}

TEST(Autocovariance, PrimesMatchEnumeration) {
  const auto t = sieve_table(KindTag::prime_indicator, 1, 10000);
  std::vector<int> x;
  for (std::uint64_t n = 1; n <= 10000; ++n) x.push_back(oracle::is_prime(n));
  const auto r = autocovariance(t, 10000, lags_upto(20));
  for (std::size_t i = 0; i < 20; ++i)
    EXPECT_NEAR(r.r_hat[i], static_cast<double>(oracle_r(x, i + 1)), 1e-15);
  EXPECT_NEAR(r.r_hat[0], -0.0150, 1e-4);
}

TEST(Autocovariance, LagMustLeaveHalfTheSample) {
  const auto t = sieve_table(KindTag::moebius, 1, 100);
  EXPECT_THROW(autocovariance(t, 100, std::vector<std::uint64_t>{100}), InvalidArgument);
  EXPECT_THROW(autocovariance(t, 100, std::vector<std::uint64_t>{50}), InvalidArgument);
  EXPECT_NO_THROW(autocovariance(t, 100, std::vector<std::uint64_t>{49}));
}

TEST(IndependenceGap, PrimeExample) {
  const auto t = sieve_table(KindTag::prime_indicator, 1, 10000);
  std::vector<int> x;
  for (std::uint64_t n = 1; n <= 10000; ++n) x.push_back(oracle::is_prime(n));
  const double gap = independence_gap(t, 10000, 1, {1}, {1});
  EXPECT_NEAR(gap, oracle_gap(x, 1, {1}, {1}), 1e-15);
  EXPECT_NEAR(gap, 0.0150, 1e-4);
  EXPECT_EQ(independence_gap(t, 10000, 1, {0, 1}, {1}), 0.0);
}

TEST(IndependenceGap, ConsecutiveSquarefreeIsDependent) {
  // P(k squarefree, k+1 not) - P(sf) P(not sf) tends to
  // 6/pi^2 - prod(1 - 2/p^2) - (6/pi^2)(1 - 6/pi^2), about 0.047.
  const double c = 6.0 / (std::numbers::pi * std::numbers::pi);
  const double limit = c - consecutive_squarefree_density() - c * (1.0 - c);
  const auto t = sieve_table(KindTag::squarefree_indicator, 1, 1'000'000);
  const double gap = independence_gap(t, 1'000'000, 1, {1}, {0});
  EXPECT_NEAR(gap, limit, 1e-3);
  EXPECT_GT(gap, 0.04);
}

TEST(IndependenceGap, Errors) {
  const auto t = sieve_table(KindTag::prime_indicator, 1, 100);
  EXPECT_THROW(independence_gap(t, 100, 100, {1}, {1}), InvalidArgument);
  EXPECT_THROW(independence_gap(sieve_table(KindTag::von_mangoldt, 1, 100), 100, 1, {1}, {1}),
               Unsupported);
}

TEST(AlphaHat, ConstantTableIsZero) {
  const auto a = alpha_hat(constant_table(500), 500, lags_upto(5));
  for (double v : a.alpha_hat) EXPECT_EQ(v, 0.0);
}

TEST(AlphaHat, PrimeLagOneAndDecay) {
  const auto small = alpha_hat(sieve_table(KindTag::prime_indicator, 1, 10000), 10000, lags_upto(1));
  EXPECT_NEAR(small.alpha_hat[0], 0.0150, 1e-4);
  const auto big =
      alpha_hat(sieve_table(KindTag::prime_indicator, 1, 1'000'000), 1'000'000, lags_upto(1));
  EXPECT_LT(big.alpha_hat[0], small.alpha_hat[0]);
}

TEST(AlphaHat, DominatesEverySubsetPair) {
  const auto t = sieve_table(KindTag::section4_weight, 1, 20000);
  const auto lags = lags_upto(6);
  const auto a = alpha_hat(t, 20000, lags);
  const std::vector<std::set<int>> subsets = {
      {-1}, {0}, {2}, {-1, 0}, {-1, 2}, {0, 2}, {-1, 0, 2}};
  for (std::size_t i = 0; i < lags.size(); ++i)
    for (const auto& b1 : subsets)
      for (const auto& b2 : subsets)
        EXPECT_GE(a.alpha_hat[i] + 1e-15, independence_gap(t, 20000, lags[i], b1, b2));
}

TEST(AlphaHat, RelabelingInvariant) {
  const auto t = sieve_table(KindTag::moebius, 1, 30000);
  std::vector<std::uint8_t> codes, permuted;
  for (auto v : t.ints()) {
    codes.push_back(static_cast<std::uint8_t>(v + 1));
    permuted.push_back(static_cast<std::uint8_t>((v + 2) % 3));
  }
  const auto lags = lags_upto(5);
  const auto a = alpha_hat_codes(codes, 3, lags);
  const auto b = alpha_hat_codes(permuted, 3, lags);
  for (std::size_t i = 0; i < lags.size(); ++i)
    EXPECT_NEAR(a.alpha_hat[i], b.alpha_hat[i], 1e-15);
  EXPECT_EQ(a.alpha_hat, alpha_hat(t, 30000, lags).alpha_hat);
}

TEST(AlphaHat, IidNoiseShrinksLikeRootN) {
  for (std::uint64_t n : {10'000u, 1'000'000u}) {
    const auto a = alpha_hat(bernoulli_table(n, 7), n, lags_upto(5));
    for (double v : a.alpha_hat) EXPECT_LE(v, 1.0 / std::sqrt(static_cast<double>(n))) << n;
  }
}

TEST(AlphaHat, SquarefreeIsNotMixing) {
  // lags divisible by 4 share the condition 4 | k; lag 9 is nearly independent
  const auto t = sieve_table(KindTag::squarefree_indicator, 1, 1'000'000);
  const auto a = alpha_hat(t, 1'000'000, lags_upto(12));
  EXPECT_NEAR(a.alpha_hat[0], independence_gap(t, 1'000'000, 1, {1}, {1}), 1e-15);
  for (std::size_t h : {1u, 2u, 3u, 5u, 6u, 7u, 10u, 11u}) EXPECT_GT(a.alpha_hat[h - 1], 0.04) << h;
  for (std::size_t h : {4u, 8u, 12u}) EXPECT_GT(a.alpha_hat[h - 1], 0.11) << h;
  EXPECT_LT(a.alpha_hat[8], 0.01);
}

TEST(AlphaHat, Errors) {
  EXPECT_THROW(alpha_hat(sieve_table(KindTag::von_mangoldt, 1, 100), 100, lags_upto(1)),
               Unsupported);
  const std::vector<std::uint8_t> codes{0, 1, 9};
  EXPECT_THROW(alpha_hat_codes(codes, 9, lags_upto(1)), InvalidArgument);
}

TEST(AlphaHat, WindowedVariant) {
  const auto t = sieve_table(KindTag::prime_indicator, 1, 100000);
  const auto w = alpha_hat_windowed(t, 100000, lags_upto(3), 4);
  EXPECT_EQ(w.size(), 3u);
  for (double v : w) {
    EXPECT_GE(v, 0.0);
    EXPECT_LE(v, 0.25);
  }
}

TEST(Summability, ZeroAlphasStayZero) {
  MixingEstimate e;
  e.n = 1000;
  e.lags = lags_upto(50);
  e.alpha_hat.assign(50, 0.0);
  const auto d = alpha_summability(e);
  for (double p : d.partial_sums) EXPECT_EQ(p, 0.0);
  EXPECT_TRUE(d.looks_bounded);
}

TEST(Summability, HarmonicLogAlphasDiverge) {
  MixingEstimate e;
  e.n = 1000;
  e.lags = lags_upto(100);
  for (std::uint64_t l : e.lags) e.alpha_hat.push_back(1.0 / std::log(l + 2.0));
  const auto d = alpha_summability(e);
  EXPECT_TRUE(std::is_sorted(d.partial_sums.begin(), d.partial_sums.end()));
  EXPECT_GT(d.partial_sums.back(), 15.0);
  EXPECT_FALSE(d.looks_bounded);
}

TEST(Summability, SquarefreePartialSumsKeepGrowing) {
  const auto t = sieve_table(KindTag::squarefree_indicator, 1, 1'000'000);
  const auto d = alpha_summability(alpha_hat(t, 1'000'000, lags_upto(100)));
  EXPECT_GT(d.partial_sums.back(), 1.0);
  EXPECT_FALSE(d.looks_bounded);
}

TEST(Summability, RequiresContiguousLags) {
  MixingEstimate e;
  e.lags = {1, 3};
  e.alpha_hat = {0.0, 0.0};
  EXPECT_THROW(alpha_summability(e), InvalidArgument);
}

TEST(Stationarity, MertensIncrements) {
  const auto r = stationarity_report(KindTag::moebius, 1'000'000,
                                     log_checkpoints(1000, 1'000'000));
  EXPECT_TRUE(r.verdict_2_2);
  EXPECT_TRUE(r.verdict_2_3);
  EXPECT_TRUE(r.verdict_2_4);
  EXPECT_NEAR(r.mean_limit_estimate, 0.0, 1e-3);
}

TEST(Stationarity, VonMangoldtIsUnbounded) {
  const auto r = stationarity_report(KindTag::von_mangoldt, 100'000,
                                     log_checkpoints(1000, 100'000));
  EXPECT_FALSE(r.verdict_2_4);
  EXPECT_TRUE(r.sup_unbounded);
}

TEST(Stationarity, PrimesAreCorrelated) {
  const auto r = stationarity_report(KindTag::prime_indicator, 1'000'000,
                                     log_checkpoints(1000, 1'000'000));
  EXPECT_FALSE(r.verdict_2_3);
  EXPECT_LT(r.mean_limit_estimate, 0.1);
}
