#include <gtest/gtest.h>

#include <numbers>

#include "arithstat/prob_space.hpp"

using namespace arithstat;

TEST(Moments, Examples) {
  const auto primes = moments(sieve_table(KindTag::prime_indicator, 1, 10), 10);
  EXPECT_DOUBLE_EQ(primes.mean, 0.4);
  EXPECT_DOUBLE_EQ(primes.variance, 0.24);
  EXPECT_EQ(primes.min_value, 0.0);
  EXPECT_EQ(primes.max_value, 1.0);
  ASSERT_TRUE(primes.histogram.has_value());
  EXPECT_EQ(primes.histogram->at(1.0), 4u);
  EXPECT_EQ(primes.histogram->at(0.0), 6u);

  const auto sf = moments(sieve_table(KindTag::squarefree_indicator, 1, 10), 10);
  EXPECT_DOUBLE_EQ(sf.mean, 0.7);

  const std::vector<std::int8_t> constant(1000, 3);
  EXPECT_EQ(moments(std::span<const std::int8_t>(constant)).variance, 0.0);
  const std::vector<double> real_constant(1000, 0.1);
  EXPECT_EQ(moments(std::span<const double>(real_constant)).variance, 0.0);
}

TEST(Moments, MoebiusSmallN) {
  // seven nonzero values (1, 2, 3, 5, 6, 7, 10), S(10) = -1: 0.7 - 0.01
  EXPECT_DOUBLE_EQ(moments(sieve_table(KindTag::moebius, 1, 10), 10).variance, 0.69);
}

TEST(Moments, PrefixOfLongerTable) {
  const auto t = sieve_table(KindTag::prime_indicator, 1, 100);
  EXPECT_DOUBLE_EQ(moments(t, 10).mean, 0.4);
  EXPECT_THROW(moments(t, 101), InvalidArgument);
  EXPECT_THROW(moments(t, 0), InvalidArgument);
  EXPECT_THROW(moments(sieve_table(KindTag::moebius, 2, 10), 5), InvalidArgument);
}

TEST(Moments, MeanEqualsPartialSumOverN) {
  constexpr std::uint64_t N = 3000;
  for (const FunctionKind kind :
       {FunctionKind(KindTag::moebius), FunctionKind(KindTag::section4_weight),
        FunctionKind(KindTag::squarefree_indicator)}) {
    const auto t = sieve_table(kind, 1, N);
    const auto s = prefix_sums(kind, N);
    for (std::uint64_t n = 1; n <= N; ++n)
      ASSERT_EQ(moments(t, n).mean,
                static_cast<double>(s[n - 1]) / static_cast<double>(n))
          << kind.name() << " " << n;
  }
}

TEST(Moments, RealKindMeanWithinUlp) {
  const auto t = sieve_table(KindTag::von_mangoldt, 1, 100000);
  const double s = accumulate(KindTag::von_mangoldt, 100000, {100000}).value(0);
  const double m = moments(t, 100000).mean;
  EXPECT_LE(std::abs(m - s / 100000.0), std::abs(m) * 2.3e-16);
  EXPECT_FALSE(moments(t, 100000).histogram.has_value());
}

TEST(Density, Examples) {
  EXPECT_DOUBLE_EQ(density(KindTag::squarefree_indicator, 10), 0.7);
  EXPECT_EQ(density(KindTag::prime_indicator, 1), 0.0);
  const double limit = 6.0 / (std::numbers::pi * std::numbers::pi);
  EXPECT_NEAR(limit, 0.607927, 1e-6);
  EXPECT_NEAR(density(KindTag::squarefree_indicator, 1'000'000), limit, 1e-3);
  EXPECT_THROW(density(KindTag::moebius, 10), InvalidArgument);
}

TEST(EmpiricalCdf, StrictInequality) {
  const auto cdf = empirical_cdf(sieve_table(KindTag::prime_indicator, 1, 10), 10);
  EXPECT_EQ(cdf.cdf_below(-1.0), 0.0);
  EXPECT_EQ(cdf.cdf_below(0.0), 0.0);  // nothing strictly below the minimum
  EXPECT_DOUBLE_EQ(cdf.cdf_below(0.5), 0.6);
  EXPECT_DOUBLE_EQ(cdf.cdf_below(1.0), 0.6);
  EXPECT_EQ(cdf.cdf_below(1.0000001), 1.0);
  EXPECT_EQ(cdf.cdf_below(1e300), 1.0);
}

TEST(EmpiricalCdf, MonotoneOverSupport) {
  const auto cdf = empirical_cdf(sieve_table(KindTag::von_mangoldt, 1, 5000), 5000);
  EXPECT_TRUE(std::is_sorted(cdf.support.begin(), cdf.support.end()));
  EXPECT_TRUE(std::is_sorted(cdf.cdf_at_support.begin(), cdf.cdf_at_support.end()));
  EXPECT_EQ(cdf.cdf_at_support.size(), cdf.support.size() + 1);
  EXPECT_EQ(cdf.support.front(), 0.0);
  EXPECT_EQ(cdf.cdf_below(0.0), 0.0);
}

TEST(EmpiricalCdf, Section4Weights) {
  const auto cdf = empirical_cdf(sieve_table(KindTag::section4_weight, 1, 6), 6);
  // values 2,-1,-1,0,-1,2
  EXPECT_DOUBLE_EQ(cdf.cdf_below(0.0), 0.5);
  EXPECT_DOUBLE_EQ(cdf.cdf_below(2.0), 4.0 / 6.0);
  EXPECT_EQ(cdf.cdf_below(3.0), 1.0);
}
