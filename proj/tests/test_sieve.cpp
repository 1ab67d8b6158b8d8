#include <algorithm>
#include <random>

#include <gtest/gtest.h>

#include "oracle.hpp"
#include "primemat/sieve.hpp"

using namespace primemat;

namespace {
SieveConfig cfg(unsigned k, std::uint64_t x) { return SieveConfig{PrimeIndex(k), x}; }

std::vector<TwinPair> oracle_twins(std::uint64_t x) {
  std::vector<TwinPair> out;
  for (auto [a, b] : oracle::twins(x)) out.push_back({a, b});
  return out;
}
} // namespace

TEST(PrimesUpTo, Examples) {
  EXPECT_EQ(primes_up_to(cfg(2, 30)), (std::vector<std::uint64_t>{2, 3, 5, 7, 11, 13, 17, 19, 23, 29}));
  EXPECT_EQ(primes_up_to(cfg(1, 2)), (std::vector<std::uint64_t>{2}));
  EXPECT_EQ(primes_up_to(cfg(4, 1'000'000)).size(), 78498u);
}

TEST(PrimesUpTo, MatchesOracleForEveryOrder) {
  for (std::uint64_t x : {1'000ull, 100'000ull, 1'000'000ull}) {
    const auto expected = oracle::primes(x);
    for (unsigned k = 1; k <= 6; ++k) ASSERT_EQ(primes_up_to(cfg(k, x)), expected) << "k=" << k << " x=" << x;
  }
}

TEST(PrimesUpTo, TinyCutoffs) {
  for (std::uint64_t x = 2; x <= 400; ++x) {
    const auto expected = oracle::primes(x);
    for (unsigned k = 1; k <= 6; ++k) ASSERT_EQ(primes_up_to(cfg(k, x)), expected) << "k=" << k << " x=" << x;
  }
}

TEST(PrimesUpTo, IndependentOfSegmentationAndThreads) {
  const std::uint64_t x = 300'007;
  const auto expected = oracle::primes(x);
  for (unsigned k : {1u, 3u, 5u})
    for (std::uint64_t seg : {1ull, 7ull, 1000ull, 65536ull, 1ull << 20})
      for (unsigned threads : {1u, 3u, 8u}) {
        SieveConfig c{PrimeIndex(k), x, seg, threads};
        ASSERT_EQ(primes_up_to(c), expected) << k << " " << seg << " " << threads;
      }
}

TEST(PrimesUpTo, Errors) {
  EXPECT_THROW(primes_up_to(cfg(2, 1)), DomainError);
  EXPECT_THROW(primes_up_to(cfg(2, 1000), Budget{10'000'000, 999}), BudgetError);
  EXPECT_THROW(primes_up_to(cfg(9, 1000)), BudgetError);
  EXPECT_THROW(primes_up_to(SieveConfig{PrimeIndex(2), 100, 0, 1}), DomainError);
}

TEST(ConfigWarning, SmallCutoff) {
  EXPECT_TRUE(config_warning(cfg(4, 20'000)).has_value());
  EXPECT_FALSE(config_warning(cfg(4, 21'000)).has_value());
}

TEST(TwinsUpTo, Examples) {
  EXPECT_EQ(twins_up_to(cfg(2, 100)), (std::vector<TwinPair>{{3, 5}, {5, 7}, {11, 13}, {17, 19}, {29, 31}, {41, 43},
                                                               {59, 61}, {71, 73}}));
  const auto small = twins_up_to(cfg(3, 32));
  EXPECT_NE(std::find(small.begin(), small.end(), TwinPair{29, 31}), small.end());
  EXPECT_EQ(twins_up_to(cfg(4, 1'000'000)).size(), 8169u);
  EXPECT_TRUE(twins_up_to(cfg(2, 4)).empty());
}

TEST(TwinsUpTo, MatchesOracleForEveryOrder) {
  for (std::uint64_t x : {1'000ull, 100'000ull, 1'000'000ull}) {
    const auto expected = oracle_twins(x);
    for (unsigned k = 1; k <= 6; ++k) ASSERT_EQ(twins_up_to(cfg(k, x)), expected) << "k=" << k << " x=" << x;
  }
  for (std::uint64_t x = 2; x <= 200; ++x)
    for (unsigned k = 1; k <= 5; ++k) ASSERT_EQ(twins_up_to(cfg(k, x)), oracle_twins(x)) << k << " " << x;
}

TEST(TwinsUpTo, ColumnAligned) {
  for (unsigned k = 2; k <= 6; ++k) {
    const MatrixSpec spec{PrimeIndex(k)};
    for (const auto& t : twins_up_to(cfg(k, 200'000))) {
      if (t.low <= spec.largest_prime()) continue;
      const auto a = locate(spec, t.low);
      const auto b = locate(spec, t.high);
      ASSERT_EQ(a.column, b.column);
      ASSERT_EQ(b.row, a.row + 2);
    }
  }
}

TEST(TwinsInPair, Examples) {
  EXPECT_EQ(twins_in_pair(PrimeIndex(2), {4, 6}, 50),
            (std::vector<TwinPair>{{5, 7}, {11, 13}, {17, 19}, {29, 31}, {41, 43}}));
  EXPECT_EQ(twins_in_pair(PrimeIndex(3), {16, 18}, 100), (std::vector<TwinPair>{{17, 19}}));
  EXPECT_TRUE(twins_in_pair(PrimeIndex(2), {4, 6}, 6).empty());
  EXPECT_THROW(twins_in_pair(PrimeIndex(2), {3, 5}, 100), DomainError);
  EXPECT_THROW(twins_in_pair(PrimeIndex(3), {12, 14}, 100), DomainError);
  EXPECT_THROW(twins_in_pair(PrimeIndex(1), {2, 4}, 100), DomainError);
}

TEST(TwinsInPair, PartitionTheLargeTwins) {
  const std::uint64_t x = 100'000;
  const auto all = oracle_twins(x);
  for (unsigned k = 2; k <= 5; ++k) {
    const MatrixSpec spec{PrimeIndex(k)};
    std::vector<TwinPair> joined;
    for (const auto& pair : twin_row_pairs(PrimeIndex(k))) {
      const auto found = twins_in_pair(PrimeIndex(k), pair, x);
      for (const auto& t : found) ASSERT_EQ((t.low - 2) % spec.difference() + 1, pair.low);
      joined.insert(joined.end(), found.begin(), found.end());
    }
    std::sort(joined.begin(), joined.end());
    std::vector<TwinPair> large;
    std::copy_if(all.begin(), all.end(), std::back_inserter(large),
                 [&](const TwinPair& t) { return t.low > spec.largest_prime(); });
    ASSERT_EQ(joined, large) << k;
  }
}

TEST(WheelSieve, IsPrimeMatchesTrialDivision) {
  const WheelSieve sieve(cfg(4, 50'000));
  std::mt19937_64 rng(99);
  for (int i = 0; i < 20'000; ++i) {
    const std::uint64_t n = rng() % 50'001;
    ASSERT_EQ(sieve.is_prime(n), oracle::is_prime_trial(n)) << n;
  }
  EXPECT_THROW(sieve.is_prime(50'001), RangeError);
}

TEST(ClassicalSieve, Basics) {
  const ClassicalSieve s(1'000'000);
  EXPECT_EQ(s.count(), 78498u);
  EXPECT_EQ(s.primes(), oracle::primes(1'000'000));
  EXPECT_FALSE(s.is_prime(1));
  EXPECT_THROW(s.is_prime(1'000'001), RangeError);
}
