#include <gtest/gtest.h>

#include "oracle.hpp"
#include "primemat/primorial.hpp"

using namespace primemat;

TEST(NthPrime, KnownValues) {
  EXPECT_EQ(nth_prime(PrimeIndex(1)), 2u);
  EXPECT_EQ(nth_prime(PrimeIndex(2)), 3u);
  EXPECT_EQ(nth_prime(PrimeIndex(3)), 5u);
  EXPECT_EQ(nth_prime(PrimeIndex(4)), 7u);
  EXPECT_EQ(nth_prime(PrimeIndex(25)), 97u);
}

TEST(NthPrime, MatchesTrialDivision) {
  const auto expected = oracle::first_primes(2000);
  for (unsigned k = 1; k <= expected.size(); ++k) ASSERT_EQ(nth_prime(PrimeIndex(k)), expected[k - 1]) << k;
}

TEST(NthPrime, ZeroIndexRejected) { EXPECT_THROW(PrimeIndex(0), DomainError); }

TEST(PrimeTable, ExtendsOnDemandUpToBound) {
  const PrimeTable table(1000);
  EXPECT_EQ(table.nth(PrimeIndex(168)), 997u);
  EXPECT_THROW(table.nth(PrimeIndex(169)), BudgetError);
  EXPECT_THROW(table.up_to(1001), BudgetError);

  const PrimeTable big(2'000'000);
  EXPECT_EQ(big.nth(PrimeIndex(78499)), 1'000'003u); // beyond the initial bootstrap range
}

TEST(Primorial, Values) {
  EXPECT_EQ(primorial(PrimeIndex(1)), 2u);
  EXPECT_EQ(primorial(PrimeIndex(4)), 210u);
  EXPECT_EQ(primorial(PrimeIndex(7)), 510510u);
}

TEST(Primorial, OverflowIsAnError) {
  EXPECT_NO_THROW(primorial(PrimeIndex(25)));
  EXPECT_THROW(primorial(PrimeIndex(40)), OverflowError);
  EXPECT_THROW(primorial(PrimeIndex(16)).to_u64(), OverflowError);
  EXPECT_EQ(primorial(PrimeIndex(15)).to_u64(), 614889782588491410ull);
}

TEST(PhiPrimorial, Values) {
  EXPECT_EQ(phi_primorial(PrimeIndex(1)), 1u);
  EXPECT_EQ(phi_primorial(PrimeIndex(3)), 8u);
  EXPECT_EQ(phi_primorial(PrimeIndex(7)), 92160u);
}

TEST(PhiPrimorial, MatchesFactorizationTotient) {
  for (unsigned k = 1; k <= 12; ++k)
    EXPECT_EQ(phi_primorial(PrimeIndex(k)).to_u64(), oracle::totient(oracle::primorial(k))) << k;
}

TEST(TwinFactorial, Values) {
  EXPECT_EQ(twin_factorial(PrimeIndex(2)), 1u);
  EXPECT_EQ(twin_factorial(PrimeIndex(3)), 3u);
  EXPECT_EQ(twin_factorial(PrimeIndex(6)), 1485u);
  EXPECT_THROW(twin_factorial(PrimeIndex(1)), DomainError);
}

TEST(SpecialFactorials, StepRatios) {
  for (unsigned k = 2; k <= 20; ++k) {
    const PrimeIndex i(k);
    const u128 p = nth_prime(i);
    EXPECT_TRUE(primorial(i).value() == primorial(i.prev()).value() * p) << k;
    EXPECT_TRUE(phi_primorial(i).value() == phi_primorial(i.prev()).value() * (p - 1)) << k;
    if (k >= 3) {
      EXPECT_TRUE(twin_factorial(i).value() == twin_factorial(i.prev()).value() * (p - 2)) << k;
    }
  }
}

TEST(SpecialFactorials, DecimalRendering) {
  EXPECT_EQ(primorial(PrimeIndex(20)).str(), "557940830126698960967415390");
}
