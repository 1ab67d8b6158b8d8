#pragma once

// Primes, primorials and the shifted primorials built from (p - 1) and (p - 2).

#include <algorithm>
#include <compare>
#include <cstdint>
#include <mutex>
#include <shared_mutex>
#include <string>
#include <vector>

#include "primemat/checked.hpp"
#include "primemat/errors.hpp"

namespace primemat {

/// 1-based index into the prime sequence: PrimeIndex{1} names 2, PrimeIndex{4} names 7.
class PrimeIndex {
public:
  constexpr explicit PrimeIndex(unsigned k) : k_(k) {
    if (k < 1) throw DomainError("prime index must be >= 1");
  }

  constexpr unsigned value() const noexcept { return k_; }
  constexpr PrimeIndex prev() const { return PrimeIndex(k_ - 1); }
  constexpr PrimeIndex next() const { return PrimeIndex(k_ + 1); }

  friend constexpr auto operator<=>(PrimeIndex, PrimeIndex) = default;

private:
  unsigned k_;
};

/// Exact product of a run of (shifted) primes. Arithmetic is checked; overflow throws.
class SpecialFactorial {
public:
  constexpr SpecialFactorial() = default;
  constexpr explicit SpecialFactorial(u128 v) : value_(v) {
    if (v == 0) throw DomainError("special factorial is a product of positive factors");
  }

  constexpr u128 value() const noexcept { return value_; }
  std::uint64_t to_u64() const { return narrow_u64(value_); }
  std::string str() const { return to_string(value_); }

  SpecialFactorial operator*(std::uint64_t factor) const {
    return SpecialFactorial(checked_mul(value_, static_cast<u128>(factor)));
  }

  friend constexpr bool operator==(SpecialFactorial, SpecialFactorial) = default;
  friend constexpr auto operator<=>(SpecialFactorial a, SpecialFactorial b) { return a.value_ <=> b.value_; }
  friend constexpr bool operator==(SpecialFactorial a, std::uint64_t b) { return a.value_ == b; }

private:
  u128 value_ = 1;
};

constexpr std::uint64_t default_prime_bound = 1'000'000;

/// Growable table of the primes below a configured bound. The table starts small and extends
/// itself (by re-sieving a larger range) on demand, never beyond max_bound. Safe to share across
/// threads.
class PrimeTable {
public:
  explicit PrimeTable(std::uint64_t max_bound = default_prime_bound) : max_bound_(max_bound) {
    if (max_bound < 2) throw DomainError("prime table bound must be >= 2");
    extend_locked(std::min<std::uint64_t>(max_bound_, 1u << 16));
  }

  std::uint64_t max_bound() const noexcept { return max_bound_; }

  /// k-th prime (1-based).
  std::uint64_t nth(PrimeIndex k) const {
    {
      std::shared_lock lock(mutex_);
      if (k.value() <= primes_.size()) return primes_[k.value() - 1];
    }
    std::unique_lock lock(mutex_);
    while (k.value() > primes_.size()) {
      if (sieved_to_ >= max_bound_)
        throw BudgetError("prime index " + std::to_string(k.value()) + " exceeds the prime table bound " +
                          std::to_string(max_bound_));
      extend_locked(std::min(max_bound_, sieved_to_ * 2));
    }
    return primes_[k.value() - 1];
  }

  /// All primes <= n, in increasing order.
  std::vector<std::uint64_t> up_to(std::uint64_t n) const {
    if (n > max_bound_)
      throw BudgetError("requested primes up to " + std::to_string(n) + " beyond table bound " +
                        std::to_string(max_bound_));
    {
      std::shared_lock lock(mutex_);
      if (n <= sieved_to_) return prefix_locked(n);
    }
    std::unique_lock lock(mutex_);
    if (n > sieved_to_) extend_locked(std::max(n, std::min(max_bound_, sieved_to_ * 2)));
    return prefix_locked(n);
  }

private:
  std::vector<std::uint64_t> prefix_locked(std::uint64_t n) const {
    auto end = std::upper_bound(primes_.begin(), primes_.end(), n);
    return {primes_.begin(), end};
  }

  void extend_locked(std::uint64_t bound) const {
    std::vector<bool> composite(bound + 1, false);
    std::vector<std::uint64_t> primes;
    for (std::uint64_t i = 2; i <= bound; ++i) {
      if (composite[i]) continue;
      primes.push_back(i);
      if (i <= bound / i)
        for (std::uint64_t j = i * i; j <= bound; j += i) composite[j] = true;
    }
    primes_ = std::move(primes);
    sieved_to_ = bound;
  }

  std::uint64_t max_bound_;
  mutable std::shared_mutex mutex_;
  mutable std::vector<std::uint64_t> primes_;
  mutable std::uint64_t sieved_to_ = 0;
};

inline const PrimeTable& default_prime_table() {
  static const PrimeTable table(default_prime_bound);
  return table;
}

inline std::uint64_t nth_prime(PrimeIndex k, const PrimeTable& table = default_prime_table()) {
  return table.nth(k);
}

/// p_1 * p_2 * ... * p_k
inline SpecialFactorial primorial(PrimeIndex k, const PrimeTable& table = default_prime_table()) {
  SpecialFactorial acc;
  for (unsigned i = 1; i <= k.value(); ++i) acc = acc * table.nth(PrimeIndex(i));
  return acc;
}

/// (p_1 - 1)(p_2 - 1)...(p_k - 1), Euler's totient of primorial(k).
inline SpecialFactorial phi_primorial(PrimeIndex k, const PrimeTable& table = default_prime_table()) {
  SpecialFactorial acc;
  for (unsigned i = 1; i <= k.value(); ++i) acc = acc * (table.nth(PrimeIndex(i)) - 1);
  return acc;
}

/// (p_2 - 2)(p_3 - 2)...(p_k - 2); defined for k >= 2 only.
inline SpecialFactorial twin_factorial(PrimeIndex k, const PrimeTable& table = default_prime_table()) {
  if (k.value() < 2) throw DomainError("twin factorial requires k >= 2");
  SpecialFactorial acc;
  for (unsigned i = 2; i <= k.value(); ++i) acc = acc * (table.nth(PrimeIndex(i)) - 2);
  return acc;
}

} // namespace primemat
