#pragma once

// Prime and twin-prime generation over the uncolored rows of A_k (a primorial wheel), with a
// classical sieve of Eratosthenes as baseline.
//
// Only the phi(D_k) uncolored rows are stored: one bit per column, row-major. Each row is an
// arithmetic progression l + D_k * c, so the multiples of a sieving prime q inside it sit at
// columns c0, c0 + q, c0 + 2q, ... where c0 solves l + D_k * c0 == 0 (mod q).

#include <algorithm>
#include <bit>
#include <cstdint>
#include <numeric>
#include <optional>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "primemat/checked.hpp"
#include "primemat/classifier.hpp"
#include "primemat/errors.hpp"
#include "primemat/matrix.hpp"
#include "primemat/primorial.hpp"

namespace primemat {

struct SieveConfig {
  PrimeIndex k{1};
  std::uint64_t cutoff_x = 2;
  std::uint64_t segment_size = std::uint64_t{1} << 20; // integers covered by one sieving window
  unsigned threads = 1;                                 // 0 picks the hardware concurrency
};

struct TwinPair {
  std::uint64_t low = 0;
  std::uint64_t high = 0;

  friend bool operator==(const TwinPair&, const TwinPair&) = default;
  friend auto operator<=>(const TwinPair&, const TwinPair&) = default;
};

/// Non-fatal remark on a configuration: the wheel is wasteful unless x is much larger than D_k.
inline std::optional<std::string> config_warning(const SieveConfig& cfg, const PrimeTable& table = default_prime_table()) {
  const auto d = primorial(cfg.k, table).value();
  if (static_cast<u128>(cfg.cutoff_x) < d * 100)
    return "cutoff " + std::to_string(cfg.cutoff_x) + " is below 100 * D_" + std::to_string(cfg.k.value()) + " = " +
           to_string(d * 100) + "; the wheel has few columns";
  return std::nullopt;
}

/// Plain sieve of Eratosthenes over 0..limit, one bit per integer.
class ClassicalSieve {
public:
  explicit ClassicalSieve(std::uint64_t limit) : limit_(limit), prime_(limit + 1, true) {
    prime_[0] = false;
    if (limit >= 1) prime_[1] = false;
    for (std::uint64_t i = 2; i <= limit / i; ++i)
      if (prime_[i])
        for (std::uint64_t j = i * i; j <= limit; j += i) prime_[j] = false;
  }

  std::uint64_t limit() const noexcept { return limit_; }

  bool is_prime(std::uint64_t n) const {
    if (n > limit_) throw RangeError(std::to_string(n) + " beyond sieve limit " + std::to_string(limit_));
    return prime_[n];
  }

  std::vector<std::uint64_t> primes() const {
    std::vector<std::uint64_t> out;
    for (std::uint64_t n = 2; n <= limit_; ++n)
      if (prime_[n]) out.push_back(n);
    return out;
  }

  std::uint64_t count() const {
    std::uint64_t n = 0;
    for (std::uint64_t i = 2; i <= limit_; ++i) n += prime_[i];
    return n;
  }

private:
  std::uint64_t limit_;
  std::vector<bool> prime_;
};

namespace detail {

inline std::uint64_t mod_inverse(std::uint64_t a, std::uint64_t m) {
  std::int64_t t = 0, new_t = 1;
  std::int64_t r = static_cast<std::int64_t>(m), new_r = static_cast<std::int64_t>(a % m);
  while (new_r != 0) {
    const auto q = r / new_r;
    t = std::exchange(new_t, t - q * new_t);
    r = std::exchange(new_r, r - q * new_r);
  }
  if (r != 1) throw DomainError("no modular inverse");
  return static_cast<std::uint64_t>(t < 0 ? t + static_cast<std::int64_t>(m) : t);
}

inline unsigned resolve_threads(unsigned requested) {
  if (requested != 0) return requested;
  return std::max(1u, std::thread::hardware_concurrency());
}

} // namespace detail

/// Sieved bitmap of a set of uncolored rows of A_k up to a cutoff.
class WheelSieve {
public:
  /// Sieves every uncolored row.
  WheelSieve(const SieveConfig& cfg, const Budget& budget = {}, const PrimeTable& table = default_prime_table())
      : WheelSieve(cfg, budget, table, std::nullopt) {}

  /// Sieves only the given rows, which must all be uncolored.
  WheelSieve(const SieveConfig& cfg, std::vector<std::uint64_t> rows, const Budget& budget = {},
             const PrimeTable& table = default_prime_table())
      : WheelSieve(cfg, budget, table, std::move(rows)) {}

  const MatrixSpec& spec() const noexcept { return spec_; }
  std::uint64_t cutoff() const noexcept { return x_; }
  const std::vector<std::uint64_t>& rows() const noexcept { return rows_; }
  bool complete() const noexcept { return complete_; }

  bool is_prime(std::uint64_t n) const {
    if (n > x_) throw RangeError(std::to_string(n) + " beyond cutoff " + std::to_string(x_));
    if (n < 2) return false;
    if (n <= spec_.largest_prime()) return std::binary_search(small_.begin(), small_.end(), n);
    const auto c = locate(spec_, n);
    const auto it = std::lower_bound(rows_.begin(), rows_.end(), c.row);
    if (it == rows_.end() || *it != c.row) {
      if (complete_ || row_is_colored(spec_, c.row)) return false;
      throw RangeError("row " + std::to_string(c.row) + " was not sieved");
    }
    return bit(static_cast<std::size_t>(it - rows_.begin()), c.column - 1);
  }

  /// All primes <= x in increasing order (requires a complete sieve).
  std::vector<std::uint64_t> primes() const {
    require_complete();
    std::vector<std::uint64_t> out;
    for (auto p : small_)
      if (p <= x_) out.push_back(p);
    const std::uint64_t d = spec_.difference();
    for (std::uint64_t c = 0; c < columns_; ++c)
      for (std::size_t r = 0; r < rows_.size(); ++r)
        if (bit(r, c)) out.push_back(first_term(rows_[r]) + d * c);
    return out;
  }

  /// Twins found column-synchronously in one twin-row pair.
  std::vector<TwinPair> twins_in(RowPair pair) const {
    const auto lo = index_of(pair.low);
    const auto hi = index_of(pair.high);
    std::vector<TwinPair> out;
    collect_pair(lo, hi, out);
    return out;
  }

  /// All twin pairs with high <= x, sorted (requires a complete sieve).
  std::vector<TwinPair> twins() const {
    require_complete();
    std::vector<TwinPair> out;
    if (spec_.difference() == 2) {
      // D_1 = 2: both members of a twin pair share the single uncolored row.
      const auto ps = primes();
      for (std::size_t i = 1; i < ps.size(); ++i)
        if (ps[i] - ps[i - 1] == 2) out.push_back({ps[i - 1], ps[i]});
      return out;
    }
    for (std::size_t r = 0; r + 1 < rows_.size(); ++r) {
      const auto next = std::lower_bound(rows_.begin() + r + 1, rows_.end(), rows_[r] + 2);
      if (next != rows_.end() && *next == rows_[r] + 2)
        collect_pair(r, static_cast<std::size_t>(next - rows_.begin()), out);
    }
    // Pairs whose lower member is one of p_1..p_k sit in colored rows.
    for (auto p : small_)
      if (p + 2 <= x_ && is_prime(p + 2)) out.push_back({p, p + 2});
    std::sort(out.begin(), out.end());
    return out;
  }

private:
  WheelSieve(const SieveConfig& cfg, const Budget& budget, const PrimeTable& table,
             std::optional<std::vector<std::uint64_t>> subset)
      : spec_(checked_spec(cfg, budget, table)), x_(cfg.cutoff_x) {
    if (cfg.segment_size == 0) throw DomainError("segment size must be >= 1");
    for (unsigned i = 1; i <= cfg.k.value(); ++i) small_.push_back(table.nth(PrimeIndex(i)));

    if (subset) {
      rows_ = std::move(*subset);
      std::sort(rows_.begin(), rows_.end());
      rows_.erase(std::unique(rows_.begin(), rows_.end()), rows_.end());
      for (auto r : rows_)
        if (row_is_colored(spec_, r)) throw DomainError("row " + std::to_string(r) + " is colored");
      complete_ = false;
    } else {
      const std::uint64_t d = spec_.difference();
      for (std::uint64_t r = 1; r <= d; ++r)
        if (std::gcd(first_term(r), d) == 1) rows_.push_back(r);
    }

    const std::uint64_t d = spec_.difference();
    columns_ = (x_ - 2) / d + 1;
    words_ = (columns_ + 63) / 64;
    bits_.assign(rows_.size() * words_, 0);

    const auto root = isqrt(x_);
    std::vector<std::uint64_t> sieving;
    if (root > spec_.largest_prime())
      for (auto q : prime_source(root, table))
        if (q > spec_.largest_prime()) sieving.push_back(q);
    std::vector<std::uint64_t> d_inverse(sieving.size());
    for (std::size_t i = 0; i < sieving.size(); ++i) d_inverse[i] = detail::mod_inverse(d % sieving[i], sieving[i]);

    const std::uint64_t window = std::max<std::uint64_t>(1, (cfg.segment_size + d - 1) / d);
    const unsigned threads = std::min<std::size_t>(detail::resolve_threads(cfg.threads), std::max<std::size_t>(1, rows_.size()));
    const std::size_t chunk = (rows_.size() + threads - 1) / threads;
    {
      std::vector<std::jthread> pool;
      for (unsigned t = 0; t < threads; ++t) {
        const std::size_t begin = t * chunk;
        const std::size_t end = std::min(rows_.size(), begin + chunk);
        if (begin >= end) break;
        pool.emplace_back([&, begin, end] {
          std::vector<std::uint64_t> next(sieving.size());
          for (std::size_t r = begin; r < end; ++r) sieve_row(r, sieving, d_inverse, window, next);
        });
      }
    }
  }

  static MatrixSpec checked_spec(const SieveConfig& cfg, const Budget& budget, const PrimeTable& table) {
    if (cfg.cutoff_x < 2) throw DomainError("cutoff must be >= 2");
    if (cfg.cutoff_x > budget.max_x)
      throw BudgetError("cutoff " + std::to_string(cfg.cutoff_x) + " exceeds budget " + std::to_string(budget.max_x));
    detail::check_enumeration_budget(cfg.k, budget, table);
    return MatrixSpec(cfg.k, table);
  }

  static std::vector<std::uint64_t> prime_source(std::uint64_t root, const PrimeTable& table) {
    if (root <= table.max_bound()) return table.up_to(root);
    return ClassicalSieve(root).primes();
  }

  void sieve_row(std::size_t r, const std::vector<std::uint64_t>& sieving, const std::vector<std::uint64_t>& d_inverse,
                 std::uint64_t window, std::vector<std::uint64_t>& next) {
    const std::uint64_t d = spec_.difference();
    const std::uint64_t l = first_term(rows_[r]);
    if (l > x_) return;
    const std::uint64_t count = (x_ - l) / d + 1;
    std::uint64_t* row_bits = bits_.data() + r * words_;
    for (std::uint64_t w = 0; w < count / 64; ++w) row_bits[w] = ~std::uint64_t{0};
    if (count % 64) row_bits[count / 64] = (std::uint64_t{1} << (count % 64)) - 1;

    for (std::size_t i = 0; i < sieving.size(); ++i) {
      const std::uint64_t q = sieving[i];
      std::uint64_t c = ((q - l % q) % q) * d_inverse[i] % q;
      const std::uint64_t v = l + d * c;
      if (v < q * q) c += (q * q - v + d * q - 1) / (d * q) * q;
      next[i] = c;
    }
    for (std::uint64_t start = 0; start < count; start += window) {
      const std::uint64_t stop = std::min(count, start + window);
      for (std::size_t i = 0; i < sieving.size(); ++i) {
        const std::uint64_t q = sieving[i];
        std::uint64_t c = next[i];
        for (; c < stop; c += q) row_bits[c / 64] &= ~(std::uint64_t{1} << (c % 64));
        next[i] = c;
      }
    }
  }

  bool bit(std::size_t r, std::uint64_t c) const { return (bits_[r * words_ + c / 64] >> (c % 64)) & 1u; }

  std::size_t index_of(std::uint64_t row) const {
    const auto it = std::lower_bound(rows_.begin(), rows_.end(), row);
    if (it == rows_.end() || *it != row) throw RangeError("row " + std::to_string(row) + " was not sieved");
    return static_cast<std::size_t>(it - rows_.begin());
  }

  void collect_pair(std::size_t lo, std::size_t hi, std::vector<TwinPair>& out) const {
    const std::uint64_t d = spec_.difference();
    const std::uint64_t l = first_term(rows_[lo]);
    for (std::uint64_t w = 0; w < words_; ++w) {
      std::uint64_t both = bits_[lo * words_ + w] & bits_[hi * words_ + w];
      while (both) {
        const std::uint64_t c = w * 64 + static_cast<std::uint64_t>(std::countr_zero(both));
        out.push_back({l + d * c, l + d * c + 2});
        both &= both - 1;
      }
    }
  }

  void require_complete() const {
    if (!complete_) throw DomainError("operation needs a sieve over all uncolored rows");
  }

  MatrixSpec spec_;
  std::uint64_t x_;
  std::vector<std::uint64_t> small_; // p_1..p_k
  std::vector<std::uint64_t> rows_;  // sieved row numbers, increasing
  bool complete_ = true;
  std::uint64_t columns_ = 0;
  std::uint64_t words_ = 0;
  std::vector<std::uint64_t> bits_;
};

inline std::vector<std::uint64_t> primes_up_to(const SieveConfig& cfg, const Budget& budget = {},
                                               const PrimeTable& table = default_prime_table()) {
  return WheelSieve(cfg, budget, table).primes();
}

inline std::vector<TwinPair> twins_up_to(const SieveConfig& cfg, const Budget& budget = {},
                                         const PrimeTable& table = default_prime_table()) {
  return WheelSieve(cfg, budget, table).twins();
}

/// Twins (a, a + 2) with a in the lower row of a twin-row pair of A_k and a + 2 <= x.
inline std::vector<TwinPair> twins_in_pair(PrimeIndex k, RowPair pair, std::uint64_t x, const Budget& budget = {},
                                           const PrimeTable& table = default_prime_table()) {
  detail::check_enumeration_budget(k, budget, table);
  const MatrixSpec spec(k, table);
  check_row(spec, pair.low);
  const auto d = classify_row(spec, pair.low);
  if (pair.high != pair.low + 2 || d.cls.tag != RowTag::TwinMember || d.cls.partner_row != pair.high)
    throw DomainError("rows (" + std::to_string(pair.low) + ", " + std::to_string(pair.high) +
                      ") are not a twin-row pair of A_" + std::to_string(k.value()));
  SieveConfig cfg{k, x};
  return WheelSieve(cfg, {pair.low, pair.high}, budget, table).twins_in(pair);
}

} // namespace primemat
