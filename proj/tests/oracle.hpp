#pragma once

// Brute-force reference implementations used only by the tests. Nothing here calls into the
// library's sieving or classification code.

#include <cstdint>
#include <numeric>
#include <vector>

namespace oracle {

inline bool is_prime_trial(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

/// Byte-per-integer sieve over 0..n.
inline std::vector<std::uint8_t> prime_flags(std::uint64_t n) {
  std::vector<std::uint8_t> f(n + 1, 1);
  f[0] = 0;
  if (n >= 1) f[1] = 0;
  for (std::uint64_t i = 2; i * i <= n; ++i)
    if (f[i])
      for (std::uint64_t j = i * i; j <= n; j += i) f[j] = 0;
  return f;
}

inline std::vector<std::uint64_t> primes(std::uint64_t n) {
  const auto f = prime_flags(n);
  std::vector<std::uint64_t> out;
  for (std::uint64_t i = 0; i <= n; ++i)
    if (f[i]) out.push_back(i);
  return out;
}

inline std::vector<std::pair<std::uint64_t, std::uint64_t>> twins(std::uint64_t n) {
  const auto f = prime_flags(n);
  std::vector<std::pair<std::uint64_t, std::uint64_t>> out;
  for (std::uint64_t a = 2; a + 2 <= n; ++a)
    if (f[a] && f[a + 2]) out.emplace_back(a, a + 2);
  return out;
}

inline std::vector<std::uint64_t> first_primes(unsigned k) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t n = 2; out.size() < k; ++n)
    if (is_prime_trial(n)) out.push_back(n);
  return out;
}

inline std::uint64_t primorial(unsigned k) {
  std::uint64_t d = 1;
  for (auto p : first_primes(k)) d *= p;
  return d;
}

/// Textbook totient by trial factorization.
inline std::uint64_t totient(std::uint64_t n) {
  std::uint64_t result = n;
  for (std::uint64_t p = 2; p * p <= n; ++p) {
    if (n % p) continue;
    while (n % p == 0) n /= p;
    result -= result / p;
  }
  if (n > 1) result -= result / n;
  return result;
}

enum class Cls { Colored, Single, Twin };

/// Classification by gcd scan of first terms 2..D+1; index r - 1 holds row r.
inline std::vector<Cls> gcd_scan(std::uint64_t d) {
  std::vector<bool> unc(d + 1, false);
  for (std::uint64_t r = 1; r <= d; ++r) unc[r] = std::gcd(r + 1, d) == 1;
  std::vector<Cls> out(d);
  for (std::uint64_t r = 1; r <= d; ++r) {
    if (!unc[r]) {
      out[r - 1] = Cls::Colored;
      continue;
    }
    const bool twin = (r > 2 && unc[r - 2]) || (r + 2 <= d && unc[r + 2]);
    out[r - 1] = twin ? Cls::Twin : Cls::Single;
  }
  return out;
}

struct Counts {
  std::uint64_t alpha = 0, beta = 0, single = 0, twin_pairs = 0;
};

inline Counts gcd_scan_counts(std::uint64_t d) {
  const auto cls = gcd_scan(d);
  Counts c;
  for (std::uint64_t r = 1; r <= d; ++r) {
    switch (cls[r - 1]) {
    case Cls::Colored: ++c.beta; break;
    case Cls::Single: ++c.alpha; ++c.single; break;
    case Cls::Twin:
      ++c.alpha;
      if (r + 2 <= d && cls[r + 1] == Cls::Twin) ++c.twin_pairs;
      break;
    }
  }
  return c;
}

} // namespace oracle
