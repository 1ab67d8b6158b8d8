#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <string>

#include "primemat/errors.hpp"

namespace primemat {

using u128 = unsigned __int128;

inline u128 checked_mul(u128 a, u128 b) {
  u128 r;
  if (__builtin_mul_overflow(a, b, &r)) throw OverflowError("128-bit multiplication overflow");
  return r;
}

inline std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b) {
  std::uint64_t r;
  if (__builtin_mul_overflow(a, b, &r)) throw OverflowError("64-bit multiplication overflow");
  return r;
}

inline std::uint64_t checked_add(std::uint64_t a, std::uint64_t b) {
  std::uint64_t r;
  if (__builtin_add_overflow(a, b, &r)) throw OverflowError("64-bit addition overflow");
  return r;
}

inline std::uint64_t narrow_u64(u128 v) {
  if (v > std::numeric_limits<std::uint64_t>::max()) throw OverflowError("value does not fit in 64 bits");
  return static_cast<std::uint64_t>(v);
}

inline std::string to_string(u128 v) {
  if (v == 0) return "0";
  std::string s;
  while (v != 0) {
    s.push_back(static_cast<char>('0' + static_cast<int>(v % 10)));
    v /= 10;
  }
  std::reverse(s.begin(), s.end());
  return s;
}

/// floor(sqrt(n)) without floating-point rounding surprises.
inline std::uint64_t isqrt(std::uint64_t n) {
  auto r = static_cast<std::uint64_t>(__builtin_sqrtl(static_cast<long double>(n)));
  while (r > 0 && (r > n / r)) --r;
  while ((r + 1) <= n / (r + 1)) ++r;
  return r;
}

} // namespace primemat
