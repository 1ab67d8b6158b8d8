#pragma once

// Coordinate arithmetic for the matrix family A_k. Row i of A_k holds the progression
// (i + 1) + D_k * (j - 1), j = 1, 2, ..., with D_k = primorial(k). Matrices are virtual:
// nothing here stores cells.

#include <cstdint>
#include <numeric>

#include "primemat/checked.hpp"
#include "primemat/errors.hpp"
#include "primemat/primorial.hpp"

namespace primemat {

/// Largest order whose difference fits in 64 bits (D_15 = 614889782588491410).
constexpr unsigned max_matrix_order = 15;

class MatrixSpec {
public:
  explicit MatrixSpec(PrimeIndex k, const PrimeTable& table = default_prime_table()) : k_(k) {
    if (k.value() > max_matrix_order)
      throw OverflowError("matrix order " + std::to_string(k.value()) + " has a difference beyond 64 bits");
    difference_ = primorial(k, table).to_u64();
    largest_prime_ = table.nth(k);
  }

  PrimeIndex order() const noexcept { return k_; }
  /// D_k
  std::uint64_t difference() const noexcept { return difference_; }
  /// Omega_k; always equal to the difference.
  std::uint64_t row_count() const noexcept { return difference_; }
  /// p_k
  std::uint64_t largest_prime() const noexcept { return largest_prime_; }

  friend bool operator==(const MatrixSpec& a, const MatrixSpec& b) { return a.k_ == b.k_; }

private:
  PrimeIndex k_;
  std::uint64_t difference_ = 0;
  std::uint64_t largest_prime_ = 0;
};

struct Coordinates {
  std::uint64_t row = 1;
  std::uint64_t column = 1;

  friend bool operator==(const Coordinates&, const Coordinates&) = default;
};

/// First term l = row + 1 of a row.
inline std::uint64_t first_term(std::uint64_t row) { return row + 1; }

inline void check_row(const MatrixSpec& spec, std::uint64_t row) {
  if (row < 1 || row > spec.row_count())
    throw RangeError("row " + std::to_string(row) + " outside 1.." + std::to_string(spec.row_count()));
}

/// a(k, i, j) = (i + 1) + D_k * (j - 1)
inline std::uint64_t element(const MatrixSpec& spec, Coordinates c) {
  check_row(spec, c.row);
  if (c.column < 1) throw RangeError("column must be >= 1");
  return checked_add(first_term(c.row), checked_mul(spec.difference(), c.column - 1));
}

/// Unique cell holding z. The number 1 sits outside the matrix and has no coordinates.
inline Coordinates locate(const MatrixSpec& spec, std::uint64_t z) {
  if (z < 2) throw DomainError("only integers >= 2 are placed in the matrix");
  const std::uint64_t shifted = z - 2;
  return {shifted % spec.difference() + 1, shifted / spec.difference() + 1};
}

/// True iff z occupies the same cell in A_k and A_{k+1}.
inline bool first_column_stable(PrimeIndex k, std::uint64_t z, const PrimeTable& table = default_prime_table()) {
  const MatrixSpec here(k, table);
  const MatrixSpec next(k.next(), table);
  return locate(here, z) == locate(next, z);
}

} // namespace primemat
