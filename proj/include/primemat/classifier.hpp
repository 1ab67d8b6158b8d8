#pragma once

// Row classes of A_k. A row is colored when its first term shares a factor with D_k; an
// uncolored row is a twin member when the row at index distance exactly 2 (no wraparound) is
// also uncolored, and single otherwise.

#include <cstdint>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <vector>

#include "primemat/errors.hpp"
#include "primemat/matrix.hpp"
#include "primemat/primorial.hpp"

namespace primemat {

/// Resource guard rails for whole-matrix enumeration and sieving.
struct Budget {
  std::uint64_t max_rows = 10'000'000;
  std::uint64_t max_x = 100'000'000;
};

enum class RowTag : std::uint8_t { Colored, Single, TwinMember };

inline const char* tag_name(RowTag t) {
  switch (t) {
  case RowTag::Colored: return "colored";
  case RowTag::Single: return "single";
  case RowTag::TwinMember: return "twin";
  }
  return "?";
}

struct RowClass {
  RowTag tag = RowTag::Colored;
  std::optional<std::uint64_t> partner_row; // present iff tag == TwinMember

  friend bool operator==(const RowClass&, const RowClass&) = default;
};

struct RowDescriptor {
  std::uint64_t row = 0;
  std::uint64_t first_term = 0;
  RowClass cls;

  friend bool operator==(const RowDescriptor&, const RowDescriptor&) = default;
};

/// (row_low, row_high) with row_high = row_low + 2.
struct RowPair {
  std::uint64_t low = 0;
  std::uint64_t high = 0;

  friend bool operator==(const RowPair&, const RowPair&) = default;
  friend auto operator<=>(const RowPair&, const RowPair&) = default;
};

struct ClassificationSummary {
  unsigned k = 0;
  std::uint64_t alpha = 0;            // uncolored rows
  std::uint64_t beta = 0;             // colored rows
  std::uint64_t alpha_single = 0;
  std::uint64_t alpha_twin_pairs = 0;
  std::uint64_t omega = 0;            // all rows

  friend bool operator==(const ClassificationSummary&, const ClassificationSummary&) = default;
};

namespace detail {

inline RowDescriptor assemble(std::uint64_t row, bool colored, bool below_uncolored, bool above_uncolored) {
  RowDescriptor d{row, first_term(row), {}};
  if (colored) return d;
  if (below_uncolored && above_uncolored)
    throw std::logic_error("twin rows chain at row " + std::to_string(row) + "; pairing is ambiguous");
  if (below_uncolored) {
    d.cls = {RowTag::TwinMember, row - 2};
  } else if (above_uncolored) {
    d.cls = {RowTag::TwinMember, row + 2};
  } else {
    d.cls = {RowTag::Single, std::nullopt};
  }
  return d;
}

inline void check_enumeration_budget(PrimeIndex k, const Budget& budget, const PrimeTable& table) {
  const auto rows = primorial(k, table).value();
  if (rows > budget.max_rows)
    throw BudgetError("A_" + std::to_string(k.value()) + " has " + to_string(rows) + " rows, budget is " +
                      std::to_string(budget.max_rows));
}

} // namespace detail

inline bool row_is_colored(const MatrixSpec& spec, std::uint64_t row) {
  check_row(spec, row);
  return std::gcd(first_term(row), spec.difference()) != 1;
}

/// Lazy per-row classification; costs at most three gcds.
inline RowDescriptor classify_row(const MatrixSpec& spec, std::uint64_t row) {
  check_row(spec, row);
  const auto uncolored = [&](std::uint64_t r) {
    return r >= 1 && r <= spec.row_count() && std::gcd(first_term(r), spec.difference()) == 1;
  };
  return detail::assemble(row, !uncolored(row), row > 2 && uncolored(row - 2), uncolored(row + 2));
}

/// Eager classification of every row of A_k, stored as one tag byte per row.
class MatrixClassification {
public:
  MatrixClassification(MatrixSpec spec, std::vector<RowTag> tags) : spec_(spec), tags_(std::move(tags)) {
    summary_.k = spec_.order().value();
    summary_.omega = tags_.size();
    for (auto t : tags_) {
      switch (t) {
      case RowTag::Colored: ++summary_.beta; break;
      case RowTag::Single: ++summary_.alpha_single; break;
      case RowTag::TwinMember: ++summary_.alpha_twin_pairs; break;
      }
    }
    summary_.alpha = summary_.alpha_single + summary_.alpha_twin_pairs;
    summary_.alpha_twin_pairs /= 2;
  }

  const MatrixSpec& spec() const noexcept { return spec_; }
  const ClassificationSummary& summary() const noexcept { return summary_; }

  RowTag tag(std::uint64_t row) const {
    check_row(spec_, row);
    return tags_[row - 1];
  }
  bool colored(std::uint64_t row) const { return tag(row) == RowTag::Colored; }

  RowDescriptor descriptor(std::uint64_t row) const {
    const auto t = tag(row);
    RowDescriptor d{row, first_term(row), {t, std::nullopt}};
    if (t == RowTag::TwinMember) {
      const bool below = row > 2 && tags_[row - 3] != RowTag::Colored;
      d.cls.partner_row = below ? row - 2 : row + 2;
    }
    return d;
  }

  std::vector<RowDescriptor> descriptors() const {
    std::vector<RowDescriptor> out;
    out.reserve(tags_.size());
    for (std::uint64_t r = 1; r <= tags_.size(); ++r) out.push_back(descriptor(r));
    return out;
  }

  /// Uncolored rows in increasing order.
  std::vector<std::uint64_t> uncolored_rows() const {
    std::vector<std::uint64_t> out;
    out.reserve(summary_.alpha);
    for (std::uint64_t r = 1; r <= tags_.size(); ++r)
      if (tags_[r - 1] != RowTag::Colored) out.push_back(r);
    return out;
  }

  /// Twin-row pairs sorted by their lower row.
  std::vector<RowPair> twin_pairs() const {
    std::vector<RowPair> out;
    out.reserve(summary_.alpha_twin_pairs);
    for (std::uint64_t r = 1; r + 2 <= tags_.size(); ++r)
      if (tags_[r - 1] == RowTag::TwinMember && tags_[r + 1] == RowTag::TwinMember) {
        const bool paired_below = r > 2 && tags_[r - 3] != RowTag::Colored;
        if (!paired_below) out.push_back({r, r + 2});
      }
    return out;
  }

private:
  MatrixSpec spec_;
  std::vector<RowTag> tags_;
  ClassificationSummary summary_;
};

/// Colored rows are found by striking the multiples of p_1..p_k among the first terms 2..D_k + 1,
/// then single/twin tags follow from the distance-2 neighbours.
inline MatrixClassification classify_matrix(PrimeIndex k, const Budget& budget = {},
                                            const PrimeTable& table = default_prime_table()) {
  detail::check_enumeration_budget(k, budget, table);
  const MatrixSpec spec(k, table);
  const std::uint64_t rows = spec.row_count();
  const std::uint64_t last_term = rows + 1;

  std::vector<std::uint8_t> colored(rows, 0);
  for (unsigned i = 1; i <= k.value(); ++i) {
    const std::uint64_t p = table.nth(PrimeIndex(i));
    for (std::uint64_t l = p; l <= last_term; l += p) colored[l - 2] = 1;
  }

  std::vector<RowTag> tags(rows);
  for (std::uint64_t r = 1; r <= rows; ++r) {
    const bool below = r > 2 && !colored[r - 3];
    const bool above = r + 2 <= rows && !colored[r + 1];
    tags[r - 1] = detail::assemble(r, colored[r - 1] != 0, below, above).cls.tag;
  }
  return {spec, std::move(tags)};
}

inline std::vector<RowPair> twin_row_pairs(PrimeIndex k, const Budget& budget = {},
                                           const PrimeTable& table = default_prime_table()) {
  if (k.value() < 2) throw DomainError("twin-row pairs are defined for k >= 2");
  return classify_matrix(k, budget, table).twin_pairs();
}

} // namespace primemat
