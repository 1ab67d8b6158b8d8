#pragma once

// How the rows of A_{k-1} spread over the rows of A_k. The children of a parent row with first
// term l are the rows of A_k whose first terms are l + m * D_{k-1}, m = 0 .. p_k - 1.

#include <algorithm>
#include <cstdint>
#include <vector>

#include "primemat/classifier.hpp"
#include "primemat/errors.hpp"
#include "primemat/matrix.hpp"
#include "primemat/primorial.hpp"

namespace primemat {

struct RowFate {
  std::uint64_t parent_row = 0;
  std::vector<std::uint64_t> child_rows;
  std::vector<RowTag> child_classes;
};

/// A twin-row pair of A_{k-1} whose children at one offset m stop being a twin pair.
struct BrokenPair {
  RowPair parent;
  RowPair child;
  std::uint64_t colored_row = 0;
  std::uint64_t uncolored_row = 0;
  RowTag uncolored_tag = RowTag::Single;
};

struct TransitionSummary {
  unsigned k = 0;
  std::uint64_t p_k = 0;
  ClassificationSummary previous;
  ClassificationSummary current;

  std::uint64_t beta_s = 0; // colored children of single parents
  std::uint64_t beta_b = 0; // children of colored parents
  std::uint64_t beta_t = 0; // colored children of twin-member parents
  std::uint64_t alpha_t = 0; // uncolored members of broken child pairs that classify as single
  std::uint64_t alpha_s = 0; // single children of single parents
  std::uint64_t surviving_twin_pairs = 0; // child pairs of parent twin pairs that are twin pairs in A_k

  bool children_partition = false; // every row of A_k is the child of exactly one parent
  std::uint64_t uncolored_parents = 0;
  std::uint64_t children_violations = 0; // uncolored parents without exactly p_k - 1 uncolored children
                                          // and one colored child divisible by p_k
  std::vector<BrokenPair> broken;
};

namespace detail {

inline void check_transition_order(PrimeIndex k) {
  if (k.value() < 2) throw DomainError("redistribution needs k >= 2 (A_{k-1} must exist)");
}

inline std::uint64_t child_row(std::uint64_t parent_row, std::uint64_t m, std::uint64_t parent_difference) {
  return parent_row + m * parent_difference;
}

} // namespace detail

inline RowFate row_children(PrimeIndex k, std::uint64_t parent_row, const PrimeTable& table = default_prime_table()) {
  detail::check_transition_order(k);
  const MatrixSpec parent(k.prev(), table);
  const MatrixSpec child(k, table);
  check_row(parent, parent_row);

  RowFate fate{parent_row, {}, {}};
  const std::uint64_t p = child.largest_prime();
  fate.child_rows.reserve(p);
  fate.child_classes.reserve(p);
  for (std::uint64_t m = 0; m < p; ++m) {
    const auto row = detail::child_row(parent_row, m, parent.difference());
    fate.child_rows.push_back(row);
    fate.child_classes.push_back(classify_row(child, row).cls.tag);
  }
  return fate;
}

inline std::uint64_t uncolored_child_count(PrimeIndex k, std::uint64_t parent_row,
                                           const PrimeTable& table = default_prime_table()) {
  detail::check_transition_order(k);
  if (row_is_colored(MatrixSpec(k.prev(), table), parent_row))
    throw DomainError("parent row " + std::to_string(parent_row) + " is colored");
  const auto fate = row_children(k, parent_row, table);
  std::uint64_t n = 0;
  for (auto t : fate.child_classes) n += t != RowTag::Colored;
  return n;
}

/// Number of child pairs (same offset m) of a twin-row pair of A_{k-1} that are twin-row pairs of A_k.
inline std::uint64_t twin_pair_children(PrimeIndex k, RowPair pair, const PrimeTable& table = default_prime_table()) {
  detail::check_transition_order(k);
  const MatrixSpec parent(k.prev(), table);
  const MatrixSpec child(k, table);
  if (pair.high != pair.low + 2) throw DomainError("twin-row pairs are two rows apart");
  const auto d = classify_row(parent, pair.low);
  if (d.cls.tag != RowTag::TwinMember || d.cls.partner_row != pair.high)
    throw DomainError("rows (" + std::to_string(pair.low) + ", " + std::to_string(pair.high) +
                      ") are not a twin-row pair");

  std::uint64_t surviving = 0;
  for (std::uint64_t m = 0; m < child.largest_prime(); ++m) {
    const auto lo = classify_row(child, detail::child_row(pair.low, m, parent.difference()));
    surviving += lo.cls.tag == RowTag::TwinMember &&
                 lo.cls.partner_row == detail::child_row(pair.high, m, parent.difference());
  }
  return surviving;
}

/// Tallies every row fate from independent classifications of A_{k-1} and A_k.
inline TransitionSummary transition_summary(PrimeIndex k, const Budget& budget = {},
                                            const PrimeTable& table = default_prime_table()) {
  detail::check_transition_order(k);
  const auto prev = classify_matrix(k.prev(), budget, table);
  const auto cur = classify_matrix(k, budget, table);
  const std::uint64_t p = cur.spec().largest_prime();
  const std::uint64_t step = prev.spec().difference();

  TransitionSummary s;
  s.k = k.value();
  s.p_k = p;
  s.previous = prev.summary();
  s.current = cur.summary();

  std::vector<std::uint8_t> hits(cur.spec().row_count(), 0);
  for (std::uint64_t parent = 1; parent <= prev.spec().row_count(); ++parent) {
    const RowTag ptag = prev.tag(parent);
    std::uint64_t uncolored = 0;
    std::uint64_t colored = 0;
    bool colored_divisible = true;
    for (std::uint64_t m = 0; m < p; ++m) {
      const auto row = detail::child_row(parent, m, step);
      ++hits[row - 1];
      const RowTag ctag = cur.tag(row);
      if (ctag == RowTag::Colored) {
        ++colored;
        colored_divisible = colored_divisible && first_term(row) % p == 0;
        switch (ptag) {
        case RowTag::Colored: ++s.beta_b; break;
        case RowTag::Single: ++s.beta_s; break;
        case RowTag::TwinMember: ++s.beta_t; break;
        }
      } else {
        ++uncolored;
        if (ptag == RowTag::Single && ctag == RowTag::Single) ++s.alpha_s;
      }
    }
    if (ptag != RowTag::Colored) {
      ++s.uncolored_parents;
      if (uncolored != p - 1 || colored != 1 || !colored_divisible) ++s.children_violations;
    }
  }
  s.children_partition = std::all_of(hits.begin(), hits.end(), [](std::uint8_t h) { return h == 1; });

  for (const auto& pair : prev.twin_pairs()) {
    for (std::uint64_t m = 0; m < p; ++m) {
      const RowPair child{detail::child_row(pair.low, m, step), detail::child_row(pair.high, m, step)};
      const bool lo_colored = cur.colored(child.low);
      const bool hi_colored = cur.colored(child.high);
      if (!lo_colored && !hi_colored) {
        s.surviving_twin_pairs += cur.descriptor(child.low).cls.partner_row == child.high;
      } else if (lo_colored != hi_colored) {
        BrokenPair b{pair, child, lo_colored ? child.low : child.high, lo_colored ? child.high : child.low, {}};
        b.uncolored_tag = cur.tag(b.uncolored_row);
        s.alpha_t += b.uncolored_tag == RowTag::Single;
        s.broken.push_back(b);
      }
    }
  }
  return s;
}

} // namespace primemat
