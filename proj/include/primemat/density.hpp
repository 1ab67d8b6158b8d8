#pragma once

// Prime / composite census of the rows of A_k at a cutoff x, exact average densities, and the
// Li(x) / phi(D_k) reference for a single residue class.

#include <cmath>
#include <cstdint>
#include <numeric>
#include <string>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/multiprecision/cpp_int.hpp>

#include "primemat/classifier.hpp"
#include "primemat/errors.hpp"
#include "primemat/matrix.hpp"
#include "primemat/primorial.hpp"
#include "primemat/sieve.hpp"

namespace primemat {

using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

inline Rational make_rational(std::uint64_t num, std::uint64_t den = 1) {
  return Rational(BigInt(num), BigInt(den));
}

struct RowCensus {
  std::uint64_t row = 0;
  std::uint64_t first_term = 0;
  std::uint64_t pi = 0; // primes <= x
  std::uint64_t n = 0;  // composites <= x
  std::uint64_t m = 0;  // all elements <= x
};

/// How the average row length is taken when forming densities.
enum class RowLengthMode { Idealized, Exact };

inline const char* mode_name(RowLengthMode m) { return m == RowLengthMode::Idealized ? "idealized" : "exact"; }

/// Aggregates over the uncolored rows of A_k. Level 0 is the row of natural numbers 2..x with D = 1.
struct DensityReport {
  unsigned k = 0;
  std::uint64_t x = 0;
  std::uint64_t difference = 1;
  std::uint64_t phi = 1;
  std::uint64_t Pi = 0;
  std::uint64_t N = 0;
  std::uint64_t M = 0;
  Rational pi_av;
  Rational n_av;
  Rational m_av_ideal; // x / D_k
  Rational m_av_exact; // M / phi
  Rational rho_av;       // pi_av / m_av_ideal
  Rational rho_av_exact; // pi_av / m_av_exact
  std::vector<std::string> warnings;

  const Rational& m_av(RowLengthMode mode) const { return mode == RowLengthMode::Idealized ? m_av_ideal : m_av_exact; }
  const Rational& rho(RowLengthMode mode) const { return mode == RowLengthMode::Idealized ? rho_av : rho_av_exact; }
};

/// lhs - rhs of a recurrence, in exact arithmetic.
struct Residual {
  Rational lhs;
  Rational rhs;
  Rational residual;
};

struct RhoRecurrence {
  Residual idealized;
  Residual exact;
  double deviation = 0; // |exact.residual|
};

namespace detail {

inline std::uint64_t row_length(std::uint64_t l, std::uint64_t d, std::uint64_t x) {
  return l <= x ? (x - l) / d + 1 : 0;
}

inline void check_cutoff(std::uint64_t x, const Budget& budget) {
  if (x < 2) throw DomainError("cutoff must be >= 2");
  if (x > budget.max_x) throw BudgetError("cutoff " + std::to_string(x) + " exceeds budget " + std::to_string(budget.max_x));
}

inline void fill_averages(DensityReport& r) {
  const auto phi = make_rational(r.phi);
  r.pi_av = make_rational(r.Pi) / phi;
  r.n_av = make_rational(r.N) / phi;
  r.m_av_ideal = make_rational(r.x, r.difference);
  r.m_av_exact = make_rational(r.M) / phi;
  r.rho_av = r.pi_av / r.m_av_ideal;
  r.rho_av_exact = r.M == 0 ? Rational(0) : r.pi_av / r.m_av_exact;
}

} // namespace detail

inline RowCensus row_census(PrimeIndex k, std::uint64_t row, std::uint64_t x, const ClassicalSieve& oracle,
                            const PrimeTable& table = default_prime_table()) {
  const MatrixSpec spec(k, table);
  check_row(spec, row);
  if (x < 2) throw DomainError("cutoff must be >= 2");
  if (x > oracle.limit()) throw RangeError("oracle sieve does not reach the cutoff");
  RowCensus c{row, first_term(row), 0, 0, 0};
  for (std::uint64_t v = c.first_term; v <= x; v += spec.difference()) {
    ++c.m;
    c.pi += oracle.is_prime(v);
  }
  c.n = c.m - c.pi;
  return c;
}

inline RowCensus row_census(PrimeIndex k, std::uint64_t row, std::uint64_t x, const Budget& budget = {},
                            const PrimeTable& table = default_prime_table()) {
  detail::check_cutoff(x, budget);
  return row_census(k, row, x, ClassicalSieve(x), table);
}

/// The natural-number row 2..x treated as level 0 (D = 1, phi = 1).
inline DensityReport natural_row_report(std::uint64_t x, const ClassicalSieve& oracle) {
  if (x < 2) throw DomainError("cutoff must be >= 2");
  DensityReport r;
  r.k = 0;
  r.x = x;
  r.M = x - 1;
  for (std::uint64_t v = 2; v <= x; ++v) r.Pi += oracle.is_prime(v);
  r.N = r.M - r.Pi;
  detail::fill_averages(r);
  return r;
}

inline DensityReport density_report(PrimeIndex k, std::uint64_t x, const ClassicalSieve& oracle,
                                    const Budget& budget = {}, const PrimeTable& table = default_prime_table()) {
  if (x < 2) throw DomainError("cutoff must be >= 2");
  if (x > oracle.limit()) throw RangeError("oracle sieve does not reach the cutoff");
  const auto cls = classify_matrix(k, budget, table);
  const std::uint64_t d = cls.spec().difference();

  DensityReport r;
  r.k = k.value();
  r.x = x;
  r.difference = d;
  r.phi = cls.summary().alpha;
  for (std::uint64_t v = 2; v <= x; ++v)
    if (oracle.is_prime(v) && !cls.colored((v - 2) % d + 1)) ++r.Pi;
  for (auto row : cls.uncolored_rows()) r.M += detail::row_length(first_term(row), d, x);
  r.N = r.M - r.Pi;
  if (x < d) r.warnings.push_back("cutoff below D_" + std::to_string(r.k) + "; some rows are empty");
  else if (x / 100 < d) r.warnings.push_back("cutoff below 100 * D_" + std::to_string(r.k) + "; averages are coarse");
  detail::fill_averages(r);
  return r;
}

inline DensityReport density_report(PrimeIndex k, std::uint64_t x, const Budget& budget = {},
                                    const PrimeTable& table = default_prime_table()) {
  detail::check_cutoff(x, budget);
  return density_report(k, x, ClassicalSieve(x), budget, table);
}

/// Density reports for levels 0..k_max sharing one oracle sieve.
inline std::vector<DensityReport> density_ladder(unsigned k_max, std::uint64_t x, const ClassicalSieve& oracle,
                                                 const Budget& budget = {},
                                                 const PrimeTable& table = default_prime_table()) {
  std::vector<DensityReport> out;
  out.push_back(natural_row_report(x, oracle));
  for (unsigned k = 1; k <= k_max; ++k) out.push_back(density_report(PrimeIndex(k), x, oracle, budget, table));
  return out;
}

/// pi_av(k) against pi_av(k-1) * phi(D_{k-1}) / phi(D_k) - 1 / phi(D_k).
inline Residual pi_recurrence(const DensityReport& prev, const DensityReport& cur) {
  Residual r;
  r.lhs = cur.pi_av;
  r.rhs = prev.pi_av * make_rational(prev.phi, cur.phi) - make_rational(1, cur.phi);
  r.residual = r.lhs - r.rhs;
  return r;
}

/// rho_av(k) against rho_av(k-1) * p_k / (p_k - 1) - 1 / (phi(D_k) * m_av(k)).
inline Residual rho_recurrence(const DensityReport& prev, const DensityReport& cur, std::uint64_t p_k,
                               RowLengthMode mode) {
  Residual r;
  r.lhs = cur.rho(mode);
  const Rational eps2 = Rational(1) / (make_rational(cur.phi) * cur.m_av(mode));
  r.rhs = prev.rho(mode) * make_rational(p_k, p_k - 1) - eps2;
  r.residual = r.lhs - r.rhs;
  return r;
}

/// k = 1 compares against the natural-number row.
inline Residual verify_pi_recurrence(PrimeIndex k, std::uint64_t x, const Budget& budget = {},
                                     const PrimeTable& table = default_prime_table()) {
  detail::check_cutoff(x, budget);
  const ClassicalSieve oracle(x);
  const auto prev = k.value() == 1 ? natural_row_report(x, oracle) : density_report(k.prev(), x, oracle, budget, table);
  return pi_recurrence(prev, density_report(k, x, oracle, budget, table));
}

inline RhoRecurrence verify_rho_recurrence(PrimeIndex k, std::uint64_t x, const Budget& budget = {},
                                           const PrimeTable& table = default_prime_table()) {
  detail::check_cutoff(x, budget);
  const ClassicalSieve oracle(x);
  const auto prev = k.value() == 1 ? natural_row_report(x, oracle) : density_report(k.prev(), x, oracle, budget, table);
  const auto cur = density_report(k, x, oracle, budget, table);
  const auto p = table.nth(k);
  RhoRecurrence out{rho_recurrence(prev, cur, p, RowLengthMode::Idealized),
                    rho_recurrence(prev, cur, p, RowLengthMode::Exact), 0};
  out.deviation = std::abs(static_cast<double>(out.exact.residual));
  return out;
}

/// Offset logarithmic integral: integral from 2 to x of du / ln u. Integrated in t = ln u, where
/// the integrand e^t / t is smooth on the whole range.
inline double li(double x) {
  if (!(x >= 2)) throw DomainError("Li(x) needs x >= 2");
  if (x == 2) return 0;
  const auto f = [](double t) { return std::exp(t) / t; };
  double error = 0;
  return boost::math::quadrature::gauss_kronrod<double, 31>::integrate(f, std::log(2.0), std::log(x), 30, 1e-13,
                                                                        &error);
}

struct ResidueComparisonRow {
  std::uint64_t row = 0;
  std::uint64_t first_term = 0;
  std::uint64_t pi_actual = 0;
  double li_over_phi = 0;
  double relative_error = 0; // |pi_actual - li_over_phi| / li_over_phi
};

struct ResidueComparison {
  unsigned k = 0;
  std::uint64_t x = 0;
  double li_x = 0;
  std::vector<ResidueComparisonRow> rows;
  double max_relative_error = 0;
  double mean_relative_error = 0;
};

/// Per uncolored row, the exact prime count against the equidistribution estimate Li(x) / phi(D_k).
inline ResidueComparison siegel_walfisz_compare(PrimeIndex k, std::uint64_t x, const ClassicalSieve& oracle,
                                                const Budget& budget = {},
                                                const PrimeTable& table = default_prime_table()) {
  if (x < 2) throw DomainError("cutoff must be >= 2");
  if (x > oracle.limit()) throw RangeError("oracle sieve does not reach the cutoff");
  const auto cls = classify_matrix(k, budget, table);
  const std::uint64_t d = cls.spec().difference();

  std::vector<std::uint32_t> per_row(d, 0);
  for (std::uint64_t v = 2; v <= x; ++v)
    if (oracle.is_prime(v)) ++per_row[(v - 2) % d];

  ResidueComparison out;
  out.k = k.value();
  out.x = x;
  out.li_x = li(static_cast<double>(x));
  const double expected = out.li_x / static_cast<double>(cls.summary().alpha);
  double sum = 0;
  for (auto row : cls.uncolored_rows()) {
    ResidueComparisonRow r{row, first_term(row), per_row[row - 1], expected, 0};
    r.relative_error = expected > 0 ? std::abs(static_cast<double>(r.pi_actual) - expected) / expected : 0;
    out.max_relative_error = std::max(out.max_relative_error, r.relative_error);
    sum += r.relative_error;
    out.rows.push_back(r);
  }
  out.mean_relative_error = out.rows.empty() ? 0 : sum / static_cast<double>(out.rows.size());
  return out;
}

inline ResidueComparison siegel_walfisz_compare(PrimeIndex k, std::uint64_t x, const Budget& budget = {},
                                                const PrimeTable& table = default_prime_table()) {
  detail::check_cutoff(x, budget);
  return siegel_walfisz_compare(k, x, ClassicalSieve(x), budget, table);
}

} // namespace primemat
