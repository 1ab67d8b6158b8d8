#pragma once

// The exact count and density identities of the matrix construction, each evaluated from two
// independently computed sides.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "primemat/classifier.hpp"
#include "primemat/density.hpp"
#include "primemat/primorial.hpp"
#include "primemat/redistribution.hpp"
#include "primemat/sieve.hpp"

namespace primemat {

enum class Outcome { Pass, Fail, Skipped };

inline const char* outcome_name(Outcome o) {
  switch (o) {
  case Outcome::Pass: return "pass";
  case Outcome::Fail: return "FAIL";
  case Outcome::Skipped: return "skipped";
  }
  return "?";
}

struct IdentityCheck {
  std::string tag;
  unsigned k = 0;
  Rational lhs;
  Rational rhs;
  Rational residual;
  Outcome outcome = Outcome::Skipped;
  std::string note;
};

struct VerifyOptions {
  unsigned k_max = 1;
  std::uint64_t x = 2;
  Budget budget{};
  unsigned threads = 1;
  std::uint64_t segment_size = std::uint64_t{1} << 20;
};

/// Every identity below is listed with a stable tag:
///   uncolored-split            alpha = alpha_single + 2 * twin_pairs
///   row-total                  omega = alpha + beta
///   row-count-primorial        omega = D_k
///   uncolored-totient          alpha = (p_1 - 1)...(p_k - 1)
///   totient-ratio              phi(D_k) / phi(D_{k-1}) = p_k - 1
///   twin-pairs-factorial       twin_pairs = (p_2 - 2)...(p_k - 2)
///   twin-pairs-step            twin_pairs(k) = twin_pairs(k-1) * (p_k - 2)          (k >= 3)
///   single-from-single         single children of single parents = alpha_single(k-1) * (p_k - 1)   (k >= 3)
///   colored-from-single        beta_s = alpha_single(k-1)
///   colored-from-colored       beta_b = beta(k-1) * p_k
///   single-from-broken-pairs   alpha_t = 2 * twin_pairs(k-1)
///   colored-from-broken-pairs  beta_t = 2 * twin_pairs(k-1)
///   colored-total              beta = beta_s + beta_b + beta_t = alpha_single(k-1) + 2 twin(k-1) + beta(k-1) p_k
///   uncolored-total            alpha = alpha_single(k-1)(p_k - 1) + 2 twin(k-1) p_k - 2 twin(k-1)
///   uncolored-decomposition    alpha_single(k) = single-from-single + alpha_t
///   row-total-step             omega = (alpha_single(k-1) + 2 twin(k-1) + beta(k-1)) p_k = omega(k-1) p_k
///   children-partition         children of all parents cover A_k exactly once
///   uncolored-children         each uncolored parent: p_k - 1 uncolored children, one colored child divisible by p_k
///   surviving-twin-pairs       child twin pairs of parent pairs = twin_pairs(k-1) * (p_k - 2)
///   prime-migration            Pi_k = Pi_{k-1} - 1 = pi(x) - k
///   pi-average-step            pi_av(k) = pi_av(k-1) phi(D_{k-1}) / phi(D_k) - 1 / phi(D_k)
///   rho-average-step           rho_av(k) = rho_av(k-1) p_k / (p_k - 1) - 1 / (phi(D_k) m_av(k)), m_av = x / D_k
///   rho-increasing             rho_av(k) > rho_av(k-1)                              (x >= D_k)
///   sieve-oracle               wheel sieve output equals the classical sieve
class IdentityLedger {
public:
  const std::vector<IdentityCheck>& checks() const noexcept { return checks_; }

  bool all_hold() const {
    for (const auto& c : checks_)
      if (c.outcome == Outcome::Fail) return false;
    return true;
  }

  std::vector<IdentityCheck> failures() const {
    std::vector<IdentityCheck> out;
    for (const auto& c : checks_)
      if (c.outcome == Outcome::Fail) out.push_back(c);
    return out;
  }

  void equal(std::string tag, unsigned k, const Rational& lhs, const Rational& rhs, std::string note = {}) {
    const Rational diff = lhs - rhs;
    checks_.push_back({std::move(tag), k, lhs, rhs, diff, diff == 0 ? Outcome::Pass : Outcome::Fail, std::move(note)});
  }

  void equal(std::string tag, unsigned k, std::uint64_t lhs, std::uint64_t rhs, std::string note = {}) {
    equal(std::move(tag), k, make_rational(lhs), make_rational(rhs), std::move(note));
  }

  void holds(std::string tag, unsigned k, bool ok, const Rational& lhs, const Rational& rhs, std::string note = {}) {
    checks_.push_back({std::move(tag), k, lhs, rhs, lhs - rhs, ok ? Outcome::Pass : Outcome::Fail, std::move(note)});
  }

  void skip(std::string tag, unsigned k, std::string why) {
    checks_.push_back({std::move(tag), k, 0, 0, 0, Outcome::Skipped, std::move(why)});
  }

private:
  std::vector<IdentityCheck> checks_;
};

namespace detail {

inline void count_identities(IdentityLedger& led, const ClassificationSummary& s, const PrimeTable& table) {
  const PrimeIndex k(s.k);
  led.equal("uncolored-split", s.k, s.alpha, s.alpha_single + 2 * s.alpha_twin_pairs);
  led.equal("row-total", s.k, s.omega, s.alpha + s.beta);
  led.equal("row-count-primorial", s.k, s.omega, primorial(k, table).to_u64());
  led.equal("uncolored-totient", s.k, s.alpha, phi_primorial(k, table).to_u64());
  if (s.k >= 2) {
    led.equal("totient-ratio", s.k,
              make_rational(phi_primorial(k, table).to_u64(), phi_primorial(k.prev(), table).to_u64()),
              make_rational(table.nth(k) - 1));
    led.equal("twin-pairs-factorial", s.k, s.alpha_twin_pairs, twin_factorial(k, table).to_u64());
  } else {
    led.skip("totient-ratio", s.k, "k >= 2 required");
    led.skip("twin-pairs-factorial", s.k, "k >= 2 required");
  }
}

inline void transition_identities(IdentityLedger& led, const TransitionSummary& t) {
  const auto& prev = t.previous;
  const auto& cur = t.current;
  const std::uint64_t p = t.p_k;
  const unsigned k = t.k;
  if (k >= 3) {
    led.equal("twin-pairs-step", k, cur.alpha_twin_pairs, prev.alpha_twin_pairs * (p - 2));
    led.equal("single-from-single", k, t.alpha_s, prev.alpha_single * (p - 1));
  } else {
    led.skip("twin-pairs-step", k, "k >= 3 required (A_1 has no twin-row pairs)");
    led.skip("single-from-single", k, "k >= 3 required (the single row of A_1 spawns a twin pair)");
  }
  led.equal("colored-from-single", k, t.beta_s, prev.alpha_single);
  led.equal("colored-from-colored", k, t.beta_b, prev.beta * p);
  led.equal("single-from-broken-pairs", k, t.alpha_t, 2 * prev.alpha_twin_pairs);
  led.equal("colored-from-broken-pairs", k, t.beta_t, 2 * prev.alpha_twin_pairs);
  led.equal("colored-total", k, cur.beta, t.beta_s + t.beta_b + t.beta_t, "enumerated origins");
  led.equal("colored-total", k, cur.beta, prev.alpha_single + 2 * prev.alpha_twin_pairs + prev.beta * p,
            "previous-order counts");
  led.equal("uncolored-total", k, cur.alpha,
            prev.alpha_single * (p - 1) + 2 * prev.alpha_twin_pairs * p - 2 * prev.alpha_twin_pairs);
  led.equal("uncolored-decomposition", k, cur.alpha_single, t.alpha_s + t.alpha_t);
  led.equal("row-total-step", k, cur.alpha + cur.beta,
            prev.alpha_single * p + 2 * prev.alpha_twin_pairs * p + prev.beta * p);
  led.equal("row-total-step", k, cur.omega, prev.omega * p, "omega(k-1) * p_k");
  led.holds("children-partition", k, t.children_partition, make_rational(cur.omega), make_rational(prev.omega * p));
  led.equal("uncolored-children", k, t.children_violations, 0, std::to_string(t.uncolored_parents) + " parents checked");
  led.equal("surviving-twin-pairs", k, t.surviving_twin_pairs, prev.alpha_twin_pairs * (p - 2));
}

inline void density_identities(IdentityLedger& led, const DensityReport& prev, const DensityReport& cur,
                               std::uint64_t p_k, std::uint64_t pi_x) {
  const unsigned k = cur.k;
  if (cur.x < p_k) {
    for (auto tag : {"prime-migration", "pi-average-step", "rho-average-step"}) led.skip(tag, k, "x >= p_k required");
    return;
  }
  led.equal("prime-migration", k, cur.Pi, prev.Pi - 1, "Pi_{k-1} - 1");
  led.equal("prime-migration", k, cur.Pi, pi_x - k, "pi(x) - k");
  const auto pi_step = pi_recurrence(prev, cur);
  led.equal("pi-average-step", k, pi_step.lhs, pi_step.rhs);
  const auto rho_step = rho_recurrence(prev, cur, p_k, RowLengthMode::Idealized);
  led.equal("rho-average-step", k, rho_step.lhs, rho_step.rhs, "idealized m_av = x / D_k");
  if (k < 2) return;
  if (cur.x < cur.difference) led.skip("rho-increasing", k, "x >= D_k required");
  else led.holds("rho-increasing", k, cur.rho_av > prev.rho_av, cur.rho_av, prev.rho_av);
}

} // namespace detail

/// Runs the whole identity suite for k = 1..k_max at cutoff x.
inline IdentityLedger verify_identities(const VerifyOptions& opt, const PrimeTable& table = default_prime_table()) {
  if (opt.k_max < 1) throw DomainError("k_max must be >= 1");
  detail::check_enumeration_budget(PrimeIndex(opt.k_max), opt.budget, table);
  detail::check_cutoff(opt.x, opt.budget);

  IdentityLedger led;
  const ClassicalSieve oracle(opt.x);
  const auto oracle_primes = oracle.primes();
  const std::uint64_t pi_x = oracle_primes.size();
  auto prev_density = natural_row_report(opt.x, oracle);

  for (unsigned kv = 1; kv <= opt.k_max; ++kv) {
    const PrimeIndex k(kv);
    detail::count_identities(led, classify_matrix(k, opt.budget, table).summary(), table);
    if (kv >= 2) {
      detail::transition_identities(led, transition_summary(k, opt.budget, table));
    } else {
      for (auto tag : {"twin-pairs-step", "single-from-single", "colored-from-single", "colored-from-colored",
                       "single-from-broken-pairs", "colored-from-broken-pairs", "colored-total", "uncolored-total",
                       "uncolored-decomposition", "row-total-step", "children-partition", "uncolored-children",
                       "surviving-twin-pairs"})
        led.skip(tag, kv, "k >= 2 required (A_{k-1} must exist)");
    }
    const auto density = density_report(k, opt.x, oracle, opt.budget, table);
    detail::density_identities(led, prev_density, density, table.nth(k), pi_x);
    prev_density = density;

    const SieveConfig cfg{k, opt.x, opt.segment_size, opt.threads};
    const auto wheel = primes_up_to(cfg, opt.budget, table);
    led.holds("sieve-oracle", kv, wheel == oracle_primes, make_rational(wheel.size()),
              make_rational(oracle_primes.size()), "prime counts; lists compared element-wise");
  }
  return led;
}

} // namespace primemat
