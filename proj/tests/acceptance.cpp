// One PASS/FAIL line per acceptance criterion. Exit status 0 iff every line passes.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <set>
#include <string>
#include <vector>

#include "oracle.hpp"
#include "primemat/primemat.hpp"

using namespace primemat;

namespace {

using clock_type = std::chrono::steady_clock;

struct Verdict {
  bool ok = true;
  std::string detail;
  void require(bool cond, const std::string& what) {
    if (!cond && ok) detail = what;
    ok = ok && cond;
  }
};

int failures = 0;

void criterion(const char* id, const char* title, double limit_seconds, const std::function<Verdict()>& body) {
  const auto t0 = clock_type::now();
  Verdict v;
  try {
    v = body();
  } catch (const std::exception& e) {
    v.ok = false;
    v.detail = std::string("exception: ") + e.what();
  }
  const double secs = std::chrono::duration<double>(clock_type::now() - t0).count();
  if (limit_seconds > 0 && secs > limit_seconds) {
    v.ok = false;
    if (v.detail.empty()) v.detail = "time limit " + std::to_string(limit_seconds) + " s exceeded";
  }
  failures += !v.ok;
  std::printf("%s %-4s %-44s %8.3f s%s%s\n", v.ok ? "PASS" : "FAIL", id, title, secs, v.detail.empty() ? "" : "  ",
              v.detail.c_str());
  std::fflush(stdout);
}

const std::uint64_t million = 1'000'000;

} // namespace

int main() {
  criterion("AC1", "uncolored rows equal phi(D_k), k=1..7", 10, [] {
    Verdict v;
    const std::uint64_t expected[] = {1, 2, 8, 48, 480, 5760, 92160};
    for (unsigned k = 1; k <= 7; ++k) {
      const auto s = classify_matrix(PrimeIndex(k)).summary();
      v.require(s.alpha == expected[k - 1], "alpha k=" + std::to_string(k));
      v.require(s.alpha == phi_primorial(PrimeIndex(k)).to_u64(), "product k=" + std::to_string(k));
      v.require(s.alpha == oracle::gcd_scan_counts(oracle::primorial(k)).alpha, "gcd scan k=" + std::to_string(k));
    }
    return v;
  });

  criterion("AC2", "twin-row pairs equal (p_k-2)!', k=2..7", 30, [] {
    Verdict v;
    const std::uint64_t expected[] = {1, 3, 15, 135, 1485, 22275};
    for (unsigned k = 2; k <= 7; ++k) {
      const auto n = twin_row_pairs(PrimeIndex(k)).size();
      v.require(n == expected[k - 2], "pairs k=" + std::to_string(k));
      v.require(n == twin_factorial(PrimeIndex(k)).to_u64(), "factorial k=" + std::to_string(k));
      v.require(n == oracle::gcd_scan_counts(oracle::primorial(k)).twin_pairs, "gcd scan k=" + std::to_string(k));
    }
    return v;
  });

  criterion("AC3", "transition bookkeeping, k=2..6", 60, [] {
    Verdict v;
    for (unsigned k = 2; k <= 6; ++k) {
      const auto t = transition_summary(PrimeIndex(k));
      IdentityLedger led;
      detail::transition_identities(led, t);
      for (const auto& f : led.failures()) v.require(false, f.tag + " k=" + std::to_string(k));
      v.require(t.current.omega == t.previous.omega * t.p_k, "omega step k=" + std::to_string(k));
    }
    return v;
  });

  criterion("AC4", "p_k-1 uncolored children per uncolored parent", 0, [] {
    Verdict v;
    for (unsigned k = 2; k <= 6; ++k) {
      const PrimeIndex pk(k);
      const MatrixSpec spec(pk);
      const auto p = spec.largest_prime();
      const auto parents = classify_matrix(pk.prev());
      const auto children = classify_matrix(pk);
      for (auto parent : parents.uncolored_rows()) {
        std::uint64_t uncolored = 0, colored = 0, divisible = 0;
        for (auto c : row_children(pk, parent).child_rows) {
          if (children.colored(c)) {
            ++colored;
            divisible += first_term(c) % p == 0;
          } else {
            ++uncolored;
          }
        }
        v.require(uncolored == p - 1 && colored == 1 && divisible == 1,
                  "k=" + std::to_string(k) + " parent row " + std::to_string(parent));
      }
      v.require(transition_summary(pk).children_violations == 0, "summary k=" + std::to_string(k));
    }
    return v;
  });

  const auto oracle_primes = oracle::primes(million);
  std::vector<TwinPair> oracle_twins;
  for (auto [a, b] : oracle::twins(million)) oracle_twins.push_back({a, b});

  for (unsigned k = 1; k <= 6; ++k) {
    const std::string title = "wheel sieve equals oracle at 10^6, k=" + std::to_string(k);
    criterion("AC5", title.c_str(), 10, [&] {
      Verdict v;
      const auto primes = primes_up_to(SieveConfig{PrimeIndex(k), million});
      v.require(primes == oracle_primes, "list mismatch");
      v.require(primes.size() == 78498, "pi(10^6) = " + std::to_string(primes.size()));
      return v;
    });
  }

  criterion("AC6", "twin completeness at 10^6, k=2..6", 0, [&] {
    Verdict v;
    for (unsigned k = 2; k <= 6; ++k) {
      const auto twins = twins_up_to(SieveConfig{PrimeIndex(k), million});
      v.require(twins.size() == 8169, "count k=" + std::to_string(k));
      v.require(twins == oracle_twins, "list k=" + std::to_string(k));
      v.require(twins.size() >= 2 && twins[0] == TwinPair{3, 5} && twins[1] == TwinPair{5, 7},
                "small pairs k=" + std::to_string(k));
    }
    return v;
  });

  const ClassicalSieve sieve(million);

  criterion("AC7", "Pi_k(10^6) = 78498 - k, k=1..6", 0, [&] {
    Verdict v;
    for (unsigned k = 1; k <= 6; ++k)
      v.require(density_report(PrimeIndex(k), million, sieve).Pi == 78498 - k, "k=" + std::to_string(k));
    return v;
  });

  criterion("AC8", "density recurrences exact, rho increasing", 0, [&] {
    Verdict v;
    const auto ladder = density_ladder(6, million, sieve);
    const auto& table = default_prime_table();
    for (unsigned k = 2; k <= 6; ++k) {
      const auto& prev = ladder[k - 1];
      const auto& cur = ladder[k];
      v.require(pi_recurrence(prev, cur).residual == 0, "pi step k=" + std::to_string(k));
      v.require(rho_recurrence(prev, cur, table.nth(PrimeIndex(k)), RowLengthMode::Idealized).residual == 0,
                "rho step k=" + std::to_string(k));
      v.require(cur.rho_av > prev.rho_av, "rho order k=" + std::to_string(k));
    }
    return v;
  });

  criterion("AC9", "every twin-row pair of A_4, A_5 holds a twin", 0, [] {
    Verdict v;
    const auto check = [&](unsigned k, std::uint64_t x, std::size_t pairs) {
      const PrimeIndex pk(k);
      const auto rows = twin_row_pairs(pk);
      v.require(rows.size() == pairs, "pair count k=" + std::to_string(k));
      const WheelSieve s(SieveConfig{pk, x});
      std::size_t least = SIZE_MAX;
      for (const auto& pr : rows) least = std::min(least, s.twins_in(pr).size());
      v.require(least >= 1, "empty pair at k=" + std::to_string(k));
      std::printf("     A_%u: %zu pairs below %llu, fewest twins in one pair = %zu\n", k, rows.size(),
                  static_cast<unsigned long long>(x), least);
    };
    check(4, million, 15);
    check(5, 10 * million, 135);
    return v;
  });

  criterion("AC10", "full identity ledger, k=1..6 at 10^6", 0, [] {
    Verdict v;
    const auto led = verify_identities({6, million});
    for (const auto& f : led.failures()) v.require(false, f.tag + " k=" + std::to_string(f.k));
    std::set<std::string> passed;
    for (const auto& c : led.checks())
      if (c.outcome == Outcome::Pass) passed.insert(c.tag);
    for (const char* t : {"uncolored-split", "row-total", "row-count-primorial", "uncolored-totient", "totient-ratio",
                          "twin-pairs-factorial", "twin-pairs-step", "single-from-single", "colored-from-single",
                          "colored-from-colored", "single-from-broken-pairs", "colored-from-broken-pairs",
                          "colored-total", "uncolored-total", "uncolored-decomposition", "row-total-step",
                          "children-partition", "uncolored-children", "surviving-twin-pairs", "prime-migration",
                          "pi-average-step", "rho-average-step", "rho-increasing", "sieve-oracle"})
      v.require(passed.count(t) == 1, std::string("missing ") + t);
    return v;
  });

  std::printf("%s: %d criteria failed\n", failures ? "FAIL" : "PASS", failures);
  return failures ? 1 : 0;
}
