#pragma once

// Command-line front end. Exit codes: 0 success, 1 an identity failed, 2 usage or resource error.

#include <chrono>
#include <cstdint>
#include <map>
#include <ostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "primemat/classifier.hpp"
#include "primemat/density.hpp"
#include "primemat/errors.hpp"
#include "primemat/identities.hpp"
#include "primemat/matrix.hpp"
#include "primemat/redistribution.hpp"
#include "primemat/report.hpp"
#include "primemat/sieve.hpp"

namespace primemat::cli {

constexpr int exit_ok = 0;
constexpr int exit_identity_failure = 1;
constexpr int exit_usage = 2;

struct Options {
  unsigned k = 1;
  unsigned k_max = 1;
  std::uint64_t x = 2;
  report::Format format = report::Format::Table;
  bool verbose = false;
  bool compare_li = false;
  Budget budget{};
  std::uint64_t segment_size = std::uint64_t{1} << 20;
  unsigned threads = 1;
};

/// A rendered envelope plus the exit code it implies.
struct CommandResult {
  report::ReportEnvelope envelope;
  int exit_code = exit_ok;
  std::vector<std::string> diagnostics;
};

namespace detail {

using report::Cell;
using report::Section;

inline std::vector<std::pair<std::string, std::string>> params(std::initializer_list<std::pair<std::string, std::string>> p) {
  return {p};
}

inline Cell cell(std::uint64_t v) { return v; }

inline Section summary_section(const std::string& name, const ClassificationSummary& s) {
  Section sec{name, {"k", "alpha", "beta", "alpha_single", "alpha_twin_pairs", "omega"}, {}};
  sec.add({cell(s.k), cell(s.alpha), cell(s.beta), cell(s.alpha_single), cell(s.alpha_twin_pairs), cell(s.omega)});
  return sec;
}

inline Section ledger_section(const IdentityLedger& led) {
  Section sec{"identities", {"k", "identity", "lhs", "rhs", "residual", "status", "note"}, {}};
  for (const auto& c : led.checks())
    sec.add({cell(c.k), c.tag, c.lhs, c.rhs, c.residual, std::string(outcome_name(c.outcome)), c.note});
  return sec;
}

inline void report_failures(const IdentityLedger& led, CommandResult& out) {
  for (const auto& f : led.failures())
    out.diagnostics.push_back("identity failed: " + f.tag + " at k=" + std::to_string(f.k));
  if (!led.all_hold()) out.exit_code = exit_identity_failure;
}

inline SieveConfig sieve_config(const Options& o) { return {PrimeIndex(o.k), o.x, o.segment_size, o.threads}; }

inline void warn_config(const Options& o, CommandResult& out) {
  if (auto w = config_warning(sieve_config(o))) out.diagnostics.push_back("warning: " + *w);
}

} // namespace detail

inline CommandResult cmd_classify(const Options& o) {
  const auto cls = classify_matrix(PrimeIndex(o.k), o.budget);
  CommandResult out;
  out.envelope = {"classify", detail::params({{"k", std::to_string(o.k)}}), {}};
  out.envelope.sections.push_back(detail::summary_section("summary", cls.summary()));
  if (o.verbose) {
    report::Section rows{"rows", {"row", "first_term", "class", "partner_row"}, {}};
    for (std::uint64_t r = 1; r <= cls.spec().row_count(); ++r) {
      const auto d = cls.descriptor(r);
      rows.add({d.row, d.first_term, std::string(tag_name(d.cls.tag)),
                d.cls.partner_row ? report::Cell(*d.cls.partner_row) : report::Cell(std::string{})});
    }
    out.envelope.sections.push_back(std::move(rows));
  }
  return out;
}

inline CommandResult cmd_verify(const Options& o) {
  const auto led = verify_identities({o.k_max, o.x, o.budget, o.threads, o.segment_size});
  CommandResult out;
  out.envelope = {"verify", detail::params({{"k_max", std::to_string(o.k_max)}, {"x", std::to_string(o.x)}}), {}};
  out.envelope.sections.push_back(detail::ledger_section(led));
  std::uint64_t passed = 0, failed = 0, skipped = 0;
  for (const auto& c : led.checks()) {
    passed += c.outcome == primemat::Outcome::Pass;
    failed += c.outcome == primemat::Outcome::Fail;
    skipped += c.outcome == primemat::Outcome::Skipped;
  }
  report::Section sum{"summary", {"passed", "failed", "skipped"}, {}};
  sum.add({passed, failed, skipped});
  out.envelope.sections.push_back(std::move(sum));
  detail::report_failures(led, out);
  return out;
}

inline CommandResult cmd_twins(const Options& o) {
  CommandResult out;
  detail::warn_config(o, out);
  const WheelSieve sieve(detail::sieve_config(o), o.budget);
  const auto twins = sieve.twins();
  out.envelope = {"twins", detail::params({{"k", std::to_string(o.k)}, {"x", std::to_string(o.x)}}), {}};
  report::Section sum{"summary", {"k", "x", "count"}, {}};
  sum.add({detail::cell(o.k), o.x, static_cast<std::uint64_t>(twins.size())});
  report::Section pairs{"pairs", {"low", "high", "row_low", "row_high", "column"}, {}};
  for (const auto& t : twins) {
    const auto lo = locate(sieve.spec(), t.low);
    const auto hi = locate(sieve.spec(), t.high);
    pairs.add({t.low, t.high, lo.row, hi.row, lo.column});
  }
  out.envelope.sections.push_back(std::move(sum));
  out.envelope.sections.push_back(std::move(pairs));
  return out;
}

inline CommandResult cmd_primes(const Options& o) {
  CommandResult out;
  detail::warn_config(o, out);
  const auto primes = primes_up_to(detail::sieve_config(o), o.budget);
  out.envelope = {"primes", detail::params({{"k", std::to_string(o.k)}, {"x", std::to_string(o.x)}}), {}};
  report::Section sum{"summary", {"k", "x", "count"}, {}};
  sum.add({detail::cell(o.k), o.x, static_cast<std::uint64_t>(primes.size())});
  report::Section list{"primes", {"prime"}, {}};
  for (auto p : primes) list.add({p});
  out.envelope.sections.push_back(std::move(sum));
  out.envelope.sections.push_back(std::move(list));
  return out;
}

inline CommandResult cmd_density(const Options& o) {
  const PrimeIndex k(o.k);
  primemat::detail::check_cutoff(o.x, o.budget);
  const ClassicalSieve oracle(o.x);
  const auto prev = o.k == 1 ? natural_row_report(o.x, oracle) : density_report(k.prev(), o.x, oracle, o.budget);
  const auto rep = density_report(k, o.x, oracle, o.budget);

  CommandResult out;
  for (const auto& w : rep.warnings) out.diagnostics.push_back("warning: " + w);
  out.envelope = {"density", detail::params({{"k", std::to_string(o.k)}, {"x", std::to_string(o.x)}}), {}};
  report::Section r{"report",
                    {"k", "x", "difference", "phi", "Pi", "N", "M", "pi_av", "n_av", "m_av_idealized", "m_av_exact",
                     "rho_av_idealized", "rho_av_exact"},
                    {}};
  r.add({detail::cell(rep.k), rep.x, rep.difference, rep.phi, rep.Pi, rep.N, rep.M, rep.pi_av, rep.n_av,
         rep.m_av_ideal, rep.m_av_exact, rep.rho_av, rep.rho_av_exact});
  out.envelope.sections.push_back(std::move(r));

  report::Section rec{"recurrences", {"identity", "mode", "lhs", "rhs", "residual"}, {}};
  const auto pi_step = pi_recurrence(prev, rep);
  rec.add({std::string("pi-average-step"), std::string("-"), pi_step.lhs, pi_step.rhs, pi_step.residual});
  for (auto mode : {RowLengthMode::Idealized, RowLengthMode::Exact}) {
    const auto step = rho_recurrence(prev, rep, default_prime_table().nth(k), mode);
    rec.add({std::string("rho-average-step"), std::string(mode_name(mode)), step.lhs, step.rhs, step.residual});
  }
  out.envelope.sections.push_back(std::move(rec));

  if (o.compare_li) {
    const auto cmp = siegel_walfisz_compare(k, o.x, oracle, o.budget);
    report::Section s{"li_comparison_summary", {"li_x", "li_over_phi", "rows", "max_relative_error", "mean_relative_error"}, {}};
    s.add({cmp.li_x, cmp.rows.empty() ? 0.0 : cmp.rows.front().li_over_phi, static_cast<std::uint64_t>(cmp.rows.size()),
           cmp.max_relative_error, cmp.mean_relative_error});
    report::Section t{"li_comparison", {"row", "first_term", "pi_actual", "li_over_phi", "relative_error"}, {}};
    for (const auto& row : cmp.rows) t.add({row.row, row.first_term, row.pi_actual, row.li_over_phi, row.relative_error});
    out.envelope.sections.push_back(std::move(s));
    out.envelope.sections.push_back(std::move(t));
  }
  return out;
}

inline CommandResult cmd_transition(const Options& o) {
  const auto t = transition_summary(PrimeIndex(o.k), o.budget);
  IdentityLedger led;
  primemat::detail::transition_identities(led, t);

  CommandResult out;
  out.envelope = {"transition", detail::params({{"k", std::to_string(o.k)}}), {}};
  report::Section s{"summary",
                    {"k", "p_k", "beta_s", "beta_b", "beta_t", "alpha_t", "alpha_s", "surviving_twin_pairs",
                     "uncolored_parents", "children_violations", "children_partition"},
                    {}};
  s.add({detail::cell(t.k), t.p_k, t.beta_s, t.beta_b, t.beta_t, t.alpha_t, t.alpha_s, t.surviving_twin_pairs,
         t.uncolored_parents, t.children_violations, std::string(t.children_partition ? "true" : "false")});
  out.envelope.sections.push_back(std::move(s));
  out.envelope.sections.push_back(detail::summary_section("previous", t.previous));
  out.envelope.sections.push_back(detail::summary_section("current", t.current));
  out.envelope.sections.push_back(detail::ledger_section(led));
  if (o.verbose) {
    report::Section b{"broken_pairs",
                      {"parent_low", "parent_high", "child_low", "child_high", "colored_row", "uncolored_row", "uncolored_class"},
                      {}};
    for (const auto& bp : t.broken)
      b.add({bp.parent.low, bp.parent.high, bp.child.low, bp.child.high, bp.colored_row, bp.uncolored_row,
             std::string(tag_name(bp.uncolored_tag))});
    out.envelope.sections.push_back(std::move(b));
  }
  detail::report_failures(led, out);
  return out;
}

inline CommandResult cmd_bench(const Options& o) {
  using clock = std::chrono::steady_clock;
  const auto ms = [](clock::duration d) { return std::chrono::duration<double, std::milli>(d).count(); };
  primemat::detail::check_cutoff(o.x, o.budget);

  CommandResult out;
  detail::warn_config(o, out);
  const auto t0 = clock::now();
  const auto wheel = primes_up_to(detail::sieve_config(o), o.budget);
  const auto t1 = clock::now();
  const auto classical = ClassicalSieve(o.x).primes();
  const auto t2 = clock::now();

  out.envelope = {"bench",
                  detail::params({{"k", std::to_string(o.k)}, {"x", std::to_string(o.x)}, {"threads", std::to_string(o.threads)}}),
                  {}};
  report::Section s{"timings", {"method", "count", "milliseconds"}, {}};
  s.add({std::string("wheel"), static_cast<std::uint64_t>(wheel.size()), ms(t1 - t0)});
  s.add({std::string("classical"), static_cast<std::uint64_t>(classical.size()), ms(t2 - t1)});
  out.envelope.sections.push_back(std::move(s));
  if (wheel != classical) {
    out.diagnostics.push_back("wheel sieve disagrees with the classical sieve");
    out.exit_code = exit_identity_failure;
  }
  return out;
}

/// Parses argv, runs one command, renders to out; diagnostics go to err.
inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Primorial residue-class matrices: row classes, redistribution audits, wheel sieves, densities"};
  app.require_subcommand(1);
  Options o;

  const std::map<std::string, report::Format> formats{
      {"table", report::Format::Table}, {"csv", report::Format::Csv}, {"json", report::Format::Json}};

  const auto common = [&](CLI::App* sub) {
    sub->add_option("--format", o.format, "Output format")->transform(CLI::CheckedTransformer(formats, CLI::ignore_case));
    sub->add_flag("--verbose", o.verbose, "Emit full tables");
    sub->add_option("--max-rows", o.budget.max_rows, "Row enumeration budget")->capture_default_str();
    sub->add_option("--max-x", o.budget.max_x, "Cutoff budget")->capture_default_str();
    sub->add_option("--segment-size", o.segment_size, "Integers per sieving window")->check(CLI::PositiveNumber);
    sub->add_option("--threads", o.threads, "Sieving threads (0 = hardware concurrency)");
  };
  const auto need_k = [&](CLI::App* sub) {
    sub->add_option("--k", o.k, "Matrix order")->required()->check(CLI::PositiveNumber);
  };
  const auto need_x = [&](CLI::App* sub) {
    sub->add_option("--x", o.x, "Cutoff")->required()->check(CLI::Range(std::uint64_t{2}, std::numeric_limits<std::uint64_t>::max()));
  };

  auto* classify = app.add_subcommand("classify", "Row classes of A_k");
  need_k(classify);
  common(classify);
  auto* verify = app.add_subcommand("verify", "Check every count and density identity for k = 1..k_max");
  verify->add_option("--k-max", o.k_max, "Largest order")->required()->check(CLI::PositiveNumber);
  need_x(verify);
  common(verify);
  auto* twins = app.add_subcommand("twins", "Twin primes up to x via twin-row pairs");
  need_k(twins);
  need_x(twins);
  common(twins);
  auto* primes = app.add_subcommand("primes", "Primes up to x via the wheel sieve");
  need_k(primes);
  need_x(primes);
  common(primes);
  auto* density = app.add_subcommand("density", "Prime densities in the uncolored rows of A_k");
  need_k(density);
  need_x(density);
  density->add_flag("--compare-li", o.compare_li, "Compare each row with Li(x) / phi(D_k)");
  common(density);
  auto* transition = app.add_subcommand("transition", "Audit the redistribution of rows from A_{k-1} to A_k");
  need_k(transition);
  common(transition);
  auto* bench = app.add_subcommand("bench", "Time the wheel sieve against a classical sieve");
  need_k(bench);
  need_x(bench);
  common(bench);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return exit_ok;
  } catch (const CLI::ParseError& e) {
    err << e.what() << '\n';
    return exit_usage;
  }

  try {
    CommandResult result;
    if (classify->parsed()) result = cmd_classify(o);
    else if (verify->parsed()) result = cmd_verify(o);
    else if (twins->parsed()) result = cmd_twins(o);
    else if (primes->parsed()) result = cmd_primes(o);
    else if (density->parsed()) result = cmd_density(o);
    else if (transition->parsed()) result = cmd_transition(o);
    else result = cmd_bench(o);
    report::render(result.envelope, o.format, out);
    for (const auto& d : result.diagnostics) err << d << '\n';
    return result.exit_code;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return exit_usage;
  }
}

} // namespace primemat::cli
