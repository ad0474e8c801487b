// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

#include <chrono>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "ftap/cli.hpp"
#include "ftap/concept_lab.hpp"
#include "ftap/na_concepts.hpp"
#include "ftap/random_instances.hpp"
#include "ftap/separation.hpp"
#include "golden_cases.hpp"
#include "models.hpp"
#include "oracles.hpp"

using namespace ftap;

namespace {

const std::string kData = FTAP_TEST_DIR "/data/";
const std::string kGolden = FTAP_TEST_DIR "/golden/";

/// Every witness produced anywhere in the run is counted here.
struct WitnessLedger {
  std::size_t checked = 0;
  std::size_t failed = 0;
  std::string first_failure;

  void record(bool ok, const std::string &what) {
    ++checked;
    if (!ok && failed++ == 0) first_failure = what;
  }
};

WitnessLedger witnesses;
int failures = 0;
auto section_start = std::chrono::steady_clock::now();

void report(const std::string &name, bool pass, const std::string &detail) {
  auto now = std::chrono::steady_clock::now();
  double seconds = std::chrono::duration<double>(now - section_start).count();
  section_start = now;
  std::ostringstream took;
  took << std::fixed << std::setprecision(1) << seconds;
  std::cout << (pass ? "PASS" : "FAIL") << "  " << name << ": " << detail << " [" << took.str()
            << " s]" << std::endl;
  if (!pass) ++failures;
}

bool is_arbitrage(const MarketModel &m, const Strategy &xi) {
  auto g = terminal_gain(m, xi);
  return is_nonneg(g) && !is_zero(g);
}

/// Re-verifies the arbitrage, EMM and separator witnesses of one market.
void audit_witnesses(const MarketModel &m, std::size_t index) {
  const std::string tag = "market " + std::to_string(index);
  auto na = check_na(m);
  if (!na.holds) {
    witnesses.record(na.arbitrage && is_arbitrage(m, *na.arbitrage), tag + ": arbitrage");
  }
  auto emm = find_emm(m);
  if (emm.measure) {
    witnesses.record(verify_emm(m, *emm.measure), tag + ": EMM");
  } else {
    witnesses.record(emm.arbitrage && is_arbitrage(m, *emm.arbitrage), tag + ": EMM fallback arbitrage");
  }
  auto cone = payoff_cone(m, true);
  auto strict = strict_separator(cone);
  if (strict.report) {
    const auto &f = strict.report->functional;
    bool ok = verify_separator(cone, f) && f.is_strictly_positive() &&
              verify_emm(m, functional_to_measure(f).measure);
    witnesses.record(ok, tag + ": separator");
  } else {
    witnesses.record(strict.violating && cone_member(cone, *strict.violating), tag + ": violating direction");
  }
}

void ftap_cross_check() {
  random::Engine rng(20240101);
  const std::size_t count = 1000;
  std::size_t disagreements = 0, arbitrage = 0;
  std::string first;
  auto start = std::chrono::steady_clock::now();
  for (std::size_t i = 0; i < count; ++i) {
    auto m = random::market(rng, {3, 8, 2, 20, 20});
    try {
      auto v = full_verdict(m);
      if (!v.na) ++arbitrage;
    } catch (const AgreementError &e) {
      if (disagreements++ == 0) first = e.verdicts().to_string();
    }
  }
  double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  // Witness audit on the same corpus, outside the timed section.
  random::Engine replay(20240101);
  for (std::size_t i = 0; i < count; ++i) audit_witnesses(random::market(replay, {3, 8, 2, 20, 20}), i);

  std::ostringstream d;
  d << count << " markets (" << count - arbitrage << " NA, " << arbitrage << " arbitrage), "
    << disagreements << " disagreements, " << std::fixed << std::setprecision(2) << seconds << " s";
  if (!first.empty()) d << "; first: " << first;
  report("FTAP cross-check", disagreements == 0 && seconds < 60 && arbitrage > 0 && arbitrage < count,
         d.str());
}

void pricing_duality() {
  random::Engine rng(777);
  std::size_t models = 0, payoffs = 0, mismatches = 0;
  while (models < 200) {
    auto m = random::one_period_market(rng, 4, 2);
    if (!check_na(m).holds) continue;
    auto vertices = oracle::martingale_vertices(m);
    ++models;
    for (int k = 0; k < 5; ++k) {
      auto x = random::nonneg_variable(rng, m.space(), 20, 20);
      auto p = superreplication_price(m, x);
      ++payoffs;
      auto wealth = RandomVariable::constant(m.space(), p.price) + terminal_gain(m, p.strategy);
      witnesses.record(leq(x, wealth), "superhedge");
      if (vertices.empty()) {
        ++mismatches;
        continue;
      }
      Rational best = expectation(x, vertices[0]);
      for (const auto &q : vertices) best = max(best, expectation(x, q));
      if (best != p.price) ++mismatches;
    }
  }
  report("pricing duality", mismatches == 0,
         std::to_string(models) + " one-period NA models, " + std::to_string(payoffs) +
             " payoffs, " + std::to_string(mismatches) + " mismatches against vertex enumeration");
}

void binomial_golden() {
  using fixture::r;
  auto m = fixture::binomial(r(2), r(1, 2));
  auto q = find_emm(m);
  bool q_ok = q.measure && q.measure->weights == std::vector<Rational>{r(1, 3), r(2, 3)};
  if (q.measure) witnesses.record(verify_emm(m, *q.measure), "binomial EMM");
  auto call = superreplication_price(m, fixture::rv(m.space(), {r(1), r(0)}));
  bool price_ok = call.price == r(1, 3) && call.strategy.holding(1, 0, 0) == r(2, 3);
  report("binomial golden values", q_ok && price_ok,
         std::string("q = ") + (q.measure ? "(" + q.measure->weights[0].to_string() + ", " +
                                                q.measure->weights[1].to_string() + ")"
                                          : "none") +
             ", call price " + call.price.to_string() + ", hedge " +
             call.strategy.holding(1, 0, 0).to_string());
}

void counterexample() {
  bool ok = true;
  std::ostringstream d;
  for (std::size_t n : {1u, 3u, 10u, 100u}) {
    auto rep = counterexample_report({n});
    const Rational nn(static_cast<std::int64_t>(n));
    bool row = rep.sup_l2_squared == nn * nn && rep.min_indicator_minkowski == Rational(1) / nn &&
               rep.zero_set_trivial;
    ok = ok && row;
    d << "N=" << n << ": sup|x|^2=" << rep.sup_l2_squared << " min p=" << rep.min_indicator_minkowski
      << " trivial=" << (rep.zero_set_trivial ? "yes" : "no") << "; ";
  }
  report("counterexample report", ok, d.str());
}

void lemma_suite() {
  auto rep = verify_lemma_suite(0, 100);
  bool every_lemma_checked = true;
  for (const auto &t : rep.tallies) every_lemma_checked = every_lemma_checked && t.checks > 0;
  auto self = verify_lemma_suite(0, 100, {mutated_membership});
  std::string detail = std::to_string(rep.total_violations()) + " violations in " +
                       std::to_string(rep.total_checks()) + " checks over " +
                       std::to_string(rep.tallies.size()) + " statements; mutated oracle caught " +
                       std::to_string(self.total_violations()) + " times";
  if (rep.first_violation) detail += "; first: " + rep.first_violation->lemma + " " + rep.first_violation->detail;
  report("lemma suite", rep.total_violations() == 0 && every_lemma_checked && self.total_violations() > 0,
         detail);
}

void lp_certification() {
  std::mt19937_64 rng(9001);
  std::size_t optimal = 0, unbounded = 0, infeasible = 0, bad = 0;
  // Mixed relations first, then always-optimal boxed problems so that at
  // least 500 optima are compared against enumeration.
  const int mixed = 600, boxed = 500;
  for (int trial = 0; trial < mixed + boxed; ++trial) {
    auto p = trial < mixed ? oracle::random_lp(rng) : oracle::random_bounded_lp(rng);
    auto out = lp::solve(p);
    bool ok = lp::verify_outcome(p, out);
    auto verts = oracle::lp_vertices(p);
    switch (out.status) {
    case lp::Status::Optimal: {
      ++optimal;
      if (verts.empty()) {
        ok = false;
        break;
      }
      Rational best = lp::dot(p.objective, verts[0]);
      for (const auto &v : verts) {
        Rational val = lp::dot(p.objective, v);
        best = p.sense == lp::Sense::Maximize ? max(best, val) : min(best, val);
      }
      ok = ok && best == *out.objective_value;
      break;
    }
    case lp::Status::Unbounded:
      ++unbounded;
      ok = ok && !verts.empty();
      break;
    case lp::Status::Infeasible:
      ++infeasible;
      ok = ok && verts.empty();
      break;
    }
    ok = ok && lp::solve(p).primal == out.primal;
    if (!ok) ++bad;
  }
  report("LP certification", bad == 0 && optimal >= 500,
         std::to_string(mixed + boxed) + " random LPs (" + std::to_string(optimal) + " optimal, " + std::to_string(unbounded) +
             " unbounded, " + std::to_string(infeasible) + " infeasible), " + std::to_string(bad) +
             " failures");
}

std::string slurp(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void cli_contract() {
  std::size_t runs = 0, bad = 0;
  std::string first;
  auto fail = [&](const std::string &what) {
    if (bad++ == 0) first = what;
  };
  auto run = [&](std::vector<std::string> args, std::string &out) {
    std::ostringstream o, e;
    int code = cli::run(args, o, e);
    out = o.str();
    ++runs;
    return code;
  };
  for (const auto &c : golden::json_cases()) {
    auto args = golden::resolve(c.args, kData);
    args.insert(args.begin(), "--json");
    std::string a, b;
    int code = run(args, a);
    run(args, b);
    if (code != c.exit_code) fail(c.file + ": exit " + std::to_string(code));
    if (a != b) fail(c.file + ": output not byte-stable");
    if (a != slurp(kGolden + c.file)) fail(c.file + ": differs from golden");
  }
  for (const auto &c : golden::text_cases()) {
    std::string out;
    int code = run(golden::resolve(c.args, kData), out);
    if (code != c.exit_code || out != slurp(kGolden + c.file)) fail(c.file);
  }
  for (const auto &args : golden::input_error_cases()) {
    std::string out;
    if (run(golden::resolve(args, kData), out) != 2) fail(args[0] + " input error exit");
  }
  std::string out;
  if (run({"verify", "--seed", "0", "--instances", "20", "--self-test"}, out) != 1) fail("self-test exit");
  report("CLI contract", bad == 0,
         std::to_string(runs) + " invocations, " + std::to_string(bad) + " contract breaks" +
             (first.empty() ? "" : "; first: " + first));
}

} // namespace

int main() {
  ftap_cross_check();
  pricing_duality();
  binomial_golden();
  counterexample();
  lemma_suite();
  lp_certification();
  cli_contract();
  report("witness soundness", witnesses.failed == 0 && witnesses.checked > 0,
         std::to_string(witnesses.checked) + " witnesses re-verified, " +
             std::to_string(witnesses.failed) + " failures" +
             (witnesses.first_failure.empty() ? "" : "; first: " + witnesses.first_failure));
  std::cout << (failures == 0 ? "all criteria passed" : std::to_string(failures) + " criteria failed")
            << std::endl;
  return failures == 0 ? 0 : 1;
}
