#include "ftap/concept_lab.hpp"

#include <array>
#include <sstream>

#include "ftap/errors.hpp"
#include "ftap/market.hpp"
#include "ftap/na_concepts.hpp"
#include "ftap/random_instances.hpp"

namespace ftap {

SemiSolidSet build_counterexample(const CounterexampleConfig &cfg) {
  if (cfg.truncation == 0) {
    throw ContractViolation("counterexample: truncation N must be at least 1");
  }
  auto space = SampleSpace::uniform(cfg.truncation, "k");
  std::vector<RandomVariable> gens;
  for (std::size_t k = 0; k < cfg.truncation; ++k) {
    gens.push_back(Rational(static_cast<std::int64_t>(k + 1)) * RandomVariable::indicator(space, k));
  }
  return SemiSolidSet(space, std::move(gens));
}

CounterexampleReport counterexample_report(const CounterexampleConfig &cfg) {
  auto set = build_counterexample(cfg);
  auto bound = is_bounded(set);
  CounterexampleReport r;
  r.truncation = cfg.truncation;
  r.sup_l2_squared = *bound.sup_l2_squared;
  r.linf_bound = *bound.linf_bound;
  for (std::size_t k = 0; k < cfg.truncation; ++k) {
    auto gauge = minkowski(set, RandomVariable::indicator(set.space(), k));
    if (gauge.is_infinite()) {
      throw InternalInconsistency("counterexample: indicator gauge is infinite");
    }
    r.indicator_gauges.push_back(gauge.value());
  }
  r.min_indicator_minkowski = r.indicator_gauges.front();
  for (const auto &g : r.indicator_gauges) r.min_indicator_minkowski = min(r.min_indicator_minkowski, g);
  r.zero_set_trivial = zero_set_trivial(set);
  return r;
}

bool mutated_membership(const SemiSolidSet &set, const RandomVariable &x, const Rational &scale) {
  return semisolid_member(set, x, scale * 2);
}

std::size_t LemmaSuiteReport::total_checks() const {
  std::size_t n = 0;
  for (const auto &t : tallies) n += t.checks;
  return n;
}

std::size_t LemmaSuiteReport::total_violations() const {
  std::size_t n = 0;
  for (const auto &t : tallies) n += t.violations;
  return n;
}

namespace {

enum Lemma : std::size_t {
  kSemiSolid,
  kConvex,
  kScaledFamily,
  kGaugeAtZero,
  kGaugeOnSet,
  kGaugeOffSet,
  kGaugeHomogeneous,
  kGaugeMonotone,
  kLevelSet,
  kZeroIntersection,
  kZeroGauge,
  kNullSet,
  kLemmaCount
};

constexpr std::array<const char *, kLemmaCount> kLemmaNames = {
    "B is semi-solid",
    "B is convex",
    "B_alpha = alpha B",
    "p_B(0) = 0",
    "p_B <= 1 on B",
    "p_B >= 1 on V+ \\ B",
    "p_B(a x) = a p_B(x)",
    "p_B monotone on B",
    "alpha B = {p_B <= alpha} n V+",
    "intersection of alpha B = {0} iff p_B > 0 on V+ \\ {0}",
    "p_B(x) = 0 iff x in every B_alpha",
    "B_0 inside every B_alpha",
};

std::string describe(const SemiSolidSet &set) {
  std::ostringstream os;
  os << "generators=[";
  for (std::size_t i = 0; i < set.generators().size(); ++i) {
    os << (i ? "," : "") << to_string(set.generators()[i]);
  }
  os << "] directions=[";
  for (std::size_t i = 0; i < set.directions().size(); ++i) {
    os << (i ? "," : "") << to_string(set.directions()[i]);
  }
  os << "]";
  return os.str();
}

class Harness {
public:
  Harness(LemmaSuiteReport &report, std::size_t instance)
      : report_(report), instance_(instance) {}

  void expect(Lemma lemma, bool ok, const std::function<std::string()> &detail) {
    auto &tally = report_.tallies[lemma];
    ++tally.checks;
    if (ok) {
      return;
    }
    ++tally.violations;
    if (!report_.first_violation) {
      report_.first_violation = Counterinstance{instance_, tally.lemma, detail()};
    }
  }

private:
  LemmaSuiteReport &report_;
  std::size_t instance_;
};

/// Random element of B: a sub-convex combination of the generators.
RandomVariable point_in(random::Engine &rng, const SemiSolidSet &set) {
  auto x = RandomVariable::zero(set.space());
  if (set.generators().empty()) {
    return x;
  }
  std::vector<Rational> lambda;
  Rational total;
  for (std::size_t g = 0; g < set.generators().size(); ++g) {
    lambda.push_back(random::nonneg_rational(rng, 4, 4));
    total += lambda.back();
  }
  Rational shrink = total > 1 ? random::positive_rational(rng, 4, 4) : Rational(1);
  if (total > 1) {
    shrink = min(shrink, Rational(1)) / total;
  }
  for (std::size_t g = 0; g < lambda.size(); ++g) {
    x += (lambda[g] * shrink) * set.generators()[g];
  }
  return x;
}

/// Random y with 0 <= y <= x.
RandomVariable below(random::Engine &rng, const RandomVariable &x) {
  std::vector<Rational> v;
  std::uniform_int_distribution<int> num(0, 4);
  for (std::size_t i = 0; i < x.size(); ++i) v.push_back(x[i] * Rational(num(rng), 4));
  return {x.space(), std::move(v)};
}

void check_generator_set(random::Engine &rng, const SemiSolidSet &set, const MembershipOracle &member,
                         Harness &h) {
  const auto space = set.space();
  auto x = point_in(rng, set);
  auto x2 = point_in(rng, set);
  auto y = below(rng, x);
  auto outside = random::nonneg_variable(rng, space, 6, 3);
  auto p = [&](const RandomVariable &v) { return minkowski(set, v); };
  auto ctx = [&](const std::string &what) {
    return [&, what] { return describe(set) + " " + what; };
  };

  h.expect(kSemiSolid, member(set, x, 1) && member(set, y, 1),
           ctx("x=" + to_string(x) + " y=" + to_string(y)));
  auto mid = Rational(1, 2) * (x + x2);
  h.expect(kConvex, member(set, mid, 1), ctx("midpoint=" + to_string(mid)));

  h.expect(kGaugeAtZero, p(RandomVariable::zero(space)) == ExtendedRational(Rational(0)),
           ctx("x=0"));
  auto px = p(x);
  h.expect(kGaugeOnSet, px <= ExtendedRational(Rational(1)) &&
                            p(y) <= ExtendedRational(Rational(1)),
           ctx("x=" + to_string(x) + " p=" + px.to_string()));
  auto pout = p(outside);
  if (!member(set, outside, 1)) {
    h.expect(kGaugeOffSet, pout >= ExtendedRational(Rational(1)),
             ctx("x=" + to_string(outside) + " p=" + pout.to_string()));
  }

  const Rational a = random::nonneg_rational(rng, 8, 3);
  auto pax = p(a * x);
  h.expect(kGaugeHomogeneous, pax.is_finite() && pax.value() == a * px.value(),
           ctx("x=" + to_string(x) + " a=" + a.to_string() + " p(ax)=" + pax.to_string()));
  h.expect(kGaugeMonotone, p(y) <= px, ctx("y=" + to_string(y) + " x=" + to_string(x)));

  // Level sets for alpha in (0, 1), including points exactly on and just
  // past the boundary p = alpha.
  Rational alpha(std::uniform_int_distribution<int>(1, 9)(rng), 10);
  std::vector<RandomVariable> probes{x, y, outside};
  if (px.is_finite() && px.value().sign() > 0) {
    RandomVariable on = (alpha / px.value()) * x;
    probes.push_back(on);
    probes.push_back(Rational(3, 2) * on);
  }
  for (const auto &v : probes) {
    bool in = member(set, v, alpha);
    bool level = p(v) <= ExtendedRational(alpha);
    h.expect(kLevelSet, in == level,
             ctx("x=" + to_string(v) + " alpha=" + alpha.to_string() +
                 " member=" + (in ? "1" : "0") + " p=" + p(v).to_string()));
  }

  // Intersection of alpha B over alpha > 0 is {0} exactly when no indicator
  // has zero gauge. An indicator outside some alpha B witnesses (ii).
  bool gauge_positive = zero_set_trivial(set);
  bool intersection_trivial = true;
  for (std::size_t w = 0; w < space->size(); ++w) {
    auto e = RandomVariable::indicator(space, w);
    auto pe = p(e);
    Rational probe_alpha = pe.is_infinite() ? Rational(1) : pe.value() / 2;
    if (probe_alpha.is_zero() || member(set, e, probe_alpha)) {
      intersection_trivial = false;
    }
  }
  h.expect(kZeroIntersection, gauge_positive == intersection_trivial,
           ctx(std::string("gauge_positive=") + (gauge_positive ? "1" : "0")));
}

void check_market(random::Engine &rng, const MembershipOracle &member, Harness &h) {
  random::MarketLimits limits{2, 4, 2, 6, 3};
  auto model = random::market(rng, limits);
  auto set = market_semisolid(model);
  const auto space = model.space();
  auto x = random::nonneg_variable(rng, space, 4, 2);
  Rational alpha = random::positive_rational(rng, 6, 4);

  bool direct = in_b_alpha(model, x, alpha);
  bool scaled = member(set, (Rational(1) / alpha) * x, 1);
  bool dilated = member(set, x, alpha);
  h.expect(kScaledFamily, direct == scaled && direct == dilated, [&] {
    return describe(set) + " x=" + to_string(x) + " alpha=" + alpha.to_string();
  });

  auto y = below(rng, x);
  if (member(set, x, 1)) {
    h.expect(kSemiSolid, member(set, y, 1),
             [&] { return describe(set) + " x=" + to_string(x) + " y=" + to_string(y); });
  }

  // Zero-intersection on a set that may be unbounded: gauge positivity on
  // indicators against a halving alpha grid.
  bool gauge_positive = zero_set_trivial(set);
  bool intersection_trivial = true;
  for (std::size_t w = 0; w < space->size(); ++w) {
    auto e = RandomVariable::indicator(space, w);
    auto pe = minkowski(set, e);
    if (pe.is_finite() && pe.value().is_zero()) {
      Rational a(1);
      bool always = true;
      for (int i = 0; i < 16 && always; ++i, a /= 2) always = member(set, e, a);
      if (always) intersection_trivial = false;
    } else if (pe.is_finite() && member(set, e, pe.value() / 2)) {
      intersection_trivial = false;
    }
  }
  h.expect(kZeroIntersection, gauge_positive == intersection_trivial && gauge_positive == check_na(model).holds,
           [&] { return describe(set) + " (market)"; });

  h.expect(kZeroGauge, zero_gauge_matches_intersection(model, x),
           [&] { return describe(set) + " x=" + to_string(x); });
  h.expect(kNullSet, b_zero_inside_intersection(model, {x, y}),
           [&] { return describe(set) + " probes x=" + to_string(x); });
}

} // namespace

LemmaSuiteReport verify_lemma_suite(std::uint64_t seed, std::size_t instances,
                                    const LemmaSuiteOptions &options) {
  if (instances == 0) {
    throw ContractViolation("verify_lemma_suite: instances must be at least 1");
  }
  MembershipOracle member = options.membership ? options.membership : MembershipOracle(semisolid_member);
  LemmaSuiteReport report;
  report.seed = seed;
  report.instances = instances;
  for (const char *name : kLemmaNames) report.tallies.push_back({name, 0, 0});

  for (std::size_t i = 0; i < instances; ++i) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(i)};
    random::Engine rng(seq);
    Harness h(report, i);
    const auto n = static_cast<std::size_t>(std::uniform_int_distribution<int>(1, 5)(rng));
    auto space = SampleSpace::uniform(n);
    auto set = random::semisolid(rng, space, 4, 6, 4);
    check_generator_set(rng, set, member, h);
    check_market(rng, member, h);
  }
  return report;
}

} // namespace ftap
