#include "ftap/na_concepts.hpp"

#include "ftap/separation.hpp"

namespace ftap {

bool ConceptVerdicts::all_agree() const {
  return na == na1 && na == nupbr && na == nfl_equiv && na == emm_exists &&
         na == separator_exists;
}

std::string ConceptVerdicts::to_string() const {
  auto b = [](bool v) { return v ? "true" : "false"; };
  return std::string("na=") + b(na) + " na1=" + b(na1) + " nupbr=" + b(nupbr) +
         " nfl_equiv=" + b(nfl_equiv) + " emm_exists=" + b(emm_exists) +
         " separator_exists=" + b(separator_exists);
}

AgreementError::AgreementError(ConceptVerdicts verdicts, MarketModel model)
    : InternalInconsistency("no-arbitrage verdicts disagree: " + verdicts.to_string()),
      verdicts_(verdicts), model_(std::move(model)) {}

ConceptVerdicts compute_verdicts(const MarketModel &model) {
  ConceptVerdicts v;
  v.na = check_na(model).holds;
  v.na1 = check_na1(model);
  v.nupbr = check_nupbr(model);

  auto closed_cone = payoff_cone(model, true);
  v.nfl_equiv = true;
  for (std::size_t w = 0; w < model.space()->size(); ++w) {
    if (cone_member(closed_cone, RandomVariable::indicator(model.space(), w))) {
      v.nfl_equiv = false;
      break;
    }
  }

  v.emm_exists = max_min_emm(model).has_value();

  auto strict = strict_separator(closed_cone);
  v.separator_exists = strict.report.has_value();
  if (strict.report) {
    // A separator of K0 - V+ is a martingale measure up to scale.
    auto q = functional_to_measure(strict.report->functional);
    if (!verify_emm(model, q.measure)) {
      throw InternalInconsistency("separator-derived measure is not an EMM");
    }
  }
  return v;
}

ConceptVerdicts full_verdict(const MarketModel &model) {
  auto v = compute_verdicts(model);
  if (!v.all_agree()) {
    throw AgreementError(v, model);
  }
  return v;
}

bool emm_budget_check(const MarketModel &model, const Measure &q) {
  auto budget = emm_budget(model, q);
  if (verify_emm(model, q) && budget != ExtendedRational(Rational(1))) {
    throw InternalInconsistency("emm_budget: EMM budget is " + budget.to_string() + ", not 1");
  }
  return budget.is_finite();
}

bool zero_gauge_matches_intersection(const MarketModel &model, const RandomVariable &x,
                                     int depth) {
  if (!is_nonneg(x)) {
    return true;
  }
  const Rational price = superreplication_price(model, x).price;
  const bool zero_gauge = price.is_zero();
  Rational alpha(1);
  for (int i = 0; i <= depth; ++i) {
    bool member = in_b_alpha(model, x, alpha);
    if (member != (price <= alpha)) {
      return false;
    }
    if (zero_gauge && !member) {
      return false;
    }
    alpha /= 2;
  }
  if (!zero_gauge) {
    if (!in_b_alpha(model, x, price) || in_b_alpha(model, x, price / 2)) {
      return false;
    }
  }
  return true;
}

bool b_zero_inside_intersection(const MarketModel &model,
                                const std::vector<RandomVariable> &probes) {
  std::vector<RandomVariable> samples{RandomVariable::zero(model.space())};
  auto na = check_na(model);
  if (na.payoff) {
    for (const Rational &k : {Rational(1), Rational(1, 2), Rational(3)}) {
      samples.push_back(k * *na.payoff);
    }
    for (const auto &probe : probes) {
      samples.push_back(inf(*na.payoff, pos_part(probe)));
    }
  }
  for (const auto &x : samples) {
    if (!in_b_zero(model, x)) {
      return false;
    }
    if (!superreplication_price(model, x).price.is_zero()) {
      return false;
    }
  }
  return true;
}

} // namespace ftap
