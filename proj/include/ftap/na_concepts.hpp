#pragma once

#include <string>

#include "ftap/errors.hpp"
#include "ftap/market.hpp"

namespace ftap {

/// The no-arbitrage verdicts of a finite market, each computed by its own
/// route. On a finite sample space all six must coincide.
struct ConceptVerdicts {
  bool na = false;
  bool na1 = false;
  bool nupbr = false;
  /// NFLVR / NFLBR / NFL collapse to one flag: the cone K0 - V+ is polyhedral,
  /// hence closed, and meets V+ only at 0. Decided per outcome indicator.
  bool nfl_equiv = false;
  bool emm_exists = false;
  bool separator_exists = false;

  bool all_agree() const;
  std::string to_string() const;
  friend bool operator==(const ConceptVerdicts &, const ConceptVerdicts &) = default;
};

class AgreementError : public InternalInconsistency {
public:
  AgreementError(ConceptVerdicts verdicts, MarketModel model);
  const ConceptVerdicts &verdicts() const { return verdicts_; }
  const MarketModel &model() const { return model_; }

private:
  ConceptVerdicts verdicts_;
  MarketModel model_;
};

/// Throws AgreementError when the routes disagree.
ConceptVerdicts full_verdict(const MarketModel &model);

/// Same computation without the agreement assertion.
ConceptVerdicts compute_verdicts(const MarketModel &model);

/// emm_budget(model, q) is finite; when q is an EMM it must equal 1 exactly
/// (InternalInconsistency otherwise).
bool emm_budget_check(const MarketModel &model, const Measure &q);

/// The set of zero-gauge payoffs equals the intersection of all B_alpha:
/// for nonnegative x, compares p_B(x) = 0 against membership of x in B_alpha
/// along alpha = 1, 1/2, ..., 1/2^depth, and finally at alpha = p_B(x) and
/// p_B(x)/2 when p_B(x) > 0. Returns false on any mismatch.
bool zero_gauge_matches_intersection(const MarketModel &model, const RandomVariable &x,
                                     int depth = 12);

/// Every sampled element of B_0 has superreplication price 0 (so lies in
/// every B_alpha). Samples: the NA LP optimum, its multiples and its
/// pointwise minima with the given probes.
bool b_zero_inside_intersection(const MarketModel &model,
                                const std::vector<RandomVariable> &probes);

} // namespace ftap
