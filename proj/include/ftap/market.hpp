#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ftap/cone.hpp"
#include "ftap/lattice.hpp"
#include "ftap/rational.hpp"

namespace ftap {

using Cell = std::vector<std::size_t>;
using Partition = std::vector<Cell>;

/// Increasing sequence of partitions of the outcome set, t = 0..T. The first
/// is trivial, the last separates every outcome.
class Filtration {
public:
  /// Throws ContractViolation when a partition is not a partition, does not
  /// refine its predecessor, or the end conditions fail.
  Filtration(SpacePtr space, std::vector<Partition> partitions);

  const SpacePtr &space() const { return space_; }
  std::size_t horizon() const { return partitions_.size() - 1; }
  const Partition &at(std::size_t t) const { return partitions_.at(t); }
  const std::vector<Partition> &partitions() const { return partitions_; }
  /// Index of the cell of the time-t partition containing outcome w.
  std::size_t cell_of(std::size_t t, std::size_t w) const { return cell_index_[t][w]; }

private:
  SpacePtr space_;
  std::vector<Partition> partitions_;
  std::vector<std::vector<std::size_t>> cell_index_;
};

struct PricePath {
  std::string name;
  std::vector<RandomVariable> prices; ///< X_0 .. X_T
};

/// Discounted market of nonnegative adapted price processes.
class MarketModel {
public:
  /// Throws ContractViolation when a path has the wrong length, is not
  /// adapted, or takes a negative value.
  MarketModel(Filtration filtration, std::vector<PricePath> assets);

  const Filtration &filtration() const { return filtration_; }
  const SpacePtr &space() const { return filtration_.space(); }
  std::size_t horizon() const { return filtration_.horizon(); }
  std::size_t num_assets() const { return assets_.size(); }
  const std::vector<PricePath> &assets() const { return assets_; }
  /// X^a_t - X^a_{t-1} for t >= 1.
  RandomVariable increment(std::size_t asset, std::size_t t) const;

private:
  Filtration filtration_;
  std::vector<PricePath> assets_;
};

/// Predictable holdings: for period t = 1..T and each asset, one position per
/// cell of the time t-1 partition.
class Strategy {
public:
  static Strategy zero(const MarketModel &model);

  std::size_t horizon() const { return holdings_.size(); }
  /// period is 1-based.
  Rational &holding(std::size_t period, std::size_t asset, std::size_t cell);
  const Rational &holding(std::size_t period, std::size_t asset, std::size_t cell) const;
  const std::vector<std::vector<std::vector<Rational>>> &holdings() const { return holdings_; }

  Strategy &operator+=(const Strategy &rhs);
  Strategy &operator*=(const Rational &k);
  friend Strategy operator+(Strategy a, const Strategy &b) { return a += b; }
  friend Strategy operator*(const Rational &k, Strategy a) { return a *= k; }
  friend bool operator==(const Strategy &, const Strategy &) = default;

private:
  std::vector<std::vector<std::vector<Rational>>> holdings_;
};

/// Probability weights on a finite sample space.
struct Measure {
  SpacePtr space;
  std::vector<Rational> weights;

  bool is_probability() const;
  /// Same null sets as P: every weight positive.
  bool is_equivalent() const;
  /// dQ/dP per outcome.
  std::vector<Rational> density() const;
};

/// One unit of one asset held over one period on one cell.
struct ElementaryTrade {
  std::size_t period;
  std::size_t asset;
  std::size_t cell;
};

std::vector<ElementaryTrade> elementary_trades(const MarketModel &model);
RandomVariable elementary_gain(const MarketModel &model, const ElementaryTrade &trade);

/// sum_t xi_t . (X_t - X_{t-1}), pathwise.
RandomVariable terminal_gain(const MarketModel &model, const Strategy &strategy);

/// +/- the elementary gains, in elementary_trades() order (+ before -).
PolyhedralCone payoff_cone(const MarketModel &model, bool with_neg_orthant = false);

/// The payoff set of unit initial wealth, {x >= 0 : x <= 1 + k, k in K0}, as a
/// semi-solid set: generator 1, directions +/- nonzero elementary gains.
SemiSolidSet market_semisolid(const MarketModel &model);

struct NaResult {
  bool holds = false;
  std::optional<Strategy> arbitrage;
  std::optional<RandomVariable> payoff;
};

/// NA via  max sum_w g_w  s.t.  0 <= g <= 1, g in K0.
NaResult check_na(const MarketModel &model);

struct EmmResult {
  std::optional<Measure> measure;
  std::optional<Strategy> arbitrage; ///< when no EMM exists
  std::optional<RandomVariable> payoff;
};

/// The martingale LP alone: the measure maximizing its smallest weight, or
/// nullopt when that weight cannot be made positive.
std::optional<Measure> max_min_emm(const MarketModel &model);

/// Equivalent martingale measure maximizing its smallest weight; when none
/// exists, the arbitrage found by check_na.
EmmResult find_emm(const MarketModel &model);

/// Exact check of every conditional martingale identity, positivity and
/// normalization of q.
bool verify_emm(const MarketModel &model, const Measure &q);

struct PriceResult {
  Rational price;
  Strategy strategy; ///< price + terminal_gain(strategy) >= payoff
  bool na_holds = true;
};

/// min alpha >= 0 such that alpha + terminal_gain(xi) >= payoff for some xi.
/// Throws ContractViolation for a payoff with a negative entry.
PriceResult superreplication_price(const MarketModel &model, const RandomVariable &payoff);

/// Superreplication price of every outcome indicator is positive.
bool check_na1(const MarketModel &model);
/// The unit-wealth payoff set is bounded.
bool check_nupbr(const MarketModel &model);

/// sup over the unit-wealth payoff set of E_Q[x]; +inf when unbounded.
/// Q must be equivalent to P.
ExtendedRational emm_budget(const MarketModel &model, const Measure &q);

/// x in B_alpha = {x >= 0 : x <= alpha + k, k in K0}, decided directly.
bool in_b_alpha(const MarketModel &model, const RandomVariable &x, const Rational &alpha);

/// x in B_0 = {x >= 0 : x <= k, k in K0}.
bool in_b_zero(const MarketModel &model, const RandomVariable &x);

} // namespace ftap
