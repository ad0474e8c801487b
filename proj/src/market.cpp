#include "ftap/market.hpp"

#include <algorithm>

#include "ftap/errors.hpp"
#include "ftap/lp.hpp"

namespace ftap {

using lp::Relation;

// ---------------------------------------------------------------------------
// Filtration

Filtration::Filtration(SpacePtr space, std::vector<Partition> partitions)
    : space_(std::move(space)), partitions_(std::move(partitions)) {
  if (!space_) {
    throw StructuralError("filtration: null sample space");
  }
  const std::size_t n = space_->size();
  if (partitions_.size() < 2) {
    throw ContractViolation("filtration: need partitions for t = 0..T with T >= 1");
  }
  cell_index_.assign(partitions_.size(), std::vector<std::size_t>(n, n));
  for (std::size_t t = 0; t < partitions_.size(); ++t) {
    auto &index = cell_index_[t];
    for (std::size_t c = 0; c < partitions_[t].size(); ++c) {
      const auto &cell = partitions_[t][c];
      if (cell.empty()) {
        throw ContractViolation("filtration: empty cell at t=" + std::to_string(t));
      }
      for (std::size_t w : cell) {
        if (w >= n) {
          throw ContractViolation("filtration: unknown outcome index at t=" + std::to_string(t));
        }
        if (index[w] != n) {
          throw ContractViolation("filtration: outcome '" + space_->outcomes()[w] +
                                  "' appears twice at t=" + std::to_string(t));
        }
        index[w] = c;
      }
    }
    for (std::size_t w = 0; w < n; ++w) {
      if (index[w] == n) {
        throw ContractViolation("filtration: outcome '" + space_->outcomes()[w] +
                                "' missing at t=" + std::to_string(t));
      }
    }
  }
  if (partitions_.front().size() != 1) {
    throw ContractViolation("filtration: partition at t=0 must be trivial");
  }
  if (partitions_.back().size() != n) {
    throw ContractViolation("filtration: partition at T must separate all outcomes");
  }
  for (std::size_t t = 1; t < partitions_.size(); ++t) {
    for (const auto &cell : partitions_[t]) {
      std::size_t parent = cell_index_[t - 1][cell.front()];
      for (std::size_t w : cell) {
        if (cell_index_[t - 1][w] != parent) {
          throw ContractViolation("filtration: partition at t=" + std::to_string(t) +
                                  " does not refine t=" + std::to_string(t - 1));
        }
      }
    }
  }
}

// ---------------------------------------------------------------------------
// MarketModel

MarketModel::MarketModel(Filtration filtration, std::vector<PricePath> assets)
    : filtration_(std::move(filtration)), assets_(std::move(assets)) {
  const std::size_t steps = filtration_.horizon() + 1;
  for (const auto &asset : assets_) {
    if (asset.prices.size() != steps) {
      throw ContractViolation("asset '" + asset.name + "': expected " + std::to_string(steps) +
                              " prices, got " + std::to_string(asset.prices.size()));
    }
    for (std::size_t t = 0; t < steps; ++t) {
      const auto &x = asset.prices[t];
      if (!same_space(*x.space(), *space())) {
        throw StructuralError("asset '" + asset.name + "': price on a different sample space");
      }
      if (!is_nonneg(x)) {
        throw ContractViolation("asset '" + asset.name + "': negative price at t=" +
                                std::to_string(t));
      }
      for (const auto &cell : filtration_.at(t)) {
        for (std::size_t w : cell) {
          if (x[w] != x[cell.front()]) {
            throw ContractViolation("asset '" + asset.name + "': not adapted at t=" +
                                    std::to_string(t) + " (outcomes '" +
                                    space()->outcomes()[cell.front()] + "' and '" +
                                    space()->outcomes()[w] + "' differ)");
          }
        }
      }
    }
  }
}

RandomVariable MarketModel::increment(std::size_t asset, std::size_t t) const {
  return assets_.at(asset).prices.at(t) - assets_.at(asset).prices.at(t - 1);
}

// ---------------------------------------------------------------------------
// Strategy

Strategy Strategy::zero(const MarketModel &model) {
  Strategy s;
  for (std::size_t t = 1; t <= model.horizon(); ++t) {
    s.holdings_.emplace_back(model.num_assets(),
                             std::vector<Rational>(model.filtration().at(t - 1).size()));
  }
  return s;
}

Rational &Strategy::holding(std::size_t period, std::size_t asset, std::size_t cell) {
  return holdings_.at(period - 1).at(asset).at(cell);
}

const Rational &Strategy::holding(std::size_t period, std::size_t asset, std::size_t cell) const {
  return holdings_.at(period - 1).at(asset).at(cell);
}

Strategy &Strategy::operator+=(const Strategy &rhs) {
  if (holdings_.size() != rhs.holdings_.size()) {
    throw StructuralError("strategy: horizon mismatch");
  }
  for (std::size_t t = 0; t < holdings_.size(); ++t) {
    if (holdings_[t].size() != rhs.holdings_[t].size()) {
      throw StructuralError("strategy: asset count mismatch");
    }
    for (std::size_t a = 0; a < holdings_[t].size(); ++a) {
      if (holdings_[t][a].size() != rhs.holdings_[t][a].size()) {
        throw StructuralError("strategy: cell count mismatch");
      }
      for (std::size_t c = 0; c < holdings_[t][a].size(); ++c) {
        holdings_[t][a][c] += rhs.holdings_[t][a][c];
      }
    }
  }
  return *this;
}

Strategy &Strategy::operator*=(const Rational &k) {
  for (auto &period : holdings_)
    for (auto &asset : period)
      for (auto &v : asset) v *= k;
  return *this;
}

// ---------------------------------------------------------------------------
// Measure

bool Measure::is_probability() const {
  Rational total;
  for (const auto &q : weights) {
    if (q.sign() < 0) return false;
    total += q;
  }
  return total == 1;
}

bool Measure::is_equivalent() const {
  return is_probability() &&
         std::all_of(weights.begin(), weights.end(), [](const Rational &q) { return q.sign() > 0; });
}

std::vector<Rational> Measure::density() const {
  std::vector<Rational> d;
  for (std::size_t w = 0; w < weights.size(); ++w) {
    d.push_back(weights[w] / space->probabilities()[w]);
  }
  return d;
}

// ---------------------------------------------------------------------------
// Gains

std::vector<ElementaryTrade> elementary_trades(const MarketModel &model) {
  std::vector<ElementaryTrade> out;
  for (std::size_t t = 1; t <= model.horizon(); ++t) {
    for (std::size_t a = 0; a < model.num_assets(); ++a) {
      for (std::size_t c = 0; c < model.filtration().at(t - 1).size(); ++c) {
        out.push_back({t, a, c});
      }
    }
  }
  return out;
}

RandomVariable elementary_gain(const MarketModel &model, const ElementaryTrade &trade) {
  auto inc = model.increment(trade.asset, trade.period);
  std::vector<Rational> v(model.space()->size());
  for (std::size_t w : model.filtration().at(trade.period - 1).at(trade.cell)) {
    v[w] = inc[w];
  }
  return {model.space(), std::move(v)};
}

RandomVariable terminal_gain(const MarketModel &model, const Strategy &strategy) {
  if (strategy.horizon() != model.horizon()) {
    throw StructuralError("terminal_gain: strategy horizon differs from model");
  }
  const auto &f = model.filtration();
  const std::size_t n = model.space()->size();
  std::vector<Rational> total(n);
  for (std::size_t t = 1; t <= model.horizon(); ++t) {
    const auto &period = strategy.holdings()[t - 1];
    if (period.size() != model.num_assets()) {
      throw StructuralError("terminal_gain: strategy asset count differs from model");
    }
    for (std::size_t a = 0; a < model.num_assets(); ++a) {
      if (period[a].size() != f.at(t - 1).size()) {
        throw StructuralError("terminal_gain: strategy cells differ from the t-1 partition");
      }
      const auto &now = model.assets()[a].prices[t];
      const auto &before = model.assets()[a].prices[t - 1];
      for (std::size_t w = 0; w < n; ++w) {
        const Rational &xi = period[a][f.cell_of(t - 1, w)];
        if (!xi.is_zero()) {
          total[w] += xi * (now[w] - before[w]);
        }
      }
    }
  }
  return {model.space(), std::move(total)};
}

PolyhedralCone payoff_cone(const MarketModel &model, bool with_neg_orthant) {
  PolyhedralCone cone{model.space(), {}, with_neg_orthant};
  for (const auto &trade : elementary_trades(model)) {
    auto g = elementary_gain(model, trade);
    cone.generators.push_back(g);
    cone.generators.push_back(-g);
  }
  return cone;
}

namespace {

/// Elementary trades whose gain is not identically zero, with their gains.
/// These are the only columns the strategy LPs need.
struct GainBasis {
  std::vector<ElementaryTrade> trades;
  std::vector<RandomVariable> gains;

  explicit GainBasis(const MarketModel &model) {
    for (const auto &trade : elementary_trades(model)) {
      auto g = elementary_gain(model, trade);
      if (!is_zero(g)) {
        trades.push_back(trade);
        gains.push_back(std::move(g));
      }
    }
  }

  std::size_t size() const { return trades.size(); }

  Strategy strategy(const MarketModel &model, std::span<const Rational> coeffs) const {
    Strategy s = Strategy::zero(model);
    for (std::size_t e = 0; e < trades.size(); ++e) {
      s.holding(trades[e].period, trades[e].asset, trades[e].cell) = coeffs[e];
    }
    return s;
  }
};

/// Appends `count` free variables, the coefficients on the gain basis.
void add_free(lp::Problem &p, std::size_t count) {
  for (std::size_t e = 0; e < count; ++e) {
    p.add_variable(0, {.free_below = true, .upper = std::nullopt});
  }
}

std::vector<Rational> zeros(std::size_t n) { return std::vector<Rational>(n); }

void require_payoff(const MarketModel &model, const RandomVariable &x, const char *what) {
  if (!same_space(*x.space(), *model.space())) {
    throw StructuralError(std::string(what) + ": payoff on a different sample space");
  }
}

} // namespace

SemiSolidSet market_semisolid(const MarketModel &model) {
  GainBasis basis(model);
  std::vector<RandomVariable> directions;
  for (const auto &g : basis.gains) {
    directions.push_back(g);
    directions.push_back(-g);
  }
  return SemiSolidSet(model.space(), {RandomVariable::constant(model.space(), 1)},
                      std::move(directions));
}

NaResult check_na(const MarketModel &model) {
  GainBasis basis(model);
  const std::size_t n = model.space()->size();
  const std::size_t k = basis.size();
  NaResult out;
  if (k == 0) {
    out.holds = true;
    return out;
  }
  lp::Problem p;
  add_free(p, k);
  for (std::size_t e = 0; e < k; ++e) {
    for (std::size_t w = 0; w < n; ++w) p.objective[e] += basis.gains[e][w];
  }
  for (std::size_t w = 0; w < n; ++w) {
    auto row = zeros(k);
    for (std::size_t e = 0; e < k; ++e) row[e] = basis.gains[e][w];
    p.add_row(row, Relation::GreaterEqual, 0);
    p.add_row(std::move(row), Relation::LessEqual, 1);
  }
  auto sol = lp::solve(p);
  if (sol.status != lp::Status::Optimal) {
    throw InternalInconsistency("check_na: normalized arbitrage LP is " +
                                lp::to_string(sol.status));
  }
  if (sol.objective_value->is_zero()) {
    out.holds = true;
    return out;
  }
  Strategy arb = basis.strategy(model, *sol.primal);
  RandomVariable payoff = terminal_gain(model, arb);
  if (!is_nonneg(payoff) || is_zero(payoff)) {
    throw InternalInconsistency("check_na: arbitrage witness failed re-verification");
  }
  out.holds = false;
  out.arbitrage = std::move(arb);
  out.payoff = std::move(payoff);
  return out;
}

bool verify_emm(const MarketModel &model, const Measure &q) {
  if (!q.space || !same_space(*q.space, *model.space()) ||
      q.weights.size() != model.space()->size() || !q.is_equivalent()) {
    return false;
  }
  const auto &f = model.filtration();
  for (std::size_t a = 0; a < model.num_assets(); ++a) {
    const auto &path = model.assets()[a].prices;
    for (std::size_t t = 1; t <= model.horizon(); ++t) {
      for (const auto &cell : f.at(t - 1)) {
        Rational s;
        for (std::size_t w : cell) s += q.weights[w] * (path[t][w] - path[t - 1][w]);
        if (!s.is_zero()) return false;
      }
    }
  }
  return true;
}

std::optional<Measure> max_min_emm(const MarketModel &model) {
  GainBasis basis(model);
  const std::size_t n = model.space()->size();
  // Variables: q_0..q_{n-1} >= 0, then m free.
  lp::Problem p;
  for (std::size_t w = 0; w < n; ++w) p.add_variable(0);
  const std::size_t m = p.add_variable(1, {.free_below = true, .upper = std::nullopt});
  for (std::size_t w = 0; w < n; ++w) {
    auto row = zeros(n + 1);
    row[w] = 1;
    row[m] = -1;
    p.add_row(std::move(row), Relation::GreaterEqual, 0);
  }
  {
    auto row = zeros(n + 1);
    for (std::size_t w = 0; w < n; ++w) row[w] = 1;
    p.add_row(std::move(row), Relation::Equal, 1);
  }
  for (const auto &g : basis.gains) {
    auto row = zeros(n + 1);
    for (std::size_t w = 0; w < n; ++w) row[w] = g[w];
    p.add_row(std::move(row), Relation::Equal, 0);
  }
  auto sol = lp::solve(p);
  if (sol.status != lp::Status::Optimal || sol.objective_value->sign() <= 0) {
    return std::nullopt;
  }
  Measure q{model.space(), {sol.primal->begin(), sol.primal->begin() + static_cast<long>(n)}};
  if (!verify_emm(model, q)) {
    throw InternalInconsistency("max_min_emm: measure failed re-verification");
  }
  return q;
}

EmmResult find_emm(const MarketModel &model) {
  EmmResult out;
  out.measure = max_min_emm(model);
  if (out.measure) {
    return out;
  }
  auto na = check_na(model);
  if (na.holds) {
    throw InternalInconsistency("find_emm: no EMM although NA holds");
  }
  out.arbitrage = std::move(na.arbitrage);
  out.payoff = std::move(na.payoff);
  return out;
}

namespace {

PriceResult price_with_basis(const MarketModel &model, const GainBasis &basis,
                             const RandomVariable &payoff) {
  const std::size_t n = model.space()->size();
  const std::size_t k = basis.size();
  // Variables: alpha >= 0, then xi free.
  lp::Problem p;
  p.sense = lp::Sense::Minimize;
  p.add_variable(1);
  add_free(p, k);
  for (std::size_t w = 0; w < n; ++w) {
    auto row = zeros(k + 1);
    row[0] = 1;
    for (std::size_t e = 0; e < k; ++e) row[e + 1] = basis.gains[e][w];
    p.add_row(std::move(row), Relation::GreaterEqual, payoff[w]);
  }
  auto sol = lp::solve(p);
  if (sol.status != lp::Status::Optimal) {
    throw InternalInconsistency("superreplication_price: LP is " + lp::to_string(sol.status));
  }
  PriceResult out;
  out.price = *sol.objective_value;
  out.strategy = basis.strategy(model, std::span(*sol.primal).subspan(1));
  auto hedge = RandomVariable::constant(model.space(), out.price) +
               terminal_gain(model, out.strategy);
  if (!leq(payoff, hedge)) {
    throw InternalInconsistency("superreplication_price: hedge does not dominate payoff");
  }
  return out;
}

} // namespace

PriceResult superreplication_price(const MarketModel &model, const RandomVariable &payoff) {
  require_payoff(model, payoff, "superreplication_price");
  if (!is_nonneg(payoff)) {
    throw ContractViolation("superreplication_price: payoff " + to_string(payoff) +
                            " has a negative entry");
  }
  auto out = price_with_basis(model, GainBasis(model), payoff);
  out.na_holds = check_na(model).holds;
  return out;
}

// Indicators suffice: a nonzero x >= 0 dominates c e_w for some w and c > 0,
// so p(x) >= c p(e_w) by monotonicity and homogeneity of the gauge.
bool check_na1(const MarketModel &model) {
  GainBasis basis(model);
  for (std::size_t w = 0; w < model.space()->size(); ++w) {
    auto e = RandomVariable::indicator(model.space(), w);
    if (price_with_basis(model, basis, e).price.is_zero()) {
      return false;
    }
  }
  return true;
}

bool check_nupbr(const MarketModel &model) {
  GainBasis basis(model);
  const std::size_t n = model.space()->size();
  const std::size_t k = basis.size();
  // Variables: x_0..x_{n-1} >= 0, then xi free.
  lp::Problem p;
  for (std::size_t w = 0; w < n; ++w) p.add_variable(1);
  add_free(p, k);
  for (std::size_t w = 0; w < n; ++w) {
    auto row = zeros(n + k);
    row[w] = 1;
    for (std::size_t e = 0; e < k; ++e) row[n + e] = -basis.gains[e][w];
    p.add_row(std::move(row), Relation::LessEqual, 1);
  }
  auto sol = lp::solve(p);
  if (sol.status == lp::Status::Infeasible) {
    throw InternalInconsistency("check_nupbr: x = 0 should always be feasible");
  }
  return sol.status == lp::Status::Optimal;
}

ExtendedRational emm_budget(const MarketModel &model, const Measure &q) {
  if (!q.space || !same_space(*q.space, *model.space()) || q.weights.size() != model.space()->size()) {
    throw StructuralError("emm_budget: measure on a different sample space");
  }
  if (!q.is_equivalent()) {
    throw ContractViolation("emm_budget: measure is not an equivalent probability");
  }
  GainBasis basis(model);
  const std::size_t n = model.space()->size();
  const std::size_t k = basis.size();
  lp::Problem p;
  for (std::size_t w = 0; w < n; ++w) p.add_variable(q.weights[w]);
  add_free(p, k);
  for (std::size_t w = 0; w < n; ++w) {
    auto row = zeros(n + k);
    row[w] = 1;
    for (std::size_t e = 0; e < k; ++e) row[n + e] = -basis.gains[e][w];
    p.add_row(std::move(row), Relation::LessEqual, 1);
  }
  auto sol = lp::solve(p);
  if (sol.status == lp::Status::Unbounded) {
    return ExtendedRational::infinity();
  }
  if (sol.status != lp::Status::Optimal) {
    throw InternalInconsistency("emm_budget: LP infeasible");
  }
  return *sol.objective_value;
}

namespace {

bool dominated_by_gain(const MarketModel &model, const RandomVariable &x, const Rational &wealth) {
  GainBasis basis(model);
  const std::size_t n = model.space()->size();
  const std::size_t k = basis.size();
  lp::Problem p;
  add_free(p, k);
  for (std::size_t w = 0; w < n; ++w) {
    auto row = zeros(k);
    for (std::size_t e = 0; e < k; ++e) row[e] = basis.gains[e][w];
    p.add_row(std::move(row), Relation::GreaterEqual, x[w] - wealth);
  }
  return lp::feasible(p).feasible;
}

} // namespace

bool in_b_alpha(const MarketModel &model, const RandomVariable &x, const Rational &alpha) {
  require_payoff(model, x, "in_b_alpha");
  if (alpha.sign() <= 0) {
    throw ContractViolation("in_b_alpha: alpha must be positive");
  }
  return is_nonneg(x) && dominated_by_gain(model, x, alpha);
}

bool in_b_zero(const MarketModel &model, const RandomVariable &x) {
  require_payoff(model, x, "in_b_zero");
  return is_nonneg(x) && dominated_by_gain(model, x, 0);
}

} // namespace ftap
