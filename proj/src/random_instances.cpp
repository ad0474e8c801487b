#include "ftap/random_instances.hpp"

#include <algorithm>

namespace ftap::random {

namespace {

int uniform(Engine &rng, int lo, int hi) {
  return std::uniform_int_distribution<int>(lo, hi)(rng);
}

Partition refine(Engine &rng, const Partition &coarse, bool to_singletons) {
  Partition fine;
  for (const auto &cell : coarse) {
    if (to_singletons) {
      for (std::size_t w : cell) fine.push_back({w});
      continue;
    }
    const int parts = uniform(rng, 1, std::min<int>(3, static_cast<int>(cell.size())));
    Partition pieces(static_cast<std::size_t>(parts));
    Cell shuffled = cell;
    std::shuffle(shuffled.begin(), shuffled.end(), rng);
    for (std::size_t i = 0; i < shuffled.size(); ++i) {
      // First `parts` outcomes seed distinct pieces; the rest land anywhere.
      std::size_t target = i < pieces.size()
                               ? i
                               : static_cast<std::size_t>(uniform(rng, 0, parts - 1));
      pieces[target].push_back(shuffled[i]);
    }
    for (auto &piece : pieces) {
      std::sort(piece.begin(), piece.end());
      fine.push_back(std::move(piece));
    }
  }
  return fine;
}

/// Child prices for one cell. With probability 3/4 resample a few times until
/// the children straddle the parent, or keep the parent price when the cell
/// does not split (any move there is a sure gain or loss).
std::vector<Rational> child_prices(Engine &rng, const Rational &parent, std::size_t count,
                                   int max_num, int max_den) {
  if (count == 1 && uniform(rng, 0, 3) != 0) return {parent};
  const bool straddle = count > 1 && uniform(rng, 0, 3) != 0;
  std::vector<Rational> out;
  for (int attempt = 0; attempt < 8; ++attempt) {
    out.clear();
    for (std::size_t i = 0; i < count; ++i) out.push_back(nonneg_rational(rng, max_num, max_den));
    if (!straddle) break;
    bool above = std::any_of(out.begin(), out.end(), [&](const Rational &v) { return v > parent; });
    bool below = std::any_of(out.begin(), out.end(), [&](const Rational &v) { return v < parent; });
    if (above && below) break;
  }
  return out;
}

MarketModel build_market(Engine &rng, int periods, int outcomes, int assets, int max_num,
                         int max_den) {
  auto space = SampleSpace::uniform(static_cast<std::size_t>(outcomes));
  std::vector<Partition> parts;
  Cell all;
  for (int w = 0; w < outcomes; ++w) all.push_back(static_cast<std::size_t>(w));
  parts.push_back({all});
  for (int t = 1; t <= periods; ++t) {
    parts.push_back(refine(rng, parts.back(), t == periods));
  }
  Filtration filtration(space, parts);

  std::vector<PricePath> paths;
  for (int a = 0; a < assets; ++a) {
    PricePath path{"X" + std::to_string(a + 1), {}};
    const bool constant = uniform(rng, 0, 9) == 0;
    Rational x0 = positive_rational(rng, max_num, max_den);
    path.prices.push_back(RandomVariable::constant(space, x0));
    for (int t = 1; t <= periods; ++t) {
      const auto &prev = path.prices.back();
      std::vector<Rational> values(static_cast<std::size_t>(outcomes));
      for (const auto &parent_cell : filtration.at(static_cast<std::size_t>(t - 1))) {
        // Children of this cell at time t.
        std::vector<std::size_t> children;
        for (std::size_t c = 0; c < filtration.at(static_cast<std::size_t>(t)).size(); ++c) {
          const auto &cell = filtration.at(static_cast<std::size_t>(t))[c];
          if (filtration.cell_of(static_cast<std::size_t>(t - 1), cell.front()) ==
              filtration.cell_of(static_cast<std::size_t>(t - 1), parent_cell.front())) {
            children.push_back(c);
          }
        }
        const Rational &parent = prev[parent_cell.front()];
        auto prices = constant ? std::vector<Rational>(children.size(), parent)
                               : child_prices(rng, parent, children.size(), max_num, max_den);
        for (std::size_t i = 0; i < children.size(); ++i) {
          for (std::size_t w : filtration.at(static_cast<std::size_t>(t))[children[i]]) {
            values[w] = prices[i];
          }
        }
      }
      path.prices.emplace_back(space, std::move(values));
    }
    paths.push_back(std::move(path));
  }
  return MarketModel(std::move(filtration), std::move(paths));
}

} // namespace

Rational rational(Engine &rng, int max_num, int max_den) {
  return Rational(uniform(rng, -max_num, max_num), uniform(rng, 1, max_den));
}

Rational nonneg_rational(Engine &rng, int max_num, int max_den) {
  return Rational(uniform(rng, 0, max_num), uniform(rng, 1, max_den));
}

Rational positive_rational(Engine &rng, int max_num, int max_den) {
  return Rational(uniform(rng, 1, max_num), uniform(rng, 1, max_den));
}

RandomVariable nonneg_variable(Engine &rng, const SpacePtr &space, int max_num, int max_den) {
  std::vector<Rational> v;
  for (std::size_t i = 0; i < space->size(); ++i) v.push_back(nonneg_rational(rng, max_num, max_den));
  return {space, std::move(v)};
}

RandomVariable variable(Engine &rng, const SpacePtr &space, int max_num, int max_den) {
  std::vector<Rational> v;
  for (std::size_t i = 0; i < space->size(); ++i) v.push_back(rational(rng, max_num, max_den));
  return {space, std::move(v)};
}

MarketModel market(Engine &rng, const MarketLimits &limits) {
  const int periods = uniform(rng, 1, limits.max_periods);
  const int outcomes = uniform(rng, 2, limits.max_outcomes);
  const int assets = uniform(rng, 1, limits.max_assets);
  return build_market(rng, periods, outcomes, assets, limits.max_num, limits.max_den);
}

MarketModel one_period_market(Engine &rng, int max_outcomes, int max_assets, int max_num,
                              int max_den) {
  const int outcomes = uniform(rng, 2, max_outcomes);
  const int assets = uniform(rng, 1, max_assets);
  return build_market(rng, 1, outcomes, assets, max_num, max_den);
}

SemiSolidSet semisolid(Engine &rng, const SpacePtr &space, int max_generators, int max_num,
                       int max_den) {
  const int count = uniform(rng, 0, max_generators);
  std::vector<RandomVariable> gens;
  for (int g = 0; g < count; ++g) gens.push_back(nonneg_variable(rng, space, max_num, max_den));
  return SemiSolidSet(space, std::move(gens));
}

} // namespace ftap::random
