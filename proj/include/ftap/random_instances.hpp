#pragma once

#include <random>

#include "ftap/cone.hpp"
#include "ftap/market.hpp"

/// Seeded generators for randomized checks. Entries are small rationals p/q
/// with |p| <= max_num and 1 <= q <= max_den.
namespace ftap::random {

using Engine = std::mt19937_64;

struct MarketLimits {
  int max_periods = 3;
  int max_outcomes = 8;
  int max_assets = 2;
  int max_num = 20;
  int max_den = 20;
};

Rational rational(Engine &rng, int max_num, int max_den);
Rational nonneg_rational(Engine &rng, int max_num, int max_den);
/// Strictly positive.
Rational positive_rational(Engine &rng, int max_num, int max_den);

RandomVariable nonneg_variable(Engine &rng, const SpacePtr &space, int max_num, int max_den);
RandomVariable variable(Engine &rng, const SpacePtr &space, int max_num, int max_den);

/// Random filtration ending in singletons, uniform probabilities, and 1..max
/// assets. Children of a cell straddle the parent price about three times
/// in four, so both arbitrage-free and arbitrage markets appear.
MarketModel market(Engine &rng, const MarketLimits &limits = {});

/// Like market() but with a single period.
MarketModel one_period_market(Engine &rng, int max_outcomes, int max_assets,
                              int max_num = 20, int max_den = 20);

/// Up to max_generators nonnegative generators on an n-outcome space.
SemiSolidSet semisolid(Engine &rng, const SpacePtr &space, int max_generators, int max_num,
                       int max_den);

} // namespace ftap::random
