#pragma once

#include <optional>
#include <vector>

#include "ftap/lattice.hpp"
#include "ftap/lp.hpp"
#include "ftap/rational.hpp"

namespace ftap {

/// { sum_g lambda_g g : lambda >= 0 }, minus the positive orthant when
/// includes_neg_orthant is set.
struct PolyhedralCone {
  SpacePtr space;
  std::vector<RandomVariable> generators;
  bool includes_neg_orthant = false;

  /// Throws StructuralError if a generator lives elsewhere.
  void validate() const;
};

struct ConeMembership {
  bool member = false;
  std::vector<Rational> weights;          ///< lambda per generator, when member
  std::optional<RandomVariable> slack;    ///< w >= 0 with x = sum lambda g - w
  std::optional<lp::FarkasCertificate> certificate; ///< when not a member
};

ConeMembership cone_membership(const PolyhedralCone &cone, const RandomVariable &x);
bool cone_member(const PolyhedralCone &cone, const RandomVariable &x);

/// Convex, semi-solid subset of the positive cone:
///
///     B = { x >= 0 : x <= sum_g lambda_g g + sum_h mu_h h,
///                    lambda, mu >= 0, sum_g lambda_g <= 1 }
///
/// Generators must be nonnegative. Directions are recession directions of
/// arbitrary sign; they are what lets a market's payoff set be described
/// (the gains of zero-cost strategies). Without directions, B is the
/// downward closure in V+ of co({0} u generators).
class SemiSolidSet {
public:
  SemiSolidSet(SpacePtr space, std::vector<RandomVariable> generators,
               std::vector<RandomVariable> directions = {});

  const SpacePtr &space() const { return space_; }
  const std::vector<RandomVariable> &generators() const { return generators_; }
  const std::vector<RandomVariable> &directions() const { return directions_; }

private:
  SpacePtr space_;
  std::vector<RandomVariable> generators_;
  std::vector<RandomVariable> directions_;
};

/// x in scale * B. scale must be positive.
bool semisolid_member(const SemiSolidSet &set, const RandomVariable &x, const Rational &scale);

/// Gauge inf { alpha > 0 : x in alpha B }; +inf when no alpha works.
/// The infimum is attained, so minkowski(B, x) <= a  iff  x in a B.
ExtendedRational minkowski(const SemiSolidSet &set, const RandomVariable &x);

struct BoundReport {
  bool bounded = false;
  std::optional<Rational> linf_bound;     ///< sup over B of max_w x_w
  std::optional<Rational> sup_l2_squared; ///< only for sets without directions
};

BoundReport is_bounded(const SemiSolidSet &set);

/// Intersection over alpha > 0 of alpha B is {0}; decided through the gauge
/// of every outcome indicator.
bool zero_set_trivial(const SemiSolidSet &set);

} // namespace ftap
