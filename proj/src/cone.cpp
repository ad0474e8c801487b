#include "ftap/cone.hpp"

#include "ftap/errors.hpp"

namespace ftap {

using lp::Relation;

void PolyhedralCone::validate() const {
  if (!space) {
    throw StructuralError("cone: null sample space");
  }
  for (const auto &g : generators) {
    if (!same_space(*g.space(), *space)) {
      throw StructuralError("cone: generator on a different sample space");
    }
  }
}

ConeMembership cone_membership(const PolyhedralCone &cone, const RandomVariable &x) {
  cone.validate();
  if (!same_space(*x.space(), *cone.space)) {
    throw StructuralError("cone_member: point on a different sample space");
  }
  const std::size_t n = cone.space->size();
  const std::size_t k = cone.generators.size();
  const std::size_t vars = k + (cone.includes_neg_orthant ? n : 0);

  // sum_g lambda_g g_w - w_w = x_w
  lp::Problem p;
  p.objective.assign(vars, Rational{});
  for (std::size_t w = 0; w < n; ++w) {
    std::vector<Rational> row(vars);
    for (std::size_t g = 0; g < k; ++g) row[g] = cone.generators[g][w];
    if (cone.includes_neg_orthant) row[k + w] = -1;
    p.add_row(std::move(row), Relation::Equal, x[w]);
  }
  auto f = lp::feasible(p);
  ConeMembership out;
  out.member = f.feasible;
  if (f.feasible) {
    out.weights.assign(f.witness.begin(), f.witness.begin() + static_cast<long>(k));
    if (cone.includes_neg_orthant) {
      out.slack = RandomVariable(cone.space, {f.witness.begin() + static_cast<long>(k),
                                              f.witness.end()});
    }
  } else {
    out.certificate = std::move(f.certificate);
  }
  return out;
}

bool cone_member(const PolyhedralCone &cone, const RandomVariable &x) {
  return cone_membership(cone, x).member;
}

SemiSolidSet::SemiSolidSet(SpacePtr space, std::vector<RandomVariable> generators,
                           std::vector<RandomVariable> directions)
    : space_(std::move(space)), generators_(std::move(generators)),
      directions_(std::move(directions)) {
  if (!space_) {
    throw StructuralError("semi-solid set: null sample space");
  }
  for (const auto &g : generators_) {
    if (!same_space(*g.space(), *space_)) {
      throw StructuralError("semi-solid set: generator on a different sample space");
    }
    if (!is_nonneg(g)) {
      throw ContractViolation("semi-solid set: generator " + to_string(g) + " is not nonnegative");
    }
  }
  for (const auto &h : directions_) {
    if (!same_space(*h.space(), *space_)) {
      throw StructuralError("semi-solid set: direction on a different sample space");
    }
  }
}

namespace {

/// Variables: lambda (one per generator) then mu (one per direction), all
/// >= 0. Adds rows  (sum lambda g + sum mu h)_w  >= lower_w.
lp::Problem domination_problem(const SemiSolidSet &set, const RandomVariable &lower) {
  const std::size_t n = set.space()->size();
  const std::size_t k = set.generators().size();
  const std::size_t d = set.directions().size();
  lp::Problem p;
  p.objective.assign(k + d, Rational{});
  for (std::size_t w = 0; w < n; ++w) {
    std::vector<Rational> row(k + d);
    for (std::size_t g = 0; g < k; ++g) row[g] = set.generators()[g][w];
    for (std::size_t h = 0; h < d; ++h) row[k + h] = set.directions()[h][w];
    p.add_row(std::move(row), Relation::GreaterEqual, lower[w]);
  }
  return p;
}

std::vector<Rational> budget_row(const SemiSolidSet &set) {
  std::vector<Rational> row(set.generators().size() + set.directions().size());
  for (std::size_t g = 0; g < set.generators().size(); ++g) row[g] = 1;
  return row;
}

void require_on(const SemiSolidSet &set, const RandomVariable &x) {
  if (!same_space(*x.space(), *set.space())) {
    throw StructuralError("semi-solid set: point on a different sample space");
  }
}

} // namespace

bool semisolid_member(const SemiSolidSet &set, const RandomVariable &x, const Rational &scale) {
  require_on(set, x);
  if (scale.sign() <= 0) {
    throw ContractViolation("semisolid_member: scale must be positive");
  }
  if (!is_nonneg(x)) {
    return false;
  }
  auto p = domination_problem(set, x);
  p.add_row(budget_row(set), Relation::LessEqual, scale);
  return lp::feasible(p).feasible;
}

ExtendedRational minkowski(const SemiSolidSet &set, const RandomVariable &x) {
  require_on(set, x);
  if (!is_nonneg(x)) {
    return ExtendedRational::infinity();
  }
  auto p = domination_problem(set, x);
  p.sense = lp::Sense::Minimize;
  p.objective = budget_row(set);
  auto out = lp::solve(p);
  if (out.status == lp::Status::Infeasible) {
    return ExtendedRational::infinity();
  }
  if (out.status != lp::Status::Optimal) {
    throw InternalInconsistency("minkowski: gauge LP unbounded below");
  }
  return *out.objective_value;
}

BoundReport is_bounded(const SemiSolidSet &set) {
  BoundReport report;
  if (set.directions().empty()) {
    Rational linf;
    Rational l2;
    for (const auto &g : set.generators()) {
      linf = max(linf, max_abs(g));
      l2 = max(l2, squared_l2(g));
    }
    report.bounded = true;
    report.linf_bound = linf;
    report.sup_l2_squared = l2;
    return report;
  }
  // sup over B of x_w equals the largest w-coordinate of a dominating
  // combination that is itself nonnegative.
  const std::size_t n = set.space()->size();
  Rational linf;
  for (std::size_t w = 0; w < n; ++w) {
    auto p = domination_problem(set, RandomVariable::zero(set.space()));
    p.add_row(budget_row(set), Relation::LessEqual, 1);
    p.objective = p.matrix[w];
    auto out = lp::solve(p);
    if (out.status == lp::Status::Unbounded) {
      report.bounded = false;
      return report;
    }
    if (out.status == lp::Status::Optimal) {
      linf = max(linf, *out.objective_value);
    }
  }
  report.bounded = true;
  report.linf_bound = linf;
  return report;
}

bool zero_set_trivial(const SemiSolidSet &set) {
  for (std::size_t w = 0; w < set.space()->size(); ++w) {
    auto gauge = minkowski(set, RandomVariable::indicator(set.space(), w));
    if (gauge.is_finite() && gauge.value().is_zero()) {
      return false;
    }
  }
  return true;
}

} // namespace ftap
