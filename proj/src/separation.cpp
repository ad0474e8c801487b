#include "ftap/separation.hpp"

#include <algorithm>

#include "ftap/errors.hpp"
#include "ftap/lp.hpp"

namespace ftap {

Rational Functional::operator()(const RandomVariable &x) const {
  if (!same_space(*x.space(), *space)) {
    throw StructuralError("functional applied to a variable on another sample space");
  }
  return lp::dot(coefficients, x.values());
}

bool Functional::is_positive() const {
  return std::all_of(coefficients.begin(), coefficients.end(),
                     [](const Rational &c) { return c.sign() >= 0; });
}

bool Functional::is_strictly_positive() const {
  return std::all_of(coefficients.begin(), coefficients.end(),
                     [](const Rational &c) { return c.sign() > 0; });
}

bool verify_separator(const PolyhedralCone &cone, const Functional &f) {
  if (!f.is_positive()) {
    return false;
  }
  return std::all_of(cone.generators.begin(), cone.generators.end(),
                     [&](const RandomVariable &g) { return f(g).sign() <= 0; });
}

std::optional<SeparationReport> separate_at(const PolyhedralCone &cone,
                                            const RandomVariable &target) {
  cone.validate();
  if (!cone.includes_neg_orthant) {
    throw ContractViolation("separate_at: cone must contain the negative orthant");
  }
  if (!same_space(*target.space(), *cone.space)) {
    throw StructuralError("separate_at: target on a different sample space");
  }
  if (!is_nonneg(target) || is_zero(target)) {
    throw ContractViolation("separate_at: target " + to_string(target) +
                            " is not in V+ \\ {0}");
  }
  const std::size_t n = cone.space->size();
  lp::Problem p;
  p.objective.assign(n, Rational{});
  for (const auto &g : cone.generators) {
    p.add_row(g.values(), lp::Relation::LessEqual, 0);
  }
  p.add_row(target.values(), lp::Relation::Equal, 1);
  auto f = lp::feasible(p);
  if (!f.feasible) {
    return std::nullopt;
  }
  SeparationReport report{Functional{cone.space, std::move(f.witness)},
                          cone.generators.size(), 0};
  if (!verify_separator(cone, report.functional) || report.functional(target) != 1) {
    throw InternalInconsistency("separate_at: separator failed re-verification");
  }
  report.normalization = 1;
  return report;
}

StrictSeparation strict_separator(const PolyhedralCone &cone) {
  const std::size_t n = cone.space->size();
  std::vector<Rational> average(n);
  const Rational weight(1, static_cast<std::int64_t>(n));
  StrictSeparation out;
  for (std::size_t w = 0; w < n; ++w) {
    auto e = RandomVariable::indicator(cone.space, w);
    auto sep = separate_at(cone, e);
    if (!sep) {
      out.violating = std::move(e);
      return out;
    }
    Rational l1;
    for (const auto &c : sep->functional.coefficients) l1 += c;
    for (std::size_t v = 0; v < n; ++v) {
      average[v] += weight * sep->functional.coefficients[v] / l1;
    }
  }
  Functional f{cone.space, std::move(average)};
  if (!f.is_strictly_positive() || !verify_separator(cone, f)) {
    throw InternalInconsistency("strict_separator: averaged functional failed re-verification");
  }
  Rational l1;
  for (const auto &c : f.coefficients) l1 += c;
  out.report = SeparationReport{std::move(f), cone.generators.size(), l1};
  return out;
}

MeasureFromFunctional functional_to_measure(const Functional &f) {
  if (!f.is_strictly_positive()) {
    throw ContractViolation("functional_to_measure: functional is not strictly positive");
  }
  Rational scale;
  for (const auto &c : f.coefficients) scale += c;
  Measure q{f.space, {}};
  for (const auto &c : f.coefficients) q.weights.push_back(c / scale);
  auto density = q.density();
  for (std::size_t w = 0; w < f.coefficients.size(); ++w) {
    auto e = RandomVariable::indicator(f.space, w);
    if (f(e) != scale * expectation(e, q.weights)) {
      throw InternalInconsistency("functional_to_measure: representation check failed");
    }
  }
  return {std::move(q), std::move(scale), std::move(density)};
}

} // namespace ftap
