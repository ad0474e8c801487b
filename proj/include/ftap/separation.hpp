#pragma once

#include <optional>
#include <vector>

#include "ftap/cone.hpp"
#include "ftap/lattice.hpp"
#include "ftap/market.hpp"

namespace ftap {

/// Linear functional x -> sum_w coeff_w x_w on a finite sample space.
struct Functional {
  SpacePtr space;
  std::vector<Rational> coefficients;

  Rational operator()(const RandomVariable &x) const;
  bool is_positive() const;
  bool is_strictly_positive() const;
};

struct SeparationReport {
  Functional functional;
  std::size_t verified_on = 0; ///< generators re-checked to be <= 0
  /// Value on the target for separate_at; l1 norm for strict_separator.
  Rational normalization;
};

/// A positive functional with f(g) <= 0 on every generator and f(target) = 1,
/// or nullopt when target lies in the cone. The cone must contain -V+ and the
/// target must be nonnegative and nonzero.
std::optional<SeparationReport> separate_at(const PolyhedralCone &cone,
                                            const RandomVariable &target);

struct StrictSeparation {
  std::optional<SeparationReport> report;   ///< strictly positive separator
  std::optional<RandomVariable> violating;  ///< an indicator inside the cone
};

/// Average of l1-normalized per-indicator separators. Fails with the first
/// indicator that cannot be separated.
StrictSeparation strict_separator(const PolyhedralCone &cone);

/// True when f is positive and nonpositive on every generator of the cone.
bool verify_separator(const PolyhedralCone &cone, const Functional &f);

struct MeasureFromFunctional {
  Measure measure;
  Rational scale; ///< f(x) = scale * E_Q[x]
  std::vector<Rational> density;
};

/// Requires every coefficient to be positive (ContractViolation otherwise).
MeasureFromFunctional functional_to_measure(const Functional &f);

} // namespace ftap
