#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ftap/rational.hpp"

/// Exact rational linear programming.
///
/// Problems are stated in the general form
///
///     maximize / minimize   c . x
///     subject to            A_i . x  (<= | = | >=)  b_i      for each row i
///                           x_j >= 0  or  x_j free below
///                           x_j <= u_j                      (optional)
///
/// and solved by a dense two-phase tableau simplex with Bland's rule. Every
/// outcome carries a certificate that can be re-checked by substitution with
/// the verify_* functions below.
namespace ftap::lp {

enum class Relation { LessEqual, Equal, GreaterEqual };
enum class Sense { Maximize, Minimize };
enum class Status { Optimal, Unbounded, Infeasible };

std::string to_string(Status status);

struct VariableBounds {
  bool free_below = false;          ///< lower bound -inf instead of 0
  std::optional<Rational> upper;    ///< nullopt means +inf
};

struct Problem {
  Sense sense = Sense::Maximize;
  std::vector<Rational> objective;
  std::vector<std::vector<Rational>> matrix;
  std::vector<Relation> relations;
  std::vector<Rational> rhs;
  /// One entry per variable, or empty for "all variables >= 0".
  std::vector<VariableBounds> bounds;

  std::size_t num_variables() const { return objective.size(); }
  std::size_t num_rows() const { return rhs.size(); }
  VariableBounds bound(std::size_t j) const;

  /// Appends a variable with zero coefficient in every existing row.
  std::size_t add_variable(Rational objective_coeff = 0, VariableBounds b = {});
  void add_row(std::vector<Rational> coeffs, Relation rel, Rational rhs_value);

  /// Throws StructuralError when dimensions disagree.
  void validate() const;
};

/// Dual multipliers use the Lagrangian convention c = A^T y + w + r where w
/// prices the finite upper bounds and r is the reduced cost. For a maximize
/// problem y >= 0 on <= rows, y <= 0 on >= rows, w >= 0; all signs flip for
/// minimize. The dual objective is b . y + u . w.
struct Outcome {
  Status status = Status::Infeasible;
  std::optional<std::vector<Rational>> primal;     ///< Optimal, or ray origin when Unbounded
  std::optional<std::vector<Rational>> dual;       ///< row duals, or Farkas row multipliers
  std::optional<std::vector<Rational>> bound_dual; ///< one per variable, zero without upper bound
  std::optional<Rational> objective_value;
  std::optional<std::vector<Rational>> ray;        ///< Unbounded only
};

struct FarkasCertificate {
  std::vector<Rational> rows;
  std::vector<Rational> bounds;
};

struct Feasibility {
  bool feasible = false;
  std::vector<Rational> witness;               ///< when feasible
  std::optional<FarkasCertificate> certificate; ///< when infeasible
};

Outcome solve(const Problem &problem);
Feasibility feasible(const Problem &problem);

Rational dot(std::span<const Rational> a, std::span<const Rational> b);

// Certificate checks. Independent of the solver: they only substitute.
bool is_feasible_point(const Problem &problem, std::span<const Rational> x);
bool verify_dual_feasible(const Problem &problem, std::span<const Rational> y,
                          std::span<const Rational> w);
bool verify_farkas(const Problem &problem, const FarkasCertificate &cert);
bool verify_ray(const Problem &problem, std::span<const Rational> ray);
/// Checks the certificate matching outcome.status.
bool verify_outcome(const Problem &problem, const Outcome &outcome);

} // namespace ftap::lp
