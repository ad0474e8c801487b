#pragma once

#include <stdexcept>
#include <string>

namespace ftap {

/// Inputs whose shapes do not fit together (dimension mismatch, foreign
/// sample space, malformed LP).
class StructuralError : public std::logic_error {
public:
  using std::logic_error::logic_error;
};

/// A documented precondition on values was violated (negative payoff,
/// non-positive functional, ...).
class ContractViolation : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// The library disagrees with itself: a witness failed re-verification or
/// two independent deciders returned different verdicts.
class InternalInconsistency : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

} // namespace ftap
