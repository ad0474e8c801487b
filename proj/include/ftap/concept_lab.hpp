#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "ftap/cone.hpp"

namespace ftap {

/// Truncation of the sequence-space example B = co({0} u {k e_k}) to its
/// first N coordinates.
struct CounterexampleConfig {
  std::size_t truncation = 1;
};

/// Throws ContractViolation for N = 0.
SemiSolidSet build_counterexample(const CounterexampleConfig &cfg);

struct CounterexampleReport {
  std::size_t truncation = 0;
  Rational sup_l2_squared;           ///< N^2, attained at f_N
  Rational linf_bound;               ///< N
  std::vector<Rational> indicator_gauges; ///< p_B(e_k) = 1/k
  Rational min_indicator_minkowski;  ///< 1/N
  bool zero_set_trivial = false;
};

/// Every gauge is computed by LP; the norms come from the vertex maximum.
CounterexampleReport counterexample_report(const CounterexampleConfig &cfg);

using MembershipOracle =
    std::function<bool(const SemiSolidSet &, const RandomVariable &, const Rational &)>;

/// semisolid_member with its scale doubled; for harness self-tests only.
bool mutated_membership(const SemiSolidSet &set, const RandomVariable &x, const Rational &scale);

struct LemmaTally {
  std::string lemma;
  std::size_t checks = 0;
  std::size_t violations = 0;
};

struct Counterinstance {
  std::size_t instance = 0;
  std::string lemma;
  std::string detail;
};

struct LemmaSuiteReport {
  std::uint64_t seed = 0;
  std::size_t instances = 0;
  std::vector<LemmaTally> tallies;
  std::optional<Counterinstance> first_violation;

  std::size_t total_checks() const;
  std::size_t total_violations() const;
};

struct LemmaSuiteOptions {
  MembershipOracle membership;  ///< defaults to semisolid_member
};

/// Random semi-solid sets and markets from `seed`, checked against the
/// semi-solidity/convexity, B_alpha = alpha B, gauge, alpha B = {p <= alpha}
/// and zero-intersection statements. Throws ContractViolation when
/// instances == 0.
LemmaSuiteReport verify_lemma_suite(std::uint64_t seed, std::size_t instances,
                                    const LemmaSuiteOptions &options = {});

} // namespace ftap
