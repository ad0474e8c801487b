#pragma once

#include <memory>
#include <span>
#include <string>
#include <vector>

#include "ftap/rational.hpp"

namespace ftap {

/// Finite probability space. Every outcome carries strictly positive mass,
/// so almost-sure statements are pointwise statements.
class SampleSpace {
public:
  /// Throws ContractViolation on duplicate ids, non-positive weights or a
  /// total different from 1.
  static std::shared_ptr<const SampleSpace> create(std::vector<std::string> outcomes,
                                                   std::vector<Rational> probabilities);
  /// n outcomes named w1..wn with mass 1/n each.
  static std::shared_ptr<const SampleSpace> uniform(std::size_t n, const std::string &prefix = "w");

  std::size_t size() const { return outcomes_.size(); }
  const std::vector<std::string> &outcomes() const { return outcomes_; }
  const std::vector<Rational> &probabilities() const { return probabilities_; }
  /// Index of an outcome id, or size() when absent.
  std::size_t index_of(const std::string &id) const;

  friend bool operator==(const SampleSpace &a, const SampleSpace &b) {
    return a.outcomes_ == b.outcomes_ && a.probabilities_ == b.probabilities_;
  }

private:
  SampleSpace(std::vector<std::string> o, std::vector<Rational> p)
      : outcomes_(std::move(o)), probabilities_(std::move(p)) {}
  std::vector<std::string> outcomes_;
  std::vector<Rational> probabilities_;
};

using SpacePtr = std::shared_ptr<const SampleSpace>;

/// An element of L0 on a finite sample space: one exact value per outcome.
class RandomVariable {
public:
  RandomVariable(SpacePtr space, std::vector<Rational> values);
  static RandomVariable zero(SpacePtr space);
  static RandomVariable constant(SpacePtr space, const Rational &c);
  static RandomVariable indicator(SpacePtr space, std::size_t outcome);

  const SpacePtr &space() const { return space_; }
  std::size_t size() const { return values_.size(); }
  const std::vector<Rational> &values() const { return values_; }
  const Rational &operator[](std::size_t i) const { return values_[i]; }

  RandomVariable &operator+=(const RandomVariable &rhs);
  RandomVariable &operator-=(const RandomVariable &rhs);
  RandomVariable &operator*=(const Rational &k);
  friend RandomVariable operator+(RandomVariable a, const RandomVariable &b) { return a += b; }
  friend RandomVariable operator-(RandomVariable a, const RandomVariable &b) { return a -= b; }
  friend RandomVariable operator*(const Rational &k, RandomVariable a) { return a *= k; }
  friend RandomVariable operator*(RandomVariable a, const Rational &k) { return a *= k; }
  RandomVariable operator-() const;

  /// Same space (by identity or by value) and same values.
  friend bool operator==(const RandomVariable &a, const RandomVariable &b);

private:
  SpacePtr space_;
  std::vector<Rational> values_;
};

/// Throws StructuralError unless both live on the same sample space.
void require_same_space(const RandomVariable &x, const RandomVariable &y);
bool same_space(const SampleSpace &a, const SampleSpace &b);

RandomVariable sup(const RandomVariable &x, const RandomVariable &y);
RandomVariable inf(const RandomVariable &x, const RandomVariable &y);
RandomVariable abs(const RandomVariable &x);
RandomVariable pos_part(const RandomVariable &x);
RandomVariable neg_part(const RandomVariable &x);

/// Pointwise (equivalently almost-sure) order.
bool leq(const RandomVariable &x, const RandomVariable &y);
bool is_nonneg(const RandomVariable &x);
bool is_zero(const RandomVariable &x);

/// Expectation under P, or under explicit outcome weights.
Rational expectation(const RandomVariable &x);
Rational expectation(const RandomVariable &x, std::span<const Rational> weights);

Rational max_abs(const RandomVariable &x);
Rational squared_l2(const RandomVariable &x);

std::string to_string(const RandomVariable &x);

} // namespace ftap
