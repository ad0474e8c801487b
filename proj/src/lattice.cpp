#include "ftap/lattice.hpp"

#include <set>

#include "ftap/errors.hpp"

namespace ftap {

std::shared_ptr<const SampleSpace> SampleSpace::create(std::vector<std::string> outcomes,
                                                       std::vector<Rational> probabilities) {
  if (outcomes.size() != probabilities.size()) {
    throw StructuralError("sample space: outcome and probability counts differ");
  }
  if (outcomes.empty()) {
    throw ContractViolation("sample space: no outcomes");
  }
  std::set<std::string> seen;
  Rational total;
  for (std::size_t i = 0; i < outcomes.size(); ++i) {
    if (!seen.insert(outcomes[i]).second) {
      throw ContractViolation("sample space: duplicate outcome id '" + outcomes[i] + "'");
    }
    if (probabilities[i].sign() <= 0) {
      throw ContractViolation("sample space: outcome '" + outcomes[i] +
                              "' has non-positive probability " + probabilities[i].to_string());
    }
    total += probabilities[i];
  }
  if (total != 1) {
    throw ContractViolation("sample space: probabilities sum to " + total.to_string() +
                            ", expected 1");
  }
  return std::shared_ptr<const SampleSpace>(
      new SampleSpace(std::move(outcomes), std::move(probabilities)));
}

std::shared_ptr<const SampleSpace> SampleSpace::uniform(std::size_t n, const std::string &prefix) {
  std::vector<std::string> ids;
  std::vector<Rational> probs;
  for (std::size_t i = 0; i < n; ++i) {
    ids.push_back(prefix + std::to_string(i + 1));
    probs.emplace_back(1, static_cast<std::int64_t>(n));
  }
  return create(std::move(ids), std::move(probs));
}

std::size_t SampleSpace::index_of(const std::string &id) const {
  for (std::size_t i = 0; i < outcomes_.size(); ++i) {
    if (outcomes_[i] == id) {
      return i;
    }
  }
  return outcomes_.size();
}

bool same_space(const SampleSpace &a, const SampleSpace &b) { return &a == &b || a == b; }

RandomVariable::RandomVariable(SpacePtr space, std::vector<Rational> values)
    : space_(std::move(space)), values_(std::move(values)) {
  if (!space_) {
    throw StructuralError("random variable: null sample space");
  }
  if (values_.size() != space_->size()) {
    throw StructuralError("random variable: " + std::to_string(values_.size()) +
                          " values for " + std::to_string(space_->size()) + " outcomes");
  }
}

RandomVariable RandomVariable::zero(SpacePtr space) {
  auto n = space->size();
  return {std::move(space), std::vector<Rational>(n)};
}

RandomVariable RandomVariable::constant(SpacePtr space, const Rational &c) {
  auto n = space->size();
  return {std::move(space), std::vector<Rational>(n, c)};
}

RandomVariable RandomVariable::indicator(SpacePtr space, std::size_t outcome) {
  auto x = zero(std::move(space));
  if (outcome >= x.size()) {
    throw StructuralError("indicator: outcome index out of range");
  }
  x.values_[outcome] = 1;
  return x;
}

RandomVariable &RandomVariable::operator+=(const RandomVariable &rhs) {
  require_same_space(*this, rhs);
  for (std::size_t i = 0; i < values_.size(); ++i) values_[i] += rhs.values_[i];
  return *this;
}

RandomVariable &RandomVariable::operator-=(const RandomVariable &rhs) {
  require_same_space(*this, rhs);
  for (std::size_t i = 0; i < values_.size(); ++i) values_[i] -= rhs.values_[i];
  return *this;
}

RandomVariable &RandomVariable::operator*=(const Rational &k) {
  for (auto &v : values_) v *= k;
  return *this;
}

RandomVariable RandomVariable::operator-() const {
  RandomVariable out = *this;
  for (auto &v : out.values_) v = -v;
  return out;
}

bool operator==(const RandomVariable &a, const RandomVariable &b) {
  return same_space(*a.space_, *b.space_) && a.values_ == b.values_;
}

void require_same_space(const RandomVariable &x, const RandomVariable &y) {
  if (!same_space(*x.space(), *y.space())) {
    throw StructuralError("random variables live on different sample spaces");
  }
}

namespace {

template <class F> RandomVariable pointwise(const RandomVariable &x, F f) {
  std::vector<Rational> out;
  out.reserve(x.size());
  for (const auto &v : x.values()) out.push_back(f(v));
  return {x.space(), std::move(out)};
}

template <class F>
RandomVariable pointwise(const RandomVariable &x, const RandomVariable &y, F f) {
  require_same_space(x, y);
  std::vector<Rational> out;
  out.reserve(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) out.push_back(f(x[i], y[i]));
  return {x.space(), std::move(out)};
}

} // namespace

RandomVariable sup(const RandomVariable &x, const RandomVariable &y) {
  return pointwise(x, y, [](const Rational &a, const Rational &b) { return max(a, b); });
}

RandomVariable inf(const RandomVariable &x, const RandomVariable &y) {
  return pointwise(x, y, [](const Rational &a, const Rational &b) { return min(a, b); });
}

RandomVariable abs(const RandomVariable &x) {
  return pointwise(x, [](const Rational &a) { return ftap::abs(a); });
}

RandomVariable pos_part(const RandomVariable &x) {
  return pointwise(x, [](const Rational &a) { return a.sign() > 0 ? a : Rational{}; });
}

RandomVariable neg_part(const RandomVariable &x) {
  return pointwise(x, [](const Rational &a) { return a.sign() < 0 ? -a : Rational{}; });
}

bool leq(const RandomVariable &x, const RandomVariable &y) {
  require_same_space(x, y);
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] > y[i]) return false;
  }
  return true;
}

bool is_nonneg(const RandomVariable &x) {
  for (const auto &v : x.values()) {
    if (v.sign() < 0) return false;
  }
  return true;
}

bool is_zero(const RandomVariable &x) {
  for (const auto &v : x.values()) {
    if (!v.is_zero()) return false;
  }
  return true;
}

Rational expectation(const RandomVariable &x) {
  return expectation(x, x.space()->probabilities());
}

Rational expectation(const RandomVariable &x, std::span<const Rational> weights) {
  if (weights.size() != x.size()) {
    throw StructuralError("expectation: weight count differs from outcome count");
  }
  Rational s;
  for (std::size_t i = 0; i < x.size(); ++i) s += weights[i] * x[i];
  return s;
}

Rational max_abs(const RandomVariable &x) {
  Rational m;
  for (const auto &v : x.values()) m = max(m, ftap::abs(v));
  return m;
}

Rational squared_l2(const RandomVariable &x) {
  Rational s;
  for (const auto &v : x.values()) s += v * v;
  return s;
}

std::string to_string(const RandomVariable &x) {
  std::string s = "(";
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (i) s += ", ";
    s += x[i].to_string();
  }
  return s + ")";
}

} // namespace ftap
