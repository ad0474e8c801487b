#pragma once

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace ftap {

/// Exact fraction backed by GMP. Always canonical: lowest terms, positive
/// denominator.
class Rational {
public:
  Rational() = default;
  Rational(std::int64_t value); // NOLINT(google-explicit-constructor)
  Rational(std::int64_t num, std::int64_t den);

  /// Accepts "p/q", "p" or "-p/q" with decimal integers. Anything else,
  /// including decimal points and exponents, is rejected.
  static std::optional<Rational> parse(std::string_view text);
  /// Like parse() but throws std::invalid_argument.
  static Rational from_string(std::string_view text);

  std::string to_string() const;
  std::string numerator_string() const;
  std::string denominator_string() const;

  int sign() const { return sgn(value_); }
  bool is_zero() const { return sign() == 0; }
  bool is_integer() const;
  double to_double() const { return value_.get_d(); }

  Rational operator-() const;
  Rational &operator+=(const Rational &rhs);
  Rational &operator-=(const Rational &rhs);
  Rational &operator*=(const Rational &rhs);
  /// Division by zero throws std::domain_error.
  Rational &operator/=(const Rational &rhs);

  friend Rational operator+(Rational lhs, const Rational &rhs) { return lhs += rhs; }
  friend Rational operator-(Rational lhs, const Rational &rhs) { return lhs -= rhs; }
  friend Rational operator*(Rational lhs, const Rational &rhs) { return lhs *= rhs; }
  friend Rational operator/(Rational lhs, const Rational &rhs) { return lhs /= rhs; }

  friend bool operator==(const Rational &a, const Rational &b) {
    return cmp(a.value_, b.value_) == 0;
  }
  friend std::strong_ordering operator<=>(const Rational &a, const Rational &b) {
    int c = cmp(a.value_, b.value_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

  const mpq_class &raw() const { return value_; }

private:
  explicit Rational(mpq_class v) : value_(std::move(v)) {}
  mpq_class value_{0};
};

Rational abs(const Rational &x);
Rational min(const Rational &a, const Rational &b);
Rational max(const Rational &a, const Rational &b);
std::ostream &operator<<(std::ostream &os, const Rational &x);

/// A rational or +infinity; the codomain of gauges and sup-type LPs.
class ExtendedRational {
public:
  ExtendedRational(Rational v) : value_(std::move(v)) {} // NOLINT
  static ExtendedRational infinity() { return ExtendedRational(); }

  bool is_infinite() const { return !value_.has_value(); }
  bool is_finite() const { return value_.has_value(); }
  /// Throws std::logic_error on infinity.
  const Rational &value() const;
  std::string to_string() const;

  friend bool operator==(const ExtendedRational &a, const ExtendedRational &b) {
    return a.value_ == b.value_;
  }
  friend std::strong_ordering operator<=>(const ExtendedRational &a,
                                          const ExtendedRational &b);

private:
  ExtendedRational() = default;
  std::optional<Rational> value_;
};

std::ostream &operator<<(std::ostream &os, const ExtendedRational &x);

} // namespace ftap
