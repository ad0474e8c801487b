#include "ftap/rational.hpp"

#include <ostream>
#include <stdexcept>

namespace ftap {

namespace {

bool is_digit_run(std::string_view s) {
  if (s.empty()) {
    return false;
  }
  for (char c : s) {
    if (c < '0' || c > '9') {
      return false;
    }
  }
  return true;
}

mpz_class to_mpz(std::string_view digits) {
  return mpz_class(std::string(digits), 10);
}

} // namespace

static_assert(sizeof(long) == sizeof(std::int64_t), "LP64 platform expected");

Rational::Rational(std::int64_t value) : value_(static_cast<long>(value)) {}

Rational::Rational(std::int64_t num, std::int64_t den) {
  if (den == 0) {
    throw std::domain_error("Rational: zero denominator");
  }
  value_ = mpq_class(static_cast<long>(num), 1L);
  value_ /= mpq_class(static_cast<long>(den), 1L);
}

std::optional<Rational> Rational::parse(std::string_view text) {
  bool negative = false;
  if (!text.empty() && (text.front() == '-' || text.front() == '+')) {
    negative = text.front() == '-';
    text.remove_prefix(1);
  }
  auto slash = text.find('/');
  std::string_view num_part = text.substr(0, slash);
  std::string_view den_part =
      slash == std::string_view::npos ? std::string_view("1") : text.substr(slash + 1);
  if (!is_digit_run(num_part) || !is_digit_run(den_part)) {
    return std::nullopt;
  }
  mpz_class den = to_mpz(den_part);
  if (den == 0) {
    return std::nullopt;
  }
  mpq_class q(to_mpz(num_part), den);
  q.canonicalize();
  if (negative) {
    q = -q;
  }
  return Rational(std::move(q));
}

Rational Rational::from_string(std::string_view text) {
  auto r = parse(text);
  if (!r) {
    throw std::invalid_argument("not an exact rational: '" + std::string(text) + "'");
  }
  return *r;
}

std::string Rational::to_string() const { return value_.get_str(10); }

std::string Rational::numerator_string() const {
  return value_.get_num().get_str(10);
}

std::string Rational::denominator_string() const {
  return value_.get_den().get_str(10);
}

bool Rational::is_integer() const { return value_.get_den() == 1; }

Rational Rational::operator-() const { return Rational(mpq_class(-value_)); }

Rational &Rational::operator+=(const Rational &rhs) {
  value_ += rhs.value_;
  return *this;
}

Rational &Rational::operator-=(const Rational &rhs) {
  value_ -= rhs.value_;
  return *this;
}

Rational &Rational::operator*=(const Rational &rhs) {
  value_ *= rhs.value_;
  return *this;
}

Rational &Rational::operator/=(const Rational &rhs) {
  if (rhs.is_zero()) {
    throw std::domain_error("Rational: division by zero");
  }
  value_ /= rhs.value_;
  return *this;
}

Rational abs(const Rational &x) { return x.sign() < 0 ? -x : x; }
Rational min(const Rational &a, const Rational &b) { return b < a ? b : a; }
Rational max(const Rational &a, const Rational &b) { return a < b ? b : a; }

std::ostream &operator<<(std::ostream &os, const Rational &x) {
  return os << x.to_string();
}

const Rational &ExtendedRational::value() const {
  if (!value_) {
    throw std::logic_error("ExtendedRational: value() on +inf");
  }
  return *value_;
}

std::string ExtendedRational::to_string() const {
  return value_ ? value_->to_string() : std::string("inf");
}

std::strong_ordering operator<=>(const ExtendedRational &a, const ExtendedRational &b) {
  if (a.is_infinite() || b.is_infinite()) {
    return a.is_infinite() <=> b.is_infinite();
  }
  return *a.value_ <=> *b.value_;
}

std::ostream &operator<<(std::ostream &os, const ExtendedRational &x) {
  return os << x.to_string();
}

} // namespace ftap
