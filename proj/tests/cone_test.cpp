#include <doctest.h>

#include "ftap/cone.hpp"
#include "ftap/errors.hpp"
#include "ftap/random_instances.hpp"
#include "models.hpp"

using namespace ftap;
using fixture::r;
using fixture::rv;

TEST_CASE("cone membership with the negative orthant") {
  auto s = SampleSpace::uniform(2);
  PolyhedralCone cone{s, {rv(s, {r(1), r(-1)})}, true};
  auto in = cone_membership(cone, rv(s, {r(1), r(-2)}));
  REQUIRE(in.member);
  // Any lambda in [1, 2] works; check the witness by substitution.
  REQUIRE(in.weights.size() == 1);
  REQUIRE(in.slack);
  CHECK(is_nonneg(*in.slack));
  CHECK(in.weights[0] * cone.generators[0] - *in.slack == rv(s, {r(1), r(-2)}));

  auto out = cone_membership(cone, rv(s, {r(1), r(0)}));
  CHECK_FALSE(out.member);
  REQUIRE(out.certificate);
  CHECK(cone_member(cone, RandomVariable::zero(s)));
  CHECK(cone_member(PolyhedralCone{s, {}, false}, RandomVariable::zero(s)));
  CHECK_FALSE(cone_member(PolyhedralCone{s, {}, false}, rv(s, {r(0), r(-1)})));
}

TEST_CASE("cone certificate separates the point") {
  // The Farkas multipliers on the equality rows give c with c.g <= 0 and
  // c >= 0 while c.x > 0.
  auto s = SampleSpace::uniform(2);
  PolyhedralCone cone{s, {rv(s, {r(1), r(-1)})}, true};
  auto x = rv(s, {r(1), r(0)});
  auto out = cone_membership(cone, x);
  REQUIRE(out.certificate);
  auto c = out.certificate->rows;
  REQUIRE(c.size() == 2);
  if (c[0] * x[0] + c[1] * x[1] < 0) {
    for (auto &v : c) v = -v;
  }
  CHECK(c[0] * x[0] + c[1] * x[1] > 0);
  CHECK(c[0] - c[1] <= 0);
  CHECK(c[0] >= 0);
  CHECK(c[1] >= 0);
}

TEST_CASE("semi-solid membership") {
  auto s = SampleSpace::uniform(2);
  SemiSolidSet b(s, {rv(s, {r(1), r(1)})});
  auto half = rv(s, {r(1, 2), r(1, 2)});
  CHECK(semisolid_member(b, half, 1));
  CHECK_FALSE(semisolid_member(b, half, r(1, 4)));
  CHECK_FALSE(semisolid_member(b, rv(s, {r(-1, 10), r(0)}), 1));
  CHECK_THROWS_AS(semisolid_member(b, half, 0), ContractViolation);
  CHECK_THROWS_AS(SemiSolidSet(s, {rv(s, {r(1), r(-1)})}), ContractViolation);
}

TEST_CASE("Minkowski functional on the truncated sequence example") {
  auto s = SampleSpace::uniform(3);
  SemiSolidSet b(s, {rv(s, {r(1), r(0), r(0)}), rv(s, {r(0), r(2), r(0)}),
                     rv(s, {r(0), r(0), r(3)})});
  CHECK(minkowski(b, RandomVariable::zero(s)) == ExtendedRational(r(0)));
  CHECK(minkowski(b, RandomVariable::indicator(s, 1)) == ExtendedRational(r(1, 2)));
  CHECK(minkowski(b, rv(s, {r(1), r(1), r(0)})) == ExtendedRational(r(3, 2)));
  CHECK(minkowski(b, rv(s, {r(-1), r(0), r(0)})).is_infinite());
}

TEST_CASE("gauge is +inf off the span of the generators") {
  auto s = SampleSpace::uniform(2);
  SemiSolidSet b(s, {rv(s, {r(1), r(0)})});
  CHECK(minkowski(b, RandomVariable::indicator(s, 1)).is_infinite());
  CHECK(zero_set_trivial(b));
}

TEST_CASE("boundedness") {
  auto s = SampleSpace::uniform(2);
  auto one = is_bounded(SemiSolidSet(s, {rv(s, {r(1), r(1)})}));
  CHECK(one.bounded);
  CHECK(*one.linf_bound == r(1));
  CHECK(*one.sup_l2_squared == r(2));
  auto empty = is_bounded(SemiSolidSet(s, {}));
  CHECK(empty.bounded);
  CHECK(*empty.linf_bound == r(0));
  CHECK(zero_set_trivial(SemiSolidSet(s, {rv(s, {r(1), r(1)})})));
}

TEST_CASE("a set with a nonnegative recession direction is unbounded") {
  auto s = SampleSpace::uniform(2);
  SemiSolidSet b(s, {RandomVariable::constant(s, 1)}, {rv(s, {r(1), r(-1, 2)}), rv(s, {r(-1), r(1, 2)})});
  auto rep = is_bounded(b);
  CHECK(rep.bounded);
  SemiSolidSet arb(s, {RandomVariable::constant(s, 1)}, {rv(s, {r(1), r(1, 2)})});
  CHECK_FALSE(is_bounded(arb).bounded);
  CHECK_FALSE(zero_set_trivial(arb));
}

TEST_CASE("gauge properties on random sets") {
  random::Engine rng(5);
  for (int trial = 0; trial < 150; ++trial) {
    auto s = SampleSpace::uniform(1 + trial % 4);
    auto b = random::semisolid(rng, s, 3, 5, 3);
    auto x = random::nonneg_variable(rng, s, 5, 3);
    auto y = x + random::nonneg_variable(rng, s, 3, 2);
    CAPTURE(to_string(x));
    auto px = minkowski(b, x);
    CHECK(px <= minkowski(b, y));
    CHECK((px <= ExtendedRational(r(1))) == semisolid_member(b, x, 1));
    Rational alpha(1 + trial % 9, 10);
    CHECK(semisolid_member(b, x, alpha) == (px <= ExtendedRational(alpha)));
    if (px.is_finite()) {
      Rational a = random::positive_rational(rng, 6, 4);
      CHECK(minkowski(b, a * x) == ExtendedRational(a * px.value()));
    }
    // A generator-only set is bounded by the largest generator entry.
    Rational linf;
    for (const auto &g : b.generators()) linf = max(linf, max_abs(g));
    CHECK(*is_bounded(b).linf_bound == linf);
  }
}
