#include <doctest.h>

#include "ftap/concept_lab.hpp"
#include "ftap/errors.hpp"
#include "models.hpp"

using namespace ftap;
using fixture::r;
using fixture::rv;

TEST_CASE("counterexample generators") {
  auto one = build_counterexample({1});
  REQUIRE(one.generators().size() == 1);
  CHECK(one.generators()[0] == RandomVariable::constant(one.space(), 1));

  auto three = build_counterexample({3});
  const auto &s = three.space();
  REQUIRE(three.generators().size() == 3);
  CHECK(three.generators()[0] == rv(s, {r(1), r(0), r(0)}));
  CHECK(three.generators()[1] == rv(s, {r(0), r(2), r(0)}));
  CHECK(three.generators()[2] == rv(s, {r(0), r(0), r(3)}));
  CHECK_THROWS_AS(build_counterexample({0}), ContractViolation);
}

TEST_CASE("counterexample report") {
  for (std::size_t n : {1u, 3u, 10u, 100u}) {
    CAPTURE(n);
    auto rep = counterexample_report({n});
    const Rational nn(static_cast<std::int64_t>(n));
    CHECK(rep.sup_l2_squared == nn * nn);
    CHECK(rep.linf_bound == nn);
    CHECK(rep.min_indicator_minkowski == Rational(1) / nn);
    CHECK(rep.zero_set_trivial);
    REQUIRE(rep.indicator_gauges.size() == n);
    for (std::size_t k = 0; k < n; ++k) {
      CHECK(rep.indicator_gauges[k] == Rational(1) / Rational(static_cast<std::int64_t>(k + 1)));
    }
  }
  auto b = build_counterexample({3});
  CHECK(minkowski(b, rv(b.space(), {r(1), r(1), r(0)})) == ExtendedRational(r(3, 2)));
}

TEST_CASE("lemma suite") {
  auto rep = verify_lemma_suite(0, 25);
  CHECK(rep.total_violations() == 0);
  CHECK_FALSE(rep.first_violation);
  CHECK(rep.total_checks() > 25 * 10);
  for (const auto &t : rep.tallies) {
    CAPTURE(t.lemma);
    CHECK(t.checks > 0);
  }

  auto single = verify_lemma_suite(7, 1);
  CHECK(single.instances == 1);
  CHECK(single.total_violations() == 0);

  CHECK_THROWS_AS(verify_lemma_suite(0, 0), ContractViolation);
}

TEST_CASE("lemma suite is deterministic in its seed") {
  auto a = verify_lemma_suite(3, 10);
  auto b = verify_lemma_suite(3, 10);
  REQUIRE(a.tallies.size() == b.tallies.size());
  for (std::size_t i = 0; i < a.tallies.size(); ++i) CHECK(a.tallies[i].checks == b.tallies[i].checks);
}

TEST_CASE("mutated membership is detected") {
  auto rep = verify_lemma_suite(0, 25, {mutated_membership});
  CHECK(rep.total_violations() > 0);
  REQUIRE(rep.first_violation);
  CHECK_FALSE(rep.first_violation->detail.empty());
}
