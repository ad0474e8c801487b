#include <doctest.h>

#include "ftap/na_concepts.hpp"
#include "ftap/random_instances.hpp"
#include "models.hpp"

using namespace ftap;
using fixture::r;
using fixture::rv;

TEST_CASE("verdicts on the reference models") {
  auto bin = full_verdict(fixture::binomial(r(2), r(1, 2)));
  CHECK(bin.na);
  CHECK(bin.all_agree());
  CHECK(bin.separator_exists);

  auto dom = full_verdict(fixture::binomial(r(2), r(3, 2)));
  CHECK_FALSE(dom.na);
  CHECK_FALSE(dom.nfl_equiv);
  CHECK(dom.all_agree());

  CHECK(full_verdict(fixture::constant_asset()).na);
  CHECK(full_verdict(fixture::trinomial()).emm_exists);
  CHECK(full_verdict(fixture::two_period_binomial()).nupbr);
}

TEST_CASE("agreement error carries the verdicts and the model") {
  ConceptVerdicts v;
  v.na = true;
  AgreementError e(v, fixture::trinomial());
  CHECK(e.verdicts().na);
  CHECK(e.model().space()->size() == 3);
  CHECK(std::string(e.what()).find("na=true") != std::string::npos);
}

TEST_CASE("budget check") {
  auto bin = fixture::binomial(r(2), r(1, 2));
  CHECK(emm_budget_check(bin, Measure{bin.space(), {r(1, 3), r(2, 3)}}));
  CHECK(emm_budget_check(bin, Measure{bin.space(), {r(1, 2), r(1, 2)}}));
  auto c = fixture::constant_asset();
  CHECK(emm_budget_check(c, Measure{c.space(), {r(1, 3), r(1, 3), r(1, 3)}}));
  auto dom = fixture::binomial(r(2), r(3, 2));
  CHECK_FALSE(emm_budget_check(dom, Measure{dom.space(), {r(1, 2), r(1, 2)}}));
}

TEST_CASE("zero gauge and the intersection of B_alpha") {
  auto dom = fixture::binomial(r(2), r(3, 2));
  CHECK(zero_gauge_matches_intersection(dom, rv(dom.space(), {r(1), r(1, 2)})));
  CHECK(zero_gauge_matches_intersection(dom, rv(dom.space(), {r(3), r(1)})));
  auto bin = fixture::binomial(r(2), r(1, 2));
  CHECK(zero_gauge_matches_intersection(bin, rv(bin.space(), {r(1), r(0)})));
  CHECK(b_zero_inside_intersection(dom, {rv(dom.space(), {r(1), r(7)})}));
  CHECK(b_zero_inside_intersection(bin, {}));
}

TEST_CASE("all six verdicts agree on random markets") {
  random::Engine rng(101);
  int arbitrage = 0;
  for (int trial = 0; trial < 150; ++trial) {
    auto m = random::market(rng);
    ConceptVerdicts v;
    CHECK_NOTHROW(v = full_verdict(m));
    if (!v.na) ++arbitrage;
    auto x = random::nonneg_variable(rng, m.space(), 5, 3);
    CHECK(zero_gauge_matches_intersection(m, x));
    CHECK(b_zero_inside_intersection(m, {x}));
  }
  // The generator must exercise both sides.
  CHECK(arbitrage > 20);
  CHECK(arbitrage < 130);
}
