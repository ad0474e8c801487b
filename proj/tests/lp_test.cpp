#include <doctest.h>

#include <random>

#include "ftap/errors.hpp"
#include "ftap/lp.hpp"
#include "oracles.hpp"

using namespace ftap;
using lp::Relation;
using lp::Sense;
using lp::Status;

namespace {

lp::Problem make(Sense sense, std::vector<Rational> c, std::vector<std::vector<Rational>> a,
                 std::vector<Relation> rel, std::vector<Rational> b) {
  lp::Problem p;
  p.sense = sense;
  p.objective = std::move(c);
  p.matrix = std::move(a);
  p.relations = std::move(rel);
  p.rhs = std::move(b);
  return p;
}

} // namespace

TEST_CASE("box maximum") {
  auto p = make(Sense::Maximize, {1, 1}, {{1, 0}, {0, 1}},
                {Relation::LessEqual, Relation::LessEqual}, {1, 1});
  auto out = lp::solve(p);
  REQUIRE(out.status == Status::Optimal);
  CHECK(*out.objective_value == 2);
  CHECK(*out.primal == std::vector<Rational>{1, 1});
  CHECK(lp::verify_outcome(p, out));
}

TEST_CASE("contradictory bounds are infeasible with a Farkas certificate") {
  auto p = make(Sense::Maximize, {1}, {{-1}, {1}}, {Relation::LessEqual, Relation::LessEqual},
                {-1, 0});
  auto out = lp::solve(p);
  REQUIRE(out.status == Status::Infeasible);
  CHECK(lp::verify_outcome(p, out));
  CHECK(lp::verify_farkas(p, {*out.dual, *out.bound_dual}));
}

TEST_CASE("unbounded direction is reported as a ray") {
  auto p = make(Sense::Maximize, {1, 0}, {{1, -1}}, {Relation::LessEqual}, {0});
  auto out = lp::solve(p);
  REQUIRE(out.status == Status::Unbounded);
  CHECK(*out.ray == std::vector<Rational>{1, 1});
  CHECK(lp::verify_outcome(p, out));
}

TEST_CASE("degenerate instance with a duplicated binding row terminates") {
  auto p = make(Sense::Maximize, {1, 1, 1}, {{1, 1, 1}, {1, 1, 1}, {1, 0, 0}},
                {Relation::LessEqual, Relation::LessEqual, Relation::LessEqual}, {1, 1, 1});
  auto out = lp::solve(p);
  REQUIRE(out.status == Status::Optimal);
  Rational best = -1000;
  for (const auto &v : oracle::lp_vertices(p)) best = max(best, lp::dot(p.objective, v));
  CHECK(*out.objective_value == best);
  CHECK(best == 1);
  CHECK(lp::verify_outcome(p, out));
}

TEST_CASE("Beale's cycling example terminates under Bland's rule") {
  auto p = make(Sense::Maximize, {Rational(3, 4), -20, Rational(1, 2), -6},
                {{Rational(1, 4), -8, -1, 9}, {Rational(1, 2), -12, Rational(-1, 2), 3}, {0, 0, 1, 0}},
                {Relation::LessEqual, Relation::LessEqual, Relation::LessEqual}, {0, 0, 1});
  auto out = lp::solve(p);
  REQUIRE(out.status == Status::Optimal);
  CHECK(*out.objective_value == Rational(5, 4));
  Rational best = -1000;
  for (const auto &v : oracle::lp_vertices(p)) best = max(best, lp::dot(p.objective, v));
  CHECK(*out.objective_value == best);
  CHECK(lp::verify_outcome(p, out));
}

TEST_CASE("feasibility returns exact witnesses and certificates") {
  auto yes = make(Sense::Maximize, {0}, {{1}}, {Relation::Equal}, {Rational(1, 3)});
  auto f = lp::feasible(yes);
  REQUIRE(f.feasible);
  CHECK(f.witness == std::vector<Rational>{Rational(1, 3)});

  auto no = make(Sense::Maximize, {0}, {{1}, {1}}, {Relation::GreaterEqual, Relation::LessEqual},
                 {1, 0});
  auto g = lp::feasible(no);
  REQUIRE_FALSE(g.feasible);
  REQUIRE(g.certificate);
  CHECK(lp::verify_farkas(no, *g.certificate));

  // Binomial martingale system: 2q + (1 - q)/2 = 1 with q_u + q_d = 1.
  auto mart = make(Sense::Maximize, {0, 0}, {{1, 1}, {2, Rational(1, 2)}},
                   {Relation::Equal, Relation::Equal}, {1, 1});
  auto h = lp::feasible(mart);
  REQUIRE(h.feasible);
  CHECK(h.witness == std::vector<Rational>{Rational(1, 3), Rational(2, 3)});
}

TEST_CASE("free variables and upper bounds") {
  // minimize x subject to x >= -3 with x free, upper bound 5 on y.
  lp::Problem p;
  p.sense = Sense::Minimize;
  auto x = p.add_variable(1, {.free_below = true});
  auto y = p.add_variable(-1, {.upper = Rational(5)});
  std::vector<Rational> row(2);
  row[x] = 1;
  p.add_row(row, Relation::GreaterEqual, -3);
  auto out = lp::solve(p);
  REQUIRE(out.status == Status::Optimal);
  CHECK(*out.objective_value == -8);
  CHECK((*out.primal)[y] == 5);
  CHECK(lp::verify_outcome(p, out));

  // x <= -2 with x free and objective max x: optimum -2 through the bound.
  lp::Problem q;
  q.add_variable(1, {.free_below = true, .upper = Rational(-2)});
  auto o2 = lp::solve(q);
  REQUIRE(o2.status == Status::Optimal);
  CHECK(*o2.objective_value == -2);
  CHECK(lp::verify_outcome(q, o2));
}

TEST_CASE("malformed problems are structural errors") {
  lp::Problem p;
  p.objective = {1, 2};
  p.matrix = {{1}};
  p.relations = {Relation::LessEqual};
  p.rhs = {1};
  CHECK_THROWS_AS(lp::solve(p), StructuralError);
  p.matrix = {{1, 2}};
  p.rhs = {};
  CHECK_THROWS_AS(lp::feasible(p), StructuralError);
}

TEST_CASE("random LPs agree with vertex enumeration and certify") {
  std::mt19937_64 rng(20240601);
  int optimal = 0, unbounded = 0, infeasible = 0;
  for (int trial = 0; trial < 300; ++trial) {
    auto p = oracle::random_lp(rng);
    auto out = lp::solve(p);
    REQUIRE(lp::verify_outcome(p, out));
    auto verts = oracle::lp_vertices(p);
    switch (out.status) {
    case Status::Optimal: {
      ++optimal;
      REQUIRE_FALSE(verts.empty());
      Rational best = lp::dot(p.objective, verts[0]);
      for (const auto &v : verts) {
        Rational val = lp::dot(p.objective, v);
        best = p.sense == Sense::Maximize ? max(best, val) : min(best, val);
      }
      CHECK(best == *out.objective_value);
      break;
    }
    case Status::Unbounded:
      ++unbounded;
      CHECK_FALSE(verts.empty());
      break;
    case Status::Infeasible:
      ++infeasible;
      CHECK(verts.empty());
      break;
    }
    // Deterministic: same vertex on a second solve.
    auto again = lp::solve(p);
    CHECK(again.primal == out.primal);
  }
  CHECK(optimal > 0);
  CHECK(unbounded > 0);
  CHECK(infeasible > 0);
}
