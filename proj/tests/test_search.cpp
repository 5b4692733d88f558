#include "doctest.h"
#include "test_support.hpp"

#include "ecfam/expr.hpp"
#include "ecfam/families.hpp"
#include "ecfam/search.hpp"

using namespace ecfam;

namespace {

RatFunc rf(const char* s) { return parse_ratfunc(s, "r"); }

SearchConfig small() {
  SearchConfig c;
  c.exponent_min = -1;
  c.exponent_max = 1;
  c.degree_cap = 1;
  c.coeff_bound = 2;
  c.pair_coeff_bound = 1;
  return c;
}

}  // namespace

TEST_CASE("rhs profile on z8") {
  const auto& z8 = family("z8");
  auto p = rhs_profile(z8.curve, rf("1 - r^2"));
  CHECK(p.kind == ProfileKind::SquareTimesQuad);
  CHECK(p.condition.key() == normalize_condition(Rational(-1), Rational(0), Rational(5)).key());
  CHECK(z8.curve.rhs(rf("1 - r^2")) == p.F * p.F * RatFunc(p.condition.poly()));

  auto q = rhs_profile(z8.curve, rf("(r+1)^4"));
  CHECK(q.condition.to_string("r") == "r^2 + 4");
  CHECK(z8.curve.rhs(rf("(r+1)^4")) == q.F * q.F * RatFunc(q.condition.poly()));

  CHECK(rhs_profile(z8.curve, rf("r")).kind == ProfileKind::Reject);
  CHECK_THROWS_AS(rhs_profile(z8.curve, RatFunc(0)), std::domain_error);
}

TEST_CASE("config parsing") {
  auto c = parse_search_config("# bounds\nexponent_range = -3..1\ncoeff_bound = 4\n\ndedup = false\n");
  CHECK(c.exponent_min == -3);
  CHECK(c.exponent_max == 1);
  CHECK(c.coeff_bound == 4);
  CHECK_FALSE(c.dedup);
  CHECK(parse_search_config(describe(c)).exponent_min == -3);
  CHECK_THROWS_AS(parse_search_config("colour = red"), std::invalid_argument);
  CHECK_THROWS_AS(parse_search_config("coeff_bound = five"), std::invalid_argument);
  CHECK_THROWS_AS(parse_search_config("exponent_range = 2..1"), std::invalid_argument);
  CHECK_THROWS_AS(parse_search_config("coeff_bound"), std::invalid_argument);
}

TEST_CASE("orbit key is translation invariant") {
  const auto& z8 = family("z8");
  RatFunc x = rf("1 - r^2");
  std::string key = orbit_key(z8, x);
  for (const auto& t : z8.torsion) {
    if (t.order != 2) continue;
    RatFunc dx = x - t.point.x;
    RatFunc moved = z8.curve.rhs(x) / (dx * dx) - z8.curve.A - x - t.point.x;
    CHECK(orbit_key(z8, moved) == key);
  }
  CHECK(orbit_key(z8, x.reflect()) == key);
}

TEST_CASE("small z8 grid") {
  const auto& z8 = family("z8");
  auto res = enumerate_hits(z8, small());
  CHECK_FALSE(res.partial);
  CHECK(res.candidates > 1000);
  CHECK(res.survivors >= res.hits.size());
  bool five = false;
  for (const auto& h : res.hits) {
    CHECK(z8.curve.rhs(h.x) == h.F * h.F * RatFunc(h.condition.poly()));
    if (h.condition.even_key() == normalize_condition(Rational(-1), Rational(0), Rational(5)).even_key()) five = true;
  }
  CHECK(five);

  auto rows = reproduce_table(z8, table_rows("table1"), res);
  REQUIRE(rows.size() == 12);
  for (const auto& r : rows) CHECK_MESSAGE(r.matched, r.row.point);
  CHECK(rows[1].in_grid);
}

TEST_CASE("candidate cap") {
  auto c = small();
  c.max_candidates = 50;
  auto res = enumerate_hits(family("z8"), c);
  CHECK(res.partial);
}

TEST_CASE("worker count does not change hits") {
  auto c = small();
  auto one = enumerate_hits(family("z8"), c);
  c.workers = 3;
  auto three = enumerate_hits(family("z8"), c);
  REQUIRE(one.hits.size() == three.hits.size());
  for (std::size_t i = 0; i < one.hits.size(); ++i) CHECK(one.hits[i].orbit_key == three.hits[i].orbit_key);
  CHECK(one.candidates == three.candidates);
}

TEST_CASE("z7 table typo resolved") {
  const auto& z7 = family("z7");
  SearchResult empty;
  auto rows = reproduce_table(z7, table_rows("table2"), empty);
  REQUIRE(rows.size() == 11);
  for (const auto& r : rows) CHECK_MESSAGE(r.matched, r.row.point);
  CHECK(rows[6].used_quadratic == "100r^2-116r+25");
  CHECK(rows[0].used_quadratic == rows[0].row.quadratic);
  CHECK_THROWS_AS(table_rows("table3"), std::invalid_argument);
}
