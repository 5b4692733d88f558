#include "doctest.h"
#include "test_support.hpp"

#include <random>

#include "ecfam/conic.hpp"
#include "ecfam/expr.hpp"

using namespace ecfam;

TEST_CASE("normalization") {
  auto q = normalize_condition(Rational(-4), Rational(0), Rational(20));
  CHECK(q.kernel == -1);
  CHECK(q.a == 1);
  CHECK(q.b == 0);
  CHECK(q.c == -5);
  CHECK(q.scale == 2);
  CHECK(q.poly() == parse_ratfunc("5 - r^2", "r").num());

  auto s = normalize_condition(Rational(9), Rational(12), Rational(4));
  CHECK(s.already_square);

  // Square multiples share a key.
  CHECK(normalize_condition(Rational(2), Rational(0), Rational(-1)).key() ==
        normalize_condition(Rational(18), Rational(0), Rational(-9)).key());
  CHECK(normalize_condition(Rational(1), Rational(3), Rational(1)).key() !=
        normalize_condition(Rational(1), Rational(-3), Rational(1)).key());
  CHECK(normalize_condition(Rational(1), Rational(3), Rational(1)).even_key() ==
        normalize_condition(Rational(1), Rational(-3), Rational(1)).even_key());
  CHECK_THROWS_AS(normalize_condition(Rational(0), Rational(0), Rational(0)), std::invalid_argument);
}

TEST_CASE("small points") {
  auto q = normalize_condition(Rational(-1), Rational(0), Rational(5));
  auto pt = find_point(q);
  REQUIRE(pt);
  CHECK(pt->p == 1);
  CHECK(pt->q == 2);

  // -(2r^2+1) is never a square.
  CHECK_FALSE(find_point(normalize_condition(Rational(-2), Rational(0), Rational(-1))));
  // 2r^2 + 3 has no point at all (mod 3); the search just gives up.
  CHECK_FALSE(find_point(normalize_condition(Rational(2), Rational(0), Rational(3)), 20));
}

TEST_CASE("z8 rank one parametrization") {
  auto par = parametrize(Rational(-1), Rational(0), Rational(5), ConicPoint{1, 2});
  CHECK(par.map == parse_ratfunc("(k^2-4k-1)/(k^2+1)", "k"));
  CHECK(-par.map * par.map + RatFunc(5) == par.witness * par.witness);
}

TEST_CASE("identity over random conics") {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<long> d(-9, 9);
  int checked = 0;
  for (int i = 0; i < 400 && checked < 40; ++i) {
    Rational a(d(rng)), b(d(rng)), c(d(rng));
    if (a == 0 && b == 0) continue;
    auto q = normalize_condition(a, b, c);
    auto pt = find_point(q, 30);
    if (!pt) continue;
    auto par = parametrize(q, *pt);
    RatFunc r = par.map;
    CHECK(RatFunc(q.coef_a()) * r * r + RatFunc(q.coef_b()) * r + RatFunc(q.coef_c()) == par.witness * par.witness);
    ++checked;
  }
  CHECK(checked == 40);
}

TEST_CASE("bad base point") {
  CHECK_THROWS_AS(parametrize(Rational(-1), Rational(0), Rational(5), ConicPoint{1, 3}), std::invalid_argument);
}

TEST_CASE("worked conics") {
  auto a = find_point(normalize_condition(Rational(1), Rational(0), Rational(1)));
  REQUIRE(a);
  CHECK((a->p == 0 && a->q == 1));
  auto b = find_point(normalize_condition(Rational(4), Rational(9), Rational(1)));
  REQUIRE(b);
  CHECK((b->p == 0 && b->q == 1));
  auto c = parametrize(Rational(-7), Rational(0), Rational(16), ConicPoint{1, 3});
  CHECK(c.map == parse_ratfunc("(k^2-6k-7)/(k^2+7)", "k"));
  // a = 1, c = 0: r^2 + 2r through the origin.
  auto d = parametrize(Rational(1), Rational(2), Rational(0), ConicPoint{0, 0});
  CHECK(d.map == parse_ratfunc("2/(k^2-1)", "k"));
  CHECK(d.map * d.map + RatFunc(2) * d.map == d.witness * d.witness);
}
