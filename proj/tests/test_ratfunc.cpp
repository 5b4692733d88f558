#include "doctest.h"

#include "ecfam/expr.hpp"
#include "ecfam/ratfunc.hpp"

using namespace ecfam;

TEST_CASE("canonical form") {
  RatFunc f(Poly::from_ints({-1, 0, 1}), Poly::from_ints({-2, 2}));  // (x^2-1)/(2x-2)
  CHECK(f.den() == Poly(Rational(1)));
  CHECK(f.num() == Poly({make_rational(1, 2), make_rational(1, 2)}));
  RatFunc g(Poly::from_ints({3}), Poly::from_ints({-6, -4}));
  CHECK(g.den() == Poly::from_ints({3, 2}));
  CHECK(g.num() == Poly::from_ints({-3}) * make_rational(1, 2));
  // Two constructions of the same function agree.
  RatFunc a(Poly::from_ints({2, 2}), Poly::from_ints({4, 0, 4}));
  RatFunc b(Poly::from_ints({-1, -1}), Poly::from_ints({-2, 0, -2}));
  CHECK(a == b);
  CHECK_THROWS_AS(RatFunc(Poly::from_ints({1}), Poly()), ZeroDenominatorError);
}

TEST_CASE("evaluation and poles") {
  RatFunc f = parse_ratfunc("(17k^2-60k)/(15k^2-225)", "k");
  CHECK(f.eval(1) == make_rational(43, 210));
  CHECK_THROWS_AS(parse_ratfunc("1/(k-1)", "k").eval(1), PoleError);
  CHECK_THROWS_AS(parse_ratfunc("1/(k-k)", "k"), ParseError);
}

TEST_CASE("composition and inverses") {
  RatFunc id = RatFunc::variable();
  RatFunc f = parse_ratfunc("(r^3 - 2)/(r^2 + 1)", "r");
  CHECK(f.compose(id) == f);
  RatFunc m = parse_ratfunc("(r-1)/(r+1)", "r");
  RatFunc minv = parse_ratfunc("(1+r)/(1-r)", "r");
  CHECK(m.compose(minv) == id);
  CHECK(minv.compose(m) == id);
  RatFunc five = RatFunc(5) - id * id;
  RatFunc sub = five.compose(parse_ratfunc("(t^2-4t-1)/(t^2+1)", "t"));
  // 5 - r^2 becomes a square times (t^2+1)^-2.
  auto sq = poly_sqrt(sub.num() * sub.den());
  CHECK(sq.has_value());
}

TEST_CASE("field arithmetic") {
  RatFunc a = parse_ratfunc("1/(x-1)", "x"), b = parse_ratfunc("1/(x+1)", "x");
  CHECK(a + b == parse_ratfunc("2x/(x^2-1)", "x"));
  CHECK(a - a == RatFunc(0));
  CHECK(a * a.inverse() == RatFunc(1));
  CHECK((a / b) == parse_ratfunc("(x+1)/(x-1)", "x"));
  CHECK(a.pow(-2) == parse_ratfunc("(x-1)^2", "x"));
  CHECK(a.derivative() == parse_ratfunc("-1/(x-1)^2", "x"));
}

TEST_CASE("parser") {
  CHECK(parse_ratfunc("-4(k-1)(2k-1)/(k^2(k-2))", "k") ==
        RatFunc(Poly::from_ints({-4, 12, -8}), Poly::from_ints({0, 0, -2, 1})));
  CHECK(parse_ratfunc("(r+1)^2(r+3)(r-0.5)", "r") ==
        parse_ratfunc("(r+1)^2(r+3)(2r-1)/2", "r"));
  CHECK(parse_ratfunc("3*k^2-12", "k") == parse_ratfunc("3k^2 - 12", "k"));
  CHECK(parse_ratfunc("r**2", "r") == parse_ratfunc("r^2", "r"));
  CHECK(parse_ratfunc("2^-1 r", "r") == parse_ratfunc("r/2", "r"));
  CHECK_THROWS_AS(parse_ratfunc("2(r+1)/(x-2)", "r"), ParseError);
  CHECK_THROWS_AS(parse_ratfunc("4r/(1-3r))", "r"), ParseError);
  CHECK_THROWS_AS(parse_ratfunc("(r+1", "r"), ParseError);
  CHECK_THROWS_AS(parse_ratfunc("", "r"), ParseError);
}

TEST_CASE("printing") {
  CHECK(to_string(parse_ratfunc("(t^2-4t-1)/(t^2+1)", "t"), "t") == "(t^2 - 4*t - 1)/(t^2 + 1)");
  CHECK(to_factored_string(parse_ratfunc("-(r^2-1)(r-1)^2(r+2)^2/(r-2)^2", "r"), "r") ==
        "-(r + 2)^2*(r + 1)*(r - 1)^3/(r - 2)^2");
}
