#include "doctest.h"

#include <cmath>
#include <stdexcept>

#include "ecfam/arith.hpp"

using namespace ecfam;

TEST_CASE("rationals are canonical") {
  Rational q = make_rational(6, -4);
  CHECK(q.get_num() == -3);
  CHECK(q.get_den() == 2);
  CHECK_THROWS_AS(make_rational(1, 0), std::domain_error);
}

TEST_CASE("gcd of large coprime integers") {
  CHECK(gcd(Integer(9591409), Integer("561850417010211840")) == 1);
  CHECK(gcd(Integer(12), Integer(18)) == 6);
  CHECK(lcm(Integer(4), Integer(6)) == 12);
}

TEST_CASE("factorizations by trial division") {
  auto f = trial_factor(Integer(9591409));
  REQUIRE(f.complete());
  REQUIRE(f.primes.size() == 2);
  CHECK(f.primes[0] == std::pair<Integer, unsigned>(19, 2));
  CHECK(f.primes[1] == std::pair<Integer, unsigned>(163, 2));

  auto g = trial_factor(Integer("561850417010211840"));
  REQUIRE(g.complete());
  std::vector<std::pair<Integer, unsigned>> expect{{2, 10}, {3, 8}, {5, 1}, {7, 1}, {29, 3}, {313, 2}};
  CHECK(g.primes == expect);
}

TEST_CASE("square detection") {
  CHECK(is_square(Rational(Integer("456366899570319360000"))));
  CHECK(*exact_sqrt(Integer("456366899570319360000")) == Integer("21362745600"));
  CHECK_FALSE(is_square(Rational(2)));
  CHECK_FALSE(is_square(Rational(-4)));
  CHECK(is_square(make_rational(9, 49)));

  auto sp = square_part(make_rational(-72, 5));
  CHECK(sp.kernel == -10);
  CHECK(sp.root == make_rational(6, 5));
  CHECK(Rational(sp.kernel) * sp.root * sp.root == make_rational(-72, 5));
}

TEST_CASE("square part with a prime square near the trial bound") {
  Integer p(999983), q("1000000007");
  auto sp = square_part(Rational(p * p * q));
  CHECK(sp.kernel == q);
  CHECK(sp.root == Rational(p));
}

TEST_CASE("rational evaluation example") {
  Rational k = 1;
  Rational v = (17 * k * k - 60 * k) / (15 * k * k - 225);
  CHECK(v == make_rational(43, 210));
}

TEST_CASE("divisors") {
  auto d = positive_divisors(trial_factor(Integer(12)));
  CHECK(d == std::vector<Integer>{1, 2, 3, 4, 6, 12});
}

TEST_CASE("parse_rational") {
  CHECK(parse_rational("-3/6") == make_rational(-1, 2));
  CHECK(parse_rational(" 17 ") == Rational(17));
  CHECK_THROWS_AS(parse_rational("0.5"), std::invalid_argument);
  CHECK_THROWS_AS(parse_rational("1/0"), std::invalid_argument);
  CHECK_THROWS_AS(parse_rational("1e3"), std::invalid_argument);
}

TEST_CASE("log of huge integers") {
  Integer n = 1;
  for (int i = 0; i < 3000; ++i) n *= 10;
  CHECK(log_abs(n) == doctest::Approx(3000 * std::log(10.0)));
}
