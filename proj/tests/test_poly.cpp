#include "doctest.h"

#include <random>

#include "ecfam/poly.hpp"

using namespace ecfam;

namespace {

Poly random_poly(std::mt19937_64& rng, int deg, int bound) {
  std::uniform_int_distribution<int> dist(-bound, bound);
  std::vector<Rational> c(static_cast<std::size_t>(deg) + 1);
  for (auto& x : c) x = dist(rng);
  if (c.back() == 0) c.back() = 1;
  return Poly(std::move(c));
}

const Poly x = Poly::variable();

}  // namespace

TEST_CASE("arithmetic and printing") {
  Poly f = Poly::from_ints({-1, -4, 1});
  CHECK(to_string(f, "t") == "t^2 - 4*t - 1");
  CHECK(to_string(f * f, "t") == "t^4 - 8*t^3 + 14*t^2 + 8*t + 1");
  CHECK(to_string(Poly(make_rational(-1, 2)) * x, "s") == "-1/2*s");
  CHECK(to_string(Poly(), "s") == "0");
  CHECK((f - f).is_zero());
  CHECK(f.eval(3) == -4);
  CHECK(f.reflect() == Poly::from_ints({-1, 4, 1}));
  CHECK((f * f.reflect()).is_even());
}

TEST_CASE("division") {
  Poly a = Poly::from_ints({1, 0, 0, 1});
  Poly b = Poly::from_ints({1, 1});
  auto [q, r] = divrem(a, b);
  CHECK(q == Poly::from_ints({1, -1, 1}));
  CHECK(r.is_zero());
  CHECK_THROWS_AS(exact_div(a, Poly::from_ints({1, 2})), std::domain_error);
  CHECK_THROWS_AS(divrem(a, Poly()), std::domain_error);
}

TEST_CASE("gcd") {
  Poly a = Poly::from_ints({-1, 1}) * Poly::from_ints({1, 0, 1}).pow(2);
  Poly b = Poly::from_ints({1, 0, 1}) * Poly::from_ints({3, 2});
  CHECK(gcd(a, b) == Poly::from_ints({1, 0, 1}));
  CHECK(gcd(Poly::from_ints({1, 1}), Poly::from_ints({2, 1})) == Poly(Rational(1)));
  CHECK(gcd(Poly(), Poly::from_ints({4, 2})) == Poly::from_ints({2, 1}));
}

TEST_CASE("squarefree decomposition of random products") {
  std::mt19937_64 rng(2024);
  std::uniform_int_distribution<int> mult(1, 4), count(1, 3), deg(1, 3);
  for (int trial = 0; trial < 500; ++trial) {
    Poly prod(Rational(static_cast<long>(trial % 7) - 3 == 0 ? 5 : static_cast<long>(trial % 7) - 3));
    int n = count(rng);
    for (int i = 0; i < n; ++i) prod *= random_poly(rng, deg(rng), 6).pow(static_cast<unsigned>(mult(rng)));
    auto d = yun_squarefree(prod);
    CHECK(d.expand() == prod);
    for (std::size_t i = 0; i < d.parts.size(); ++i) {
      const Poly& part = d.parts[i].first;
      CHECK(part.lead() == 1);
      CHECK(gcd(part, part.derivative()).degree() == 0);
      if (i) CHECK(d.parts[i - 1].second < d.parts[i].second);
      for (std::size_t j = 0; j < i; ++j) CHECK(gcd(part, d.parts[j].first).degree() == 0);
    }
  }
}

TEST_CASE("square roots") {
  Poly s = Poly::from_ints({3, -1, 0, 2}) * make_rational(1, 3);
  CHECK(*poly_sqrt(s * s) == s * (s.lead() > 0 ? 1 : -1));
  CHECK_FALSE(poly_sqrt(s * s + Poly(Rational(1))).has_value());
  CHECK_FALSE(poly_sqrt(Poly::from_ints({0, 1})).has_value());
}

TEST_CASE("rational roots and linear factors") {
  Poly f = Poly::from_ints({-1, 2}).pow(3) * Poly::from_ints({3, 1}) * Poly::from_ints({1, 0, 1}) * x * x * 6;
  auto roots = rational_roots(f);
  std::vector<Rational> expect{-3, 0, 0, make_rational(1, 2), make_rational(1, 2), make_rational(1, 2)};
  CHECK(roots == expect);
  CHECK(to_factored_string(f, "t") == "6*(t + 3)*t^2*(2*t - 1)^3*(t^2 + 1)");
  auto lf = factor_linear(Poly::from_ints({-256, 0, 256}));
  CHECK(lf.content == 256);
  CHECK(lf.linear.size() == 2);
  CHECK(rational_roots(Poly::from_ints({1, 0, 1})).empty());
}

TEST_CASE("resultant") {
  // Res(x^2 - 2, x - 1) = -1 for the convention Res(f, g) = lc(f)^deg g prod g(roots of f).
  CHECK(resultant(Poly::from_ints({-2, 0, 1}), Poly::from_ints({-1, 1})) == -1);
  CHECK(resultant(Poly::from_ints({-1, 0, 1}), Poly::from_ints({1, 1})) == 0);
  CHECK(resultant(Poly::from_ints({-2, 0, 2}), Poly::from_ints({0, 3})) == -18);
}

TEST_CASE("composition") {
  Poly f = Poly::from_ints({1, 2, 3});
  CHECK(f.compose(Poly::from_ints({1, 1})) == Poly::from_ints({6, 8, 3}));
  auto sub = compose_fraction(f, Poly::from_ints({0, 1}), Poly::from_ints({1, 1}));
  CHECK(sub.power == 2);
  CHECK(sub.num == Poly::from_ints({1, 4, 6}));
}
