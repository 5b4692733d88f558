#include "doctest.h"

#include <random>

#include "ecfam/curve.hpp"
#include "ecfam/expr.hpp"

using namespace ecfam;

namespace {

const QCurve z8_at_2{46, 81, 0};

RatFunc rf(const char* s, const char* v = "r") { return parse_ratfunc(s, v); }

}  // namespace

TEST_CASE("group law on the Z/8 curve at r = 2") {
  QPoint P = QPoint::affine(-3, 12);
  CHECK(z8_at_2.contains(P));
  CHECK(z8_at_2.add(P, QPoint::at_infinity()) == P);
  QPoint twoP = z8_at_2.dbl(P);
  CHECK(twoP == QPoint::affine(9, 72));
  QPoint fourP = z8_at_2.dbl(twoP);
  CHECK(fourP == QPoint::affine(0, 0));
  CHECK(z8_at_2.mul(P, 8).infinity);
  CHECK(z8_at_2.rhs(-3) == 144);
}

TEST_CASE("doubling formula") {
  CHECK(z8_at_2.double_x(-3) == 9);
  CHECK(z8_at_2.double_x(9) == 0);
  CHECK_THROWS_AS(z8_at_2.double_x(0), std::domain_error);
  QCurve E{2, -3, 4};
  QPoint P = QPoint::affine(1, 2);
  REQUIRE(E.contains(P));
  CHECK(E.double_x(P.x) == E.dbl(P).x);
}

TEST_CASE("torsion orders") {
  CHECK(torsion_order(z8_at_2, QPoint::affine(0, 0)) == 2);
  CHECK(torsion_order(z8_at_2, QPoint::affine(-3, 12)) == 8);
  CHECK(torsion_order(z8_at_2, QPoint::affine(9, 72)) == 4);
  QCurve s4{Rational(Integer("5379102933124")), Rational(Integer("456366899570319360000")), 0};
  Rational w2(-537247620);
  auto y = exact_sqrt(s4.rhs(w2));
  REQUIRE(y);
  CHECK_FALSE(torsion_order(s4, QPoint::affine(w2, *y)).has_value());
  CHECK_THROWS_AS(torsion_order(QCurve{0, 0, 0}, QPoint::affine(0, 0)), SingularCurveError);
}

TEST_CASE("discriminant and j") {
  CHECK(QCurve{0, 1, 0}.discriminant() == -4);
  CHECK(QCurve{0, 0, 0}.discriminant() == 0);
  CHECK(j_invariant(QCurve{0, 1, 0}) == 1728);
  QCurve E{3, -5, 11};
  CHECK(j_invariant(E.scaled(2)) == j_invariant(E));
  CHECK(j_invariant(E.scaled(make_rational(1, 3))) == j_invariant(E));
}

TEST_CASE("Tate to symmetric form") {
  RatFunc r = RatFunc::variable();
  auto s = tate_to_symmetric(r * r * r - r * r, r * r - r);
  CHECK(s.curve.A == rf("r^4-6r^3+3r^2+2r+1"));
  CHECK(s.curve.B == rf("8r^2(r-1)(r^2-r-1)"));
  CHECK(s.curve.C == rf("16r^4(r-1)^2"));
  CHECK(s.curve.contains(s.point));
  CHECK(s.point.y == rf("-4(r^3-r^2)"));
  CHECK_THROWS_AS(tate_to_symmetric(RatFunc(0), RatFunc(0)), SingularCurveError);
}

TEST_CASE("quartic factorization for the order-8 condition") {
  std::mt19937_64 rng(99);
  std::uniform_int_distribution<long> dist(-40, 40);
  RatFunc x = RatFunc::variable();
  for (int i = 0; i < 25; ++i) {
    Rational C(dist(rng), 1), D = make_rational(dist(rng), 1 + (dist(rng) + 40) % 7);
    RatFunc c(C), d(D);
    RatFunc lhs = (x * x - RatFunc(2) * d * (c + d) * x + d.pow(4)) * (x * x + RatFunc(2) * d * (c - d) * x + d.pow(4));
    RatFunc rhs = x.pow(4) - RatFunc(4) * d * d * x.pow(3) + RatFunc(2) * d * d * (RatFunc(3) * d * d - RatFunc(2) * c * c) * x * x -
                  RatFunc(4) * d.pow(6) * x + d.pow(8);
    CHECK(lhs == rhs);
  }
}

TEST_CASE("group law is associative on random rational points") {
  // Random points: pick the curve through two random points.
  std::mt19937_64 rng(1234);
  std::uniform_int_distribution<long> dist(-30, 30);
  int checked = 0;
  while (checked < 1000) {
    Rational x1(dist(rng)), y1(dist(rng)), x2(dist(rng)), y2(dist(rng)), A(dist(rng));
    if (x1 == x2) continue;
    // Solve for B, C so that both points lie on y^2 = x^3 + A x^2 + B x + C.
    Rational r1 = y1 * y1 - x1 * x1 * x1 - A * x1 * x1, r2 = y2 * y2 - x2 * x2 * x2 - A * x2 * x2;
    Rational B = (r1 - r2) / (x1 - x2), C = r1 - B * x1;
    QCurve E{A, B, C};
    if (E.singular()) continue;
    QPoint P = QPoint::affine(x1, y1), Q = QPoint::affine(x2, y2), R = E.add(P, Q);
    QPoint lhs = E.add(E.add(P, Q), R), rhs = E.add(P, E.add(Q, R));
    CHECK(lhs == rhs);
    CHECK(E.contains(lhs));
    CHECK(E.add(P, E.neg(P)).infinity);
    ++checked;
  }
}
