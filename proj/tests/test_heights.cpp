#include "doctest.h"
#include "test_support.hpp"

#include <cmath>

#include "ecfam/chain.hpp"
#include "ecfam/heights.hpp"

using namespace ecfam;

namespace {

// y^2 = x^3 - 2x, rank 1 generated by (2, 2); y^2 = x^3 + 1 is rank 0 with
// torsion (2, 3).
QCurve rank1() { return QCurve{0, -2, 0}; }

struct S4 {
  QCurve E;
  QPoint P, Q;
};

S4 at_s4() {
  FamilyChain ch = build_chain(fixture("z8-rank2-a"));
  QCurve E = specialize(ch.curve, 4);
  return {E, *point_with_x(E, ch.points[0].eval(4)), *point_with_x(E, ch.points[1].eval(4))};
}

}  // namespace

TEST_CASE("naive height") {
  CHECK(naive_height(0) == 0);
  CHECK(naive_height(make_rational(-7, 3)) == doctest::Approx(std::log(7.0)));
  CHECK(naive_height(make_rational(2, 9)) == doctest::Approx(std::log(9.0)));
}

TEST_CASE("points from x") {
  CHECK(point_with_x(rank1(), 2) == QPoint::affine(2, 2));
  CHECK_FALSE(point_with_x(rank1(), 3).has_value());
  CHECK(integral_scale(QCurve{make_rational(1, 4), 0, make_rational(1, 8)}) == 2);
}

TEST_CASE("torsion and off-curve points are rejected") {
  QCurve E{0, 0, 1};
  CHECK_THROWS_AS(canonical_height(E, QPoint::affine(2, 3)), InvalidPointError);
  CHECK_THROWS_AS(canonical_height(rank1(), QPoint::affine(2, 3)), InvalidPointError);
  try {
    regulator_certificate(rank1(), {QPoint::affine(2, 2), QPoint::affine(0, 0)});
    FAIL("expected an exception");
  } catch (const InvalidPointError& e) {
    CHECK(e.index == 1);
  }
  CHECK_THROWS_AS(canonical_height(QCurve{0, 0, 0}, QPoint::affine(1, 1)), SingularCurveError);
}

TEST_CASE("heights are quadratic") {
  QCurve E = rank1();
  QPoint P = QPoint::affine(2, 2);
  auto h = canonical_height(E, P), h2 = canonical_height(E, E.dbl(P)), h3 = canonical_height(E, E.add(P, E.dbl(P)));
  CHECK(h.value > 0);
  CHECK(std::abs(h2.value - 4 * h.value) <= h2.error + 4 * h.error + 1e-12);
  CHECK(std::abs(h3.value - 9 * h.value) <= h3.error + 9 * h.error + 1e-12);
  CHECK(canonical_height(E, E.neg(P)).value == doctest::Approx(h.value));
  CHECK(h.trail.size() == static_cast<std::size_t>(h.depth + 1));
}

TEST_CASE("pairing") {
  auto s = at_s4();
  auto pq = pairing(s.E, s.P, s.Q), qp = pairing(s.E, s.Q, s.P);
  CHECK(pq.value == doctest::Approx(qp.value));
  CHECK(pq.value == doctest::Approx(-1.76105).epsilon(1e-4));
  auto pp = pairing(s.E, s.P, s.E.neg(s.P));
  CHECK(pp.value == doctest::Approx(-canonical_height(s.E, s.P).value).epsilon(1e-6));
}

TEST_CASE("regulator of the s = 4 curve") {
  auto s = at_s4();
  RankCertificate c = regulator_certificate(s.E, {s.P, s.Q});
  CHECK(c.determinant == doctest::Approx(90.592).epsilon(0.005));
  CHECK(c.verdict);
  CHECK(c.rank_lower_bound == 2);
  CHECK(c.gram[0][1] == c.gram[1][0]);
}

TEST_CASE("dependent points give no verdict") {
  QCurve E = rank1();
  QPoint P = QPoint::affine(2, 2);
  HeightOptions opt;
  opt.max_depth = opt.depth;
  RankCertificate c = regulator_certificate(E, {P, E.dbl(P)}, opt);
  CHECK_FALSE(c.verdict);
  CHECK(std::abs(c.determinant) <= 3 * c.determinant_error + 1e-9);
  RankCertificate one = regulator_certificate(E, {P});
  CHECK(one.verdict);
  CHECK(one.rank_lower_bound == 1);
}

TEST_CASE("model and basis invariance") {
  auto s = at_s4();
  double h = canonical_height(s.E, s.P).value;
  for (int u : {2, 3}) {
    Rational u2(u * u), u3(u * u * u);
    QCurve Eu{s.E.A * u2, s.E.B * u2 * u2, s.E.C * u2 * u2 * u2};
    CHECK(canonical_height(Eu, QPoint::affine(s.P.x * u2, s.P.y * u3)).value == doctest::Approx(h).epsilon(1e-6));
  }
  RankCertificate a = regulator_certificate(s.E, {s.P, s.Q});
  RankCertificate b = regulator_certificate(s.E, {s.P, s.E.add(s.P, s.Q)});
  CHECK(b.determinant == doctest::Approx(a.determinant).epsilon(1e-3));
}

TEST_CASE("workers do not change the result") {
  auto s = at_s4();
  HeightOptions opt;
  opt.workers = 3;
  RankCertificate a = regulator_certificate(s.E, {s.P, s.Q}), b = regulator_certificate(s.E, {s.P, s.Q}, opt);
  CHECK(a.gram == b.gram);
  CHECK(a.determinant == b.determinant);
}
