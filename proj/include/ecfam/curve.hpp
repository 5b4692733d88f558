#pragma once
// Curves y^2 = x^3 + A x^2 + B x + C over a field F (Q or Q(t)) and their
// group law. Infinity is the identity.

#include <optional>
#include <stdexcept>
#include <string>

#include "ecfam/ratfunc.hpp"

namespace ecfam {

class SingularCurveError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

class OffCurveError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

template <class F>
struct Point {
  bool infinity = true;
  F x{}, y{};

  static Point at_infinity() { return Point{}; }
  static Point affine(F x, F y) { return Point{false, std::move(x), std::move(y)}; }
  friend bool operator==(const Point& a, const Point& b) {
    if (a.infinity || b.infinity) return a.infinity == b.infinity;
    return a.x == b.x && a.y == b.y;
  }
  friend bool operator!=(const Point& a, const Point& b) { return !(a == b); }
};

template <class F>
struct Curve {
  F A{}, B{}, C{};

  F rhs(const F& x) const { return ((x + A) * x + B) * x + C; }

  bool contains(const Point<F>& P) const { return P.infinity || P.y * P.y == rhs(P.x); }

  void require_on_curve(const Point<F>& P) const {
    if (!contains(P)) throw OffCurveError("point is not on the curve");
  }

  /// Discriminant of the cubic x^3 + A x^2 + B x + C.
  F discriminant() const {
    return A * A * B * B - F(4) * B * B * B - F(4) * A * A * A * C - F(27) * C * C + F(18) * A * B * C;
  }

  bool singular() const { return is_zero(discriminant()); }

  Point<F> neg(const Point<F>& P) const {
    if (P.infinity) return P;
    return Point<F>::affine(P.x, -P.y);
  }

  Point<F> add(const Point<F>& P, const Point<F>& Q) const {
    if (P.infinity) return Q;
    if (Q.infinity) return P;
    F lambda;
    if (P.x == Q.x) {
      if (is_zero(P.y + Q.y)) return Point<F>::at_infinity();
      lambda = (F(3) * P.x * P.x + F(2) * A * P.x + B) / (F(2) * P.y);
    } else {
      lambda = (Q.y - P.y) / (Q.x - P.x);
    }
    F x3 = lambda * lambda - A - P.x - Q.x;
    F y3 = -(P.y + lambda * (x3 - P.x));
    return Point<F>::affine(std::move(x3), std::move(y3));
  }

  Point<F> dbl(const Point<F>& P) const { return add(P, P); }
  Point<F> sub(const Point<F>& P, const Point<F>& Q) const { return add(P, neg(Q)); }

  Point<F> mul(const Point<F>& P, long n) const {
    if (n < 0) return mul(neg(P), -n);
    Point<F> acc = Point<F>::at_infinity(), base = P;
    while (n) {
      if (n & 1) acc = add(acc, base);
      n >>= 1;
      if (n) base = dbl(base);
    }
    return acc;
  }

  /// x(2P) from x(P) alone; y(P) != 0. For C = 0 this is (x^2 - B)^2 / (4 y^2).
  F double_x(const F& x) const {
    F y2 = rhs(x);
    if (is_zero(y2)) throw std::domain_error("doubling a point of order 2");
    F num = x * x * x * x - F(2) * B * x * x - F(8) * C * x + B * B - F(4) * A * C;
    return num / (F(4) * y2);
  }

  /// Same curve in the model (x, y) -> (u^2 x, u^3 y).
  Curve scaled(const F& u) const {
    F u2 = u * u;
    return Curve{A * u2, B * u2 * u2, C * u2 * u2 * u2};
  }
  Point<F> scale_point(const Point<F>& P, const F& u) const {
    if (P.infinity) return P;
    return Point<F>::affine(P.x * u * u, P.y * u * u * u);
  }

  friend bool operator==(const Curve& a, const Curve& b) { return a.A == b.A && a.B == b.B && a.C == b.C; }
};

using QCurve = Curve<Rational>;
using QPoint = Point<Rational>;
using FCurve = Curve<RatFunc>;
using FPoint = Point<RatFunc>;

/// j = c4^3 / Delta of the model. Throws SingularCurveError.
Rational j_invariant(const QCurve& E);
RatFunc j_invariant(const FCurve& E);

QCurve specialize(const FCurve& E, const Rational& t);
QPoint specialize(const FPoint& P, const Rational& t);

/// Least n in {1..10, 12} with nP = O, or nullopt for infinite order.
/// Throws SingularCurveError on a singular curve.
std::optional<int> torsion_order(const QCurve& E, const QPoint& P);
/// Symbolic version over Q(t): smallest n <= 12 with nP = O.
std::optional<int> torsion_order(const FCurve& E, const FPoint& P);

/// The symmetric model of the Tate curve Y^2 + (1-c)XY - bY = X^3 - bX^2,
/// with the image (0, -4b) of (0, 0).
struct SymmetricForm {
  FCurve curve;
  FPoint point;
};
SymmetricForm tate_to_symmetric(const RatFunc& b, const RatFunc& c);

/// Text "y^2 = x^3 + ... " with coefficients rendered in factored style.
std::string curve_equation(const FCurve& E, std::string_view var, std::string_view x = "x",
                           std::string_view y = "y");

}  // namespace ecfam
