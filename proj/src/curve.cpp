#include "ecfam/curve.hpp"

namespace ecfam {

namespace {

template <class F>
F j_of(const Curve<F>& E) {
  // b2 = 4A, b4 = 2B, b6 = 4C, b8 = 4AC - B^2 for y^2 = x^3 + A x^2 + B x + C.
  F b2 = F(4) * E.A, b4 = F(2) * E.B, b6 = F(4) * E.C, b8 = F(4) * E.A * E.C - E.B * E.B;
  F c4 = b2 * b2 - F(24) * b4;
  F delta = -b2 * b2 * b8 - F(8) * b4 * b4 * b4 - F(27) * b6 * b6 + F(9) * b2 * b4 * b6;
  if (is_zero(delta)) throw SingularCurveError("j-invariant of a singular curve");
  return c4 * c4 * c4 / delta;
}

bool integral_model(const QCurve& E) { return is_integer(E.A) && is_integer(E.B) && is_integer(E.C); }

}  // namespace

Rational j_invariant(const QCurve& E) { return j_of(E); }
RatFunc j_invariant(const FCurve& E) { return j_of(E); }

QCurve specialize(const FCurve& E, const Rational& t) { return QCurve{E.A.eval(t), E.B.eval(t), E.C.eval(t)}; }

QPoint specialize(const FPoint& P, const Rational& t) {
  if (P.infinity) return QPoint::at_infinity();
  return QPoint::affine(P.x.eval(t), P.y.eval(t));
}

std::optional<int> torsion_order(const QCurve& E, const QPoint& P) {
  Rational disc = E.discriminant();
  if (sgn(disc) == 0) throw SingularCurveError("torsion order on a singular curve");
  E.require_on_curve(P);
  if (P.infinity) return 1;
  const bool nl = integral_model(E);
  if (nl) {
    // Nagell-Lutz: torsion points are integral with y = 0 or y^2 | disc.
    if (!is_integer(P.x) || !is_integer(P.y)) return std::nullopt;
    if (sgn(P.y) != 0) {
      Integer y2 = Integer(P.y.get_num()) * Integer(P.y.get_num());
      if (!mpz_divisible_p(Integer(disc.get_num()).get_mpz_t(), y2.get_mpz_t())) return std::nullopt;
    }
  }
  QPoint Q = P;
  for (int n = 2; n <= 12; ++n) {
    Q = E.add(Q, P);
    if (Q.infinity) {
      if (n == 11) break;
      return n;
    }
    if (nl && (!is_integer(Q.x) || !is_integer(Q.y))) return std::nullopt;
  }
  return std::nullopt;
}

std::optional<int> torsion_order(const FCurve& E, const FPoint& P) {
  if (E.singular()) throw SingularCurveError("torsion order on a singular curve");
  E.require_on_curve(P);
  if (P.infinity) return 1;
  FPoint Q = P;
  for (int n = 2; n <= 12; ++n) {
    Q = E.add(Q, P);
    if (Q.infinity) return n;
  }
  return std::nullopt;
}

SymmetricForm tate_to_symmetric(const RatFunc& b, const RatFunc& c) {
  RatFunc cm1 = c - RatFunc(1);
  FCurve E{cm1 * cm1 - RatFunc(4) * b, RatFunc(8) * b * cm1, RatFunc(16) * b * b};
  if (E.singular()) throw SingularCurveError("Tate form gives a singular curve");
  return {E, FPoint::affine(RatFunc(0), RatFunc(-4) * b)};
}

std::string curve_equation(const FCurve& E, std::string_view var, std::string_view x, std::string_view y) {
  std::string out = std::string(y) + "^2 = " + std::string(x) + "^3";
  auto term = [&](const RatFunc& c, const std::string& mono) {
    if (c.is_zero()) return;
    std::string s = to_factored_string(c, var);
    bool neg = s[0] == '-';
    if (neg) s.erase(0, 1);
    bool compound = s.find_first_of("+-/") != std::string::npos && !(s.front() == '(' && s.back() == ')' &&
                                                                       s.find(")") == s.size() - 1);
    if (s == "1" && !mono.empty()) s.clear();
    else if (compound) s = "(" + s + ")";
    if (!s.empty() && !mono.empty()) s += "*";
    out += (neg ? " - " : " + ") + s + mono;
  };
  term(E.A, std::string(x) + "^2");
  term(E.B, std::string(x));
  term(E.C, "");
  return out;
}

}  // namespace ecfam
