#include "ecfam/conic.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace ecfam {

Poly QuadCondition::poly() const { return Poly({coef_c(), coef_b(), coef_a()}); }

std::string QuadCondition::key() const {
  return kernel.get_str() + ":" + a.get_str() + "," + b.get_str() + "," + c.get_str();
}

std::string QuadCondition::even_key() const {
  if (b == 0) return key();
  QuadCondition m = *this;
  m.b = -b;
  // First nonzero entry is a or b; flipping b keeps a's sign, but when a = 0
  // the flip changes the leading sign, which moves into the kernel.
  if (a == 0) {
    m.b = b;
    m.c = -c;
    m.kernel = -kernel;
  }
  return std::min(key(), m.key());
}

std::string QuadCondition::to_string(std::string_view var) const {
  std::string body = ecfam::to_string(Poly({Rational(c), Rational(b), Rational(a)}), var);
  if (kernel == 1) return body;
  if (kernel == -1) return "-(" + body + ")";
  return kernel.get_str() + "*(" + body + ")";
}

QuadCondition normalize_condition(const Rational& a, const Rational& b, const Rational& c) {
  if (sgn(a) == 0 && sgn(b) == 0 && sgn(c) == 0) throw std::invalid_argument("zero quadratic condition");
  Integer den = lcm(lcm(Integer(a.get_den()), Integer(b.get_den())), Integer(c.get_den()));
  Integer ia = Integer(a.get_num()) * (den / Integer(a.get_den()));
  Integer ib = Integer(b.get_num()) * (den / Integer(b.get_den()));
  Integer ic = Integer(c.get_num()) * (den / Integer(c.get_den()));
  Integer g = gcd(gcd(ia, ib), ic);
  int lead = sgn(ia) != 0 ? sgn(ia) : sgn(ib) != 0 ? sgn(ib) : sgn(ic);
  if (lead < 0) g = -g;
  QuadCondition Q;
  Q.a = ia / g;
  Q.b = ib / g;
  Q.c = ic / g;
  // raw = (g / den) * (a, b, c) and g/den = kernel * scale^2.
  auto sp = square_part(make_rational(g, den));
  Q.kernel = sp.kernel;
  Q.scale = sp.root;
  if (Q.a == 0 && Q.b == 0) {
    Q.already_square = is_square(Rational(Q.kernel * Q.c));
  } else if (Q.a != 0) {
    Q.already_square = Q.b * Q.b == 4 * Q.a * Q.c && is_square(Rational(Q.kernel * Q.a));
  }
  return Q;
}

std::optional<ConicPoint> find_point(const QuadCondition& Q, long height_bound) {
  const Integer A = Q.kernel * Q.a, B = Q.kernel * Q.b, C = Q.kernel * Q.c;
  // p = m/n of height max(|m|, n); ties by |m|, then positive first, then n.
  for (long h = 1; h <= height_bound; ++h) {
    for (long am = 0; am <= h; ++am) {
      for (int sign : {1, -1}) {
        if (am == 0 && sign < 0) continue;
        for (long n = 1; n <= h; ++n) {
          if (std::max(am, n) != h || std::gcd(am, n) != 1) continue;
          Integer m = sign * am;
          auto s = exact_sqrt(Integer(A * m * m + B * m * n + C * n * n));
          if (s) return ConicPoint{make_rational(m, n), make_rational(*s, n)};
        }
      }
    }
  }
  return std::nullopt;
}

ConicParam parametrize(const Rational& a, const Rational& b, const Rational& c, const ConicPoint& base) {
  const Rational& p = base.p;
  const Rational& q = base.q;
  if (q * q != a * p * p + b * p + c) throw std::invalid_argument("base point is not on the conic");
  RatFunc k = RatFunc::variable();
  ConicParam out{base, RatFunc(), RatFunc()};
  if (sgn(a) != 0) {
    RatFunc num = RatFunc(p) * k * k - RatFunc(2 * q) * k + RatFunc(a * p + b);
    out.map = num / (k * k - RatFunc(a));
    out.witness = RatFunc(q) + k * (out.map - RatFunc(p));
  } else if (sgn(b) != 0) {
    out.map = (k * k - RatFunc(c)) / RatFunc(b);
    out.witness = k;
  } else {
    throw std::invalid_argument("constant condition has no parametrization");
  }
  RatFunc lhs = (RatFunc(a) * out.map + RatFunc(b)) * out.map + RatFunc(c);
  if (lhs != out.witness * out.witness) throw std::logic_error("conic identity failed");
  return out;
}

ConicParam parametrize(const QuadCondition& Q, const ConicPoint& base) {
  return parametrize(Q.coef_a(), Q.coef_b(), Q.coef_c(), base);
}

}  // namespace ecfam
