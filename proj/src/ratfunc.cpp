#include "ecfam/ratfunc.hpp"

namespace ecfam {

RatFunc::RatFunc(const Poly& p) : num_(p), den_(Rational(1)) {}

RatFunc::RatFunc(const Rational& c) : num_(c), den_(Rational(1)) {}

RatFunc::RatFunc(const Poly& num, const Poly& den) : num_(num), den_(den) {
  if (den_.is_zero()) throw ZeroDenominatorError("rational function with zero denominator");
  normalize();
}

void RatFunc::normalize() {
  if (num_.is_zero()) {
    den_ = Poly(Rational(1));
    return;
  }
  if (den_.degree() > 0) {
    Poly g = gcd(num_, den_);
    if (g.degree() > 0) {
      num_ = exact_div(num_, g);
      den_ = exact_div(den_, g);
    }
  }
  auto [c, prim] = den_.content_primitive();
  if (c != 1) num_ *= Rational(1 / c);
  den_ = std::move(prim);
}

Rational RatFunc::constant() const {
  if (!is_constant()) throw std::domain_error("rational function is not constant");
  return num_.coeff(0) / den_.coeff(0);
}

Rational RatFunc::eval(const Rational& x) const {
  Rational d = den_.eval(x);
  if (sgn(d) == 0) throw PoleError("evaluation at a pole x = " + to_string(x));
  return num_.eval(x) / d;
}

RatFunc RatFunc::compose(const RatFunc& g) const {
  if (num_.is_zero()) return RatFunc();
  const int m = num_.degree(), e = den_.degree();
  auto n = compose_fraction(num_, g.num_, g.den_);
  auto d = compose_fraction(den_, g.num_, g.den_);
  // num(g) = n.num / q^m, den(g) = d.num / q^e.
  Poly top = n.num, bottom = d.num;
  if (e > m) top *= g.den_.pow(static_cast<unsigned>(e - m));
  if (m > e) bottom *= g.den_.pow(static_cast<unsigned>(m - e));
  if (bottom.is_zero()) throw PoleError("composition lands on a pole identically");
  return RatFunc(top, bottom);
}

RatFunc RatFunc::inverse() const {
  if (num_.is_zero()) throw ZeroDenominatorError("inverse of the zero function");
  return RatFunc(den_, num_);
}

RatFunc RatFunc::pow(int e) const {
  if (e < 0) return inverse().pow(-e);
  RatFunc out(Poly(num_.pow(static_cast<unsigned>(e))), Poly(den_.pow(static_cast<unsigned>(e))), Canonical{});
  auto [c, prim] = out.den_.content_primitive();
  if (c != 1) {
    out.num_ *= Rational(1 / c);
    out.den_ = std::move(prim);
  }
  if (out.num_.is_zero()) out.den_ = Poly(Rational(1));
  return out;
}

RatFunc RatFunc::derivative() const {
  return RatFunc(num_.derivative() * den_ - num_ * den_.derivative(), den_ * den_);
}

RatFunc RatFunc::reflect() const { return RatFunc(num_.reflect(), den_.reflect()); }

RatFunc RatFunc::operator-() const { return RatFunc(-num_, den_, Canonical{}); }

RatFunc& RatFunc::operator+=(const RatFunc& o) {
  if (den_ == o.den_) {
    num_ += o.num_;
    if (den_.degree() > 0) normalize();
    return *this;
  }
  Poly g = gcd(den_, o.den_);
  if (g.degree() == 0) {
    num_ = num_ * o.den_ + o.num_ * den_;
    den_ = den_ * o.den_;
  } else {
    Poly a1 = exact_div(den_, g), b1 = exact_div(o.den_, g);
    num_ = num_ * b1 + o.num_ * a1;
    den_ = a1 * o.den_;
  }
  normalize();
  return *this;
}

RatFunc& RatFunc::operator-=(const RatFunc& o) { return *this += -o; }

RatFunc& RatFunc::operator*=(const RatFunc& o) {
  if (num_.is_zero() || o.num_.is_zero()) return *this = RatFunc();
  if (den_.degree() == 0 && o.den_.degree() == 0) {
    num_ = num_ * o.num_ * Rational(1 / (den_.coeff(0) * o.den_.coeff(0)));
    den_ = Poly(Rational(1));
    return *this;
  }
  Poly a = num_, b = den_, c = o.num_, d = o.den_;
  Poly g1 = gcd(a, d), g2 = gcd(c, b);
  if (g1.degree() > 0) {
    a = exact_div(a, g1);
    d = exact_div(d, g1);
  }
  if (g2.degree() > 0) {
    c = exact_div(c, g2);
    b = exact_div(b, g2);
  }
  num_ = a * c;
  den_ = b * d;
  auto [k, prim] = den_.content_primitive();
  if (k != 1) num_ *= Rational(1 / k);
  den_ = std::move(prim);
  return *this;
}

RatFunc& RatFunc::operator/=(const RatFunc& o) { return *this *= o.inverse(); }

std::string to_string(const RatFunc& f, std::string_view var) {
  if (f.is_polynomial()) return to_string(f.num() * Rational(1 / f.den().coeff(0)), var);
  auto wrap = [&](const Poly& p) {
    std::string s = to_string(p, var);
    return p.degree() <= 0 || (p.degree() == 1 && p.coeffs()[0] == 0 && s.find(' ') == std::string::npos)
               ? s
               : "(" + s + ")";
  };
  return wrap(f.num()) + "/" + wrap(f.den());
}

std::string to_factored_string(const RatFunc& f, std::string_view var) {
  if (f.is_zero()) return "0";
  std::string n = to_factored_string(f.num(), var);
  if (f.is_polynomial()) return to_factored_string(f.num() * Rational(1 / f.den().coeff(0)), var);
  std::string d = to_factored_string(f.den(), var);
  bool single = d.find('*') == std::string::npos && (d.front() == '(' || d.find(' ') == std::string::npos);
  return n + "/" + (single ? d : "(" + d + ")");
}

}  // namespace ecfam
