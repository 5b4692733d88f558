#pragma once
// Dense univariate polynomials over Q.

#include <initializer_list>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ecfam/arith.hpp"

namespace ecfam {

class Poly {
 public:
  Poly() = default;
  explicit Poly(std::vector<Rational> coeffs);
  explicit Poly(const Rational& c);

  /// Integer coefficients, lowest degree first.
  static Poly from_ints(std::initializer_list<long> coeffs);
  static Poly monomial(const Rational& c, int degree);
  /// The indeterminate itself.
  static Poly variable();

  const std::vector<Rational>& coeffs() const { return c_; }
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  bool is_constant() const { return c_.size() <= 1; }
  const Rational& lead() const;
  Rational coeff(int i) const;

  Rational eval(const Rational& x) const;
  Poly derivative() const;
  Poly monic() const;
  Poly pow(unsigned e) const;
  /// f(g(x)).
  Poly compose(const Poly& g) const;
  /// f(-x).
  Poly reflect() const;
  bool is_even() const;

  /// f = content * primitive, primitive has integer coprime coefficients
  /// and a positive leading coefficient. The zero polynomial gives (0, 0).
  std::pair<Rational, Poly> content_primitive() const;
  /// Integer coefficients of the primitive part.
  std::vector<Integer> primitive_integers() const;
  bool has_integer_coeffs() const;

  Poly operator-() const;
  Poly& operator+=(const Poly& o);
  Poly& operator-=(const Poly& o);
  Poly& operator*=(const Poly& o);
  Poly& operator*=(const Rational& s);
  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator*(const Poly& a, const Poly& b);
  friend Poly operator*(Poly a, const Rational& s) { return a *= s; }
  friend Poly operator*(const Rational& s, Poly a) { return a *= s; }
  friend bool operator==(const Poly& a, const Poly& b) { return a.c_ == b.c_; }
  friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }

 private:
  void trim();
  std::vector<Rational> c_;
};

struct DivRem {
  Poly quot;
  Poly rem;
};

/// Throws std::domain_error on a zero divisor.
DivRem divrem(const Poly& a, const Poly& b);
/// a / b when b divides a exactly; throws std::domain_error otherwise.
Poly exact_div(const Poly& a, const Poly& b);
/// Monic gcd; gcd(0, 0) = 0.
Poly gcd(const Poly& a, const Poly& b);
/// Monic lcm of nonzero polynomials.
Poly lcm(const Poly& a, const Poly& b);

/// Substituting x = n/d into f of degree m: f(n/d) = num / d^m.
struct FractionSubstitution {
  Poly num;
  unsigned power;
};
FractionSubstitution compose_fraction(const Poly& f, const Poly& n, const Poly& d);

/// input = constant * prod(part^multiplicity); parts monic, squarefree,
/// pairwise coprime, ascending multiplicity.
struct SquarefreeDecomp {
  Rational constant;
  std::vector<std::pair<Poly, unsigned>> parts;
  Poly expand() const;
};

/// Yun's algorithm. Throws std::domain_error on the zero polynomial.
SquarefreeDecomp yun_squarefree(const Poly& p);

/// s with s^2 = p when p is the square of a polynomial over Q.
std::optional<Poly> poly_sqrt(const Poly& p);

/// Rational roots with multiplicity, ascending. Throws on zero input.
std::vector<Rational> rational_roots(const Poly& p);

/// Linear factors over Q pulled out of p: p = content * prod(lin^m) * rest,
/// each lin primitive with positive leading coefficient, rest primitive.
struct LinearFactorization {
  Rational content;
  std::vector<std::pair<Poly, unsigned>> linear;
  Poly rest;
};
LinearFactorization factor_linear(const Poly& p);

Rational resultant(const Poly& f, const Poly& g);

/// Descending powers, e.g. "t^2 - 4*t - 1".
std::string to_string(const Poly& p, std::string_view var = "x");
/// Content times linear factors times remaining factor, e.g. "256*(t-2)^4*t^4".
std::string to_factored_string(const Poly& p, std::string_view var = "x");

}  // namespace ecfam
