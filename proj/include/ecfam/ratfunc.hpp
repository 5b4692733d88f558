#pragma once
// Rational functions num/den over Q in canonical form.

#include <stdexcept>
#include <string>
#include <string_view>

#include "ecfam/poly.hpp"

namespace ecfam {

/// Constructing a quotient with a zero denominator.
class ZeroDenominatorError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Evaluating a rational function at one of its poles.
class PoleError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

class RatFunc {
 public:
  RatFunc() : den_(Rational(1)) {}
  RatFunc(const Poly& p);  // NOLINT: polynomials embed implicitly
  RatFunc(const Rational& c);  // NOLINT
  RatFunc(long c) : RatFunc(Rational(c)) {}  // NOLINT
  /// Throws ZeroDenominatorError when den is zero.
  RatFunc(const Poly& num, const Poly& den);

  static RatFunc variable() { return RatFunc(Poly::variable()); }

  /// Numerator; carries the constant factor.
  const Poly& num() const { return num_; }
  /// Denominator: primitive integer coefficients, positive leading coefficient.
  const Poly& den() const { return den_; }

  bool is_zero() const { return num_.is_zero(); }
  bool is_polynomial() const { return den_.degree() == 0; }
  bool is_constant() const { return num_.degree() <= 0 && den_.degree() == 0; }
  /// Value of a constant function.
  Rational constant() const;

  /// Throws PoleError at a pole.
  Rational eval(const Rational& x) const;
  /// f(g).
  RatFunc compose(const RatFunc& g) const;
  RatFunc inverse() const;
  RatFunc pow(int e) const;
  RatFunc derivative() const;
  RatFunc reflect() const;

  RatFunc operator-() const;
  RatFunc& operator+=(const RatFunc& o);
  RatFunc& operator-=(const RatFunc& o);
  RatFunc& operator*=(const RatFunc& o);
  RatFunc& operator/=(const RatFunc& o);
  friend RatFunc operator+(RatFunc a, const RatFunc& b) { return a += b; }
  friend RatFunc operator-(RatFunc a, const RatFunc& b) { return a -= b; }
  friend RatFunc operator*(RatFunc a, const RatFunc& b) { return a *= b; }
  friend RatFunc operator/(RatFunc a, const RatFunc& b) { return a /= b; }
  friend bool operator==(const RatFunc& a, const RatFunc& b) { return a.num_ == b.num_ && a.den_ == b.den_; }
  friend bool operator!=(const RatFunc& a, const RatFunc& b) { return !(a == b); }

 private:
  struct Canonical {};
  RatFunc(Poly num, Poly den, Canonical) : num_(std::move(num)), den_(std::move(den)) {}
  void normalize();
  Poly num_;
  Poly den_;
};

inline bool is_zero(const RatFunc& f) { return f.is_zero(); }

std::string to_string(const RatFunc& f, std::string_view var = "x");
/// Both numerator and denominator in factored style.
std::string to_factored_string(const RatFunc& f, std::string_view var = "x");

}  // namespace ecfam
