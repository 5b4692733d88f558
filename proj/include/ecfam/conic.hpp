#pragma once
// Quadratic square conditions a r^2 + b r + c = t^2 and their secant-line
// parametrizations.

#include <optional>
#include <string>

#include "ecfam/ratfunc.hpp"

namespace ecfam {

/// The condition kernel * (a r^2 + b r + c) = square, with (a, b, c) primitive
/// integers whose first nonzero entry is positive and kernel squarefree.
/// A raw triple equals kernel * scale^2 * (a, b, c).
struct QuadCondition {
  Integer kernel = 1;
  Integer a, b, c;
  Rational scale = 1;
  bool already_square = false;

  /// Coefficients of the normalized condition, kernel * (a, b, c).
  Rational coef_a() const { return Rational(kernel * a); }
  Rational coef_b() const { return Rational(kernel * b); }
  Rational coef_c() const { return Rational(kernel * c); }
  Poly poly() const;
  /// Equal keys iff the conditions agree up to nonzero square factors.
  std::string key() const;
  /// As key(), also identifying r with -r.
  std::string even_key() const;
  /// "6*(-r^2 + 25)" style.
  std::string to_string(std::string_view var = "r") const;
};

/// Throws std::invalid_argument when all three are zero.
QuadCondition normalize_condition(const Rational& a, const Rational& b, const Rational& c);

struct ConicPoint {
  Rational p, q;
};

inline constexpr long kDefaultHeightBound = 60;

/// Smallest-height rational (p, q) with q^2 = A p^2 + B p + C for the
/// normalized coefficients, q >= 0. nullopt means none within the bound,
/// not that none exists.
std::optional<ConicPoint> find_point(const QuadCondition& Q, long height_bound = kDefaultHeightBound);

/// r(k) with a r^2 + b r + c = t(k)^2 identically.
struct ConicParam {
  ConicPoint base;
  RatFunc map;
  RatFunc witness;
};

/// Secant line through (p, q): r = (p k^2 - 2 q k + a p + b)/(k^2 - a);
/// a = 0 uses r = (k^2 - c)/b. Verifies the identity before returning and
/// throws std::logic_error if it fails; std::invalid_argument if (p, q) is
/// not on the conic or the condition is constant.
ConicParam parametrize(const Rational& a, const Rational& b, const Rational& c, const ConicPoint& base);
ConicParam parametrize(const QuadCondition& Q, const ConicPoint& base);

}  // namespace ecfam
