#pragma once
// The parametric torsion families y^2 = x^3 + A(r) x^2 + B(r) x + C(r).

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ecfam/curve.hpp"

namespace ecfam {

struct TorsionPointInfo {
  FPoint point;
  int order;
};

struct TorsionFamily {
  std::string key;       // "z8"
  std::string label;     // "Z8"
  std::string group;     // "Z/8Z"
  std::string var;       // parameter name, "r"
  FCurve curve;
  std::vector<TorsionPointInfo> generators;
  /// Every nonzero torsion point (both signs of y).
  std::vector<TorsionPointInfo> torsion;
  std::vector<Rational> excluded;
  /// Irreducible-looking factors allowed in d(r), constants first.
  std::vector<Poly> divisor_pool;
  /// A, B, C all even in r, so r -> -r is a symmetry.
  bool even = false;

  /// Distinct torsion x-values with their order, ascending order.
  std::vector<std::pair<RatFunc, int>> torsion_x() const;
};

/// "z5", "z6", "z7", "z8", "z2z4", "z2z6".
const std::vector<std::string>& family_keys();
/// Accepts keys or labels case-insensitively ("Z2xZ6", "z2z6").
/// Throws std::invalid_argument for unknown names.
const TorsionFamily& family(std::string_view name);

/// The point (x, y) with y^2 = rhs(x) when rhs(x) is a square in Q(t).
std::optional<FPoint> point_from_x(const FCurve& E, const RatFunc& x);

/// Rational roots of the numerators and denominators of every item.
std::vector<Rational> rational_roots_of(const std::vector<RatFunc>& items);

struct TorsionProfile {
  std::vector<int> orders;  // one entry per point found, including O
  std::string group;        // e.g. "Z/8Z", "Z/2Z x Z/6Z"
  long order_bound = 0;     // gcd of #E(F_p) over good primes
  bool complete = false;    // found points reach the bound
  bool mazur = false;       // orders match one of Mazur's 15 groups
};

/// Torsion points of a curve over Q: the given x-candidates, 2-torsion, and
/// a bounded Nagell-Lutz search; identified against Mazur's list.
/// Throws SingularCurveError.
TorsionProfile torsion_profile(const QCurve& E, const std::vector<Rational>& x_candidates = {});

}  // namespace ecfam
