#pragma once
// Canonical heights by the doubling limit h(x(2^n P)) / 4^n, height
// pairings and regulator certificates for curves over Q.

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "ecfam/curve.hpp"

namespace ecfam {

/// A point rejected by a height computation; `index` is its position in the
/// caller's list (0 for single-point calls).
class InvalidPointError : public std::invalid_argument {
 public:
  InvalidPointError(std::size_t index, const std::string& what)
      : std::invalid_argument("point " + std::to_string(index + 1) + ": " + what), index(index) {}
  std::size_t index;
};

/// log max(|p|, |q|) for x = p/q in lowest terms; 0 for x = 0.
double naive_height(const Rational& x);

struct HeightEstimate {
  double value = 0;
  int depth = 0;
  double error = 0;
  /// h(x(2^k P)) / 4^k for k = 0..depth.
  std::vector<double> trail;
};

inline constexpr int kDefaultDepth = 8;
inline constexpr int kMaxDepth = 10;

/// The point with this x-coordinate (y >= 0) when rhs(x) is a rational square.
std::optional<QPoint> point_with_x(const QCurve& E, const Rational& x);

/// u > 0 with u^2 A, u^4 B, u^6 C integers.
Integer integral_scale(const QCurve& E);

/// Throws SingularCurveError, InvalidPointError for torsion or off-curve input.
HeightEstimate canonical_height(const QCurve& E, const QPoint& P, int depth = kDefaultDepth);

struct PairingValue {
  double value = 0;
  double error = 0;
};

/// <P, Q> = (h(P + Q) - h(P) - h(Q)) / 2.
PairingValue pairing(const QCurve& E, const QPoint& P, const QPoint& Q, int depth = kDefaultDepth);

struct HeightOptions {
  int depth = kDefaultDepth;
  int max_depth = kMaxDepth;  // adaptive deepening stops here
  unsigned workers = 1;
};

struct RankCertificate {
  QCurve curve;
  std::vector<QPoint> points;
  std::vector<std::vector<double>> gram;
  std::vector<std::vector<double>> gram_error;
  double determinant = 0;
  double determinant_error = 0;
  int depth = 0;
  /// Depth-by-depth determinants, for self-consistency reports.
  std::vector<std::pair<int, double>> history;
  bool verdict = false;
  std::size_t rank_lower_bound = 0;
};

/// Gram matrix of the pairing at the requested depth, deepened until the
/// determinant clears three times its error bound or max_depth is reached.
/// Throws InvalidPointError naming the first off-curve or torsion point.
RankCertificate regulator_certificate(const QCurve& E, const std::vector<QPoint>& points,
                                      const HeightOptions& opt = {});

}  // namespace ecfam
