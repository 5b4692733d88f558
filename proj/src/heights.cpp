#include "ecfam/heights.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <map>

namespace ecfam {

double naive_height(const Rational& x) {
  if (sgn(x) == 0) return 0;
  Integer n = abs(Integer(x.get_num()));
  const Integer& d = x.get_den();
  return log_abs(n > d ? n : d);
}

std::optional<QPoint> point_with_x(const QCurve& E, const Rational& x) {
  auto y = exact_sqrt(E.rhs(x));
  if (!y) return std::nullopt;
  return QPoint::affine(x, *y);
}

Integer integral_scale(const QCurve& E) {
  Integer u = 1;
  u = lcm(u, weighted_denominator_root(E.A, 2));
  u = lcm(u, weighted_denominator_root(E.B, 4));
  u = lcm(u, weighted_denominator_root(E.C, 6));
  return u;
}

namespace {

// x-only doubling on an integral model with x = X/Z in lowest terms.
class Doubler {
 public:
  explicit Doubler(const QCurve& E) {
    A_ = E.A.get_num();
    B_ = E.B.get_num();
    C_ = E.C.get_num();
    K_ = B_ * B_ - 4 * A_ * C_;
    Poly f(std::vector<Rational>{Rational(K_), Rational(-8 * C_), Rational(-2 * B_), Rational(0), Rational(1)});
    Poly g(std::vector<Rational>{Rational(4 * C_), Rational(4 * B_), Rational(4 * A_), Rational(4)});
    R_ = abs(Integer(resultant(f, g).get_num()));
    if (R_ == 0) throw SingularCurveError("singular curve");
  }

  // Returns false when the point has order 2.
  bool step(Integer& X, Integer& Z) const {
    Integer X2 = X * X, Z2 = Z * Z, XZ = X * Z;
    Integer w = X * X2 + A_ * X2 * Z + B_ * XZ * Z + C_ * Z2 * Z;
    if (w == 0) return false;
    Integer num = X2 * X2 - 2 * B_ * X2 * Z2 - 8 * C_ * XZ * Z2 + K_ * Z2 * Z2;
    Integer den = 4 * Z * w;
    // gcd(num, den) divides the resultant R of the two quartic forms.
    Integer g = gcd(Integer(num % R_), R_);
    if (g != 1) g = gcd(g, Integer(den % g));
    if (g != 1) {
      mpz_divexact(num.get_mpz_t(), num.get_mpz_t(), g.get_mpz_t());
      mpz_divexact(den.get_mpz_t(), den.get_mpz_t(), g.get_mpz_t());
    }
    if (den < 0) {
      num = -num;
      den = -den;
    }
    X = std::move(num);
    Z = std::move(den);
    return true;
  }

 private:
  Integer A_, B_, C_, K_, R_;
};

double height_of(const Integer& X, const Integer& Z) {
  if (X == 0) return 0;
  Integer a = abs(X);
  return log_abs(a > Z ? a : Z);
}

void check_point(const QCurve& E, const QPoint& P, std::size_t index) {
  if (P.infinity) throw InvalidPointError(index, "the point at infinity is torsion");
  if (!E.contains(P)) throw InvalidPointError(index, "not on the curve");
  if (auto n = torsion_order(E, P)) throw InvalidPointError(index, "torsion point of order " + std::to_string(*n));
}

HeightEstimate height_unchecked(const QCurve& E, const QPoint& P, int depth) {
  Integer u = integral_scale(E);
  QCurve M = E.scaled(Rational(u));
  Rational x = P.x * Rational(u * u);
  Doubler dbl(M);
  Integer X = x.get_num(), Z = x.get_den();
  HeightEstimate est;
  est.depth = depth;
  std::vector<double> h{height_of(X, Z)};
  double scale = 1;
  est.trail.push_back(h[0]);
  for (int k = 1; k <= depth; ++k) {
    if (!dbl.step(X, Z)) throw std::domain_error("point reached 2-torsion while doubling");
    h.push_back(height_of(X, Z));
    scale *= 4;
    est.trail.push_back(h.back() / scale);
  }
  double c = 0;
  for (std::size_t k = 1; k < h.size(); ++k) c = std::max(c, std::fabs(h[k] - 4 * h[k - 1]));
  est.value = est.trail.back();
  est.error = c / (3 * scale);
  return est;
}

}  // namespace

HeightEstimate canonical_height(const QCurve& E, const QPoint& P, int depth) {
  if (E.singular()) throw SingularCurveError("singular curve");
  if (depth < 1) throw std::invalid_argument("depth must be at least 1");
  check_point(E, P, 0);
  return height_unchecked(E, P, depth);
}

PairingValue pairing(const QCurve& E, const QPoint& P, const QPoint& Q, int depth) {
  if (E.singular()) throw SingularCurveError("singular curve");
  check_point(E, P, 0);
  check_point(E, Q, 1);
  auto hp = height_unchecked(E, P, depth);
  auto hq = height_unchecked(E, Q, depth);
  QPoint S = E.add(P, Q);
  if (S.infinity || torsion_order(E, S)) {
    // P + Q torsion: h(P + Q) = 0 exactly.
    return {-(hp.value + hq.value) / 2, (hp.error + hq.error) / 2};
  }
  auto hs = height_unchecked(E, S, depth);
  return {(hs.value - hp.value - hq.value) / 2, (hs.error + hp.error + hq.error) / 2};
}

namespace {

double det(std::vector<std::vector<double>> m) {
  const std::size_t n = m.size();
  double d = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    for (std::size_t r = c + 1; r < n; ++r)
      if (std::fabs(m[r][c]) > std::fabs(m[piv][c])) piv = r;
    if (m[piv][c] == 0) return 0;
    if (piv != c) {
      std::swap(m[piv], m[c]);
      d = -d;
    }
    d *= m[c][c];
    for (std::size_t r = c + 1; r < n; ++r) {
      double f = m[r][c] / m[c][c];
      for (std::size_t k = c; k < n; ++k) m[r][k] -= f * m[c][k];
    }
  }
  return d;
}

// First-order bound on |det(G + E)| - |det(G)| for |E_ij| <= err_ij, plus the
// exact effect of perturbing every entry by its bound in the worst direction
// for 1x1 and 2x2 cases.
double det_error(const std::vector<std::vector<double>>& g, const std::vector<std::vector<double>>& e) {
  const std::size_t n = g.size();
  if (n == 1) return e[0][0];
  double total = 0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      std::vector<std::vector<double>> minor;
      for (std::size_t r = 0; r < n; ++r) {
        if (r == i) continue;
        std::vector<double> row;
        for (std::size_t c = 0; c < n; ++c)
          if (c != j) row.push_back(std::fabs(g[r][c]) + e[r][c]);
        minor.push_back(row);
      }
      // Permanent-style bound: replacing every entry by |g| + e bounds the cofactor.
      double bound = 1;
      if (minor.size() == 1) {
        bound = minor[0][0];
      } else {
        double s = 0;
        std::vector<std::size_t> perm(minor.size());
        for (std::size_t k = 0; k < perm.size(); ++k) perm[k] = k;
        do {
          double p = 1;
          for (std::size_t k = 0; k < perm.size(); ++k) p *= minor[k][perm[k]];
          s += p;
        } while (std::next_permutation(perm.begin(), perm.end()));
        bound = s;
      }
      total += bound * e[i][j];
    }
  }
  return total;
}

}  // namespace

RankCertificate regulator_certificate(const QCurve& E, const std::vector<QPoint>& points, const HeightOptions& opt) {
  if (points.empty()) throw std::invalid_argument("at least one point is required");
  if (E.singular()) throw SingularCurveError("singular curve");
  if (opt.depth < 1 || opt.max_depth < opt.depth) throw std::invalid_argument("bad depth range");
  for (std::size_t i = 0; i < points.size(); ++i) check_point(E, points[i], i);

  const std::size_t n = points.size();
  // Heights needed: every point and every pairwise sum.
  std::vector<QPoint> targets(points);
  std::vector<std::pair<std::size_t, std::size_t>> sums;
  std::vector<bool> sum_torsion;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      QPoint S = E.add(points[i], points[j]);
      bool tors = S.infinity || torsion_order(E, S).has_value();
      sums.emplace_back(i, j);
      sum_torsion.push_back(tors);
      if (!tors) targets.push_back(S);
    }

  RankCertificate cert;
  cert.curve = E;
  cert.points = points;
  for (int depth = opt.depth; depth <= opt.max_depth; ++depth) {
    std::vector<HeightEstimate> hs(targets.size());
    if (opt.workers > 1) {
      std::vector<std::future<HeightEstimate>> jobs;
      for (const auto& T : targets)
        jobs.push_back(std::async(std::launch::async, [&E, T, depth] { return height_unchecked(E, T, depth); }));
      for (std::size_t k = 0; k < jobs.size(); ++k) hs[k] = jobs[k].get();
    } else {
      for (std::size_t k = 0; k < targets.size(); ++k) hs[k] = height_unchecked(E, targets[k], depth);
    }
    std::vector<std::vector<double>> g(n, std::vector<double>(n)), e(n, std::vector<double>(n));
    for (std::size_t i = 0; i < n; ++i) {
      g[i][i] = hs[i].value;
      e[i][i] = hs[i].error;
    }
    std::size_t next = n;
    for (std::size_t k = 0; k < sums.size(); ++k) {
      auto [i, j] = sums[k];
      double hsum = 0, esum = 0;
      if (!sum_torsion[k]) {
        hsum = hs[next].value;
        esum = hs[next].error;
        ++next;
      }
      g[i][j] = g[j][i] = (hsum - g[i][i] - g[j][j]) / 2;
      e[i][j] = e[j][i] = (esum + e[i][i] + e[j][j]) / 2;
    }
    cert.gram = g;
    cert.gram_error = e;
    cert.depth = depth;
    cert.determinant = det(g);
    cert.determinant_error = det_error(g, e);
    cert.history.emplace_back(depth, cert.determinant);
    cert.verdict = cert.determinant - 3 * cert.determinant_error > 0;
    if (cert.verdict) break;
    // Deeper runs cut the error by about 4 per level; stop when that cannot help.
    double reachable = 3 * cert.determinant_error / std::pow(4.0, opt.max_depth - depth);
    if (cert.determinant <= reachable) break;
  }
  cert.rank_lower_bound = cert.verdict ? n : 0;
  return cert;
}

}  // namespace ecfam
