#include "ecfam/families.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <numeric>
#include <stdexcept>

#include "ecfam/expr.hpp"
#include "ecfam/modp.hpp"

namespace ecfam {

namespace {

struct GeneratorSpec {
  const char* x;
  int order;
};

struct FamilySpec {
  const char* key;
  const char* label;
  const char* group;
  const char* A;
  const char* B;
  const char* C;
  std::vector<GeneratorSpec> generators;
};

const std::vector<FamilySpec>& specs() {
  static const std::vector<FamilySpec> s = {
      {"z5", "Z5", "Z/5Z", "r^2-6r+1", "8r(r-1)", "16r^2", {{"0", 5}}},
      {"z6", "Z6", "Z/6Z", "r^2-3", "3-2r", "0", {{"1", 3}, {"0", 2}}},
      {"z7", "Z7", "Z/7Z", "r^4-6r^3+3r^2+2r+1", "8r^2(r-1)(r^2-r-1)", "16r^4(r-1)^2", {{"0", 7}}},
      {"z8", "Z8", "Z/8Z", "2(r^4+2r^2-1)", "(r^2-1)^4", "0", {{"-(r-1)(r+1)^3", 8}}},
      {"z2z4", "Z2xZ4", "Z/2Z x Z/4Z", "r^2+1", "r^2", "0", {{"r", 4}, {"-1", 2}}},
      {"z2z6", "Z2xZ6", "Z/2Z x Z/6Z", "-2(r^4-6r^2-3)", "(r^2-1)^3(r^2-9)", "0",
       {{"(r^2-1)^2", 3}, {"0", 2}, {"r^4-6r^2+8r-3", 2}}},
  };
  return s;
}

std::string lower(std::string_view s) {
  std::string out;
  for (char c : s)
    if (c != '_' && c != '/' && c != ' ') out += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

void add_pool_factor(std::vector<Poly>& pool, const Poly& f) {
  if (f.degree() < 0) return;
  if (std::find(pool.begin(), pool.end(), f) == pool.end()) pool.push_back(f);
}

void add_pool_from(std::vector<Poly>& pool, const RatFunc& coeff) {
  if (coeff.is_zero()) return;
  auto lf = factor_linear(coeff.num());
  Integer content = abs(Integer(lf.content.get_num())) * Integer(lf.content.get_den());
  if (content > 1) {
    auto tf = trial_factor(content);
    for (const auto& [p, e] : tf.primes) add_pool_factor(pool, Poly(Rational(p)));
  }
  for (const auto& [lin, m] : lf.linear) add_pool_factor(pool, lin);
  if (lf.rest.degree() > 0) add_pool_factor(pool, lf.rest);
}

TorsionFamily build(const FamilySpec& s) {
  TorsionFamily f;
  f.key = s.key;
  f.label = s.label;
  f.group = s.group;
  f.var = "r";
  f.curve = FCurve{parse_ratfunc(s.A, "r"), parse_ratfunc(s.B, "r"), parse_ratfunc(s.C, "r")};
  f.even = f.curve.A.reflect() == f.curve.A && f.curve.B.reflect() == f.curve.B && f.curve.C.reflect() == f.curve.C;

  for (const auto& g : s.generators) {
    auto P = point_from_x(f.curve, parse_ratfunc(g.x, "r"));
    if (!P) throw std::logic_error(std::string("generator not on curve for ") + s.key);
    f.generators.push_back({*P, g.order});
  }

  // Enumerate sum a_i g_i; generators are independent so orders combine by lcm.
  std::vector<TorsionPointInfo> elems{{FPoint::at_infinity(), 1}};
  for (const auto& g : f.generators) {
    std::vector<TorsionPointInfo> next;
    for (const auto& e : elems) {
      FPoint acc = e.point;
      for (int a = 0; a < g.order; ++a) {
        int ord_a = g.order / std::gcd(a, g.order);
        next.push_back({acc, std::lcm(e.order, ord_a)});
        acc = f.curve.add(acc, g.point);
      }
    }
    elems = std::move(next);
  }
  for (auto& e : elems)
    if (!e.point.infinity) f.torsion.push_back(std::move(e));
  std::stable_sort(f.torsion.begin(), f.torsion.end(),
                   [](const TorsionPointInfo& a, const TorsionPointInfo& b) { return a.order < b.order; });

  std::vector<RatFunc> degeneracies{f.curve.discriminant()};
  auto xs = f.torsion_x();
  for (std::size_t i = 0; i < xs.size(); ++i) {
    degeneracies.push_back(xs[i].first);
    for (std::size_t j = 0; j < i; ++j) degeneracies.push_back(xs[i].first - xs[j].first);
  }
  // The x-values themselves may vanish legitimately (x = 0); only their
  // denominators and mutual collisions matter.
  std::vector<RatFunc> filtered{degeneracies[0]};
  for (std::size_t i = 1; i < degeneracies.size(); ++i) {
    bool is_x = false;
    for (const auto& [x, o] : xs) is_x = is_x || (x == degeneracies[i]);
    filtered.push_back(is_x ? RatFunc(Poly(Rational(1)), degeneracies[i].den()) : degeneracies[i]);
  }
  f.excluded = rational_roots_of(filtered);

  add_pool_factor(f.divisor_pool, Poly(Rational(2)));
  add_pool_from(f.divisor_pool, f.curve.B);
  add_pool_from(f.divisor_pool, f.curve.C);
  std::stable_sort(f.divisor_pool.begin(), f.divisor_pool.end(),
                   [](const Poly& a, const Poly& b) { return a.degree() < b.degree(); });
  return f;
}

}  // namespace

std::vector<std::pair<RatFunc, int>> TorsionFamily::torsion_x() const {
  std::vector<std::pair<RatFunc, int>> out;
  for (const auto& t : torsion) {
    bool seen = false;
    for (const auto& [x, o] : out) seen = seen || x == t.point.x;
    if (!seen) out.emplace_back(t.point.x, t.order);
  }
  return out;
}

const std::vector<std::string>& family_keys() {
  static const std::vector<std::string> keys = [] {
    std::vector<std::string> k;
    for (const auto& s : specs()) k.emplace_back(s.key);
    return k;
  }();
  return keys;
}

const TorsionFamily& family(std::string_view name) {
  static const std::vector<TorsionFamily> all = [] {
    std::vector<TorsionFamily> v;
    for (const auto& s : specs()) v.push_back(build(s));
    return v;
  }();
  std::string n = lower(name);
  for (const auto& f : all)
    if (n == f.key || n == lower(f.label)) return f;
  throw std::invalid_argument("unknown family '" + std::string(name) + "'");
}

std::optional<FPoint> point_from_x(const FCurve& E, const RatFunc& x) {
  RatFunc y2 = E.rhs(x);
  if (y2.is_zero()) return FPoint::affine(x, RatFunc(0));
  auto s = poly_sqrt(y2.num() * y2.den());
  if (!s) return std::nullopt;
  return FPoint::affine(x, RatFunc(*s, y2.den()));
}

std::vector<Rational> rational_roots_of(const std::vector<RatFunc>& items) {
  std::vector<Rational> out;
  for (const auto& f : items) {
    for (const Poly* p : {&f.num(), &f.den()}) {
      if (p->degree() <= 0) continue;
      for (const Rational& r : rational_roots(*p)) out.push_back(r);
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

namespace {

Integer eval_cubic(const Integer& A, const Integer& B, const Integer& C, const Integer& x) {
  return ((x + A) * x + B) * x + C;
}

// Integer roots of x^3 + A x^2 + B x + C.
std::vector<Integer> integer_cubic_roots(const Integer& A, const Integer& B, const Integer& C) {
  std::vector<Integer> pts;
  Integer M = 1 + std::max({abs(A), abs(B), abs(C)});
  pts.push_back(-M);
  pts.push_back(M);
  Integer d = 4 * A * A - 12 * B;  // discriminant of the derivative
  if (d >= 0) {
    Integer s;
    mpz_sqrt(s.get_mpz_t(), d.get_mpz_t());
    for (const Integer& num : {Integer(-2 * A - s - 1), Integer(-2 * A + s + 1)}) {
      Integer lo, hi;
      mpz_fdiv_q_ui(lo.get_mpz_t(), num.get_mpz_t(), 6);
      mpz_cdiv_q_ui(hi.get_mpz_t(), num.get_mpz_t(), 6);
      // Widen by one on each side to cover rounding of the square root.
      for (Integer v : {Integer(lo - 1), lo, hi, Integer(hi + 1)})
        if (abs(v) < M) pts.push_back(v);
    }
  }
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  std::vector<Integer> roots;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    if (eval_cubic(A, B, C, pts[i]) == 0) roots.push_back(pts[i]);
    if (i + 1 == pts.size()) break;
    Integer lo = pts[i], hi = pts[i + 1];
    int slo = sgn(eval_cubic(A, B, C, lo)), shi = sgn(eval_cubic(A, B, C, hi));
    if (slo == 0 || shi == 0 || slo == shi) continue;
    while (hi - lo > 1) {
      Integer mid = (lo + hi) / 2;
      int sm = sgn(eval_cubic(A, B, C, mid));
      if (sm == 0) {
        roots.push_back(mid);
        break;
      }
      (sm == slo ? lo : hi) = mid;
    }
  }
  std::sort(roots.begin(), roots.end());
  roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
  return roots;
}

long count_points_mod(const Integer& A, const Integer& B, const Integer& C, modp::Residue p) {
  auto red = [p](const Integer& v) { return static_cast<modp::Residue>(mpz_fdiv_ui(v.get_mpz_t(), p)); };
  modp::Residue a = red(A), b = red(B), c = red(C);
  long count = 1;  // infinity
  for (modp::Residue x = 0; x < p; ++x) {
    modp::Residue f = modp::add(modp::mul(modp::add(modp::mul(modp::add(x, a, p), x, p), b, p), x, p), c, p);
    if (f == 0) count += 1;
    else if (modp::pow(f, (p - 1) / 2, p) == 1) count += 2;
  }
  return count;
}

std::vector<int> group_orders(int n1, int n2) {
  std::vector<int> out;
  for (int a = 0; a < n1; ++a)
    for (int b = 0; b < n2; ++b) out.push_back(std::lcm(n1 / std::gcd(a, n1), n2 / std::gcd(b, n2)));
  std::sort(out.begin(), out.end());
  return out;
}

constexpr std::size_t kMaxSquareDivisors = 20000;

}  // namespace

TorsionProfile torsion_profile(const QCurve& E, const std::vector<Rational>& x_candidates) {
  if (E.singular()) throw SingularCurveError("torsion profile of a singular curve");
  Integer mu = lcm(lcm(Integer(E.A.get_den()), Integer(E.B.get_den())), Integer(E.C.get_den()));
  QCurve I = E.scaled(Rational(mu));
  Integer A(I.A.get_num()), B(I.B.get_num()), C(I.C.get_num());
  Integer disc(I.discriminant().get_num());

  TorsionProfile prof;
  long bound = 0;
  int used = 0;
  for (std::uint32_t p : small_primes(2000)) {
    if (p < 3) continue;
    if (mpz_divisible_ui_p(disc.get_mpz_t(), p)) continue;
    bound = std::gcd(bound, count_points_mod(A, B, C, p));
    if (++used == 20 || bound == 1) break;
  }
  prof.order_bound = bound;

  std::vector<QPoint> found{QPoint::at_infinity()};
  auto add_point = [&](const Rational& x, const Rational& y) {
    QPoint P = QPoint::affine(x, y);
    if (std::find(found.begin(), found.end(), P) != found.end()) return;
    if (!torsion_order(I, P)) return;
    found.push_back(P);
  };
  auto try_x = [&](const Rational& x) {
    auto y = exact_sqrt(I.rhs(x));
    if (!y) return;
    add_point(x, *y);
    add_point(x, -*y);
  };
  for (const Rational& x : x_candidates) try_x(x * mu * mu);
  for (const Integer& x : integer_cubic_roots(A, B, C)) add_point(Rational(x), Rational(0));

  if (static_cast<long>(found.size()) < bound) {
    auto tf = trial_factor(disc);
    std::vector<std::pair<Integer, unsigned>> halves;
    std::size_t count = 1;
    for (const auto& [p, e] : tf.primes) {
      halves.emplace_back(p, e / 2);
      count *= e / 2 + 1;
    }
    if (tf.complete() && count <= kMaxSquareDivisors) {
      std::vector<Integer> ys{1};
      for (const auto& [p, h] : halves) {
        std::size_t n = ys.size();
        Integer pk = 1;
        for (unsigned k = 1; k <= h; ++k) {
          pk *= p;
          for (std::size_t i = 0; i < n; ++i) ys.push_back(ys[i] * pk);
        }
      }
      for (const Integer& y : ys) {
        for (const Integer& x : integer_cubic_roots(A, B, C - y * y)) {
          add_point(Rational(x), Rational(y));
          add_point(Rational(x), Rational(-y));
        }
        if (static_cast<long>(found.size()) >= bound) break;
      }
    }
  }

  for (const QPoint& P : found) prof.orders.push_back(*torsion_order(I, P));
  std::sort(prof.orders.begin(), prof.orders.end());
  const int n = static_cast<int>(prof.orders.size());
  const int two = static_cast<int>(std::count(prof.orders.begin(), prof.orders.end(), 2));
  prof.complete = n == bound;
  if (two == 3) {
    prof.group = "Z/2Z x Z/" + std::to_string(n / 2) + "Z";
    prof.mazur = n % 2 == 0 && (n / 2 == 2 || n / 2 == 4 || n / 2 == 6 || n / 2 == 8) &&
                 group_orders(2, n / 2) == prof.orders;
  } else {
    prof.group = "Z/" + std::to_string(n) + "Z";
    prof.mazur = (n <= 10 || n == 12) && group_orders(n, 1) == prof.orders;
  }
  return prof;
}

}  // namespace ecfam
