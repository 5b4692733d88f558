#include "ecfam/poly.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

#include "ecfam/modp.hpp"

namespace ecfam {

namespace {

using IPoly = std::vector<Integer>;

void itrim(IPoly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

Integer icontent(const IPoly& a) {
  Integer g = 0;
  for (const Integer& c : a) {
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
    if (g == 1) break;
  }
  return g;
}

void make_primitive(IPoly& a) {
  itrim(a);
  if (a.empty()) return;
  Integer g = icontent(a);
  if (a.back() < 0) g = -g;
  if (g != 1)
    for (Integer& c : a) mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), g.get_mpz_t());
}

// lc(b)^k * a mod b with coefficients kept integral.
IPoly prem(IPoly a, const IPoly& b) {
  const std::size_t db = b.size() - 1;
  const Integer& lb = b.back();
  while (a.size() >= b.size()) {
    Integer la = a.back();
    std::size_t shift = a.size() - b.size();
    for (Integer& c : a) c *= lb;
    for (std::size_t i = 0; i < db; ++i) mpz_submul(a[shift + i].get_mpz_t(), la.get_mpz_t(), b[i].get_mpz_t());
    a.pop_back();
    itrim(a);
  }
  return a;
}

IPoly imul(const IPoly& a, const IPoly& b) {
  if (a.empty() || b.empty()) return {};
  IPoly out(a.size() + b.size() - 1, Integer(0));
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j)
      mpz_addmul(out[i + j].get_mpz_t(), a[i].get_mpz_t(), b[j].get_mpz_t());
  }
  return out;
}

Poly from_ipoly(const IPoly& a, const Rational& scale = Rational(1)) {
  std::vector<Rational> c;
  c.reserve(a.size());
  for (const Integer& v : a) c.emplace_back(Rational(v) * scale);
  return Poly(std::move(c));
}

// Degree of gcd(a, b) mod p when the reduction keeps both degrees; -1 otherwise.
int modular_gcd_degree(const Poly& a, const Poly& b, modp::Residue p) {
  auto ra = modp::reduce(a, p);
  auto rb = modp::reduce(b, p);
  if (!ra || !rb) return -1;
  if (modp::degree(*ra) != a.degree() || modp::degree(*rb) != b.degree()) return -1;
  return modp::degree(modp::gcd(*ra, *rb, p));
}

Integer homogeneous_eval(const IPoly& f, const Integer& num, const Integer& den) {
  // sum f_i num^i den^(n-i), by Horner.
  Integer acc = 0, dpow = 1;
  for (std::size_t i = f.size(); i-- > 0;) {
    acc = acc * num + f[i] * dpow;
    dpow *= den;
  }
  return acc;
}

modp::Residue homogeneous_eval_mod(const modp::ModPoly& f, modp::Residue num, modp::Residue den,
                                   modp::Residue p) {
  modp::Residue acc = 0, dpow = 1;
  for (std::size_t i = f.size(); i-- > 0;) {
    acc = modp::add(modp::mul(acc, num, p), modp::mul(f[i], dpow, p), p);
    dpow = modp::mul(dpow, den, p);
  }
  return acc;
}

modp::Residue residue(const Integer& n, modp::Residue p) {
  return static_cast<modp::Residue>(mpz_fdiv_ui(n.get_mpz_t(), p));
}

// Rational roots of a squarefree primitive integer polynomial with f(0) != 0.
std::vector<Rational> squarefree_roots(const IPoly& f) {
  std::vector<Rational> roots;
  if (f.size() == 2) {
    roots.push_back(make_rational(-f[0], f[1]));
    return roots;
  }
  const auto num_divs = positive_divisors(trial_factor(f.front()));
  const auto den_divs = positive_divisors(trial_factor(f.back()));
  // Cauchy bound on |root|.
  Rational bound = 0;
  for (std::size_t i = 0; i + 1 < f.size(); ++i) bound = std::max(bound, Rational(Rational(abs(f[i])) / abs(f.back())));
  bound += 1;
  modp::ModPoly f1, f2;
  for (const Integer& c : f) {
    f1.push_back(residue(c, modp::kPrime));
    f2.push_back(residue(c, modp::kPrime2));
  }
  for (const Integer& q : den_divs) {
    for (const Integer& pn : num_divs) {
      if (Rational(pn, q) > bound) continue;
      if (gcd(pn, q) != 1) continue;
      for (int sign : {-1, 1}) {
        Integer p = sign * pn;
        modp::Residue qr1 = residue(q, modp::kPrime), qr2 = residue(q, modp::kPrime2);
        if (qr1 != 0 && homogeneous_eval_mod(f1, residue(p, modp::kPrime), qr1, modp::kPrime) != 0) continue;
        if (qr2 != 0 && homogeneous_eval_mod(f2, residue(p, modp::kPrime2), qr2, modp::kPrime2) != 0) continue;
        if (homogeneous_eval(f, p, q) == 0) roots.push_back(make_rational(p, q));
      }
    }
  }
  return roots;
}

Integer bareiss_determinant(std::vector<std::vector<Integer>> m) {
  const std::size_t n = m.size();
  if (n == 0) return 1;
  Integer prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m[k][k] == 0) {
      std::size_t swap = k + 1;
      while (swap < n && m[swap][k] == 0) ++swap;
      if (swap == n) return 0;
      std::swap(m[k], m[swap]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        Integer v = m[i][j] * m[k][k] - m[i][k] * m[k][j];
        mpz_divexact(m[i][j].get_mpz_t(), v.get_mpz_t(), prev.get_mpz_t());
      }
    }
    prev = m[k][k];
  }
  return sign * m[n - 1][n - 1];
}

std::string coeff_prefix(const Rational& c, int power, bool first) {
  std::string out;
  Rational a = abs(c);
  if (first) {
    if (sgn(c) < 0) out += "-";
  } else {
    out += sgn(c) < 0 ? " - " : " + ";
  }
  if (power == 0) return out + to_string(a);
  if (a != 1) out += to_string(a) + "*";
  return out;
}

}  // namespace

Poly::Poly(std::vector<Rational> coeffs) : c_(std::move(coeffs)) { trim(); }

Poly::Poly(const Rational& c) {
  if (sgn(c) != 0) c_.push_back(c);
}

Poly Poly::from_ints(std::initializer_list<long> coeffs) {
  std::vector<Rational> c;
  for (long v : coeffs) c.emplace_back(v);
  return Poly(std::move(c));
}

Poly Poly::monomial(const Rational& c, int degree) {
  if (sgn(c) == 0) return Poly();
  std::vector<Rational> v(static_cast<std::size_t>(degree) + 1, Rational(0));
  v.back() = c;
  return Poly(std::move(v));
}

Poly Poly::variable() { return monomial(Rational(1), 1); }

void Poly::trim() {
  while (!c_.empty() && sgn(c_.back()) == 0) c_.pop_back();
}

const Rational& Poly::lead() const {
  if (c_.empty()) throw std::domain_error("leading coefficient of zero polynomial");
  return c_.back();
}

Rational Poly::coeff(int i) const {
  if (i < 0 || i >= static_cast<int>(c_.size())) return Rational(0);
  return c_[static_cast<std::size_t>(i)];
}

Rational Poly::eval(const Rational& x) const {
  Rational acc = 0;
  for (std::size_t i = c_.size(); i-- > 0;) acc = acc * x + c_[i];
  return acc;
}

Poly Poly::derivative() const {
  if (c_.size() <= 1) return Poly();
  std::vector<Rational> d(c_.size() - 1);
  for (std::size_t i = 1; i < c_.size(); ++i) d[i - 1] = c_[i] * static_cast<long>(i);
  return Poly(std::move(d));
}

Poly Poly::monic() const {
  if (c_.empty()) return Poly();
  Rational inv = 1 / c_.back();
  return *this * inv;
}

Poly Poly::pow(unsigned e) const {
  Poly result(Rational(1)), base = *this;
  while (e) {
    if (e & 1) result *= base;
    e >>= 1;
    if (e) base = base * base;
  }
  return result;
}

Poly Poly::compose(const Poly& g) const {
  Poly acc;
  for (std::size_t i = c_.size(); i-- > 0;) {
    acc = acc * g;
    acc += Poly(c_[i]);
  }
  return acc;
}

Poly Poly::reflect() const {
  std::vector<Rational> r = c_;
  for (std::size_t i = 1; i < r.size(); i += 2) r[i] = -r[i];
  return Poly(std::move(r));
}

bool Poly::is_even() const {
  for (std::size_t i = 1; i < c_.size(); i += 2)
    if (sgn(c_[i]) != 0) return false;
  return true;
}

std::pair<Rational, Poly> Poly::content_primitive() const {
  if (c_.empty()) return {Rational(0), Poly()};
  Integer den = 1;
  for (const Rational& c : c_) den = lcm(den, Integer(c.get_den()));
  IPoly ints;
  ints.reserve(c_.size());
  for (const Rational& c : c_) ints.emplace_back(Integer(c.get_num()) * (den / Integer(c.get_den())));
  Integer g = icontent(ints);
  if (ints.back() < 0) g = -g;
  for (Integer& v : ints) mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), g.get_mpz_t());
  return {make_rational(g, den), from_ipoly(ints)};
}

std::vector<Integer> Poly::primitive_integers() const {
  auto prim = content_primitive().second;
  std::vector<Integer> out;
  out.reserve(prim.c_.size());
  for (const Rational& c : prim.c_) out.emplace_back(c.get_num());
  return out;
}

bool Poly::has_integer_coeffs() const {
  return std::all_of(c_.begin(), c_.end(), [](const Rational& c) { return c.get_den() == 1; });
}

Poly Poly::operator-() const {
  Poly r = *this;
  for (Rational& c : r.c_) c = -c;
  return r;
}

Poly& Poly::operator+=(const Poly& o) {
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), Rational(0));
  for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
  trim();
  return *this;
}

Poly& Poly::operator-=(const Poly& o) {
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), Rational(0));
  for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
  trim();
  return *this;
}

Poly& Poly::operator*=(const Poly& o) { return *this = *this * o; }

Poly& Poly::operator*=(const Rational& s) {
  if (sgn(s) == 0) {
    c_.clear();
    return *this;
  }
  for (Rational& c : c_) c *= s;
  return *this;
}

Poly operator*(const Poly& a, const Poly& b) {
  if (a.is_zero() || b.is_zero()) return Poly();
  if (a.c_.size() == 1) return b * a.c_[0];
  if (b.c_.size() == 1) return a * b.c_[0];
  // Integer convolution of the primitive parts.
  auto [ca, pa] = a.content_primitive();
  auto [cb, pb] = b.content_primitive();
  IPoly ia, ib;
  for (const Rational& c : pa.coeffs()) ia.emplace_back(c.get_num());
  for (const Rational& c : pb.coeffs()) ib.emplace_back(c.get_num());
  return from_ipoly(imul(ia, ib), ca * cb);
}

DivRem divrem(const Poly& a, const Poly& b) {
  if (b.is_zero()) throw std::domain_error("polynomial division by zero");
  if (a.degree() < b.degree()) return {Poly(), a};
  std::vector<Rational> r = a.coeffs();
  std::vector<Rational> q(static_cast<std::size_t>(a.degree() - b.degree() + 1), Rational(0));
  const auto& bc = b.coeffs();
  const Rational lead_inv = 1 / b.lead();
  const std::size_t db = bc.size() - 1;
  for (std::size_t k = q.size(); k-- > 0;) {
    Rational t = r[k + db] * lead_inv;
    q[k] = t;
    if (sgn(t) == 0) continue;
    for (std::size_t i = 0; i <= db; ++i) r[k + i] -= t * bc[i];
  }
  r.resize(db);
  return {Poly(std::move(q)), Poly(std::move(r))};
}

Poly exact_div(const Poly& a, const Poly& b) {
  auto [q, r] = divrem(a, b);
  if (!r.is_zero()) throw std::domain_error("inexact polynomial division");
  return q;
}

Poly gcd(const Poly& a, const Poly& b) {
  if (a.is_zero()) return b.monic();
  if (b.is_zero()) return a.monic();
  if (a.is_constant() || b.is_constant()) return Poly(Rational(1));
  for (modp::Residue p : {modp::kPrime, modp::kPrime2}) {
    if (modular_gcd_degree(a, b, p) == 0) return Poly(Rational(1));
  }
  IPoly x = a.primitive_integers(), y = b.primitive_integers();
  if (x.size() < y.size()) std::swap(x, y);
  while (!y.empty()) {
    IPoly r = prem(x, y);
    make_primitive(r);
    x = std::move(y);
    y = std::move(r);
    if (!y.empty() && y.size() == 1) return Poly(Rational(1));
  }
  return from_ipoly(x).monic();
}

Poly lcm(const Poly& a, const Poly& b) {
  if (a.is_zero() || b.is_zero()) throw std::domain_error("lcm with zero polynomial");
  return exact_div(a * b, gcd(a, b)).monic();
}

FractionSubstitution compose_fraction(const Poly& f, const Poly& n, const Poly& d) {
  if (d.is_zero()) throw std::domain_error("substitution with zero denominator");
  if (f.is_zero()) return {Poly(), 0};
  const unsigned m = static_cast<unsigned>(f.degree());
  std::vector<Poly> dpow{Poly(Rational(1))};
  for (unsigned i = 1; i <= m; ++i) dpow.push_back(dpow.back() * d);
  Poly acc(f.lead());
  for (unsigned i = m; i-- > 0;) {
    acc = acc * n;
    if (sgn(f.coeffs()[i]) != 0) acc += dpow[m - i] * f.coeffs()[i];
  }
  return {acc, m};
}

Poly SquarefreeDecomp::expand() const {
  Poly out(constant);
  for (const auto& [part, m] : parts) out *= part.pow(m);
  return out;
}

SquarefreeDecomp yun_squarefree(const Poly& p) {
  if (p.is_zero()) throw std::domain_error("squarefree decomposition of zero polynomial");
  SquarefreeDecomp out{p.lead(), {}};
  Poly f = p.monic();
  if (f.degree() == 0) return out;
  Poly df = f.derivative();
  Poly a0 = gcd(f, df);
  Poly b = exact_div(f, a0);
  Poly c = exact_div(df, a0);
  Poly d = c - b.derivative();
  for (unsigned i = 1; b.degree() > 0; ++i) {
    Poly a = gcd(b, d);
    if (a.degree() > 0) out.parts.emplace_back(a, i);
    b = exact_div(b, a);
    c = exact_div(d, a);
    d = c - b.derivative();
  }
  return out;
}

std::optional<Poly> poly_sqrt(const Poly& p) {
  if (p.is_zero()) return Poly();
  if (p.degree() % 2) return std::nullopt;
  auto lead_root = exact_sqrt(p.lead());
  if (!lead_root) return std::nullopt;
  const int n = p.degree(), m = n / 2;
  std::vector<Rational> s(static_cast<std::size_t>(m) + 1, Rational(0));
  s[static_cast<std::size_t>(m)] = *lead_root;
  const Rational two_lead = 2 * *lead_root;
  for (int k = m - 1; k >= 0; --k) {
    // Coefficient of x^(m+k) in s^2 determines s_k.
    Rational acc = p.coeff(m + k);
    for (int i = k + 1; i < m; ++i) {
      int j = m + k - i;
      if (j >= k + 1 && j <= m - 1) acc -= s[static_cast<std::size_t>(i)] * s[static_cast<std::size_t>(j)];
    }
    s[static_cast<std::size_t>(k)] = acc / two_lead;
  }
  Poly root(std::move(s));
  if (root * root != p) return std::nullopt;
  return root;
}

std::vector<Rational> rational_roots(const Poly& p) {
  if (p.is_zero()) throw std::domain_error("rational roots of zero polynomial");
  std::vector<Rational> roots;
  const auto& c = p.coeffs();
  std::size_t zeros = 0;
  while (sgn(c[zeros]) == 0) ++zeros;
  for (std::size_t i = 0; i < zeros; ++i) roots.emplace_back(0);
  Poly stripped(std::vector<Rational>(c.begin() + static_cast<long>(zeros), c.end()));
  if (stripped.degree() > 0) {
    for (const auto& [part, mult] : yun_squarefree(stripped).parts) {
      IPoly ip = part.primitive_integers();
      for (const Rational& r : squarefree_roots(ip))
        for (unsigned k = 0; k < mult; ++k) roots.push_back(r);
    }
  }
  std::sort(roots.begin(), roots.end());
  return roots;
}

LinearFactorization factor_linear(const Poly& p) {
  if (p.is_zero()) throw std::domain_error("factoring zero polynomial");
  auto [content, rest] = p.content_primitive();
  LinearFactorization out{content, {}, rest};
  if (rest.degree() <= 0) return out;
  auto roots = rational_roots(rest);
  for (std::size_t i = 0; i < roots.size();) {
    std::size_t j = i;
    while (j < roots.size() && roots[j] == roots[i]) ++j;
    Poly lin({-Rational(roots[i].get_num()), Rational(roots[i].get_den())});
    out.linear.emplace_back(lin, static_cast<unsigned>(j - i));
    out.rest = exact_div(out.rest, lin.pow(static_cast<unsigned>(j - i)));
    i = j;
  }
  auto [c2, prim] = out.rest.content_primitive();
  out.content *= c2;
  out.rest = prim;
  return out;
}

Rational resultant(const Poly& f, const Poly& g) {
  if (f.is_zero() || g.is_zero()) return Rational(0);
  auto [cf, pf] = f.content_primitive();
  auto [cg, pg] = g.content_primitive();
  const int m = pf.degree(), n = pg.degree();
  if (m == 0 && n == 0) return Rational(1);
  const std::size_t size = static_cast<std::size_t>(m + n);
  std::vector<std::vector<Integer>> syl(size, std::vector<Integer>(size, Integer(0)));
  // Rows hold coefficients in descending order.
  for (int i = 0; i < n; ++i)
    for (int k = 0; k <= m; ++k) syl[i][i + k] = Integer(pf.coeffs()[m - k].get_num());
  for (int i = 0; i < m; ++i)
    for (int k = 0; k <= n; ++k) syl[n + i][i + k] = Integer(pg.coeffs()[n - k].get_num());
  Rational res(bareiss_determinant(std::move(syl)));
  Rational scale = 1;
  for (int i = 0; i < n; ++i) scale *= cf;
  for (int i = 0; i < m; ++i) scale *= cg;
  return res * scale;
}

std::string to_string(const Poly& p, std::string_view var) {
  if (p.is_zero()) return "0";
  std::ostringstream out;
  bool first = true;
  for (int i = p.degree(); i >= 0; --i) {
    const Rational& c = p.coeffs()[static_cast<std::size_t>(i)];
    if (sgn(c) == 0) continue;
    out << coeff_prefix(c, i, first);
    if (i >= 1) out << var;
    if (i >= 2) out << '^' << i;
    first = false;
  }
  return out.str();
}

std::string to_factored_string(const Poly& p, std::string_view var) {
  if (p.degree() <= 0) return to_string(p, var);
  auto f = factor_linear(p);
  std::vector<std::string> factors;
  if (f.content != 1) factors.push_back(f.content == -1 ? "-1" : to_string(f.content));
  auto wrap = [&](const Poly& q, unsigned m) {
    std::string s = to_string(q, var);
    bool bare = q == Poly::variable();
    std::string t = bare ? s : "(" + s + ")";
    if (m > 1) t += "^" + std::to_string(m);
    factors.push_back(t);
  };
  for (const auto& [lin, m] : f.linear) wrap(lin, m);
  if (f.rest.degree() > 0) wrap(f.rest, 1);
  std::string out;
  for (std::size_t i = 0; i < factors.size(); ++i) {
    if (i) out += "*";
    out += factors[i];
  }
  if (out.rfind("-1*", 0) == 0) out = "-" + out.substr(3);
  return out;
}

}  // namespace ecfam
