#include "ecfam/arith.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <stdexcept>

namespace ecfam {

Rational make_rational(const Integer& num, const Integer& den) {
  if (den == 0) throw std::domain_error("rational with zero denominator");
  Rational q(num, den);
  q.canonicalize();
  return q;
}

Integer gcd(const Integer& a, const Integer& b) {
  Integer g;
  mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return g;
}

Integer lcm(const Integer& a, const Integer& b) {
  Integer l;
  mpz_lcm(l.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return l;
}

std::optional<Integer> exact_sqrt(const Integer& n) {
  if (n < 0) return std::nullopt;
  if (!mpz_perfect_square_p(n.get_mpz_t())) return std::nullopt;
  Integer s;
  mpz_sqrt(s.get_mpz_t(), n.get_mpz_t());
  return s;
}

std::optional<Rational> exact_sqrt(const Rational& q) {
  auto n = exact_sqrt(Integer(q.get_num()));
  if (!n) return std::nullopt;
  auto d = exact_sqrt(Integer(q.get_den()));
  if (!d) return std::nullopt;
  return make_rational(*n, *d);
}

const std::vector<std::uint32_t>& small_primes(unsigned long bound) {
  static std::mutex mu;
  static std::vector<std::uint32_t> primes;
  static unsigned long sieved = 0;
  std::lock_guard<std::mutex> lock(mu);
  if (bound > sieved) {
    std::vector<bool> composite(bound + 1, false);
    primes.clear();
    for (unsigned long i = 2; i <= bound; ++i) {
      if (composite[i]) continue;
      primes.push_back(static_cast<std::uint32_t>(i));
      for (unsigned long j = i * i; j <= bound; j += i) composite[j] = true;
    }
    sieved = bound;
  }
  return primes;
}

namespace {

// Squarefree kernel and square root of a positive integer.
std::pair<Integer, Integer> integer_square_part(Integer m, unsigned long bound) {
  Integer kernel = 1, root = 1;
  for (std::uint32_t p : small_primes(kDefaultTrialBound)) {
    if (p > bound || m == 1) break;
    // Past the cube root every remaining factor exceeds p, so m is
    // prime, a product of two primes, or a prime square.
    if (Integer(p) * p * p > m) break;
    unsigned e = 0;
    while (mpz_divisible_ui_p(m.get_mpz_t(), p)) {
      mpz_divexact_ui(m.get_mpz_t(), m.get_mpz_t(), p);
      ++e;
    }
    for (unsigned i = 0; i < e / 2; ++i) root *= p;
    if (e % 2) kernel *= p;
  }
  if (m != 1) {
    if (auto s = exact_sqrt(m)) {
      root *= *s;
    } else {
      kernel *= m;
    }
  }
  return {kernel, root};
}

}  // namespace

SquarePart square_part(const Rational& q, unsigned long trial_bound) {
  if (sgn(q) == 0) throw std::domain_error("square_part of zero");
  Integer nd = abs(Integer(q.get_num())) * Integer(q.get_den());
  auto [kernel, root] = integer_square_part(nd, trial_bound);
  if (sgn(q) < 0) kernel = -kernel;
  return {make_rational(root, Integer(q.get_den())), kernel};
}

bool is_square(const Rational& q) {
  if (sgn(q) < 0) return false;
  if (sgn(q) == 0) return true;
  return exact_sqrt(q).has_value();
}

TrialFactorization trial_factor(const Integer& n, unsigned long bound) {
  if (n == 0) throw std::domain_error("trial_factor of zero");
  TrialFactorization f;
  Integer m = abs(n);
  for (std::uint32_t p : small_primes(std::max(bound, kDefaultTrialBound))) {
    if (p > bound || m == 1) break;
    if (Integer(p) * p > m) break;
    unsigned e = 0;
    while (mpz_divisible_ui_p(m.get_mpz_t(), p)) {
      mpz_divexact_ui(m.get_mpz_t(), m.get_mpz_t(), p);
      ++e;
    }
    if (e) f.primes.emplace_back(Integer(p), e);
  }
  if (m != 1 && mpz_probab_prime_p(m.get_mpz_t(), 30) > 0) {
    f.primes.emplace_back(m, 1);
    m = 1;
  }
  f.cofactor = m;
  return f;
}

std::vector<Integer> positive_divisors(const TrialFactorization& f) {
  std::vector<Integer> divs{1};
  auto extend = [&divs](const Integer& p, unsigned e) {
    std::size_t n = divs.size();
    Integer pk = 1;
    for (unsigned k = 1; k <= e; ++k) {
      pk *= p;
      for (std::size_t i = 0; i < n; ++i) divs.push_back(divs[i] * pk);
    }
  };
  for (const auto& [p, e] : f.primes) extend(p, e);
  if (f.cofactor != 1) extend(f.cofactor, 1);
  std::sort(divs.begin(), divs.end());
  return divs;
}

Integer weighted_denominator_root(const Rational& q, unsigned w) {
  Integer den = q.get_den();
  if (den == 1) return 1;
  auto f = trial_factor(den);
  Integer m = 1;
  for (const auto& [p, e] : f.primes)
    for (unsigned i = 0; i < (e + w - 1) / w; ++i) m *= p;
  if (!f.complete()) m *= f.cofactor;
  return m;
}

double log_abs(const Integer& n) {
  if (n == 0) throw std::domain_error("log of zero");
  long exp = 0;
  double mant = mpz_get_d_2exp(&exp, n.get_mpz_t());
  return std::log(std::fabs(mant)) + static_cast<double>(exp) * std::log(2.0);
}

std::string to_string(const Integer& n) { return n.get_str(); }

std::string to_string(const Rational& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

namespace {

bool valid_integer_text(std::string_view s) {
  if (s.empty()) return false;
  std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  if (i == s.size()) return false;
  for (; i < s.size(); ++i)
    if (s[i] < '0' || s[i] > '9') return false;
  return true;
}

Integer parse_integer(std::string_view s) {
  std::string t(s);
  if (!t.empty() && t[0] == '+') t.erase(0, 1);
  return Integer(t, 10);
}

}  // namespace

Rational parse_rational(std::string_view text) {
  while (!text.empty() && text.front() == ' ') text.remove_prefix(1);
  while (!text.empty() && text.back() == ' ') text.remove_suffix(1);
  auto slash = text.find('/');
  std::string_view num = text.substr(0, slash);
  std::string_view den = slash == std::string_view::npos ? std::string_view("1") : text.substr(slash + 1);
  if (!valid_integer_text(num) || !valid_integer_text(den) || den[0] == '-' || den[0] == '+')
    throw std::invalid_argument("not an exact rational: '" + std::string(text) + "'");
  Integer d = parse_integer(den);
  if (d == 0) throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
  return make_rational(parse_integer(num), d);
}

}  // namespace ecfam
