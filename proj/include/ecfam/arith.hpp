#pragma once
// Exact integers and rationals (GMP-backed) plus the number-theoretic
// helpers used by every other module.

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace ecfam {

using Integer = mpz_class;
using Rational = mpq_class;

/// Builds num/den in lowest terms with a positive denominator.
/// Throws std::domain_error on a zero denominator.
Rational make_rational(const Integer& num, const Integer& den);

Integer gcd(const Integer& a, const Integer& b);
Integer lcm(const Integer& a, const Integer& b);

inline bool is_zero(const Rational& q) { return sgn(q) == 0; }
inline bool is_integer(const Rational& q) { return q.get_den() == 1; }

/// Integer square root of a non-negative integer when it is a perfect square.
std::optional<Integer> exact_sqrt(const Integer& n);
/// Rational square root (non-negative) when q is a rational square.
std::optional<Rational> exact_sqrt(const Rational& q);

/// q = kernel * root^2, kernel a squarefree integer, root > 0.
struct SquarePart {
  Rational root;
  Integer kernel;
};

inline constexpr unsigned long kDefaultTrialBound = 1000000;

/// Squarefree decomposition of a nonzero rational. Trial division up to
/// `trial_bound`, then a perfect-square test on the remaining cofactor; a
/// cofactor that is neither 1 nor a square is taken as squarefree.
SquarePart square_part(const Rational& q, unsigned long trial_bound = kDefaultTrialBound);

bool is_square(const Rational& q);

struct TrialFactorization {
  std::vector<std::pair<Integer, unsigned>> primes;  // ascending
  Integer cofactor;  // 1, or the part with no factor <= bound
  bool complete() const { return cofactor == 1; }
};

/// Factors |n| by trial division. n must be nonzero.
TrialFactorization trial_factor(const Integer& n, unsigned long bound = kDefaultTrialBound);

/// All positive divisors of a (complete or partial) factorization. An
/// incomplete cofactor is treated as a single prime.
std::vector<Integer> positive_divisors(const TrialFactorization& f);

/// Primes up to `bound`, sieved once and cached.
const std::vector<std::uint32_t>& small_primes(unsigned long bound = kDefaultTrialBound);

/// Least m > 0 with m^w * q an integer.
Integer weighted_denominator_root(const Rational& q, unsigned w);

/// Natural log of |n| for n != 0; works for integers far beyond double range.
double log_abs(const Integer& n);

/// "p/q" (or "p" when q = 1).
std::string to_string(const Rational& q);
std::string to_string(const Integer& n);

/// Parses "p", "-p", "p/q". Decimal or exponent notation is rejected.
/// Throws std::invalid_argument.
Rational parse_rational(std::string_view text);

}  // namespace ecfam
