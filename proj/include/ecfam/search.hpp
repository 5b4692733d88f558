#pragma once
// Candidate points x(r) whose curve value reduces to a square times a
// quadratic, and the bounded grid search that enumerates them.

#include <cstddef>
#include <string>
#include <vector>

#include "ecfam/conic.hpp"
#include "ecfam/families.hpp"

namespace ecfam {

enum class ProfileKind { Square, SquareTimesQuad, Reject };

/// rhs(x) = F^2 * condition.poly() exactly when kind != Reject.
struct RhsProfile {
  ProfileKind kind = ProfileKind::Reject;
  RatFunc F;
  QuadCondition condition;
  /// Product of the odd-multiplicity parts, times the constant.
  Poly odd_part;
};

/// Throws std::domain_error when rhs(x) is identically zero.
RhsProfile rhs_profile(const FCurve& E, const RatFunc& x);

struct SearchConfig {
  int exponent_min = -2;
  int exponent_max = 2;
  int degree_cap = 2;
  long coeff_bound = 5;
  /// Two free factors at once use these tighter bounds: one factor of
  /// degree <= degree_cap, the other of degree <= pair_minor_degree.
  long pair_coeff_bound = 3;
  int pair_minor_degree = 1;
  std::size_t max_candidates = 100000000;
  unsigned workers = 1;
  bool dedup = true;
};

/// "key = value" lines; '#' starts a comment. Throws std::invalid_argument.
SearchConfig parse_search_config(const std::string& text, SearchConfig base = {});
void apply_config_option(SearchConfig& cfg, const std::string& key, const std::string& value);
std::string describe(const SearchConfig& cfg);

struct SearchHit {
  RatFunc x;
  RatFunc F;
  QuadCondition condition;
  /// Canonical representative of x modulo 2-torsion translation (and r -> -r
  /// for even families).
  std::string orbit_key;
};

struct SearchResult {
  std::vector<SearchHit> hits;
  std::size_t candidates = 0;
  std::size_t survivors = 0;  // passed the modular filter
  bool partial = false;       // candidate cap reached
};

SearchResult enumerate_hits(const TorsionFamily& fam, const SearchConfig& cfg);

std::string orbit_key(const TorsionFamily& fam, const RatFunc& x);
/// Condition class used for matching: r -> -r identified for even families.
std::string condition_class(const TorsionFamily& fam, const QuadCondition& q);

struct TableRow {
  std::string point;      // as printed
  std::string quadratic;  // as printed
  /// Corrected readings tried when the printed text fails.
  std::vector<std::string> point_variants;
  std::vector<std::string> quadratic_variants;
};

struct RowReport {
  TableRow row;
  bool matched = false;
  bool in_grid = false;   // found by the search; otherwise injected
  std::string used_point;
  std::string used_quadratic;
  std::string profile;    // condition computed from the point
  std::string note;
};

/// Table 1 of Z/8Z points and Table 2 of Z/7Z points.
const std::vector<TableRow>& table_rows(const std::string& table);
std::string table_family(const std::string& table);

std::vector<RowReport> reproduce_table(const TorsionFamily& fam, const std::vector<TableRow>& rows,
                                       const SearchResult& result);

}  // namespace ecfam
