#pragma once
// Lifting square-times-quadratic hits through conic parametrizations and
// assembling multi-stage family chains.

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "ecfam/conic.hpp"
#include "ecfam/families.hpp"
#include "ecfam/search.hpp"

namespace ecfam {

/// A stage identity that does not hold. `what()` names the identity.
class ChainVerificationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// lambda with lambda^2 A, lambda^4 B, lambda^6 C integral polynomials:
/// the lcm of the ceiling roots of the denominators, times the least
/// positive integer clearing the remaining rational coefficients.
RatFunc clearing_factor(const FCurve& E);

/// True when f is the square of a rational function over Q.
bool is_square_function(const RatFunc& f);

struct Lift {
  RatFunc map;             // old parameter in terms of the new one
  RatFunc lambda;          // clearing factor
  FCurve curve;            // cleared curve in the new parameter
  std::vector<RatFunc> points;  // carried x-values, lambda^2 x(map)
};

/// Substitutes `map` into E, clears denominators and carries the points.
/// Every carried point must still have a square right-hand side.
Lift lift_through(const FCurve& E, const RatFunc& map, const std::vector<RatFunc>& points);

/// Parametrizes the hit's conic from `base` and lifts E with the hit's
/// point carried along.
Lift lift(const FCurve& E, const SearchHit& hit, const ConicPoint& base, const std::vector<RatFunc>& carried = {});

/// One stage of a chain script. Alternative readings follow the printed one.
struct StageScript {
  std::vector<std::string> point;  // x on the current curve; may be empty
  std::vector<std::string> map;    // old parameter in the new one; empty means derive from base
  std::optional<ConicPoint> base;
  std::string var;                 // name of the new parameter
  std::vector<std::string> carry;  // x-values given after substitution, before clearing
};

struct ChainExpectation {
  std::string A, B, C;                  // empty means not asserted
  std::vector<std::string> points;      // in carried order, empty entries skipped
  std::vector<std::string> exclusions;  // must all appear
  bool exclusions_exact = false;
};

struct ChainScript {
  std::string name;
  std::string family;
  std::string source;  // where the data is printed
  std::vector<StageScript> stages;
  std::optional<ChainExpectation> expect;
  std::string specialize_at;  // default parameter value for certification
};

struct ChainStage {
  std::string var_in, var_out;
  std::string point_text;  // reading used, empty for a pure substitution
  std::optional<RatFunc> point;
  std::optional<RhsProfile> profile;
  std::string map_text;
  RatFunc map;
  std::optional<ConicPoint> base;
  RatFunc lambda;
  FCurve curve;  // after this stage
  std::vector<RatFunc> points;
};

struct FamilyChain {
  std::string name;
  std::string family;
  std::string var;  // final parameter
  FCurve base_curve;
  std::vector<ChainStage> stages;
  FCurve curve;
  std::vector<RatFunc> points;
  std::vector<RatFunc> torsion_x;  // family torsion carried to the final model
  std::vector<FPoint> torsion;     // the same points with y
  std::vector<Rational> exclusions;
  std::vector<std::string> notes;  // typo resolutions and other remarks
  std::size_t claimed_rank() const { return points.size(); }
};

/// Runs the script stage by stage. Throws ChainVerificationError when no
/// reading of a stage passes its identities, std::invalid_argument on a
/// malformed script.
FamilyChain build_chain(const ChainScript& script);

/// Parameter values where the final curve is singular, a carried point has
/// a pole, or a carried point meets a torsion point or another carried point
/// up to a torsion translate.
std::vector<Rational> exclusions(const FamilyChain& chain);

struct ExpectationReport {
  bool ok = true;
  std::vector<std::string> failures;
};
ExpectationReport check_expectation(const FamilyChain& chain, const ChainExpectation& expect);

/// Checked-in chain scripts, keyed by name.
const std::vector<std::string>& fixture_names();
const ChainScript& fixture(const std::string& name);

}  // namespace ecfam
