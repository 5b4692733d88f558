#include "ecfam/chain.hpp"

#include <algorithm>
#include <functional>
#include <map>

#include "ecfam/expr.hpp"
#include "ecfam/json_io.hpp"

namespace ecfam {

namespace detail {
const std::vector<std::pair<std::string, std::string>>& fixture_sources();
}

namespace {

unsigned ceil_div(unsigned a, unsigned b) { return (a + b - 1) / b; }

}  // namespace

bool is_square_function(const RatFunc& f) {
  if (f.is_zero()) return true;
  Rational c = 1;
  for (const Poly* p : {&f.num(), &f.den()}) {
    auto dec = yun_squarefree(*p);
    for (const auto& [part, m] : dec.parts)
      if (m % 2) return false;
    if (p == &f.num()) c *= dec.constant;
    else c /= dec.constant;
  }
  return is_square(c);
}

RatFunc clearing_factor(const FCurve& E) {
  Poly lam{Rational(1)};
  const std::pair<const RatFunc*, unsigned> coeffs[] = {{&E.A, 2}, {&E.B, 4}, {&E.C, 6}};
  for (const auto& [f, w] : coeffs) {
    if (f->is_zero() || f->den().degree() == 0) continue;
    auto dec = yun_squarefree(f->den());
    for (const auto& [part, m] : dec.parts) lam = lcm(lam, part.pow(ceil_div(m, w)));
  }
  lam = lam.content_primitive().second;
  Integer m = 1;
  for (const auto& [f, w] : coeffs) {
    RatFunc scaled = *f * RatFunc(lam).pow(static_cast<int>(w));
    if (!scaled.is_polynomial()) throw std::logic_error("clearing factor left a denominator");
    Poly p = scaled.num() * (Rational(1) / scaled.den().lead());
    Integer mm = 1;
    for (const auto& c : p.coeffs()) mm = lcm(mm, weighted_denominator_root(c, w));
    m = lcm(m, mm);
  }
  return RatFunc(lam) * RatFunc(Rational(m));
}

Lift lift_through(const FCurve& E, const RatFunc& map, const std::vector<RatFunc>& points) {
  FCurve sub{E.A.compose(map), E.B.compose(map), E.C.compose(map)};
  if (sub.singular()) throw ChainVerificationError("substituted curve is singular identically");
  Lift out;
  out.map = map;
  out.lambda = clearing_factor(sub);
  out.curve = sub.scaled(out.lambda);
  RatFunc l2 = out.lambda * out.lambda;
  for (std::size_t i = 0; i < points.size(); ++i) {
    RatFunc x = l2 * points[i].compose(map);
    if (!is_square_function(out.curve.rhs(x)))
      throw ChainVerificationError("carried point " + std::to_string(i + 1) + " loses its square right-hand side");
    out.points.push_back(std::move(x));
  }
  return out;
}

Lift lift(const FCurve& E, const SearchHit& hit, const ConicPoint& base, const std::vector<RatFunc>& carried) {
  ConicParam par = parametrize(hit.condition, base);
  std::vector<RatFunc> pts = carried;
  pts.push_back(hit.x);
  return lift_through(E, par.map, pts);
}

namespace {

struct Reading {
  RatFunc value;
  std::string text;
};

std::optional<Reading> first_reading(const std::vector<std::string>& texts, const std::string& var,
                                     const std::string& what, std::vector<std::string>& notes,
                                     const std::function<std::string(const RatFunc&)>& check) {
  for (std::size_t i = 0; i < texts.size(); ++i) {
    const auto& t = texts[i];
    RatFunc f;
    try {
      f = parse_ratfunc(t, var);
    } catch (const std::exception& e) {
      notes.push_back(what + " '" + t + "' does not parse in " + var + ": " + e.what());
      continue;
    }
    std::string why = check(f);
    if (!why.empty()) {
      notes.push_back(what + " '" + t + "' rejected: " + why);
      continue;
    }
    if (i > 0) notes.push_back(what + " read as '" + t + "' instead of the printed '" + texts[0] + "'");
    return Reading{f, t};
  }
  return std::nullopt;
}

}  // namespace

FamilyChain build_chain(const ChainScript& script) {
  const TorsionFamily& fam = family(script.family);
  FamilyChain ch;
  ch.name = script.name;
  ch.family = fam.key;
  ch.var = fam.var;
  ch.base_curve = fam.curve;
  ch.curve = fam.curve;
  for (const auto& [x, o] : fam.torsion_x()) ch.torsion_x.push_back(x);
  for (const auto& t : fam.torsion) ch.torsion.push_back(t.point);

  int index = 0;
  for (const auto& st : script.stages) {
    ++index;
    const std::string tag = "stage " + std::to_string(index);
    ChainStage out;
    out.var_in = ch.var;
    out.var_out = st.var.empty() ? ch.var : st.var;
    if (out.var_out != out.var_in && !st.var.empty() && st.map.empty() && !st.base)
      throw std::invalid_argument(tag + ": a new parameter needs a map or a base point");
    std::vector<std::string> stage_notes;

    if (!st.point.empty()) {
      auto reading = first_reading(st.point, ch.var, tag + " point", stage_notes, [&](const RatFunc& x) {
        for (const auto& t : ch.torsion_x)
          if (x == t) return std::string("it is a torsion x-value");
        RatFunc y2 = ch.curve.rhs(x);
        if (y2.is_zero()) return std::string("the right-hand side vanishes");
        auto prof = rhs_profile(ch.curve, x);
        if (prof.kind == ProfileKind::Reject)
          return "the right-hand side has odd part " + to_string(prof.odd_part, ch.var) + " of degree above 2";
        return std::string();
      });
      if (!reading) {
        std::string msg = tag + ": no reading of the point gives a square times a quadratic";
        for (const auto& n : stage_notes) msg += "; " + n;
        throw ChainVerificationError(msg);
      }
      out.point = reading->value;
      out.point_text = reading->text;
      out.profile = rhs_profile(ch.curve, *out.point);
      if (ch.curve.rhs(*out.point) != out.profile->F * out.profile->F * RatFunc(out.profile->condition.poly()))
        throw ChainVerificationError(tag + ": rhs(x) != F^2 * condition");
    }

    std::optional<RatFunc> derived;
    if (st.base) {
      if (!out.profile) throw std::invalid_argument(tag + ": a base point needs a stage point");
      out.base = st.base;
      derived = parametrize(out.profile->condition, *st.base).map;
    }

    bool substitute = true;
    if (!st.map.empty()) {
      auto reading = first_reading(st.map, out.var_out, tag + " map", stage_notes, [&](const RatFunc& m) {
        if (m.is_constant()) return std::string("the map is constant");
        if (out.profile && !is_square_function(RatFunc(out.profile->condition.poly()).compose(m)))
          return "the condition " + out.profile->condition.to_string(ch.var) + " is not a square after substitution";
        return std::string();
      });
      if (!reading) {
        std::string msg = tag + ": no reading of the map satisfies the conic identity";
        for (const auto& n : stage_notes) msg += "; " + n;
        throw ChainVerificationError(msg);
      }
      out.map = reading->value;
      out.map_text = reading->text;
      if (derived && *derived != out.map)
        stage_notes.push_back(tag + " map differs from the secant parametrization " + to_string(*derived, out.var_out));
    } else if (derived) {
      out.map = *derived;
      out.map_text = to_string(out.map, out.var_out);
    } else if (out.profile && out.profile->kind == ProfileKind::Square) {
      substitute = false;
      out.var_out = out.var_in;
    } else {
      throw std::invalid_argument(tag + ": the condition is not a square and no map or base point is given");
    }

    std::vector<RatFunc> pts = ch.points;
    if (out.point) pts.push_back(*out.point);
    if (substitute) {
      Lift l = lift_through(ch.curve, out.map, pts);
      RatFunc l2 = l.lambda * l.lambda;
      RatFunc l3 = l2 * l.lambda;
      for (auto& t : ch.torsion_x) t = l2 * t.compose(out.map);
      for (auto& t : ch.torsion) t = FPoint::affine(l2 * t.x.compose(out.map), l3 * t.y.compose(out.map));
      out.lambda = l.lambda;
      ch.curve = l.curve;
      ch.points = l.points;
      ch.var = out.var_out;
      for (std::size_t i = 0; i < st.carry.size(); ++i) {
        RatFunc x;
        try {
          x = parse_ratfunc(st.carry[i], ch.var);
        } catch (const std::exception& e) {
          throw std::invalid_argument(tag + ": carried value '" + st.carry[i] + "': " + e.what());
        }
        x = l2 * x;
        if (!is_square_function(ch.curve.rhs(x)))
          throw ChainVerificationError(tag + ": carried value '" + st.carry[i] + "' has no square right-hand side");
        ch.points.push_back(x);
      }
    } else {
      out.lambda = RatFunc(1);
      ch.points = pts;
    }
    out.curve = ch.curve;
    out.points = ch.points;
    for (auto& n : stage_notes) ch.notes.push_back(std::move(n));
    ch.stages.push_back(std::move(out));
  }
  ch.exclusions = exclusions(ch);
  return ch;
}

std::vector<Rational> exclusions(const FamilyChain& chain) {
  std::vector<RatFunc> items;
  items.push_back(chain.curve.discriminant());
  for (const auto& t : chain.torsion_x) items.push_back(RatFunc(t.den()));
  for (std::size_t i = 0; i < chain.torsion_x.size(); ++i)
    for (std::size_t j = i + 1; j < chain.torsion_x.size(); ++j)
      items.push_back(RatFunc((chain.torsion_x[i] - chain.torsion_x[j]).num()));
  for (std::size_t i = 0; i < chain.points.size(); ++i) {
    const RatFunc& p = chain.points[i];
    items.push_back(RatFunc(p.den()));
    for (const auto& t : chain.torsion_x) items.push_back(RatFunc((p - t).num()));
    for (std::size_t j = i + 1; j < chain.points.size(); ++j) items.push_back(RatFunc((p - chain.points[j]).num()));
  }
  // P + T against Q for torsion T.
  std::vector<FPoint> pts;
  for (const auto& x : chain.points)
    if (auto P = point_from_x(chain.curve, x)) pts.push_back(*P);
  for (std::size_t i = 0; i < pts.size(); ++i)
    for (const auto& t : chain.torsion) {
      FPoint S = chain.curve.add(pts[i], t);
      if (S.infinity) continue;
      for (std::size_t j = i + 1; j < pts.size(); ++j) items.push_back(RatFunc((S.x - pts[j].x).num()));
    }
  std::vector<RatFunc> nonzero;
  for (auto& f : items)
    if (!f.is_zero() && !f.is_constant()) nonzero.push_back(std::move(f));
  return rational_roots_of(nonzero);
}

ExpectationReport check_expectation(const FamilyChain& chain, const ChainExpectation& expect) {
  ExpectationReport rep;
  auto fail = [&](std::string s) {
    rep.ok = false;
    rep.failures.push_back(std::move(s));
  };
  auto compare = [&](const std::string& name, const std::string& text, const RatFunc& got) {
    if (text.empty()) return;
    RatFunc want;
    try {
      want = parse_ratfunc(text, chain.var);
    } catch (const std::exception& e) {
      fail(name + ": expected value does not parse: " + e.what());
      return;
    }
    if (want != got) fail(name + ": expected " + to_string(want, chain.var) + ", got " + to_string(got, chain.var));
  };
  compare("A", expect.A, chain.curve.A);
  compare("B", expect.B, chain.curve.B);
  compare("C", expect.C, chain.curve.C);
  if (expect.points.size() > chain.points.size()) fail("fewer carried points than expected");
  for (std::size_t i = 0; i < std::min(expect.points.size(), chain.points.size()); ++i)
    compare("point " + std::to_string(i + 1), expect.points[i], chain.points[i]);
  std::vector<Rational> want;
  for (const auto& s : expect.exclusions) {
    try {
      want.push_back(parse_rational(s));
    } catch (const std::exception& e) {
      fail(std::string("expected exclusion does not parse: ") + e.what());
    }
  }
  for (const auto& q : want)
    if (std::find(chain.exclusions.begin(), chain.exclusions.end(), q) == chain.exclusions.end())
      fail("exclusion " + to_string(q) + " missing");
  if (expect.exclusions_exact) {
    for (const auto& q : chain.exclusions)
      if (std::find(want.begin(), want.end(), q) == want.end()) fail("unexpected exclusion " + to_string(q));
  }
  return rep;
}

namespace {

const std::map<std::string, ChainScript>& fixture_table() {
  static const std::map<std::string, ChainScript> table = [] {
    std::map<std::string, ChainScript> t;
    for (const auto& [name, text] : detail::fixture_sources()) {
      ChainScript s = parse_chain_script(text);
      if (s.name != name) throw std::logic_error("fixture " + name + " names itself " + s.name);
      t.emplace(name, std::move(s));
    }
    return t;
  }();
  return table;
}

}  // namespace

const std::vector<std::string>& fixture_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> n;
    for (const auto& [k, v] : fixture_table()) n.push_back(k);
    return n;
  }();
  return names;
}

const ChainScript& fixture(const std::string& name) {
  const auto& t = fixture_table();
  auto it = t.find(name);
  if (it == t.end()) throw std::invalid_argument("unknown fixture '" + name + "'");
  return it->second;
}

}  // namespace ecfam
