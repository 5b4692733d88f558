#include "ecfam/json_io.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace ecfam {

namespace {

std::vector<std::string> string_list(const Json& v, const std::string& what) {
  std::vector<std::string> out;
  if (v.is_string()) {
    out.push_back(v.get<std::string>());
  } else if (v.is_array()) {
    for (const auto& e : v) {
      if (!e.is_string()) throw std::invalid_argument(what + " entries must be strings");
      out.push_back(e.get<std::string>());
    }
  } else if (!v.is_null()) {
    throw std::invalid_argument(what + " must be a string or a list of strings");
  }
  return out;
}

std::string text_field(const Json& obj, const char* key) {
  if (!obj.contains(key)) return "";
  if (!obj[key].is_string()) throw std::invalid_argument(std::string("'") + key + "' must be a string");
  return obj[key].get<std::string>();
}

Rational rational_field(const Json& v) {
  if (v.is_string()) return parse_rational(v.get<std::string>());
  if (v.is_number_integer()) return Rational(v.get<long>());
  throw std::invalid_argument("expected an exact rational such as \"3/2\"");
}

void require_keys(const Json& obj, std::initializer_list<const char*> allowed, const std::string& where) {
  for (const auto& [k, v] : obj.items()) {
    bool ok = false;
    for (const char* a : allowed) ok = ok || k == a;
    if (!ok) throw std::invalid_argument("unknown key '" + k + "' in " + where);
  }
}

}  // namespace

ChainScript parse_chain_script(const Json& doc) {
  if (!doc.is_object()) throw std::invalid_argument("chain script must be a JSON object");
  require_keys(doc, {"name", "family", "source", "stages", "expect", "specialize_at"}, "chain script");
  ChainScript s;
  s.name = text_field(doc, "name");
  s.family = text_field(doc, "family");
  s.source = text_field(doc, "source");
  s.specialize_at = text_field(doc, "specialize_at");
  if (s.family.empty()) throw std::invalid_argument("chain script needs a family");
  family(s.family);
  if (!doc.contains("stages") || !doc["stages"].is_array()) throw std::invalid_argument("chain script needs a stages list");
  for (const auto& st : doc["stages"]) {
    if (!st.is_object()) throw std::invalid_argument("each stage must be an object");
    require_keys(st, {"point", "map", "base", "var", "carry"}, "stage");
    StageScript out;
    if (st.contains("point")) out.point = string_list(st["point"], "point");
    if (st.contains("map")) out.map = string_list(st["map"], "map");
    if (st.contains("carry")) out.carry = string_list(st["carry"], "carry");
    out.var = text_field(st, "var");
    if (st.contains("base")) {
      const auto& b = st["base"];
      if (!b.is_array() || b.size() != 2) throw std::invalid_argument("base must be [p, q]");
      out.base = ConicPoint{rational_field(b[0]), rational_field(b[1])};
    }
    s.stages.push_back(std::move(out));
  }
  if (doc.contains("expect")) {
    const auto& e = doc["expect"];
    require_keys(e, {"A", "B", "C", "points", "exclusions", "exclusions_exact"}, "expect");
    ChainExpectation x;
    x.A = text_field(e, "A");
    x.B = text_field(e, "B");
    x.C = text_field(e, "C");
    if (e.contains("points")) x.points = string_list(e["points"], "points");
    if (e.contains("exclusions")) x.exclusions = string_list(e["exclusions"], "exclusions");
    if (e.contains("exclusions_exact")) x.exclusions_exact = e["exclusions_exact"].get<bool>();
    s.expect = x;
  }
  return s;
}

ChainScript parse_chain_script(const std::string& text) {
  Json doc;
  try {
    doc = Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw std::invalid_argument(std::string("chain script is not valid JSON: ") + e.what());
  }
  return parse_chain_script(doc);
}

Json to_json(const ChainScript& s) {
  Json doc;
  doc["name"] = s.name;
  doc["family"] = s.family;
  if (!s.source.empty()) doc["source"] = s.source;
  Json stages = Json::array();
  for (const auto& st : s.stages) {
    Json j;
    if (!st.point.empty()) j["point"] = st.point;
    if (!st.map.empty()) j["map"] = st.map;
    if (st.base) j["base"] = {to_string(st.base->p), to_string(st.base->q)};
    j["var"] = st.var;
    if (!st.carry.empty()) j["carry"] = st.carry;
    stages.push_back(j);
  }
  doc["stages"] = stages;
  if (!s.specialize_at.empty()) doc["specialize_at"] = s.specialize_at;
  return doc;
}

Json poly_to_json(const Poly& p) {
  Json a = Json::array();
  for (const auto& c : p.coeffs()) a.push_back(to_string(c));
  return a;
}

Json ratfunc_to_json(const RatFunc& f, const std::string& var) {
  Json j;
  j["num_coeffs"] = poly_to_json(f.num());
  j["den_coeffs"] = poly_to_json(f.den());
  j["text"] = to_string(f, var);
  return j;
}

Json curve_to_json(const FCurve& E, const std::string& var) {
  Json j;
  j["var"] = var;
  j["A"] = ratfunc_to_json(E.A, var);
  j["B"] = ratfunc_to_json(E.B, var);
  j["C"] = ratfunc_to_json(E.C, var);
  j["equation"] = curve_equation(E, var);
  return j;
}

Json chain_to_json(const FamilyChain& ch) {
  Json doc;
  doc["name"] = ch.name;
  doc["family"] = ch.family;
  doc["var"] = ch.var;
  Json stages = Json::array();
  for (const auto& st : ch.stages) {
    Json j;
    j["from"] = st.var_in;
    j["to"] = st.var_out;
    if (st.point) {
      j["point"] = st.point_text;
      j["condition"] = st.profile->condition.to_string(st.var_in);
    }
    if (!st.map_text.empty()) j["map"] = to_string(st.map, st.var_out);
    if (st.base) j["base"] = {to_string(st.base->p), to_string(st.base->q)};
    j["lambda"] = to_factored_string(st.lambda, st.var_out);
    stages.push_back(j);
  }
  doc["stages"] = stages;
  doc["curve"] = curve_to_json(ch.curve, ch.var);
  Json pts = Json::array();
  for (const auto& p : ch.points) pts.push_back(ratfunc_to_json(p, ch.var));
  doc["points"] = pts;
  doc["rank_claimed"] = ch.claimed_rank();
  Json ex = Json::array();
  for (const auto& q : ch.exclusions) ex.push_back(to_string(q));
  doc["exclusions"] = ex;
  doc["notes"] = ch.notes;
  return doc;
}

Json hit_to_json(const SearchHit& h, const std::string& var) {
  Json j;
  j["x"] = ratfunc_to_json(h.x, var);
  j["F"] = to_factored_string(h.F, var);
  j["condition"] = h.condition.to_string(var);
  j["orbit_key"] = h.orbit_key;
  return j;
}

Json search_to_json(const TorsionFamily& fam, const SearchConfig& cfg, const SearchResult& res) {
  Json doc;
  doc["family"] = fam.key;
  doc["config"] = describe(cfg);
  doc["candidates"] = res.candidates;
  doc["survivors"] = res.survivors;
  doc["partial"] = res.partial;
  Json hits = Json::array();
  for (const auto& h : res.hits) hits.push_back(hit_to_json(h, fam.var));
  doc["hits"] = hits;
  return doc;
}

Json rows_to_json(const std::vector<RowReport>& rows) {
  Json a = Json::array();
  for (const auto& r : rows) {
    Json j;
    j["point"] = r.row.point;
    j["quadratic"] = r.row.quadratic;
    j["matched"] = r.matched;
    j["source"] = r.matched ? (r.in_grid ? "search" : "injected") : "none";
    j["computed_condition"] = r.profile;
    if (!r.note.empty()) j["note"] = r.note;
    a.push_back(j);
  }
  return a;
}

namespace {

double round6(double v) { return std::round(v * 1e6) / 1e6; }

}  // namespace

Json certificate_to_json(const RankCertificate& c) {
  Json doc;
  doc["curve"] = {{"A", to_string(c.curve.A)}, {"B", to_string(c.curve.B)}, {"C", to_string(c.curve.C)}};
  Json pts = Json::array();
  for (const auto& P : c.points) pts.push_back({{"x", to_string(P.x)}, {"y", to_string(P.y)}});
  doc["points"] = pts;
  Json g = Json::array(), e = Json::array();
  for (std::size_t i = 0; i < c.gram.size(); ++i) {
    Json row = Json::array(), erow = Json::array();
    for (std::size_t j = 0; j < c.gram.size(); ++j) {
      row.push_back(round6(c.gram[i][j]));
      erow.push_back(c.gram_error[i][j]);
    }
    g.push_back(row);
    e.push_back(erow);
  }
  doc["gram"] = g;
  doc["gram_error"] = e;
  doc["determinant"] = round6(c.determinant);
  doc["determinant_error"] = c.determinant_error;
  doc["depth"] = c.depth;
  Json hist = Json::array();
  for (const auto& [d, v] : c.history) hist.push_back({{"depth", d}, {"determinant", round6(v)}});
  doc["history"] = hist;
  doc["verdict"] = c.verdict ? "rank >= " + std::to_string(c.rank_lower_bound) : "no rank verdict";
  doc["rank_lower_bound"] = c.rank_lower_bound;
  return doc;
}

std::string fnv1a64(const std::string& bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace ecfam
