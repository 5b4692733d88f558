#include "doctest.h"
#include "test_support.hpp"

#include "ecfam/json_io.hpp"

using namespace ecfam;

namespace {
ChainScript parse_text(const std::string& text) { return parse_chain_script(text); }
}  // namespace

TEST_CASE("fnv1a64") {
  CHECK(fnv1a64("") == "cbf29ce484222325");
  CHECK(fnv1a64("a") == "af63dc4c8601ec8c");
}

TEST_CASE("chain scripts round trip") {
  for (const auto& name : fixture_names()) {
    CAPTURE(name);
    const ChainScript& s = fixture(name);
    Json doc = to_json(s);
    ChainScript back = parse_chain_script(doc);
    CHECK(to_json(back) == doc);
    CHECK(parse_text(doc.dump()).name == name);
  }
}

TEST_CASE("malformed scripts") {
  CHECK_THROWS_AS(parse_text("{"), std::invalid_argument);
  CHECK_THROWS_AS(parse_text("[]"), std::invalid_argument);
  CHECK_THROWS_AS(parse_text(R"J({"name": "x", "family": "z8"})J"), std::invalid_argument);
  CHECK_THROWS_AS(parse_text(R"J({"name": "x", "family": "z8", "stages": [], "colour": 1})J"),
                  std::invalid_argument);
  CHECK_THROWS_AS(parse_text(R"J({"name": "x", "family": "z8", "stages": [{"base": [1]}]})J"),
                  std::invalid_argument);
  CHECK_NOTHROW(parse_text(R"J({"name": "x", "family": "z8", "stages": []})J"));
}

TEST_CASE("exact coefficients") {
  Poly p = Poly::from_ints({-537247620, 0, 1}) * make_rational(1, 3);
  Json j = poly_to_json(p);
  CHECK(j[0] == "-179082540");
  CHECK(j[2] == "1/3");
  Json big = poly_to_json(Poly(Rational("456366899570319360000")));
  CHECK(big[0] == "456366899570319360000");
}

TEST_CASE("chain documents are deterministic") {
  FamilyChain ch = build_chain(fixture("z8-rank1"));
  Json a = chain_to_json(ch), b = chain_to_json(build_chain(fixture("z8-rank1")));
  CHECK(a.dump() == b.dump());
  CHECK(a["var"] == "t");
  CHECK(a["points"].size() == 1);
}

TEST_CASE("certificate rounding") {
  RankCertificate c;
  c.gram = {{12.49525712345, -1.7610501}, {-1.7610501, 7.4982419}};
  c.gram_error = {{1e-4, 1e-4}, {1e-4, 1e-4}};
  c.determinant = 90.5911664999;
  c.verdict = true;
  c.rank_lower_bound = 2;
  Json j = certificate_to_json(c);
  CHECK(j["gram"][0][0].get<double>() == 12.495257);
  CHECK(j["determinant"].get<double>() == 90.591166);
}
