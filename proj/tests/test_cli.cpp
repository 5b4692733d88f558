#include "doctest.h"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "ecfam/cli.hpp"
#include "json.hpp"

using namespace ecfam;

namespace {

struct Run {
  int code;
  std::string out, err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream f(p);
  std::ostringstream s;
  s << f.rdbuf();
  return s.str();
}

std::filesystem::path scratch(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / "ecfam_cli_test";
  std::filesystem::create_directories(dir);
  return dir / name;
}

}  // namespace

TEST_CASE("families") {
  auto r = run({"families", "list"});
  CHECK(r.code == 0);
  CHECK(r.out.find("z2z6") != std::string::npos);
  r = run({"families", "show", "z8"});
  CHECK(r.code == 0);
  CHECK(r.out.find("order 8") != std::string::npos);
  CHECK(run({"families", "show", "z9"}).code == kExitInvalidInput);
}

TEST_CASE("usage errors") {
  CHECK(run({}).code == kExitInvalidInput);
  CHECK(run({"frobnicate"}).code == kExitInvalidInput);
  CHECK(run({"certify", "--depth", "40", "--curve", "0,-2,0", "--x", "2"}).code == kExitInvalidInput);
  CHECK(run({"--help"}).code == 0);
}

TEST_CASE("chain fixtures") {
  auto r = run({"chain", "--fixture", "z8-rank1"});
  CHECK(r.code == 0);
  CHECK(r.out.find("4*(2*t + 1)*t*(t - 2)*(t^4 + 2*t^2 + 1)") != std::string::npos);
  CHECK(run({"chain", "--fixture", "nope"}).code == kExitInvalidInput);
  r = run({"chain", "--list"});
  CHECK(r.out.find("z7-lecacheux") != std::string::npos);
}

TEST_CASE("chain scripts from files") {
  auto bad = scratch("bad.json");
  std::ofstream(bad) << R"J({"name": "bad", "family": "z8", "stages": [{"point": ["1-r^2"], "map": ["(t^2-1)/(t^2+1)"], "var": "t"}]})J";
  CHECK(run({"chain", bad.string()}).code == kExitVerification);
  auto wrong = scratch("wrong.json");
  std::ofstream(wrong) << R"J({"name": "w", "family": "z8", "stages": [{"point": ["1-r^2"], "map": ["(t^2-4t-1)/(t^2+1)"], "var": "t"}],
    "expect": {"B": "256t^4(t-2)^4(2t+1)^3"}})J";
  CHECK(run({"chain", wrong.string()}).code == kExitVerification);
  CHECK(run({"chain", scratch("absent.json").string()}).code == kExitInvalidInput);
}

TEST_CASE("certify") {
  auto r = run({"certify", "--fixture", "z8-rank2-a", "--at", "s=4", "--rank", "2"});
  CHECK(r.code == 0);
  CHECK(r.out.find("rank >= 2") != std::string::npos);
  CHECK(run({"certify", "--fixture", "z8-rank2-a", "--at", "s=4.0"}).code == kExitInvalidInput);
  CHECK(run({"certify", "--fixture", "z8-rank2-a", "--at", "s=2"}).code == kExitInvalidInput);
  CHECK(run({"certify", "--fixture", "z8-rank2-a", "--at", "t=4"}).code == kExitInvalidInput);
  CHECK(run({"certify", "--curve", "0,-2,0", "--x", "2"}).code == 0);
  CHECK(run({"certify", "--curve", "0,-2,0", "--x", "2", "--rank", "2"}).code == kExitVerification);
  CHECK(run({"certify", "--curve", "0,-2,0", "--x", "2", "9/4"}).code == kExitVerification);
  r = run({"certify", "--curve", "0,-2,0", "--x", "2", "0"});
  CHECK(r.code == kExitInvalidInput);
  CHECK(r.err.find("point 2") != std::string::npos);
  CHECK(run({"certify", "--curve", "0,-2,0", "--x", "3"}).code == kExitInvalidInput);
  CHECK(run({"certify", "--curve", "0,0,0", "--x", "1"}).code == kExitInvalidInput);
}

TEST_CASE("output files and manifests") {
  auto a = scratch("cert_a.json"), b = scratch("cert_b.json");
  CHECK(run({"certify", "--fixture", "z8-rank1", "--out", a.string()}).code == 0);
  CHECK(run({"certify", "--fixture", "z8-rank1", "--out", b.string()}).code == 0);
  CHECK(slurp(a) == slurp(b));
  auto m = nlohmann::json::parse(slurp(a.string() + ".manifest.json"));
  CHECK(m["command"].get<std::string>().rfind("ecfam certify", 0) == 0);
  CHECK(m["outputs"][0]["path"] == a.string());
  CHECK(m.contains("started"));
  auto doc = nlohmann::json::parse(slurp(a));
  CHECK(doc["verdict"].is_string());
}

TEST_CASE("search") {
  auto cfg = scratch("small.cfg");
  std::ofstream(cfg) << "exponent_range = -1..1\ndegree_cap = 1\ncoeff_bound = 2\npair_coeff_bound = 1\n";
  auto out = scratch("search.json");
  auto r = run({"search", "z8", "--config", cfg.string(), "--out", out.string()});
  CHECK(r.code == 0);
  CHECK(r.out.find("hits") != std::string::npos);
  auto doc = nlohmann::json::parse(slurp(out));
  CHECK(doc["hits"].size() > 0);
  r = run({"search", "z8", "--config", cfg.string(), "--reproduce", "table1"});
  CHECK(r.code == 0);
  CHECK(r.out.find("12/12 rows matched") != std::string::npos);
  CHECK(run({"search", "z8", "--config", cfg.string(), "--max-candidates", "50"}).code == kExitPartial);
  CHECK(run({"search", "z7", "--reproduce", "table1"}).code == kExitInvalidInput);
  CHECK(run({"search", "z8", "--reproduce", "table9"}).code == kExitInvalidInput);
}

TEST_CASE("profile") {
  auto r = run({"profile", "z8", "1-r^2"});
  CHECK(r.code == 0);
  CHECK(r.out.find("-(r^2 - 5)") != std::string::npos);
  CHECK(run({"profile", "z8", "1-q^2"}).code == kExitInvalidInput);
}
