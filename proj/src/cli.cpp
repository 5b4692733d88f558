#include "ecfam/cli.hpp"

#include <chrono>
#include <ctime>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "ecfam/chain.hpp"
#include "ecfam/expr.hpp"
#include "ecfam/heights.hpp"
#include "ecfam/json_io.hpp"

namespace ecfam {

namespace {

struct InputError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read '" + path + "'");
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

std::string utc_now() {
  std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  std::ostringstream o;
  o << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
  return o.str();
}

// Writes the payload and a manifest beside it (<path>.manifest.json).
void write_output(const std::string& path, const Json& payload, const std::string& command, const Json& config,
                  const Json& inputs, const std::string& started) {
  std::string body = payload.dump(2) + "\n";
  {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw InputError("cannot write '" + path + "'");
    f << body;
  }
  Json m;
  m["command"] = command;
  m["config"] = config;
  m["started"] = started;
  m["finished"] = utc_now();
  m["inputs"] = inputs;
  m["outputs"] = Json::array({{{"path", path}, {"fnv1a64", fnv1a64(body)}}});
  std::ofstream f(path + ".manifest.json", std::ios::binary);
  if (!f) throw InputError("cannot write '" + path + ".manifest.json'");
  f << m.dump(2) << "\n";
}

std::string joined(const std::vector<std::string>& args) {
  std::string s = "ecfam";
  for (const auto& a : args) s += " " + a;
  return s;
}

// ---- families ----

void show_family(std::ostream& out, const TorsionFamily& f) {
  out << f.label << " (" << f.group << ")\n";
  out << "  " << curve_equation(f.curve, f.var) << "\n";
  out << "  torsion points:\n";
  for (const auto& [x, order] : f.torsion_x()) out << "    x = " << to_factored_string(x, f.var) << "  order " << order << "\n";
  out << "  divisor pool:";
  for (std::size_t i = 0; i < f.divisor_pool.size(); ++i) out << (i ? ", " : " ") << to_string(f.divisor_pool[i], f.var);
  out << "\n  excluded " << f.var << ":";
  for (const auto& q : f.excluded) out << " " << to_string(q);
  out << "\n";
}

// ---- search ----

int cmd_search(const std::string& fam_name, const std::string& config_path, const std::string& reproduce,
               long max_candidates, unsigned workers, const std::string& out_path, const std::vector<std::string>& args,
               std::ostream& out) {
  std::string started = utc_now();
  std::string table = reproduce;
  std::string name = fam_name;
  if (!table.empty()) {
    std::string tf = table_family(table);
    if (name.empty()) name = tf;
    if (family(name).key != tf) throw InputError(table + " belongs to family " + tf);
  }
  if (name.empty()) throw InputError("search needs a family");
  const TorsionFamily& fam = family(name);
  SearchConfig cfg;
  Json inputs = Json::array();
  if (!config_path.empty()) {
    std::string text = read_file(config_path);
    cfg = parse_search_config(text, cfg);
    inputs.push_back({{"path", config_path}, {"fnv1a64", fnv1a64(text)}});
  }
  if (max_candidates > 0) cfg.max_candidates = static_cast<std::size_t>(max_candidates);
  if (workers > 0) cfg.workers = workers;

  SearchResult res = enumerate_hits(fam, cfg);
  out << "family " << fam.label << ": " << res.candidates << " candidates, " << res.survivors << " passed the screen, "
      << res.hits.size() << " hits" << (res.partial ? " (partial: candidate cap reached)" : "") << "\n";
  for (const auto& h : res.hits)
    out << "  x = " << to_factored_string(h.x, fam.var) << "    " << h.condition.to_string(fam.var) << "\n";

  Json payload = search_to_json(fam, cfg, res);
  int code = res.partial ? kExitPartial : kExitOk;
  if (!table.empty()) {
    auto rows = reproduce_table(fam, table_rows(table), res);
    std::size_t matched = 0;
    out << table << ":\n";
    for (const auto& r : rows) {
      matched += r.matched;
      out << "  " << (r.matched ? "ok   " : "FAIL ") << std::left << std::setw(36) << r.row.point << std::setw(20)
          << r.row.quadratic << (r.matched ? (r.in_grid ? "search" : "injected") : "unmatched");
      if (!r.note.empty()) out << "  [" << r.note << "]";
      out << "\n";
    }
    out << table << ": " << matched << "/" << rows.size() << " rows matched\n";
    payload["table"] = table;
    payload["rows"] = rows_to_json(rows);
    if (matched != rows.size()) code = kExitVerification;
  }
  if (!out_path.empty()) write_output(out_path, payload, joined(args), Json(describe(cfg)), inputs, started);
  return code;
}

// ---- chain ----

ChainScript load_script(const std::string& fixture_name, const std::string& path, Json& inputs) {
  if (!fixture_name.empty() && !path.empty()) throw InputError("give either --fixture or a script file");
  if (!fixture_name.empty()) {
    inputs.push_back({{"fixture", fixture_name}});
    return fixture(fixture_name);
  }
  if (path.empty()) throw InputError("chain needs --fixture NAME or a script file");
  std::string text = read_file(path);
  inputs.push_back({{"path", path}, {"fnv1a64", fnv1a64(text)}});
  return parse_chain_script(text);
}

int cmd_chain(const std::string& fixture_name, const std::string& path, const std::string& out_path,
              const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  std::string started = utc_now();
  Json inputs = Json::array();
  ChainScript script = load_script(fixture_name, path, inputs);
  FamilyChain ch;
  try {
    ch = build_chain(script);
  } catch (const ChainVerificationError& e) {
    err << "verification failed: " << e.what() << "\n";
    return kExitVerification;
  }
  out << "chain " << ch.name << " on " << family(ch.family).label << "\n";
  for (std::size_t i = 0; i < ch.stages.size(); ++i) {
    const auto& st = ch.stages[i];
    out << "  stage " << i + 1 << ":";
    if (st.point) out << " x = " << st.point_text << ", " << st.profile->condition.to_string(st.var_in) << " = square;";
    if (!st.map_text.empty()) out << " " << st.var_in << " = " << to_string(st.map, st.var_out);
    out << "\n";
  }
  out << "  " << curve_equation(ch.curve, ch.var) << "\n";
  for (std::size_t i = 0; i < ch.points.size(); ++i)
    out << "  P" << i + 1 << ": x = " << to_factored_string(ch.points[i], ch.var) << "\n";
  out << "  excluded " << ch.var << ":";
  for (const auto& q : ch.exclusions) out << " " << to_string(q);
  out << "\n";
  for (const auto& n : ch.notes) out << "  note: " << n << "\n";
  out << "  all stage identities hold; rank >= " << ch.claimed_rank() << " claimed\n";

  Json payload = chain_to_json(ch);
  int code = kExitOk;
  if (script.expect) {
    auto rep = check_expectation(ch, *script.expect);
    payload["expectation"] = {{"ok", rep.ok}, {"failures", rep.failures}};
    if (rep.ok) {
      out << "  matches the printed curve, points and exclusions\n";
    } else {
      for (const auto& f : rep.failures) err << "mismatch: " << f << "\n";
      code = kExitVerification;
    }
  }
  if (!out_path.empty()) write_output(out_path, payload, joined(args), to_json(script), inputs, started);
  return code;
}

// ---- certify ----

std::pair<std::string, Rational> parse_assignment(const std::string& text) {
  auto eq = text.find('=');
  if (eq == std::string::npos) throw InputError("--at expects name=value, e.g. s=4");
  std::string name = text.substr(0, eq);
  try {
    return {name, parse_rational(text.substr(eq + 1))};
  } catch (const std::invalid_argument& e) {
    throw InputError(std::string("--at: ") + e.what());
  }
}

Rational exact(const std::string& s, const std::string& what) {
  try {
    return parse_rational(s);
  } catch (const std::invalid_argument& e) {
    throw InputError(what + ": " + e.what());
  }
}

int cmd_certify(const std::string& fixture_name, const std::string& script_path, const std::string& at,
                const std::string& curve_text, const std::vector<std::string>& xs, int rank, int depth, int max_depth,
                unsigned workers, const std::string& out_path, const std::vector<std::string>& args, std::ostream& out,
                std::ostream& err) {
  std::string started = utc_now();
  Json inputs = Json::array();
  QCurve E;
  std::vector<QPoint> pts;
  Json config;
  if (!fixture_name.empty() || !script_path.empty()) {
    ChainScript script = load_script(fixture_name, script_path, inputs);
    FamilyChain ch = build_chain(script);
    std::string assign = at.empty() ? ch.var + "=" + script.specialize_at : at;
    if (assign == ch.var + "=") throw InputError("--at is required for this chain");
    auto [name, value] = parse_assignment(assign);
    if (name != ch.var) throw InputError("the chain parameter is '" + ch.var + "', not '" + name + "'");
    if (std::find(ch.exclusions.begin(), ch.exclusions.end(), value) != ch.exclusions.end())
      throw InputError(name + " = " + to_string(value) + " is excluded for this chain");
    E = specialize(ch.curve, value);
    for (std::size_t i = 0; i < ch.points.size(); ++i) {
      auto P = point_with_x(E, ch.points[i].eval(value));
      if (!P) throw InputError("point " + std::to_string(i + 1) + " does not specialize to a rational point");
      pts.push_back(*P);
    }
    config = {{"chain", ch.name}, {"at", assign}};
    if (rank <= 0) rank = static_cast<int>(ch.claimed_rank());
  } else {
    if (curve_text.empty()) throw InputError("certify needs --fixture, a script or --curve A,B,C");
    std::vector<std::string> parts;
    std::stringstream ss(curve_text);
    for (std::string p; std::getline(ss, p, ',');) parts.push_back(p);
    if (parts.size() != 3) throw InputError("--curve expects A,B,C");
    E = QCurve{exact(parts[0], "--curve"), exact(parts[1], "--curve"), exact(parts[2], "--curve")};
    if (E.singular()) throw InputError("the curve is singular");
    for (std::size_t i = 0; i < xs.size(); ++i) {
      auto P = point_with_x(E, exact(xs[i], "--x"));
      if (!P) throw InputError("point " + std::to_string(i + 1) + ": x = " + xs[i] + " gives no rational point");
      pts.push_back(*P);
    }
    if (pts.empty()) throw InputError("certify needs at least one --x");
    config = {{"curve", curve_text}, {"x", xs}};
    if (rank <= 0) rank = static_cast<int>(pts.size());
  }
  HeightOptions opt;
  opt.depth = depth;
  opt.max_depth = std::max(depth, max_depth);
  opt.workers = workers;
  config["depth"] = opt.depth;
  config["max_depth"] = opt.max_depth;
  config["rank"] = rank;
  RankCertificate cert;
  try {
    cert = regulator_certificate(E, pts, opt);
  } catch (const InvalidPointError& e) {
    throw InputError(e.what());
  }
  out << "curve y^2 = x^3 + (" << E.A << ")x^2 + (" << E.B << ")x + (" << E.C << ")\n";
  for (std::size_t i = 0; i < pts.size(); ++i) out << "  P" << i + 1 << ": x = " << pts[i].x << "\n";
  out << std::fixed << std::setprecision(6);
  for (const auto& row : cert.gram) {
    out << "  [";
    for (std::size_t j = 0; j < row.size(); ++j) out << (j ? ", " : "") << row[j];
    out << "]\n";
  }
  for (const auto& [d, v] : cert.history) out << "  depth " << d << ": determinant " << v << "\n";
  out << "  determinant " << cert.determinant << " +- " << std::setprecision(3) << std::scientific
      << cert.determinant_error << std::fixed << std::setprecision(6) << "\n";
  out << "  verdict: " << (cert.verdict ? "rank >= " + std::to_string(cert.rank_lower_bound) : "no rank verdict")
      << "\n";
  out.unsetf(std::ios::floatfield);
  if (!out_path.empty()) write_output(out_path, certificate_to_json(cert), joined(args), config, inputs, started);
  bool ok = cert.verdict && static_cast<int>(cert.rank_lower_bound) >= rank;
  if (!ok) err << "requested rank " << rank << " not certified\n";
  return ok ? kExitOk : kExitVerification;
}

// ---- profile ----

int cmd_profile(const std::string& fam_name, const std::string& x_text, std::ostream& out) {
  const TorsionFamily& fam = family(fam_name);
  RatFunc x;
  try {
    x = parse_ratfunc(x_text, fam.var);
  } catch (const ParseError& e) {
    throw InputError(e.what());
  }
  RhsProfile p;
  try {
    p = rhs_profile(fam.curve, x);
  } catch (const std::domain_error& e) {
    throw InputError(e.what());
  }
  out << "x = " << to_factored_string(x, fam.var) << " on " << fam.label << "\n";
  switch (p.kind) {
    case ProfileKind::Square:
      out << "  square: y = " << to_factored_string(p.F, fam.var) << "\n";
      break;
    case ProfileKind::SquareTimesQuad:
      out << "  y^2 = (" << to_factored_string(p.F, fam.var) << ")^2 * (" << p.condition.to_string(fam.var) << ")\n";
      break;
    case ProfileKind::Reject:
      out << "  reject: odd part " << to_factored_string(p.odd_part, fam.var) << " has degree "
          << p.odd_part.degree() << "\n";
      break;
  }
  return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Elliptic curve families with torsion: searches, chains and rank certificates", "ecfam"};
  app.require_subcommand(1);

  auto* fams = app.add_subcommand("families", "List or show the torsion families");
  fams->require_subcommand(1);
  auto* fams_list = fams->add_subcommand("list", "One line per family");
  auto* fams_show = fams->add_subcommand("show", "Equation, torsion, divisor pool and exclusions");
  std::string show_name;
  fams_show->add_option("family", show_name, "z5, z6, z7, z8, z2z4 or z2z6")->required();

  auto* search = app.add_subcommand("search", "Search for x(r) leaving a quadratic to be a square");
  std::string s_family, s_config, s_reproduce, s_out;
  long s_max = 0;
  unsigned s_workers = 0;
  search->add_option("family", s_family, "family key");
  search->add_option("--config", s_config, "key = value bounds file");
  search->add_option("--reproduce", s_reproduce, "table1 or table2");
  search->add_option("--max-candidates", s_max, "candidate cap");
  search->add_option("--workers", s_workers, "worker threads");
  search->add_option("--out", s_out, "write JSON here (plus a manifest)");

  auto* chain = app.add_subcommand("chain", "Build and verify a family chain");
  std::string c_fixture, c_script, c_out;
  bool c_list = false;
  chain->add_option("script", c_script, "chain script (JSON)");
  chain->add_option("--fixture", c_fixture, "checked-in chain name");
  chain->add_flag("--list", c_list, "list checked-in chains");
  chain->add_option("--out", c_out, "write JSON here (plus a manifest)");

  auto* certify = app.add_subcommand("certify", "Regulator certificate for a specialized curve");
  std::string k_fixture, k_script, k_at, k_curve, k_out;
  std::vector<std::string> k_x;
  int k_rank = 0, k_depth = kDefaultDepth, k_max_depth = kMaxDepth;
  unsigned k_workers = 1;
  certify->add_option("script", k_script, "chain script (JSON)");
  certify->add_option("--fixture", k_fixture, "checked-in chain name");
  certify->add_option("--at", k_at, "specialization, e.g. s=4 or t=3/2");
  certify->add_option("--curve", k_curve, "A,B,C of y^2 = x^3 + A x^2 + B x + C");
  certify->add_option("--x", k_x, "x-coordinates of the points")->expected(1, -1);
  certify->add_option("--rank", k_rank, "rank to certify (default: number of points)");
  certify->add_option("--depth", k_depth, "doubling depth")->check(CLI::Range(1, 14));
  certify->add_option("--max-depth", k_max_depth, "adaptive deepening limit")->check(CLI::Range(1, 14));
  certify->add_option("--workers", k_workers, "parallel height computations");
  certify->add_option("--out", k_out, "write JSON here (plus a manifest)");

  auto* profile = app.add_subcommand("profile", "Square profile of the right-hand side at x(r)");
  std::string p_family, p_x;
  profile->add_option("family", p_family, "family key")->required();
  profile->add_option("x", p_x, "x as a rational function of r")->required();

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    std::string help;
    for (auto* sub : app.get_subcommands()) help = sub->help();
    err << e.what() << "\n" << (help.empty() ? app.help() : help);
    return kExitInvalidInput;
  }

  try {
    if (fams_list->parsed()) {
      for (const auto& k : family_keys()) {
        const auto& f = family(k);
        out << std::left << std::setw(6) << f.key << std::setw(16) << f.group << curve_equation(f.curve, f.var) << "\n";
      }
      return kExitOk;
    }
    if (fams_show->parsed()) {
      show_family(out, family(show_name));
      return kExitOk;
    }
    if (search->parsed()) return cmd_search(s_family, s_config, s_reproduce, s_max, s_workers, s_out, args, out);
    if (chain->parsed()) {
      if (c_list) {
        for (const auto& n : fixture_names()) out << n << "  " << fixture(n).source << "\n";
        return kExitOk;
      }
      return cmd_chain(c_fixture, c_script, c_out, args, out, err);
    }
    if (certify->parsed())
      return cmd_certify(k_fixture, k_script, k_at, k_curve, k_x, k_rank, k_depth, k_max_depth, k_workers, k_out, args,
                         out, err);
    if (profile->parsed()) return cmd_profile(p_family, p_x, out);
  } catch (const ChainVerificationError& e) {
    err << "verification failed: " << e.what() << "\n";
    return kExitVerification;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kExitInvalidInput;
  } catch (const std::domain_error& e) {
    err << "error: " << e.what() << "\n";
    return kExitInvalidInput;
  }
  return kExitInvalidInput;
}

}  // namespace ecfam
