#include "ecfam/search.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "ecfam/expr.hpp"
#include "ecfam/modp.hpp"

namespace ecfam {

RhsProfile rhs_profile(const FCurve& E, const RatFunc& x) {
  RatFunc y2 = E.rhs(x);
  if (y2.is_zero()) throw std::domain_error("rhs vanishes identically at this x");
  auto dec = yun_squarefree(y2.num() * y2.den());
  Poly odd{dec.constant}, half{Rational(1)};
  for (const auto& [part, m] : dec.parts) {
    if (m % 2) odd *= part;
    if (m >= 2) half *= part.pow(m / 2);
  }
  RhsProfile out;
  out.odd_part = odd;
  out.F = RatFunc(half, y2.den());
  if (odd.degree() > 2) return out;
  out.condition = normalize_condition(odd.coeff(2), odd.coeff(1), odd.coeff(0));
  out.F *= RatFunc(out.condition.scale);
  if (odd.degree() == 0) {
    out.kind = out.condition.already_square ? ProfileKind::Square : ProfileKind::Reject;
  } else {
    out.kind = ProfileKind::SquareTimesQuad;
  }
  return out;
}

namespace {

long parse_long(const std::string& key, const std::string& v) {
  try {
    std::size_t used = 0;
    long out = std::stol(v, &used);
    if (used != v.size()) throw std::invalid_argument(v);
    return out;
  } catch (const std::exception&) {
    throw std::invalid_argument("config key '" + key + "' expects an integer, got '" + v + "'");
  }
}

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

}  // namespace

void apply_config_option(SearchConfig& cfg, const std::string& key, const std::string& value) {
  const std::string v = trim(value);
  if (key == "exponent_range") {
    auto dots = v.find("..");
    if (dots == std::string::npos) {
      long e = parse_long(key, v);
      cfg.exponent_min = static_cast<int>(-e);
      cfg.exponent_max = static_cast<int>(e);
    } else {
      cfg.exponent_min = static_cast<int>(parse_long(key, trim(v.substr(0, dots))));
      cfg.exponent_max = static_cast<int>(parse_long(key, trim(v.substr(dots + 2))));
    }
  } else if (key == "exponent_min") {
    cfg.exponent_min = static_cast<int>(parse_long(key, v));
  } else if (key == "exponent_max") {
    cfg.exponent_max = static_cast<int>(parse_long(key, v));
  } else if (key == "degree_cap") {
    cfg.degree_cap = static_cast<int>(parse_long(key, v));
  } else if (key == "coeff_bound") {
    cfg.coeff_bound = parse_long(key, v);
  } else if (key == "pair_coeff_bound") {
    cfg.pair_coeff_bound = parse_long(key, v);
  } else if (key == "pair_minor_degree") {
    cfg.pair_minor_degree = static_cast<int>(parse_long(key, v));
  } else if (key == "max_candidates" || key == "candidate_cap") {
    cfg.max_candidates = static_cast<std::size_t>(parse_long(key, v));
  } else if (key == "workers") {
    cfg.workers = static_cast<unsigned>(parse_long(key, v));
  } else if (key == "dedup") {
    if (v != "true" && v != "false") throw std::invalid_argument("config key 'dedup' expects true or false");
    cfg.dedup = v == "true";
  } else {
    throw std::invalid_argument("unknown config key '" + key + "'");
  }
  if (cfg.exponent_min > cfg.exponent_max || cfg.degree_cap < 0 || cfg.coeff_bound < 1 ||
      cfg.pair_coeff_bound < 0 || cfg.pair_minor_degree < 0 || cfg.workers < 1 || cfg.max_candidates < 1)
    throw std::invalid_argument("config value out of range for '" + key + "'");
}

SearchConfig parse_search_config(const std::string& text, SearchConfig cfg) {
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    line = trim(line);
    if (line.empty()) continue;
    auto eq = line.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("config line " + std::to_string(lineno) + ": expected key = value");
    apply_config_option(cfg, trim(line.substr(0, eq)), line.substr(eq + 1));
  }
  return cfg;
}

std::string describe(const SearchConfig& c) {
  std::ostringstream o;
  o << "exponent_range = " << c.exponent_min << ".." << c.exponent_max << "\n"
    << "degree_cap = " << c.degree_cap << "\n"
    << "coeff_bound = " << c.coeff_bound << "\n"
    << "pair_coeff_bound = " << c.pair_coeff_bound << "\n"
    << "pair_minor_degree = " << c.pair_minor_degree << "\n"
    << "max_candidates = " << c.max_candidates << "\n"
    << "workers = " << c.workers << "\n"
    << "dedup = " << (c.dedup ? "true" : "false") << "\n";
  return o.str();
}

std::string orbit_key(const TorsionFamily& fam, const RatFunc& x) {
  std::vector<RatFunc> orbit{x};
  RatFunc y2 = fam.curve.rhs(x);
  for (const auto& t : fam.torsion) {
    if (t.order != 2) continue;
    RatFunc dx = x - t.point.x;
    if (dx.is_zero()) continue;
    orbit.push_back(y2 / (dx * dx) - fam.curve.A - x - t.point.x);
  }
  if (fam.even) {
    std::size_t n = orbit.size();
    for (std::size_t i = 0; i < n; ++i) orbit.push_back(orbit[i].reflect());
  }
  std::string best;
  for (const auto& o : orbit) {
    std::string s = to_string(o, fam.var);
    if (best.empty() || s.size() < best.size() || (s.size() == best.size() && s < best)) best = s;
  }
  return best;
}

std::string condition_class(const TorsionFamily& fam, const QuadCondition& q) {
  return fam.even ? q.even_key() : q.key();
}

namespace {

using modp::ModPoly;
using modp::Residue;
constexpr Residue P = modp::kPrime;

ModPoly to_mod(const Poly& f) { return *modp::reduce(f, P); }

// Fixed-capacity residue polynomials for the screening loop.
constexpr int kCap = 96;
struct SP {
  int n = 0;  // coefficient count, no trailing zeros
  Residue c[kCap];
};

SP to_sp(const ModPoly& m) {
  if (m.size() > static_cast<std::size_t>(kCap)) throw std::length_error("screening polynomial too large");
  SP s;
  s.n = static_cast<int>(m.size());
  std::copy(m.begin(), m.end(), s.c);
  return s;
}

inline SP smul(const SP& a, const SP& b) {
  SP out;
  if (!a.n || !b.n) return out;
  out.n = a.n + b.n - 1;
  std::uint64_t acc[kCap * 2] = {};
  for (int i = 0; i < a.n; ++i) {
    const std::uint64_t ai = a.c[i];
    for (int j = 0; j < b.n; ++j) acc[i + j] += ai * b.c[j];
    if ((i & 63) == 63)
      for (int k = 0; k < out.n; ++k) acc[k] %= P;
  }
  if (out.n > kCap) throw std::length_error("screening polynomial too large");
  for (int k = 0; k < out.n; ++k) out.c[k] = static_cast<Residue>(acc[k] % P);
  while (out.n && !out.c[out.n - 1]) --out.n;
  return out;
}

inline SP sadd(SP a, const SP& b) {
  for (int i = a.n; i < b.n; ++i) a.c[i] = 0;
  a.n = std::max(a.n, b.n);
  for (int i = 0; i < b.n; ++i) a.c[i] = modp::add(a.c[i], b.c[i], P);
  while (a.n && !a.c[a.n - 1]) --a.n;
  return a;
}

// Degree of gcd(S, S'), S nonzero of degree >= 1.
int sgcd_degree(const SP& s) {
  Residue a[kCap], b[kCap];
  int na = s.n, nb = s.n - 1;
  std::copy(s.c, s.c + na, a);
  for (int i = 1; i < s.n; ++i) b[i - 1] = modp::mul(s.c[i], static_cast<Residue>(i % P), P);
  while (nb && !b[nb - 1]) --nb;
  if (!nb) return na - 1;
  Residue* x = a;
  Residue* y = b;
  int nx = na, ny = nb;
  while (ny) {
    // x <- lc(y)^k x mod y, avoiding inverses
    const std::uint64_t ly = y[ny - 1];
    while (nx >= ny) {
      const std::uint64_t f = P - x[nx - 1];
      const int shift = nx - ny;
      for (int i = 0; i < shift; ++i) x[i] = static_cast<Residue>(ly * x[i] % P);
      for (int i = 0; i < ny - 1; ++i)
        x[shift + i] = static_cast<Residue>((ly * x[shift + i] + f * y[i]) % P);
      --nx;
      while (nx && !x[nx - 1]) --nx;
    }
    std::swap(x, y);
    std::swap(nx, ny);
  }
  return nx - 1;
}

// Free polynomials: primitive, positive leading coefficient, 1 <= degree <= cap.
std::vector<Poly> free_polys(int cap, long bound) {
  std::vector<Poly> out;
  for (int d = 1; d <= cap; ++d) {
    std::vector<long> c(static_cast<std::size_t>(d) + 1, -bound);
    c[static_cast<std::size_t>(d)] = 1;
    for (;;) {
      long g = 0;
      for (long v : c) g = std::gcd(g, std::labs(v));
      if (g == 1) {
        std::vector<Rational> rc;
        for (long v : c) rc.emplace_back(v);
        out.emplace_back(std::move(rc));
      }
      std::size_t i = 0;
      while (i <= static_cast<std::size_t>(d)) {
        long hi = bound;
        if (++c[i] <= hi) break;
        c[i] = i == static_cast<std::size_t>(d) ? 1 : -bound;
        ++i;
      }
      if (i > static_cast<std::size_t>(d)) break;
    }
  }
  return out;
}

struct Free {
  Poly p;
  SP s, s2;  // residues of p and p^2
};

std::vector<Free> with_residues(const std::vector<Poly>& ps) {
  std::vector<Free> out;
  for (const auto& p : ps) {
    SP m = to_sp(to_mod(p));
    out.push_back({p, m, smul(m, m)});
  }
  return out;
}

enum Slot { kW = 0, kWd = 1, kU = 2, kV = 3 };

struct PoolCombo {
  Poly num, den;
  SP snum, sden;
};

class Searcher {
 public:
  Searcher(const TorsionFamily& fam, const SearchConfig& cfg) : fam_(fam), cfg_(cfg) {
    for (const auto* c : {&fam.curve.A, &fam.curve.B, &fam.curve.C}) {
      if (!c->is_polynomial()) throw std::invalid_argument("search needs polynomial curve coefficients");
    }
    sA_ = to_sp(to_mod(fam.curve.A.num()));
    sB_ = to_sp(to_mod(fam.curve.B.num()));
    sC_ = to_sp(to_mod(fam.curve.C.num()));
    c_zero_ = fam.curve.C.is_zero();

    auto coprime_to_pool = [&](const Poly& w) {
      for (const auto& f : fam.divisor_pool)
        if (f.degree() > 0 && gcd(w, f).degree() > 0) return false;
      return gcd(w, w.derivative()).degree() == 0;
    };
    auto all = free_polys(cfg.degree_cap, cfg.coeff_bound);
    std::vector<Poly> ws;
    for (const auto& p : all)
      if (coprime_to_pool(p)) ws.push_back(p);
    single_[kU] = single_[kV] = with_residues(all);
    single_[kW] = single_[kWd] = with_residues(ws);

    auto major = free_polys(cfg.degree_cap, cfg.pair_coeff_bound);
    auto minor = free_polys(std::min(cfg.pair_minor_degree, cfg.degree_cap), cfg.pair_coeff_bound);
    auto filter_w = [&](const std::vector<Poly>& v) {
      std::vector<Poly> out;
      for (const auto& p : v)
        if (coprime_to_pool(p)) out.push_back(p);
      return out;
    };
    for (int s = 0; s < 4; ++s) {
      bool w = s == kW || s == kWd;
      major_[s] = with_residues(w ? filter_w(major) : major);
      minor_[s] = with_residues(w ? filter_w(minor) : minor);
    }
    for (const auto& [x, o] : fam.torsion_x()) torsion_x_.push_back(x);

    build_combos();
  }

  std::size_t combo_count() const { return combos_.size(); }

  void run_range(std::size_t worker, std::size_t workers, SearchResult& out, std::mutex& mu,
                 std::size_t& global_count) {
    for (std::size_t ci = worker; ci < combos_.size(); ci += workers) {
      const auto& combo = combos_[ci];
      std::size_t local = 0;
      auto visit = [&](const Free* w, const Free* wd, const Free* u, const Free* v) {
        ++local;
        test(combo, w, wd, u, v, out);
      };
      visit(nullptr, nullptr, nullptr, nullptr);
      for (int s = 0; s < 4; ++s)
        for (const auto& f : single_[s]) visit_slots(visit, s, &f, -1, nullptr);
      static const int pairs[5][2] = {{kW, kU}, {kW, kV}, {kWd, kU}, {kWd, kV}, {kU, kV}};
      for (const auto& pr : pairs) {
        const int s1 = pr[0], s2 = pr[1];
        for (const auto& a : major_[s1])
          for (const auto& b : minor_[s2]) visit_slots(visit, s1, &a, s2, &b);
        for (const auto& a : minor_[s1])
          for (const auto& b : major_[s2])
            if (b.p.degree() > cfg_.pair_minor_degree) visit_slots(visit, s1, &a, s2, &b);
      }
      std::lock_guard<std::mutex> lock(mu);
      global_count += local;
      if (global_count >= cfg_.max_candidates) {
        out.partial = true;
        return;
      }
    }
  }

 private:
  template <class Fn>
  void visit_slots(Fn& visit, int s1, const Free* a, int s2, const Free* b) {
    const Free* slot[4] = {nullptr, nullptr, nullptr, nullptr};
    slot[s1] = a;
    if (s2 >= 0) {
      if (s2 == kV && s1 == kU && gcd(a->p, b->p).degree() > 0) return;
      slot[s2] = b;
    }
    visit(slot[kW], slot[kWd], slot[kU], slot[kV]);
  }

  void build_combos() {
    const auto& pool = fam_.divisor_pool;
    std::vector<int> e(pool.size(), cfg_.exponent_min);
    for (;;) {
      for (int sign : {1, -1}) {
        Poly num{Rational(sign)}, den{Rational(1)};
        for (std::size_t i = 0; i < pool.size(); ++i) {
          if (e[i] > 0) num *= pool[i].pow(static_cast<unsigned>(e[i]));
          if (e[i] < 0) den *= pool[i].pow(static_cast<unsigned>(-e[i]));
        }
        combos_.push_back({num, den, to_sp(to_mod(num)), to_sp(to_mod(den))});
      }
      std::size_t i = 0;
      while (i < e.size() && ++e[i] > cfg_.exponent_max) e[i++] = cfg_.exponent_min;
      if (i == e.size()) break;
    }
  }

  void test(const PoolCombo& c, const Free* w, const Free* wd, const Free* u, const Free* v, SearchResult& out) {
    SP n0 = w ? smul(c.snum, w->s) : c.snum;
    SP d0 = wd ? smul(c.sden, wd->s) : c.sden;
    SP N = u ? smul(n0, u->s2) : n0;
    SP D = v ? smul(d0, v->s2) : d0;
    if (N.n + D.n > 2 * kCap / 3) {
      exact(c, w, wd, u, v, out);
      return;
    }
    SP S;
    if (c_zero_) {
      // rhs = N (N^2 + A N D + B D^2) / D^3; class n0 d0 (N^2 + A N D + B D^2).
      SP q = sadd(sadd(smul(N, N), smul(sA_, smul(N, D))), smul(sB_, smul(D, D)));
      S = smul(smul(n0, d0), q);
    } else {
      SP D2 = smul(D, D), N2 = smul(N, N);
      SP G = sadd(sadd(smul(N2, N), smul(sA_, smul(N2, D))), sadd(smul(sB_, smul(N, D2)), smul(sC_, smul(D2, D))));
      S = smul(G, d0);
    }
    if (S.n == 0) return;
    const int deg = S.n - 1;
    if (deg > 2 && 2 * sgcd_degree(S) < deg - 2) return;
    exact(c, w, wd, u, v, out);
  }

  void exact(const PoolCombo& c, const Free* w, const Free* wd, const Free* u, const Free* v, SearchResult& out) {
    ++out.survivors;
    Poly num = c.num, den = c.den;
    if (w) num *= w->p;
    if (u) num *= u->p * u->p;
    if (wd) den *= wd->p;
    if (v) den *= v->p * v->p;
    RatFunc x(num, den);
    if (x.is_zero()) return;
    for (const auto& t : torsion_x_)
      if (x == t) return;
    RatFunc y2 = fam_.curve.rhs(x);
    if (y2.is_zero()) return;
    RhsProfile prof = rhs_profile(fam_.curve, x);
    if (prof.kind == ProfileKind::Reject) return;
    out.hits.push_back({x, prof.F, prof.condition, std::string()});
  }

  const TorsionFamily& fam_;
  SearchConfig cfg_;
  SP sA_, sB_, sC_;
  bool c_zero_ = false;
  std::vector<Free> single_[4], major_[4], minor_[4];
  std::vector<RatFunc> torsion_x_;
  std::vector<PoolCombo> combos_;
};

bool hit_less(const SearchHit& a, const SearchHit& b) {
  int da = a.x.num().degree() + a.x.den().degree(), db = b.x.num().degree() + b.x.den().degree();
  if (da != db) return da < db;
  if (a.orbit_key.size() != b.orbit_key.size()) return a.orbit_key.size() < b.orbit_key.size();
  return a.orbit_key < b.orbit_key;
}

}  // namespace

SearchResult enumerate_hits(const TorsionFamily& fam, const SearchConfig& cfg) {
  Searcher s(fam, cfg);
  const unsigned workers = std::max(1u, cfg.workers);
  std::vector<SearchResult> parts(workers);
  std::mutex mu;
  std::size_t count = 0;
  if (workers == 1) {
    s.run_range(0, 1, parts[0], mu, count);
  } else {
    std::vector<std::thread> threads;
    for (unsigned w = 0; w < workers; ++w)
      threads.emplace_back([&, w] { s.run_range(w, workers, parts[w], mu, count); });
    for (auto& t : threads) t.join();
  }
  SearchResult out;
  out.candidates = count;
  for (auto& p : parts) {
    out.survivors += p.survivors;
    out.partial = out.partial || p.partial;
    for (auto& h : p.hits) out.hits.push_back(std::move(h));
  }
  for (auto& h : out.hits) h.orbit_key = orbit_key(fam, h.x);
  std::stable_sort(out.hits.begin(), out.hits.end(), hit_less);
  if (cfg.dedup) {
    std::map<std::string, bool> seen;
    std::vector<SearchHit> unique;
    for (auto& h : out.hits) {
      std::string key = condition_class(fam, h.condition) + "|" + h.orbit_key;
      if (seen.emplace(key, true).second) unique.push_back(std::move(h));
    }
    out.hits = std::move(unique);
  }
  return out;
}

const std::vector<TableRow>& table_rows(const std::string& table) {
  static const std::vector<TableRow> t1 = {
      {"-(r^2-1)^2", "2r^2-1", {}, {}},
      {"-(r^2-1)^3", "5-r^2", {}, {}},
      {"(r+1)^4", "r^2+4", {}, {}},
      {"-(4r^2-3)^2/16", "32r^2-25", {}, {}},
      {"-(r^2-1)(r-1)^2(r+2)^2/(r-2)^2", "16-7r^2", {}, {}},
      {"(r+1)^3(1-3r)", "-3r^2-14r+5", {}, {}},
      {"-(r+1)^2(r^2+2r-1)", "-2r^2-4r+2", {}, {}},
      {"1-r^4", "2r^2+2", {}, {}},
      {"-(r+1)^2(r^2+r-1)", "-r^2-r+1", {}, {}},
      {"27(1-r^2)/2", "150-6r^2", {}, {}},
      {"(r-1)^4(2r+1)/(1-2r)", "1-4r^2", {}, {}},
      {"2(r^2-1)^4/(2-r^2)", "4-2r^2", {}, {}},
  };
  static const std::vector<TableRow> t2 = {
      {"4r-4", "4r^2-3", {}, {}},
      {"-r^2", "r^2-12r+9", {}, {}},
      {"-4r^2", "r^2-8r+4", {}, {}},
      {"3r^2-2r-1", "9r^2-6r-2", {}, {}},
      {"-r^4+6r^3-5r^2", "-2r^2+10r+1", {}, {}},
      {"-4r^4+12r^3-8r^2", "-3r^2+6r+1", {}, {}},
      {"4r^2(r-1)/(2r-1)^2", "100r^2-116r+225", {}, {"100r^2-116r+25"}},
      {"16r^2(r-1)/(r+1)^2", "25r^2+66r+9", {}, {}},
      {"4r^2(r-1)/(r^2-r+1)", "r^2-r+1", {}, {}},
      {"4r^2(r-1)/(r^2-9r+9)", "r^2-9r+9", {}, {}},
      {"-4r^2(r-1)(3r-4)/(r-2)^2", "9r^2-84r+100", {}, {}},
  };
  if (table == "table1") return t1;
  if (table == "table2") return t2;
  throw std::invalid_argument("unknown table '" + table + "' (expected table1 or table2)");
}

std::string table_family(const std::string& table) {
  if (table == "table1") return "z8";
  if (table == "table2") return "z7";
  throw std::invalid_argument("unknown table '" + table + "'");
}

std::vector<RowReport> reproduce_table(const TorsionFamily& fam, const std::vector<TableRow>& rows,
                                       const SearchResult& result) {
  std::map<std::string, bool> grid;
  for (const auto& h : result.hits) grid[condition_class(fam, h.condition) + "|" + h.orbit_key] = true;

  std::vector<RowReport> out;
  for (const auto& row : rows) {
    RowReport rep;
    rep.row = row;
    std::vector<std::string> points{row.point};
    points.insert(points.end(), row.point_variants.begin(), row.point_variants.end());
    std::vector<std::string> quads{row.quadratic};
    quads.insert(quads.end(), row.quadratic_variants.begin(), row.quadratic_variants.end());
    std::vector<std::string> notes;
    for (const auto& pt : points) {
      RatFunc x;
      try {
        x = parse_ratfunc(pt, fam.var);
      } catch (const std::exception& e) {
        notes.push_back("point '" + pt + "' unreadable: " + e.what());
        continue;
      }
      RhsProfile prof = rhs_profile(fam.curve, x);
      if (prof.kind == ProfileKind::Reject) {
        notes.push_back("point '" + pt + "' gives no square-times-quadratic reduction");
        continue;
      }
      rep.profile = prof.condition.to_string(fam.var);
      const std::string cls = condition_class(fam, prof.condition);
      for (const auto& qs : quads) {
        RatFunc q;
        try {
          q = parse_ratfunc(qs, fam.var);
        } catch (const std::exception& e) {
          notes.push_back("quadratic '" + qs + "' unreadable: " + e.what());
          continue;
        }
        if (!q.is_polynomial() || q.num().degree() > 2 || q.is_zero()) {
          notes.push_back("quadratic '" + qs + "' is not a nonzero quadratic");
          continue;
        }
        Poly qp = q.num() * Rational(1 / q.den().coeff(0));
        if (condition_class(fam, normalize_condition(qp.coeff(2), qp.coeff(1), qp.coeff(0))) != cls) {
          notes.push_back("printed quadratic '" + qs + "' differs from the computed " + rep.profile);
          continue;
        }
        rep.matched = true;
        rep.used_point = pt;
        rep.used_quadratic = qs;
        rep.in_grid = grid.count(cls + "|" + orbit_key(fam, x)) > 0;
        break;
      }
      if (rep.matched) break;
    }
    if (rep.matched && (rep.used_point != row.point || rep.used_quadratic != row.quadratic))
      notes.push_back("corrected reading used");
    for (std::size_t i = 0; i < notes.size(); ++i) rep.note += (i ? "; " : "") + notes[i];
    out.push_back(std::move(rep));
  }
  return out;
}

}  // namespace ecfam
