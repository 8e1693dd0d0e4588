#include "icsheaf/axioms.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace icsheaf {

namespace {

std::size_t at(int i) { return static_cast<std::size_t>(i); }

constexpr const char* kTrustNote = "local cone condition of the stratification is not verified";

int dim_at(const StalkTable& t, int s, int q) {
  auto it = t.find(s);
  if (it == t.end()) return 0;
  auto jt = it->second.find(q);
  return jt == it->second.end() ? 0 : jt->second;
}

std::set<int> degrees_of(const StalkTable& t) {
  std::set<int> out;
  for (const auto& [s, d] : t) {
    for (const auto& [q, v] : d) out.insert(q);
  }
  return out;
}

Locus locus_from_table(const StalkTable& t, int a, const ComplexPtr& cx, const SimplexSet* within) {
  std::vector<int> cells;
  int real = -1;
  for (const auto& [s, d] : t) {
    if (within && !within->contains(s)) continue;
    if (dim_at(t, s, a) == 0) continue;
    cells.push_back(s);
    real = std::max(real, cx->dim_of(s));
  }
  Locus l;
  l.cells = SimplexSet(cx, cells);
  l.real_dim = real;
  if (real >= 0) {
    if (real % 2 != 0) {
      throw std::domain_error("degree " + std::to_string(a) + " locus has odd real dimension " + std::to_string(real) +
                              "; the complex is not clc");
    }
    l.complex_dim = real / 2;
  }
  return l;
}

// Cells of the locus lying under a simplex of the locus whose complex
// dimension reaches the bound.
SimplexSet violating_part(const Locus& l, int bound) {
  const auto& cx = l.cells.owner();
  std::vector<int> out;
  for (int s : l.cells.members()) {
    bool hit = cx->dim_of(s) >= 2 * bound;
    for (int t : cx->all_cofaces(s)) {
      if (hit) break;
      hit = l.cells.contains(t) && cx->dim_of(t) >= 2 * bound;
    }
    if (hit) out.push_back(s);
  }
  return SimplexSet(cx, out);
}

void add_witness(AxiomReport& r, ClauseResult& c, const std::string& clause, int degree, int piece, Locus locus,
                 int bound, bool dimension_bound) {
  Witness w;
  w.clause = clause;
  w.degree = degree;
  w.piece = piece;
  w.bound = bound;
  w.violating = dimension_bound ? violating_part(locus, bound) : locus.cells;
  w.locus = std::move(locus);
  r.witnesses.push_back(std::move(w));
  c.pass = false;
}

// Concentration in degree -m with isomorphic restrictions on U^m.
ClauseResult normalization(const Field& field, const InjectiveComplex& s, const StalkTable& st,
                           const std::vector<SimplexSet>& um, const LocalSystemSpec* local, AxiomReport& r,
                           const std::string& name) {
  ClauseResult c{name, true, ""};
  StalkAnalysis sa(field, s);
  const auto& cx = s.domain().owner();
  for (int m = 1; m < static_cast<int>(um.size()); ++m) {
    std::vector<int> bad;
    for (int sigma : um[at(m)].members()) {
      DegreeDims d;
      auto it = st.find(sigma);
      if (it != st.end()) d = it->second;
      bool ok = d.size() <= 1 && (d.empty() || d.begin()->first == -m);
      if (ok && local) ok = dim_at(st, sigma, -m) == local->rank_for(m);
      for (const auto& cf : cx->cofaces(sigma)) {
        if (ok && um[at(m)].contains(cf.other)) ok = sa.restriction_is_iso(sigma, cf.other);
      }
      if (!ok) bad.push_back(sigma);
    }
    if (!bad.empty()) {
      Locus l;
      l.cells = SimplexSet(cx, bad);
      for (int b : bad) l.real_dim = std::max(l.real_dim, cx->dim_of(b));
      l.complex_dim = (l.real_dim + 1) / 2;
      add_witness(r, c, name, -m, m, std::move(l), 0, false);
    }
  }
  return c;
}

void finish(AxiomReport& r) {
  r.pass = std::all_of(r.clauses.begin(), r.clauses.end(), [](const ClauseResult& c) { return c.pass; });
  r.notes.push_back(kTrustNote);
}

}  // namespace

const ClauseResult* AxiomReport::clause(const std::string& name) const {
  for (const auto& c : clauses) {
    if (c.clause == name) return &c;
  }
  return nullptr;
}

Locus support_locus(const Field& field, const InjectiveComplex& s, int a, LocusMode mode, const SimplexSet* within) {
  StalkTable t = mode == LocusMode::kStalk ? s.stalk_table(field) : s.costalk_table(field, s.domain().members());
  return locus_from_table(t, a, s.domain().owner(), within);
}

AxiomReport check_ax1(const Field& field, const InjectiveComplex& s, const Stratification& strat,
                      const LocalSystemSpec* local) {
  AxiomReport r;
  r.axiom = "AX1'";
  const auto& cx = strat.complex();
  if (s.domain().size() != cx->size()) throw std::invalid_argument("check_ax1: complex is not defined on all of X");
  OpenFiltration filt = compute_open_filtration(strat);
  int n = strat.n();
  r.clc = clc_failures(field, s, strat).empty();
  StalkTable st = s.stalk_table(field);
  StalkTable ct = s.costalk_table(field, s.domain().members());

  r.clauses.push_back(normalization(field, s, st, filt.Um, local, r, "a"));

  ClauseResult b{"b", true, ""};
  for (int k = 1; k <= n; ++k) {
    const SimplexSet& w = filt.W[at(k + 1)];
    for (int a : degrees_of(st)) {
      if (a <= k - 1 - n) continue;
      Locus l = locus_from_table(st, a, cx, &w);
      if (!l.cells.empty()) add_witness(r, b, "b", a, k, std::move(l), 0, false);
    }
  }
  r.clauses.push_back(b);

  ClauseResult c2{"c''", true, ""};
  ClauseResult c1{"c'", true, ""};
  for (int k = 1; k <= n; ++k) {
    SimplexSet z = filt.U[at(k + 1)].minus(filt.U[at(k)]);
    if (z.empty()) continue;
    for (int a : degrees_of(ct)) {
      if (a > n - k) continue;
      Locus l = locus_from_table(ct, a, cx, &z);
      if (!l.cells.empty()) add_witness(r, c2, "c''", a, k, std::move(l), 0, false);
    }
    InjectiveComplex sk = restrict_open(s, filt.U[at(k + 1)]);
    for (int sigma : z.members()) {
      for (const auto& [a, d] : sk.upper_shriek_stalk(field, z, sigma)) {
        if (a <= k - n && d > 0) c1.pass = false;
      }
    }
  }
  r.clauses.push_back(c2);
  if (c1.pass != c2.pass) r.notes.push_back("i_k^! vanishing and point costalk vanishing disagree");
  c1.detail = "stratum-level form; agrees with c'' when the complex is clc";
  r.pass = r.clauses[0].pass && b.pass && c2.pass;
  r.clauses.push_back(c1);
  r.notes.push_back(kTrustNote);
  return r;
}

AxiomReport check_ax2(const Field& field, const InjectiveComplex& s, const Stratification& strat) {
  AxiomReport r;
  r.axiom = "AX2'";
  const auto& cx = strat.complex();
  if (s.domain().size() != cx->size()) throw std::invalid_argument("check_ax2: complex is not defined on all of X");
  OpenStrata os = compute_open_strata(strat);
  int n = strat.n();
  r.clc = clc_failures(field, s, strat).empty();
  if (!r.clc) r.notes.push_back("complex is not clc with respect to the given stratification");
  StalkTable st = s.stalk_table(field);
  StalkTable ct = s.costalk_table(field, s.domain().members());

  r.clauses.push_back(normalization(field, s, st, os.U, nullptr, r, "a"));
  ClauseResult b{"b", true, ""};
  ClauseResult c{"c", true, ""};
  for (int m = 1; m <= n; ++m) {
    if (os.U[at(m)].empty()) continue;
    const SimplexSet& xm = os.X[at(m)];
    for (int a : degrees_of(st)) {
      if (a <= -m) continue;
      Locus l = locus_from_table(st, a, cx, &xm);
      if (!l.cells.empty() && l.complex_dim >= -a) add_witness(r, b, "b", a, m, std::move(l), -a, true);
    }
    for (int a : degrees_of(ct)) {
      if (a >= m) continue;
      Locus l = locus_from_table(ct, a, cx, &xm);
      if (l.complex_dim >= a && !l.cells.empty()) add_witness(r, c, "c", a, m, std::move(l), a, true);
    }
  }
  r.clauses.push_back(b);
  r.clauses.push_back(c);
  finish(r);
  return r;
}

AxiomReport check_classic_ax2(const Field& field, const InjectiveComplex& s) {
  AxiomReport r;
  r.axiom = "AX2";
  const auto& cx = s.domain().owner();
  int n = (cx->dim() + 1) / 2;
  StalkTable st = s.stalk_table(field);
  StalkTable ct = s.costalk_table(field, s.domain().members());
  ClauseResult lower{"b", true, ""};
  ClauseResult sup{"c", true, ""};
  ClauseResult cosup{"d", true, ""};
  for (int a : degrees_of(st)) {
    if (a < -n) add_witness(r, lower, "b", a, n, locus_from_table(st, a, cx, nullptr), 0, false);
    if (a <= -n) continue;
    Locus l = locus_from_table(st, a, cx, nullptr);
    if (!l.cells.empty() && l.complex_dim >= -a) add_witness(r, sup, "c", a, n, std::move(l), -a, true);
  }
  for (int a : degrees_of(ct)) {
    if (a >= n) continue;
    Locus l = locus_from_table(ct, a, cx, nullptr);
    if (l.complex_dim >= a && !l.cells.empty()) add_witness(r, cosup, "d", a, n, std::move(l), a, true);
  }
  r.clauses.push_back(lower);
  r.clauses.push_back(sup);
  r.clauses.push_back(cosup);
  r.notes.push_back("normalization clause not checked");
  finish(r);
  return r;
}

}  // namespace icsheaf
