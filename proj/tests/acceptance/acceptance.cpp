// Runs the ten acceptance criteria and prints one PASS/FAIL line each.
#include <chrono>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "icsheaf/axioms.hpp"
#include "icsheaf/serialize.hpp"
#include "oracle.hpp"

using namespace icsheaf;

namespace {

std::size_t at(int i) { return static_cast<std::size_t>(i); }

const Field kQ = Field::rationals();

struct Check {
  bool ok = true;
  std::ostringstream why;

  void expect(bool cond, const std::string& what) {
    if (!cond && ok) why << what;
    ok = ok && cond;
  }
};

std::string show(const DegreeDims& d) { return dims_to_json(d).dump(); }

int id_of(const ComplexPtr& k, std::vector<long long> labels) {
  std::vector<VertexLabel> l(labels.begin(), labels.end());
  return *k->find_labels(l);
}

DegreeDims shifted(const std::map<int, int>& d, int k) {
  DegreeDims out;
  for (const auto& [q, v] : d) out[q - k] = v;
  return out;
}

int dim_of(const DegreeDims& d, int q) {
  auto it = d.find(q);
  return it == d.end() ? 0 : it->second;
}

const Witness* witness_for(const AxiomReport& r, const std::string& clause, int degree) {
  for (const auto& w : r.witnesses) {
    if (w.clause == clause && w.degree == degree) return &w;
  }
  return nullptr;
}

std::vector<int> strided(const SimplicialComplex& k, int step) {
  std::vector<int> out;
  for (int s = 0; s < k.size(); s += step) out.push_back(s);
  return out;
}

void wedge_reproduction(Check& c) {
  auto b = oracle::space("wedge");
  ICBundle ic = build_ic(kQ, b.stratification, b.local);
  int p = id_of(b.complex, {6});
  DegreeDims stalk = ic.ic().stalk_cohomology(kQ, p);
  DegreeDims costalk = ic.ic().costalk(kQ, p);
  c.expect(ic.ok(), "construction invariant failed");
  c.expect(stalk == DegreeDims{{-2, 1}, {-1, 1}}, "stalk " + show(stalk));
  c.expect(costalk == DegreeDims{{1, 1}, {2, 1}}, "costalk " + show(costalk));
  c.why << "stalk " << show(stalk) << " costalk " << show(costalk);
}

void classic_failure(Check& c) {
  auto b = oracle::space("wedge");
  ICBundle ic = build_ic(kQ, b.stratification, b.local);
  AxiomReport classic = check_classic_ax2(kQ, ic.ic());
  AxiomReport ax2 = check_ax2(kQ, ic.ic(), b.stratification);
  const Witness* sup = witness_for(classic, "c", -1);
  const Witness* cosup = witness_for(classic, "d", 1);
  c.expect(!classic.pass, "classic check passed");
  c.expect(sup != nullptr && sup->locus.complex_dim == 1, "support witness at -1 missing or wrong dimension");
  c.expect(cosup != nullptr && cosup->locus.complex_dim == 1, "cosupport witness at 1 missing or wrong dimension");
  c.expect(ax2.pass, "stratified check failed");
  if (c.ok) c.why << "classic FAIL (c@-1 dim 1, d@1 dim 1), stratified PASS";
}

void naive_failure(Check& c) {
  auto b = oracle::space("fake-surface");
  BuildOptions naive;
  naive.naive = true;
  InjectiveComplex s = build_ic(kQ, b.stratification, b.local, naive).ic();
  AxiomReport r = check_ax2(kQ, s, b.stratification);
  const ClauseResult* clause_b = r.clause("b");
  c.expect(clause_b != nullptr && !clause_b->pass, "clause (b) passed on the naive product");
  const Stratum& fake = b.stratification.strata()[at(b.stratification.stratum_of(id_of(b.complex, {1, 2, 3})))];
  const Witness* w = nullptr;
  for (const auto& x : r.witnesses) {
    if (x.clause == "b" && x.violating == fake.cells) w = &x;
  }
  c.expect(w != nullptr, "no clause (b) witness on the fake stratum");
  if (w) {
    c.expect(w->locus.complex_dim == 1 && w->bound == 1, "witness dimension or bound");
    c.why << "witness a=" << w->degree << " dim " << w->locus.complex_dim << " not < " << w->bound << " on "
          << fake.cells.size() << " cells; ";
  }
  bool canonical = check_ax2(kQ, build_ic(kQ, b.stratification, b.local).ic(), b.stratification).pass;
  c.expect(canonical, "canonical build failed");
  if (c.ok) c.why << "canonical PASS";
}

void pinched_oracle(Check& c) {
  auto b = oracle::space("pinched-torus");
  DegreeDims h = build_ic(kQ, b.stratification, b.local).ic().hypercohomology(kQ);
  int v = *b.complex->vertex_index(VertexLabel(0LL));
  DegreeDims normal = shifted(oracle::cochain_cohomology(oracle::split_vertex(*b.complex, v)), 1);
  c.expect(h == DegreeDims{{-1, 1}, {1, 1}}, "hypercohomology " + show(h));
  c.expect(h == normal, "normalization oracle " + show(normal));
  if (c.ok) c.why << "H = " << show(h) << " = oracle";
}

void cone_oracle(Check& c) {
  auto b = oracle::space("susp-s1xs2");
  DegreeDims h = build_ic(kQ, b.stratification, b.local).ic().hypercohomology(kQ);
  auto hm = oracle::cochain_cohomology(*link_of(b.complex, id_of(b.complex, {13})));
  DegreeDims mv = oracle::suspension_mayer_vietoris(hm, 2, -1);
  std::vector<int> vec;
  for (int q = -2; q <= 2; ++q) vec.push_back(dim_of(h, q));
  c.expect(vec == std::vector<int>{1, 1, 0, 1, 1}, "hypercohomology " + show(h));
  c.expect(h == mv, "Mayer-Vietoris oracle " + show(mv));
  c.expect(std::equal(vec.begin(), vec.end(), vec.rbegin()), "not palindromic");
  if (c.ok) c.why << "H = (1,1,0,1,1) = oracle, palindromic";
}

void decomposition(Check& c) {
  auto b = oracle::space("nonpure-wedge");
  ICBundle ic = build_ic(kQ, b.stratification, b.local);
  DecompositionReport r = check_decomposition(ic);
  std::vector<int> vec;
  for (int q = -2; q <= 2; ++q) vec.push_back(dim_of(r.total_hypercohomology, q));
  c.expect(r.equal, "stalk tables differ");
  c.expect(vec == std::vector<int>{1, 2, 0, 2, 1}, "hypercohomology " + show(r.total_hypercohomology));
  if (c.ok) c.why << "tables agree, H = (1,2,0,2,1)";
}

void independence(Check& c) {
  int runs = 0;
  for (const auto& name : bundled_names()) {
    auto b = oracle::space(name);
    for (const std::string recipe : {"random:1", "random:2", "random:3", "extra-point"}) {
      Stratification fine = refine(b.stratification, recipe);
      if (fine.hash() == b.stratification.hash()) continue;
      ComparisonReport r =
          compare_stratifications(kQ, b.stratification, b.local, fine, b.local, strided(*b.complex, 3));
      c.expect(r.pass(), name + " " + recipe + " differs");
      ++runs;
    }
  }
  c.expect(runs >= 3 * static_cast<int>(bundled_names().size()), "too few refinements");
  if (c.ok) c.why << runs << " refinements agree";
}

void axiom_equivalence(Check& c) {
  int members = 0, clc = 0, passing = 0;
  for (const auto& name : bundled_names()) {
    auto b = oracle::space(name);
    for (const auto& m : oracle::axiom_corpus(kQ, b)) {
      ++members;
      AxiomReport ax1 = check_ax1(kQ, m.s, b.stratification);
      AxiomReport ax2 = check_ax2(kQ, m.s, b.stratification);
      if (!ax2.clc) continue;
      ++clc;
      c.expect(ax1.pass == ax2.pass, name + " " + m.name + " verdicts disagree");
      if (!ax2.pass) continue;
      ++passing;
      ICBundle ic = build_ic(kQ, b.stratification, oracle::observed_local(kQ, m.s, b.stratification));
      c.expect(m.s.stalk_table(kQ) == ic.ic().stalk_table(kQ), name + " " + m.name + " differs from the IC");
    }
  }
  c.expect(members >= 20, "corpus too small");
  if (c.ok) c.why << members << " members, " << clc << " clc, " << passing << " pass and match";
}

void lemma_suite(Check& c) {
  int cases = 0;
  for (const auto& name : bundled_names()) {
    auto b = oracle::space(name);
    for (int seed = 0; seed <= 40; ++seed) {
      Stratification s = seed == 0 ? b.stratification : refine(b.stratification, "random:" + std::to_string(seed));
      for (const auto& l : check_filtration_lemmas(s, compute_open_filtration(s))) {
        c.expect(l.holds, name + " seed " + std::to_string(seed) + " " + l.name);
      }
      ++cases;
    }
  }
  c.expect(cases >= 200, "too few cases");
  if (c.ok) c.why << cases << " stratifications, five identities each";
}

bool table_truncates(const StalkTable& before, const StalkTable& after, int size, int a) {
  for (int s = 0; s < size; ++s) {
    DegreeDims expect;
    if (before.count(s)) {
      for (const auto& [q, d] : before.at(s)) {
        if (q <= a) expect[q] = d;
      }
    }
    if ((after.count(s) ? after.at(s) : DegreeDims{}) != expect) return false;
  }
  return true;
}

void engine_properties(Check& c) {
  for (const auto& name : bundled_names()) {
    auto b = oracle::space(name);
    int n = b.stratification.n();
    SimplexSet all = SimplexSet::all(b.complex);
    OpenStrata os = compute_open_strata(b.stratification);
    ICBundle ic = build_ic(kQ, b.stratification, b.local);
    const InjectiveComplex& s = ic.ic();

    SheafComplex top = from_sheaf(make_local_system(kQ, os.U[at(n)], 1), -n);
    InjectiveComplex push = pushforward_open(resolve(kQ, top), all);
    c.expect(restrict_open(push, os.U[at(n)]).stalk_table(kQ) == stalk_table(kQ, top), name + " pushforward unit");
    c.expect(push.stalk_table(kQ) == stalk_table(kQ, pushforward_open(kQ, top, all)), name + " pushforward model");

    StalkTable before = push.stalk_table(kQ);
    for (int a = -n - 1; a <= 1; ++a) {
      InjectiveComplex t = truncate_le(kQ, push, a);
      c.expect(t.is_valid(kQ) && table_truncates(before, t.stalk_table(kQ), b.complex->size(), a),
               name + " truncation at " + std::to_string(a));
    }

    for (int m = 1; m <= n; ++m) {
      for (int sigma : os.U[at(m)].members()) {
        c.expect(s.costalk(kQ, sigma) == DegreeDims{{m, 1}}, name + " costalk concentration");
      }
    }

    SimplexSet z = all.minus(ic.filt.U[1]);
    for (int sigma : z.members()) {
      std::vector<int> star = s.star_generators(sigma);
      std::vector<int> open;
      for (int g : star) {
        if (!z.contains(s.cells()[at(g)])) open.push_back(g);
      }
      GradedComplex whole = s.subcomplex(star);
      GradedComplex away = s.subcomplex(open);
      SparseMatrix proj(static_cast<int>(open.size()), static_cast<int>(star.size()));
      for (std::size_t r = 0, col = 0; r < open.size(); ++r) {
        while (star[col] != open[r]) ++col;
        proj.add_entry(kQ, static_cast<int>(r), static_cast<int>(col), Rational(1));
      }
      Reduction rw = full_reduction(kQ, whole);
      Reduction ra = full_reduction(kQ, away);
      DegreeDims hw = cohomology_dims(kQ, whole);
      DegreeDims ha = cohomology_dims(kQ, away);
      DegreeDims shriek = s.upper_shriek_stalk(kQ, z, sigma);
      for (int a = -n - 2; a <= n + 2; ++a) {
        int r0 = rank(kQ, induced_on_cohomology(kQ, rw, ra, proj, a));
        int r1 = rank(kQ, induced_on_cohomology(kQ, rw, ra, proj, a - 1));
        c.expect(dim_of(shriek, a) == dim_of(hw, a) - r0 + dim_of(ha, a - 1) - r1, name + " adjunction triangle");
      }
    }

    BuildOptions off;
    off.cleanup = false;
    ICBundle raw = build_ic(kQ, b.stratification, b.local, off);
    c.expect(compare_complexes(kQ, s, raw.ic(), strided(*b.complex, 5)).pass(), name + " cleanup changed ranks");
    c.expect(minimize(kQ, raw.ic()).stalk_table(kQ) == raw.ic().stalk_table(kQ), name + " minimize");
  }
  if (c.ok) c.why << "all five properties on " << bundled_names().size() << " spaces";
}

struct Criterion {
  int id;
  const char* name;
  double limit_s;
  std::function<void(Check&)> run;
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {1, "wedge stalk and costalk", 30, wedge_reproduction},
      {2, "classical axiom failure", 30, classic_failure},
      {3, "naive filtration failure", 120, naive_failure},
      {4, "pinched torus normalization", 30, pinched_oracle},
      {5, "suspension cone formula", 600, cone_oracle},
      {6, "decomposition", 600, decomposition},
      {7, "stratification independence", 900, independence},
      {8, "axiom equivalence", 1200, axiom_equivalence},
      {9, "filtration lemmas", 300, lemma_suite},
      {10, "engine properties", 600, engine_properties},
  };
  int failed = 0;
  for (const auto& cr : criteria) {
    Check c;
    auto t0 = std::chrono::steady_clock::now();
    try {
      cr.run(c);
    } catch (const std::exception& e) {
      c.ok = false;
      c.why << " exception: " << e.what();
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (secs >= cr.limit_s) {
      c.ok = false;
      c.why << " over the " << cr.limit_s << " s limit";
    }
    std::printf("criterion %2d %s  %-28s %8.2fs  %s\n", cr.id, c.ok ? "PASS" : "FAIL", cr.name, secs,
                c.why.str().c_str());
    std::fflush(stdout);
    if (!c.ok) ++failed;
  }
  return failed == 0 ? 0 : 1;
}
