#include "icsheaf/deligne.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace icsheaf {

namespace {

std::size_t at(int i) { return static_cast<std::size_t>(i); }

InjectiveComplex empty_on(const SimplexSet& domain) { return InjectiveComplex(domain, {}, {}, SparseMatrix(0, 0)); }

InjectiveComplex resolve_step(const Field& field, const SheafComplex& f, const BuildOptions& options, BuildStep& step) {
  ResolveOptions ro;
  ro.cleanup = options.cleanup;
  ResolveStats stats;
  InjectiveComplex j = resolve(field, f, ro, &stats);
  step.generators = stats.generators;
  step.max_local_size = stats.max_local_size;
  if (options.reference_check) step.rank_neutral = stalk_table(field, f) == j.stalk_table(field);
  return j;
}

StalkTable restricted(const StalkTable& t, const SimplexSet& cells) {
  StalkTable out;
  for (const auto& [s, d] : t) {
    if (cells.contains(s)) out[s] = d;
  }
  return out;
}

}  // namespace

InjectiveComplex local_piece(const Field& field, const OpenFiltration& filt, const LocalSystemSpec& local, int m) {
  const SimplexSet& um = filt.Um[at(m)];
  CellularSheaf l = make_local_system(field, um, local, m);
  return resolve(field, from_sheaf(l, -m));
}

ICBundle build_ic(const Field& field, const Stratification& strat, const LocalSystemSpec& local,
                  const BuildOptions& options) {
  ICBundle b;
  b.field = field;
  b.strat = strat;
  b.local = local;
  b.cleanup = options.cleanup;
  b.filt = options.naive ? naive_filtration(strat) : compute_open_filtration(strat);
  int n = strat.n();
  const auto& filt = b.filt;

  std::vector<InjectiveComplex> pieces(at(n + 1));
  InjectiveComplex i1 = empty_on(filt.U[1]);
  for (int m = 1; m <= n; ++m) {
    if (filt.Um[at(m)].empty()) continue;
    pieces[at(m)] = local_piece(field, filt, local, m);
    i1 = direct_sum(i1, extend_by_zero_closed(pieces[at(m)], filt.U[1]));
  }
  for (const auto& [s, dims] : i1.stalk_table(field)) {
    int m = strat.strata()[at(strat.stratum_of(s))].complex_dim;
    DegreeDims expected;
    if (local.rank_for(m) > 0) expected[-m] = local.rank_for(m);
    if (dims != expected) b.failures.push_back("I_1 differs from the shifted local system at " +
                                               strat.complex()->tuple_string(s));
  }
  b.I.resize(1);
  b.I.push_back(std::move(i1));

  for (int k = 1; k <= n; ++k) {
    const SimplexSet& uk = filt.U[at(k)];
    const SimplexSet& next = filt.U[at(k + 1)];
    BuildStep step;
    step.k = k;
    InjectiveComplex pushed = pushforward_open(b.I.back(), next);
    InjectiveComplex out;
    if (options.naive) {
      SimplexSet added = next.minus(uk);
      if (added.empty()) {
        out = std::move(pushed);
        step.cutoff = 0;
        step.generators = out.size();
      } else {
        int lowest = n;
        for (int s : added.members()) lowest = std::min(lowest, strat.strata()[at(strat.stratum_of(s))].complex_dim);
        step.cutoff = -lowest - 1;
        out = resolve_step(field, truncate_le_on(field, pushed.to_sheaf(), step.cutoff, added), options, step);
      }
    } else {
      step.cutoff = k - 1 - n;
      out = resolve_step(field, truncate_le(field, pushed.to_sheaf(), step.cutoff), options, step);
      for (int m = 1; m <= n - k; ++m) {
        if (filt.Um[at(m)].empty()) continue;
        out = direct_sum(out, extend_by_zero_closed(pieces[at(m)], next));
      }
    }
    step.restriction_ok = restrict_open(out, uk).stalk_table(field) == b.I.back().stalk_table(field);
    if (!step.restriction_ok) b.failures.push_back("I_" + std::to_string(k + 1) + " does not restrict to I_" + std::to_string(k));
    if (!step.rank_neutral) b.failures.push_back("cleanup changed stalk cohomology at step " + std::to_string(k));
    b.log.push_back(step);
    b.I.push_back(std::move(out));
  }
  return b;
}

InjectiveComplex build_ic_pure(const Field& field, const Stratification& strat, int m, const LocalSystemSpec& local,
                               const BuildOptions& options) {
  OpenStrata os = compute_open_strata(strat);
  if (m < 1 || m > strat.n() || os.U[at(m)].empty()) {
    throw std::invalid_argument("no open stratum of complex dimension " + std::to_string(m));
  }
  const SimplexSet& xm = os.X[at(m)];
  if (xm.minus(strat.level(m - 1)) != os.U[at(m)]) {
    throw std::invalid_argument("X^" + std::to_string(m) + " is not pure: it meets a non-open stratum of dimension " +
                                std::to_string(m));
  }
  OpenFiltration filt;
  filt.Um = os.U;
  InjectiveComplex cur = local_piece(field, filt, local, m);
  for (int k = 1; k <= m; ++k) {
    SimplexSet next = xm.minus(strat.level(m - k - 1));
    BuildStep step;
    InjectiveComplex pushed = pushforward_open(cur, next);
    cur = resolve_step(field, truncate_le(field, pushed.to_sheaf(), k - 1 - m), options, step);
    if (!step.rank_neutral) throw std::logic_error("cleanup changed stalk cohomology in the pure construction");
  }
  return cur;
}

std::optional<TableMismatch> first_mismatch(const StalkTable& expected, const StalkTable& actual) {
  std::set<std::pair<int, int>> keys;
  for (const auto& [s, d] : expected) {
    for (const auto& [q, v] : d) keys.insert({s, q});
  }
  for (const auto& [s, d] : actual) {
    for (const auto& [q, v] : d) keys.insert({s, q});
  }
  auto get = [](const StalkTable& t, int s, int q) {
    auto it = t.find(s);
    if (it == t.end()) return 0;
    auto jt = it->second.find(q);
    return jt == it->second.end() ? 0 : jt->second;
  };
  for (const auto& [s, q] : keys) {
    int e = get(expected, s, q);
    int a = get(actual, s, q);
    if (e != a) return TableMismatch{s, q, e, a};
  }
  return std::nullopt;
}

DecompositionReport check_decomposition(const ICBundle& bundle, const BuildOptions& options) {
  const Field& field = bundle.field;
  const auto& cx = bundle.strat.complex();
  SimplexSet all = SimplexSet::all(cx);
  BuildOptions pure = options;
  pure.naive = false;
  pure.cleanup = bundle.cleanup;
  DecompositionReport r;
  r.summand_hypercohomology.resize(at(bundle.strat.n() + 1));
  InjectiveComplex sum = empty_on(all);
  for (int m = 1; m <= bundle.strat.n(); ++m) {
    if (bundle.filt.Um[at(m)].empty()) continue;
    InjectiveComplex piece = extend_by_zero_closed(build_ic_pure(field, bundle.strat, m, bundle.local, pure), all);
    r.summand_hypercohomology[at(m)] = piece.hypercohomology(field);
    sum = direct_sum(sum, piece);
  }
  r.total_hypercohomology = sum.hypercohomology(field);
  r.mismatch = first_mismatch(bundle.ic().stalk_table(field), sum.stalk_table(field));
  r.equal = !r.mismatch.has_value();
  return r;
}

std::vector<ClcFailure> clc_failures(const Field& field, const InjectiveComplex& s, const Stratification& strat) {
  StalkAnalysis sa(field, s);
  const auto& k = *strat.complex();
  std::vector<ClcFailure> out;
  for (int t = 0; t < static_cast<int>(strat.strata().size()); ++t) {
    const SimplexSet& cells = strat.strata()[at(t)].cells;
    for (int sigma : cells.members()) {
      if (!s.domain().contains(sigma)) continue;
      for (const auto& c : k.cofaces(sigma)) {
        if (!cells.contains(c.other) || !s.domain().contains(c.other)) continue;
        if (!sa.restriction_is_iso(sigma, c.other)) out.push_back({t, sigma, c.other});
      }
    }
  }
  return out;
}

CoarseningState clc_coarsen(const Field& field, const Stratification& strat, const InjectiveComplex& s) {
  auto failures = clc_failures(field, s, strat);
  if (!failures.empty()) {
    const auto& f = failures.front();
    throw std::invalid_argument("complex is not clc: restriction " + strat.complex()->tuple_string(f.face) + " -> " +
                                strat.complex()->tuple_string(f.coface) + " is not an isomorphism");
  }
  const auto& cx = strat.complex();
  const auto& k = *cx;
  const auto& strata = strat.strata();
  int n = strat.n();
  int ns = static_cast<int>(strata.size());
  StalkAnalysis sa(field, s);

  CoarseningState st;
  st.levels.assign(at(n + 1), SimplexSet::none(cx));
  st.merged.resize(at(n + 1));
  st.blocked.resize(at(n + 1));
  std::vector<char> removed(at(ns), 0);
  SimplexSet y = SimplexSet::all(cx);
  for (int d = n; d >= 0; --d) {
    st.levels[at(d)] = y;
    std::vector<char> in_region(at(k.size()), 0);
    std::vector<char> taken(at(ns), 0);
    auto star_ok = [&](int t, bool need_contact) {
      bool contact = false;
      for (int sigma : strata[at(t)].cells.members()) {
        for (int tau : k.all_cofaces(sigma)) {
          if (!y.contains(tau) || strata[at(t)].cells.contains(tau)) continue;
          if (!in_region[at(tau)]) return false;
          contact = true;
        }
      }
      return contact || !need_contact;
    };
    auto maps_ok = [&](int t) {
      for (int sigma : strata[at(t)].cells.members()) {
        for (const auto& c : k.cofaces(sigma)) {
          if (in_region[at(c.other)] && !sa.restriction_is_iso(sigma, c.other)) return false;
        }
      }
      return true;
    };
    auto take = [&](int t) {
      taken[at(t)] = 1;
      for (int sigma : strata[at(t)].cells.members()) in_region[at(sigma)] = 1;
      st.merged[at(d)].push_back(t);
    };
    for (int t = 0; t < ns; ++t) {
      if (!removed[at(t)] && strata[at(t)].complex_dim == d && star_ok(t, false)) take(t);
    }
    for (bool changed = true; changed;) {
      changed = false;
      for (int t = 0; t < ns; ++t) {
        if (removed[at(t)] || taken[at(t)] || strata[at(t)].complex_dim > d) continue;
        if (star_ok(t, true) && maps_ok(t)) {
          take(t);
          changed = true;
        }
      }
    }
    std::vector<int> drop;
    for (int sigma : y.members()) {
      if (in_region[at(sigma)]) drop.push_back(sigma);
    }
    for (int t = 0; t < ns; ++t) {
      if (taken[at(t)]) {
        removed[at(t)] = 1;
        continue;
      }
      if (removed[at(t)]) continue;
      bool adjacent = false;
      for (int sigma : strata[at(t)].cells.members()) {
        for (const auto& c : k.cofaces(sigma)) adjacent = adjacent || in_region[at(c.other)];
      }
      if (adjacent) st.blocked[at(d)].push_back(t);
    }
    y = y.minus(SimplexSet(cx, drop));
  }
  try {
    st.result = validate_stratification(cx, st.levels);
  } catch (const std::invalid_argument& e) {
    st.validation_error = e.what();
  }
  return st;
}

ComparisonReport compare_complexes(const Field& field, const InjectiveComplex& a, const InjectiveComplex& b,
                                   const std::vector<int>& sample) {
  ComparisonReport r;
  r.stalk_mismatch = first_mismatch(a.stalk_table(field), b.stalk_table(field));
  r.stalks_equal = !r.stalk_mismatch.has_value();
  std::vector<int> cells = sample;
  if (cells.empty()) cells = a.domain().members();
  r.costalk_mismatch = first_mismatch(a.costalk_table(field, cells), b.costalk_table(field, cells));
  r.costalks_equal = !r.costalk_mismatch.has_value();
  r.hypercohomology_first = a.hypercohomology(field);
  r.hypercohomology_second = b.hypercohomology(field);
  r.hypercohomology_equal = r.hypercohomology_first == r.hypercohomology_second;
  return r;
}

ComparisonReport compare_stratifications(const Field& field, const Stratification& first,
                                         const LocalSystemSpec& first_local, const Stratification& second,
                                         const LocalSystemSpec& second_local, const std::vector<int>& sample,
                                         const BuildOptions& options) {
  if (first.complex() != second.complex()) {
    throw std::invalid_argument("stratifications live on different complexes");
  }
  ICBundle a = build_ic(field, first, first_local, options);
  ICBundle b = build_ic(field, second, second_local, options);
  SimplexSet common = a.filt.U[1].intersect(b.filt.U[1]);
  if (first_mismatch(restricted(a.I[1].stalk_table(field), common), restricted(b.I[1].stalk_table(field), common))) {
    throw std::invalid_argument("incompatible local systems on the common open set");
  }
  return compare_complexes(field, a.ic(), b.ic(), sample);
}

}  // namespace icsheaf
