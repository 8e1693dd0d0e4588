#include "icsheaf/stratify.hpp"

#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <set>
#include <stdexcept>

namespace icsheaf {

const SimplexSet& Stratification::level(int k) const {
  if (k < 0) return empty_;
  if (k >= n_) return levels_[static_cast<std::size_t>(n_)];
  return levels_[static_cast<std::size_t>(k)];
}

nlohmann::json Stratification::to_json() const {
  nlohmann::json levels = nlohmann::json::object();
  for (int k = n_; k >= 0; --k) {
    const SimplexSet& x = levels_[static_cast<std::size_t>(k)];
    nlohmann::json gens = nlohmann::json::array();
    for (int id : x.members()) {
      bool maximal = std::none_of(complex_->cofaces(id).begin(), complex_->cofaces(id).end(),
                                  [&](const Incidence& c) { return x.contains(c.other); });
      if (maximal) gens.push_back(complex_->tuple_json(id));
    }
    levels[std::to_string(k)] = gens;
  }
  return nlohmann::json{{"levels", levels}};
}

std::string Stratification::hash() const {
  std::string text = to_json().dump();
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : text) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

Stratification validate_stratification(const ComplexPtr& k, const std::vector<SimplexSet>& levels) {
  if (levels.empty()) throw std::invalid_argument("stratification has no levels");
  Stratification s;
  s.complex_ = k;
  s.n_ = static_cast<int>(levels.size()) - 1;
  s.levels_ = levels;
  s.empty_ = SimplexSet::none(k);
  for (int lv = 0; lv <= s.n_; ++lv) {
    const SimplexSet& x = levels[static_cast<std::size_t>(lv)];
    if (x.owner() != k) throw std::invalid_argument("level " + std::to_string(lv) + " belongs to another complex");
    if (!x.is_down_closed()) {
      for (int id : x.members()) {
        for (const auto& f : k->faces(id)) {
          if (!x.contains(f.other)) {
            throw std::invalid_argument("non-down-closed level " + std::to_string(lv) + ": face " +
                                        k->tuple_string(f.other) + " of " + k->tuple_string(id) + " missing");
          }
        }
      }
    }
    if (lv > 0) {
      const SimplexSet& below = levels[static_cast<std::size_t>(lv - 1)];
      for (int id : below.members()) {
        if (!x.contains(id)) {
          throw std::invalid_argument("non-nested levels: " + k->tuple_string(id) + " is in X_" +
                                      std::to_string(lv - 1) + " but not in X_" + std::to_string(lv));
        }
      }
    }
  }
  if (levels.back().size() != k->size()) {
    for (int id = 0; id < k->size(); ++id) {
      if (!levels.back().contains(id)) {
        throw std::invalid_argument("top level X_" + std::to_string(s.n_) + " misses simplex " + k->tuple_string(id));
      }
    }
  }

  // Strata: components of X_k - X_{k-1}.
  std::vector<Stratum> strata;
  for (int lv = s.n_; lv >= 0; --lv) {
    SimplexSet diff = s.level(lv).minus(s.level(lv - 1));
    for (auto& comp : components_of(diff)) {
      int top = comp.max_dim();
      if (top > 2 * lv) {
        for (int id : comp.members()) {
          if (k->dim_of(id) > 2 * lv) {
            throw std::invalid_argument("dimensional homogeneity: simplex " + k->tuple_string(id) + " of real dim " +
                                        std::to_string(k->dim_of(id)) + " lies in X_" + std::to_string(lv) +
                                        " - X_" + std::to_string(lv - 1));
          }
        }
      }
      if (top != 2 * lv) {
        throw std::invalid_argument("dimensional homogeneity: stratum containing " +
                                    k->tuple_string(comp.members().front()) + " at complex level " +
                                    std::to_string(lv) + " has top real dimension " + std::to_string(top) +
                                    ", expected " + std::to_string(2 * lv));
      }
      // Every cell must be a face of a top-dimensional cell of the stratum.
      std::vector<int> tops;
      for (int id : comp.members()) {
        if (k->dim_of(id) == 2 * lv) tops.push_back(id);
      }
      SimplexSet covered = down_closure(SimplexSet(k, tops));
      for (int id : comp.members()) {
        if (!covered.contains(id)) {
          throw std::invalid_argument("dimensional homogeneity: simplex " + k->tuple_string(id) + " in X_" +
                                      std::to_string(lv) + " - X_" + std::to_string(lv - 1) +
                                      " is not a face of a real dim " + std::to_string(2 * lv) + " simplex");
        }
      }
      Stratum st;
      st.complex_dim = lv;
      st.is_open = comp.is_up_closed();
      st.cells = std::move(comp);
      if (lv == 0 && st.is_open) {
        throw std::invalid_argument("open point stratum at vertex " + k->tuple_string(st.cells.members().front()));
      }
      strata.push_back(std::move(st));
    }
  }
  s.stratum_of_.assign(static_cast<std::size_t>(k->size()), -1);
  for (std::size_t i = 0; i < strata.size(); ++i) {
    for (int id : strata[i].cells.members()) s.stratum_of_[static_cast<std::size_t>(id)] = static_cast<int>(i);
  }
  // Frontier condition.
  for (std::size_t i = 0; i < strata.size(); ++i) {
    SimplexSet frontier = down_closure(strata[i].cells).minus(strata[i].cells);
    for (int id : frontier.members()) {
      const Stratum& other = strata[static_cast<std::size_t>(s.stratum_of_[static_cast<std::size_t>(id)])];
      if (!other.cells.subset_of(frontier)) {
        throw std::invalid_argument("frontier violation: closure of the stratum containing " +
                                    k->tuple_string(strata[i].cells.members().front()) +
                                    " meets the stratum containing " + k->tuple_string(id) + " only partially");
      }
    }
  }
  s.strata_ = std::move(strata);
  return s;
}

Stratification load_stratification(const ComplexPtr& k, const nlohmann::json& doc) {
  if (!doc.is_object() || !doc.contains("levels") || !doc.at("levels").is_object()) {
    throw std::invalid_argument("stratification document needs a 'levels' object");
  }
  std::map<int, nlohmann::json> given;
  for (const auto& [key, val] : doc.at("levels").items()) {
    int lv = 0;
    try {
      std::size_t pos = 0;
      lv = std::stoi(key, &pos);
      if (pos != key.size()) throw std::invalid_argument(key);
    } catch (const std::exception&) {
      throw std::invalid_argument("level key must be an integer: " + key);
    }
    if (lv < 0) throw std::invalid_argument("negative level key " + key);
    given[lv] = val;
  }
  if (given.empty()) throw std::invalid_argument("stratification has no levels");
  int n = given.rbegin()->first;
  std::vector<SimplexSet> levels;
  for (int lv = 0; lv <= n; ++lv) {
    auto it = given.find(lv);
    if (it == given.end()) {
      levels.push_back(lv == 0 ? SimplexSet::none(k) : levels.back());
      continue;
    }
    std::vector<int> ids;
    for (const auto& simplex : it->second) {
      std::vector<VertexLabel> labels;
      for (const auto& v : simplex) labels.push_back(label_from_json(v));
      auto id = k->find_labels(labels);
      if (!id) throw std::invalid_argument("level " + std::to_string(lv) + ": unknown simplex " + simplex.dump());
      ids.push_back(*id);
    }
    levels.push_back(down_closure(SimplexSet(k, ids)));
  }
  return validate_stratification(k, levels);
}

Stratification trivial_stratification(const ComplexPtr& k) {
  if (k->dim() % 2 != 0) throw std::invalid_argument("odd-dimensional complex has no trivial stratification");
  int n = k->dim() / 2;
  std::vector<SimplexSet> levels;
  for (int lv = 0; lv < n; ++lv) levels.push_back(SimplexSet::none(k));
  levels.push_back(SimplexSet::all(k));
  return validate_stratification(k, levels);
}

OpenStrata compute_open_strata(const Stratification& strat) {
  const auto& k = strat.complex();
  OpenStrata os;
  os.n = strat.n();
  std::vector<std::vector<int>> ids(static_cast<std::size_t>(os.n + 1));
  for (const auto& st : strat.strata()) {
    if (st.is_open) {
      auto& v = ids[static_cast<std::size_t>(st.complex_dim)];
      v.insert(v.end(), st.cells.members().begin(), st.cells.members().end());
    }
  }
  SimplexSet cover = SimplexSet::none(k);
  for (int m = 0; m <= os.n; ++m) {
    os.U.emplace_back(k, ids[static_cast<std::size_t>(m)]);
    os.X.push_back(down_closure(os.U.back()));
    cover = cover.unite(os.X.back());
  }
  os.dense = cover.size() == k->size();
  if (!os.dense) {
    int missing = SimplexSet::all(k).minus(cover).members().front();
    throw std::invalid_argument("open strata are not dense (the closures of the U^m must cover X): simplex " +
                                k->tuple_string(missing) + " is missed");
  }
  return os;
}

SimplexSet open_piece(const Stratification& strat, const OpenStrata& os, int m, int k) {
  return os.X[static_cast<std::size_t>(m)].minus(strat.level(m - k));
}

OpenFiltration compute_open_filtration(const Stratification& strat) {
  OpenStrata os = compute_open_strata(strat);
  const auto& cx = strat.complex();
  int n = strat.n();
  OpenFiltration f;
  f.n = n;
  f.canonical = true;
  f.Um = os.U;
  f.Xm = os.X;
  f.W.assign(static_cast<std::size_t>(n + 2), SimplexSet::none(cx));
  f.U.assign(static_cast<std::size_t>(n + 2), SimplexSet::none(cx));
  for (int k = 1; k <= n + 1; ++k) {
    SimplexSet w = SimplexSet::none(cx);
    for (int m = n - k + 2; m <= n; ++m) w = w.unite(open_piece(strat, os, m, m - n + k));
    SimplexSet u = w;
    for (int m = 1; m <= n - k + 1; ++m) u = u.unite(open_piece(strat, os, m, 1));
    f.W[static_cast<std::size_t>(k)] = w;
    f.U[static_cast<std::size_t>(k)] = u;
  }
  return f;
}

OpenFiltration naive_filtration(const Stratification& strat) {
  OpenStrata os = compute_open_strata(strat);
  const auto& cx = strat.complex();
  int n = strat.n();
  OpenFiltration f;
  f.n = n;
  f.canonical = false;
  f.Um = os.U;
  f.Xm = os.X;
  f.W.assign(static_cast<std::size_t>(n + 2), SimplexSet::none(cx));
  f.U.assign(static_cast<std::size_t>(n + 2), SimplexSet::none(cx));
  for (int k = 1; k <= n + 1; ++k) {
    SimplexSet u = SimplexSet::none(cx);
    for (int m = 1; m <= n; ++m) u = u.unite(open_piece(strat, os, m, k));
    f.U[static_cast<std::size_t>(k)] = u;
  }
  return f;
}

std::vector<LemmaCheck> check_filtration_lemmas(const Stratification& strat, const OpenFiltration& f) {
  const auto& cx = strat.complex();
  int n = strat.n();
  OpenStrata os = compute_open_strata(strat);
  auto idx = [](int i) { return static_cast<std::size_t>(i); };
  std::vector<LemmaCheck> out;

  LemmaCheck open{"openness", true, ""};
  for (int k = 1; k <= n; ++k) {
    if (!f.U[idx(k)].subset_of(f.U[idx(k + 1)]) || !f.U[idx(k)].is_up_closed_in(f.U[idx(k + 1)])) {
      open.holds = false;
      open.detail = "U_" + std::to_string(k) + " is not up-closed in U_" + std::to_string(k + 1);
      break;
    }
  }
  if (open.holds && f.U[idx(n + 1)].size() != cx->size()) {
    open.holds = false;
    open.detail = "U_{n+1} is not everything";
  }
  out.push_back(open);

  LemmaCheck dense{"density", true, ""};
  SimplexSet disjoint = SimplexSet::none(cx);
  for (int m = 1; m <= n; ++m) disjoint = disjoint.unite(os.U[idx(m)]);
  if (disjoint != f.U[1]) {
    dense.holds = false;
    dense.detail = "U_1 differs from the union of the U^m";
  } else if (down_closure(f.U[1]).size() != cx->size()) {
    dense.holds = false;
    dense.detail = "closure of U_1 is not everything";
  }
  out.push_back(dense);

  LemmaCheck content{"strata-content", true, ""};
  for (int k = 1; k <= n && content.holds; ++k) {
    std::vector<int> ids;
    for (const auto& st : strat.strata()) {
      if (!st.is_open && st.complex_dim == n - k) {
        ids.insert(ids.end(), st.cells.members().begin(), st.cells.members().end());
      }
    }
    if (f.U[idx(k + 1)].minus(f.U[idx(k)]) != SimplexSet(cx, ids)) {
      content.holds = false;
      content.detail = "U_" + std::to_string(k + 1) + " - U_" + std::to_string(k) +
                       " differs from the non-open strata of complex dim " + std::to_string(n - k);
    }
  }
  out.push_back(content);

  LemmaCheck closed{"closedness", true, ""};
  for (int k = 1; k <= n && closed.holds; ++k) {
    for (int m = std::max(1, n - k + 1); m <= n; ++m) {
      if (os.X[idx(m)].intersect(f.U[idx(k)]) != open_piece(strat, os, m, m - n + k)) {
        closed.holds = false;
        closed.detail = "X^" + std::to_string(m) + " meet U_" + std::to_string(k) + " differs from U^" +
                        std::to_string(m) + "_" + std::to_string(m - n + k);
        break;
      }
    }
  }
  out.push_back(closed);

  LemmaCheck wdiff{"w-difference", true, ""};
  for (int k = 1; k <= n; ++k) {
    SimplexSet lhs = f.U[idx(k + 1)].minus(f.U[idx(k)]);
    SimplexSet rhs = f.W[idx(k + 1)].minus(f.W[idx(k)]).minus(open_piece(strat, os, n - k + 1, 1));
    if (lhs != rhs) {
      wdiff.holds = false;
      wdiff.detail = "identity fails at k = " + std::to_string(k);
      break;
    }
  }
  out.push_back(wdiff);
  return out;
}

RefinementResult is_refinement(const Stratification& fine, const Stratification& coarse) {
  if (fine.complex() != coarse.complex() &&
      complex_to_json(*fine.complex()) != complex_to_json(*coarse.complex())) {
    throw std::invalid_argument("stratifications live on different complexes");
  }
  RefinementResult r;
  r.is_refinement = true;
  for (const auto& st : fine.strata()) {
    int c = coarse.stratum_of(st.cells.members().front());
    bool inside = std::all_of(st.cells.members().begin(), st.cells.members().end(),
                              [&](int id) { return coarse.stratum_of(id) == c; });
    r.coarse_of_fine.push_back(inside ? c : -1);
    if (!inside) r.is_refinement = false;
  }
  return r;
}

ComplexPtr link_in(const SimplexSet& closed, int sigma) {
  const auto& k = closed.owner();
  const auto& sv = k->vertices(sigma);
  std::vector<std::vector<int>> faces;
  std::set<int> verts;
  for (int t : k->all_cofaces(sigma)) {
    if (!closed.contains(t)) continue;
    std::vector<int> rest;
    std::set_difference(k->vertices(t).begin(), k->vertices(t).end(), sv.begin(), sv.end(), std::back_inserter(rest));
    verts.insert(rest.begin(), rest.end());
    faces.push_back(std::move(rest));
  }
  std::vector<VertexLabel> labels;
  std::map<int, int> remap;
  for (int v : verts) {
    remap[v] = static_cast<int>(labels.size());
    labels.push_back(k->labels()[static_cast<std::size_t>(v)]);
  }
  for (auto& f : faces) {
    for (int& v : f) v = remap.at(v);
  }
  return SimplicialComplex::create(std::move(labels), faces, true);
}

std::vector<LinkIssue> check_links(const Stratification& strat, const Field& field) {
  std::vector<LinkIssue> out;
  const auto& k = strat.complex();
  for (std::size_t i = 0; i < strat.strata().size(); ++i) {
    const Stratum& st = strat.strata()[i];
    SimplexSet closure = down_closure(st.cells);
    for (int sigma : st.cells.members()) {
      int expected = 2 * st.complex_dim - k->dim_of(sigma) - 1;
      auto link = link_in(closure, sigma);
      auto h = simplicial_cohomology(*link, field, true);
      std::map<int, int> want;
      want[expected] = 1;
      if (h != want) out.push_back({static_cast<int>(i), sigma, expected, h});
    }
  }
  return out;
}

}  // namespace icsheaf
