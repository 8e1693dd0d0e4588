#include "icsheaf/bundled.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <set>
#include <stdexcept>

#include "icsheaf/serialize.hpp"

namespace icsheaf {

namespace {

std::size_t at(int i) { return static_cast<std::size_t>(i); }

std::vector<std::vector<int>> subsets(const std::vector<int>& v, std::size_t size) {
  std::vector<std::vector<int>> out;
  std::vector<bool> pick(v.size(), false);
  std::fill(pick.begin(), pick.begin() + static_cast<long>(size), true);
  do {
    std::vector<int> s;
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (pick[i]) s.push_back(v[i]);
    }
    out.push_back(std::move(s));
  } while (std::prev_permutation(pick.begin(), pick.end()));
  return out;
}

std::vector<int> range(int lo, int hi) {
  std::vector<int> v;
  for (int i = lo; i <= hi; ++i) v.push_back(i);
  return v;
}

// Complex on integer labels given as label tuples.
ComplexPtr from_label_tuples(const std::vector<std::vector<int>>& tuples) {
  std::set<int> verts;
  for (const auto& t : tuples) verts.insert(t.begin(), t.end());
  std::vector<VertexLabel> labels(verts.begin(), verts.end());
  std::vector<int> sorted(verts.begin(), verts.end());
  std::vector<std::vector<int>> maximal;
  for (const auto& t : tuples) {
    std::vector<int> idx;
    for (int v : t) idx.push_back(static_cast<int>(std::lower_bound(sorted.begin(), sorted.end(), v) - sorted.begin()));
    maximal.push_back(std::move(idx));
  }
  return SimplicialComplex::create(std::move(labels), maximal);
}

SimplexSet closure_of_labels(const ComplexPtr& k, const std::vector<std::vector<int>>& tuples) {
  std::vector<int> ids;
  for (const auto& t : tuples) {
    std::vector<VertexLabel> labels(t.begin(), t.end());
    auto id = k->find_labels(labels);
    if (!id) throw std::logic_error("bundled space: missing simplex");
    ids.push_back(*id);
  }
  return down_closure(SimplexSet(k, ids));
}

std::vector<std::vector<int>> sphere_facets(const std::vector<int>& verts) { return subsets(verts, verts.size() - 1); }

std::vector<SimplexSet> levels_of(const Stratification& s) {
  std::vector<SimplexSet> out;
  for (int k = 0; k <= s.n(); ++k) out.push_back(s.level(k));
  return out;
}

BundledSpace finish(std::string name, std::string description, const ComplexPtr& k,
                    const std::vector<SimplexSet>& levels) {
  BundledSpace b;
  b.name = std::move(name);
  b.description = std::move(description);
  b.complex = k;
  b.stratification = validate_stratification(k, levels);
  b.local.default_rank = 1;
  return b;
}

BundledSpace wedge(bool fake_surface) {
  auto big = sphere_facets(range(1, 6));
  auto small = sphere_facets({6, 7, 8, 9});
  auto all = big;
  all.insert(all.end(), small.begin(), small.end());
  ComplexPtr k = from_label_tuples(all);
  SimplexSet x1 = closure_of_labels(k, small);
  if (fake_surface) x1 = x1.unite(closure_of_labels(k, sphere_facets({1, 2, 3, 4})));
  std::vector<SimplexSet> levels{closure_of_labels(k, {{6}}), x1, SimplexSet::all(k)};
  if (fake_surface) {
    return finish("fake-surface", "boundary of a 5-simplex wedge boundary of a 3-simplex, with the 2-sphere on {1,2,3,4} as an extra stratum",
                  k, levels);
  }
  return finish("wedge", "boundary of a 5-simplex (S^4) wedge boundary of a 3-simplex (S^2) at vertex 6", k, levels);
}

BundledSpace pinched_torus() {
  // A sphere with poles 0 and 0' and rings a, b, c; the poles are identified.
  std::vector<int> a{1, 2, 3};
  std::vector<int> b{4, 5, 6};
  std::vector<int> c{7, 8, 9};
  std::vector<std::vector<int>> tris;
  auto cap = [&](const std::vector<int>& ring) {
    for (int i = 0; i < 3; ++i) tris.push_back({0, ring[at(i)], ring[at((i + 1) % 3)]});
  };
  auto annulus = [&](const std::vector<int>& p, const std::vector<int>& q) {
    for (int i = 0; i < 3; ++i) {
      int j = (i + 1) % 3;
      tris.push_back({p[at(i)], p[at(j)], q[at(i)]});
      tris.push_back({p[at(j)], q[at(i)], q[at(j)]});
    }
  };
  cap(a);
  annulus(a, b);
  annulus(b, c);
  cap(c);
  for (auto& t : tris) std::sort(t.begin(), t.end());
  ComplexPtr k = from_label_tuples(tris);
  return finish("pinched-torus", "2-sphere with two non-adjacent vertices identified (pinch at vertex 0)", k,
                {closure_of_labels(k, {{0}}), SimplexSet::all(k)});
}

std::vector<std::vector<int>> tuples_of(const SimplicialComplex& k, int offset) {
  std::vector<std::vector<int>> out;
  for (int id = 0; id < k.size(); ++id) {
    bool maximal = k.cofaces(id).empty();
    if (!maximal) continue;
    std::vector<int> t;
    for (int v : k.vertices(id)) t.push_back(v + offset);
    out.push_back(std::move(t));
  }
  return out;
}

// Facets of the suspension of S^1 x S^2 with vertex labels 1..12 on the
// product and 13, 14 as cone points.
std::vector<std::vector<int>> suspension_facets() {
  ComplexPtr circle = SimplicialComplex::create({0LL, 1LL, 2LL}, {{0, 1}, {1, 2}, {0, 2}});
  ComplexPtr sphere = SimplicialComplex::create({0LL, 1LL, 2LL, 3LL}, sphere_facets({0, 1, 2, 3}));
  ComplexPtr prod = product_complex(*circle, *sphere);
  std::vector<std::vector<int>> out;
  for (const auto& t : tuples_of(*prod, 1)) {
    for (int apex : {13, 14}) {
      auto f = t;
      f.push_back(apex);
      out.push_back(std::move(f));
    }
  }
  return out;
}

BundledSpace susp() {
  ComplexPtr k = from_label_tuples(suspension_facets());
  SimplexSet cones = closure_of_labels(k, {{13}, {14}});
  return finish("susp-s1xs2", "suspension of a staircase triangulation of S^1 x S^2 (cone points 13, 14)", k,
                {cones, cones, SimplexSet::all(k)});
}

BundledSpace nonpure_wedge() {
  auto facets = suspension_facets();
  auto small = sphere_facets({1, 15, 16, 17});
  facets.insert(facets.end(), small.begin(), small.end());
  ComplexPtr k = from_label_tuples(facets);
  SimplexSet points = closure_of_labels(k, {{1}, {13}, {14}});
  return finish("nonpure-wedge", "susp-s1xs2 wedge a 2-sphere on {1,15,16,17} at the smooth vertex 1", k,
                {points, points.unite(closure_of_labels(k, small)), SimplexSet::all(k)});
}

}  // namespace

const std::vector<std::string>& bundled_names() {
  static const std::vector<std::string> names{"wedge", "pinched-torus", "susp-s1xs2", "nonpure-wedge", "fake-surface"};
  return names;
}

BundledSpace make_bundled(const std::string& name) {
  if (name == "wedge") return wedge(false);
  if (name == "fake-surface") return wedge(true);
  if (name == "pinched-torus") return pinched_torus();
  if (name == "susp-s1xs2") return susp();
  if (name == "nonpure-wedge") return nonpure_wedge();
  throw std::invalid_argument("unknown bundled space: " + name);
}

ComplexPtr product_complex(const SimplicialComplex& a, const SimplicialComplex& b) {
  int nb = b.vertex_count();
  std::vector<std::vector<int>> maximal;
  for (int s = 0; s < a.size(); ++s) {
    if (!a.cofaces(s).empty()) continue;
    for (int t = 0; t < b.size(); ++t) {
      if (!b.cofaces(t).empty()) continue;
      const auto& av = a.vertices(s);
      const auto& bv = b.vertices(t);
      int p = static_cast<int>(av.size()) - 1;
      int q = static_cast<int>(bv.size()) - 1;
      // Lattice paths from (0,0) to (p,q): choose which of the p+q steps move in a.
      std::vector<int> steps(at(p + q));
      std::iota(steps.begin(), steps.end(), 0);
      for (const auto& amoves : subsets(steps, at(p))) {
        std::vector<int> simplex;
        int i = 0;
        int j = 0;
        simplex.push_back(av[at(i)] * nb + bv[at(j)]);
        std::set<int> am(amoves.begin(), amoves.end());
        for (int st = 0; st < p + q; ++st) {
          if (am.count(st)) {
            ++i;
          } else {
            ++j;
          }
          simplex.push_back(av[at(i)] * nb + bv[at(j)]);
        }
        std::sort(simplex.begin(), simplex.end());
        maximal.push_back(std::move(simplex));
      }
    }
  }
  std::vector<VertexLabel> labels;
  for (int v = 0; v < a.vertex_count() * nb; ++v) labels.emplace_back(static_cast<long long>(v));
  return SimplicialComplex::create(std::move(labels), maximal);
}

std::vector<int> fake_point_candidates(const Stratification& strat) {
  const auto& k = *strat.complex();
  std::vector<int> out;
  for (int v : k.simplices_of_dim(0)) {
    const Stratum& st = strat.strata()[at(strat.stratum_of(v))];
    if (st.is_open && st.complex_dim >= 1) out.push_back(v);
  }
  return out;
}

std::vector<std::vector<int>> fake_sphere_candidates(const Stratification& strat) {
  const auto& k = *strat.complex();
  std::vector<std::vector<int>> out;
  std::set<std::vector<int>> seen;
  for (int t : k.simplices_of_dim(2)) {
    const Stratum& st = strat.strata()[at(strat.stratum_of(t))];
    if (!st.is_open || st.complex_dim < 2) continue;
    // Extend the triangle by a fourth vertex adjacent to all three.
    const auto& tv = k.vertices(t);
    for (int e : k.simplices_of_dim(0)) {
      int w = k.vertices(e)[0];
      if (std::find(tv.begin(), tv.end(), w) != tv.end()) continue;
      std::vector<int> quad = tv;
      quad.push_back(w);
      std::sort(quad.begin(), quad.end());
      if (seen.count(quad)) continue;
      bool ok = true;
      std::vector<int> cells;
      for (const auto& face : subsets(quad, 3)) {
        auto id = k.find(face);
        if (!id) {
          ok = false;
          break;
        }
        cells.push_back(*id);
      }
      if (!ok) continue;
      SimplexSet cl = down_closure(SimplexSet(strat.complex(), cells));
      for (int s : cl.members()) ok = ok && strat.stratum_of(s) == strat.stratum_of(t);
      if (!ok) continue;
      seen.insert(quad);
      out.push_back(quad);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

Stratification add_fake_point(const Stratification& strat, int vertex) {
  auto levels = levels_of(strat);
  SimplexSet p(strat.complex(), {vertex});
  for (auto& lv : levels) lv = lv.unite(p);
  return validate_stratification(strat.complex(), levels);
}

Stratification add_fake_sphere(const Stratification& strat, const std::vector<int>& vertices) {
  const auto& k = strat.complex();
  std::vector<int> cells;
  for (const auto& face : subsets(vertices, 3)) {
    auto id = k->find(face);
    if (!id) throw std::invalid_argument("fake sphere: missing triangle");
    cells.push_back(*id);
  }
  SimplexSet sphere = down_closure(SimplexSet(k, cells));
  auto levels = levels_of(strat);
  for (int lv = 1; lv <= strat.n(); ++lv) levels[at(lv)] = levels[at(lv)].unite(sphere);
  return validate_stratification(k, levels);
}

Stratification refine(const Stratification& strat, const std::string& recipe) {
  if (recipe == "extra-point") {
    auto c = fake_point_candidates(strat);
    if (c.empty()) throw std::invalid_argument("no vertex admits a fake point stratum");
    return add_fake_point(strat, c.front());
  }
  if (recipe == "fake-sphere") {
    auto c = fake_sphere_candidates(strat);
    if (c.empty()) throw std::invalid_argument("no fake 2-sphere fits in a complex-dimension-2 open stratum");
    return add_fake_sphere(strat, c.front());
  }
  if (recipe.rfind("random:", 0) == 0) {
    std::uint64_t seed = std::stoull(recipe.substr(7));
    std::mt19937 rng(static_cast<std::mt19937::result_type>(seed));
    Stratification cur = strat;
    int additions = 1 + static_cast<int>(rng() % 3);
    for (int i = 0; i < additions; ++i) {
      auto points = fake_point_candidates(cur);
      auto spheres = fake_sphere_candidates(cur);
      if (points.empty() && spheres.empty()) break;
      bool sphere = !spheres.empty() && (points.empty() || rng() % 2 == 0);
      if (sphere) {
        cur = add_fake_sphere(cur, spheres[rng() % spheres.size()]);
      } else {
        cur = add_fake_point(cur, points[rng() % points.size()]);
      }
    }
    return cur;
  }
  throw std::invalid_argument("unknown refinement recipe: " + recipe);
}

void write_bundled(const BundledSpace& space, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  write_json_file(dir / "complex.json", complex_to_json(*space.complex));
  write_json_file(dir / "stratification.json", space.stratification.to_json());
  write_json_file(dir / "local_system.json", space.local.to_json(*space.complex));
}

BundledSpace read_bundled(const std::string& name, const std::filesystem::path& dir) {
  BundledSpace b;
  b.name = name;
  b.complex = load_complex(read_json_file(dir / "complex.json"));
  b.stratification = load_stratification(b.complex, read_json_file(dir / "stratification.json"));
  b.local = load_local_system(b.complex, Field::rationals(), read_json_file(dir / "local_system.json"));
  return b;
}

BundledSpace load_bundled(const std::string& name, const std::filesystem::path& cache) {
  std::filesystem::path dir = cache / name;
  if (!std::filesystem::exists(dir / "local_system.json")) {
    BundledSpace fresh = make_bundled(name);
    // Unique staging directory; concurrent writers race on the rename and
    // the loser discards its copy.
    std::filesystem::path tmp = cache / (name + ".tmp." + std::to_string(std::random_device{}()));
    write_bundled(fresh, tmp);
    std::error_code ec;
    std::filesystem::rename(tmp, dir, ec);
    if (ec) std::filesystem::remove_all(tmp);
  }
  return read_bundled(name, dir);
}

}  // namespace icsheaf
