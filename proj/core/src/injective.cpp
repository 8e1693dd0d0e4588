#include "icsheaf/injective.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <stdexcept>

namespace icsheaf {

namespace {

std::size_t at(int i) { return static_cast<std::size_t>(i); }

void sort_vec(SparseVec& v) {
  std::sort(v.begin(), v.end(), [](const Entry& a, const Entry& b) { return a.first < b.first; });
}

}  // namespace

InjectiveComplex::InjectiveComplex(SimplexSet domain, std::vector<int> cell, std::vector<int> degree, SparseMatrix d)
    : domain_(std::move(domain)) {
  int n = static_cast<int>(cell.size());
  if (static_cast<int>(degree.size()) != n || d.rows() != n || d.cols() != n) {
    throw std::invalid_argument("injective complex: inconsistent sizes");
  }
  std::vector<int> order(at(n));
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return cell[at(a)] < cell[at(b)]; });
  std::vector<int> new_of_old(at(n));
  for (int i = 0; i < n; ++i) new_of_old[at(order[at(i)])] = i;
  cell_.resize(at(n));
  degree_.resize(at(n));
  d_ = SparseMatrix(n, n);
  for (int i = 0; i < n; ++i) {
    int old = order[at(i)];
    cell_[at(i)] = cell[at(old)];
    degree_[at(i)] = degree[at(old)];
    SparseVec col;
    for (const auto& [r, v] : d.col(old)) col.emplace_back(new_of_old[at(r)], v);
    sort_vec(col);
    d_.set_col(i, std::move(col));
  }
  int ncells = domain_.owner()->size();
  offset_.assign(at(ncells + 1), 0);
  for (int c : cell_) {
    if (!domain_.contains(c)) throw std::invalid_argument("injective complex: generator outside the domain");
    ++offset_[at(c + 1)];
  }
  for (int c = 0; c < ncells; ++c) offset_[at(c + 1)] += offset_[at(c)];
}

std::vector<int> InjectiveComplex::generators_on(const std::vector<int>& cells) const {
  std::vector<int> sorted = cells;
  std::sort(sorted.begin(), sorted.end());
  std::vector<int> out;
  for (int c : sorted) {
    for (int g = begin(c); g < end(c); ++g) out.push_back(g);
  }
  return out;
}

std::vector<int> InjectiveComplex::star_generators(int sigma) const { return generators_on(up_set_in(domain_, sigma)); }

GradedComplex InjectiveComplex::subcomplex(const std::vector<int>& gens) const {
  GradedComplex g;
  for (int x : gens) {
    g.degree.push_back(degree_[at(x)]);
    g.label.push_back(cell_[at(x)]);
  }
  g.d = d_.select(gens, gens);
  return g;
}

GradedComplex InjectiveComplex::stalk_complex(int sigma) const { return subcomplex(star_generators(sigma)); }

DegreeDims InjectiveComplex::stalk_cohomology(const Field& field, int sigma) const {
  if (!domain_.contains(sigma)) return {};
  return cohomology_dims(field, stalk_complex(sigma));
}

StalkTable InjectiveComplex::stalk_table(const Field& field) const {
  StalkTable t;
  for (int s : domain_.members()) {
    DegreeDims d = stalk_cohomology(field, s);
    if (!d.empty()) t[s] = std::move(d);
  }
  return t;
}

DegreeDims InjectiveComplex::costalk(const Field& field, int sigma) const {
  if (!domain_.contains(sigma)) return {};
  std::vector<int> gens;
  for (int g = begin(sigma); g < end(sigma); ++g) gens.push_back(g);
  int dim = domain_.owner()->dim_of(sigma);
  DegreeDims out;
  for (const auto& [q, h] : cohomology_dims(field, subcomplex(gens))) out[q + dim] = h;
  return out;
}

StalkTable InjectiveComplex::costalk_table(const Field& field, const std::vector<int>& sample) const {
  StalkTable t;
  for (int s : sample) {
    DegreeDims d = costalk(field, s);
    if (!d.empty()) t[s] = std::move(d);
  }
  return t;
}

DegreeDims InjectiveComplex::hypercohomology(const Field& field) const { return hypercohomology(field, domain_); }

DegreeDims InjectiveComplex::hypercohomology(const Field& field, const SimplexSet& u) const {
  if (!u.subset_of(domain_) || !u.is_up_closed_in(domain_)) {
    throw std::invalid_argument("hypercohomology: set is not up-closed in the domain");
  }
  return cohomology_dims(field, subcomplex(generators_on(u.members())));
}

DegreeDims InjectiveComplex::upper_shriek_stalk(const Field& field, const SimplexSet& z, int sigma) const {
  std::vector<int> cells;
  for (int c : up_set_in(domain_, sigma)) {
    if (z.contains(c)) cells.push_back(c);
  }
  return cohomology_dims(field, subcomplex(generators_on(cells)));
}

SheafComplex InjectiveComplex::to_sheaf() const {
  const auto& k = *domain_.owner();
  SheafComplex s;
  s.domain = domain_;
  s.values.resize(at(k.size()));
  std::vector<std::vector<int>> gens(at(k.size()));
  for (int x : domain_.members()) {
    gens[at(x)] = star_generators(x);
    GradedComplex g = subcomplex(gens[at(x)]);
    s.values[at(x)].degree = std::move(g.degree);
    s.values[at(x)].d = std::move(g.d);
  }
  std::vector<int> pos(at(size()), -1);
  for (int x : domain_.members()) {
    for (const auto& c : k.cofaces(x)) {
      if (!domain_.contains(c.other)) continue;
      const auto& tg = gens[at(c.other)];
      for (std::size_t i = 0; i < tg.size(); ++i) pos[at(tg[i])] = static_cast<int>(i);
      const auto& sg = gens[at(x)];
      SparseMatrix m(static_cast<int>(tg.size()), static_cast<int>(sg.size()));
      for (std::size_t j = 0; j < sg.size(); ++j) {
        int p = pos[at(sg[j])];
        if (p >= 0) m.set_col(static_cast<int>(j), {{p, Rational(1)}});
      }
      for (int g : tg) pos[at(g)] = -1;
      if (!m.is_zero()) s.restriction[{x, c.other}] = std::move(m);
    }
  }
  return s;
}

bool InjectiveComplex::is_valid(const Field& field) const {
  const auto& k = *domain_.owner();
  for (int h = 0; h < size(); ++h) {
    for (const auto& [g, v] : d_.col(h)) {
      if (degree_[at(g)] != degree_[at(h)] + 1) return false;
      if (!k.is_face(cell_[at(g)], cell_[at(h)])) return false;
    }
  }
  return multiply(field, d_, d_).is_zero();
}

InjectiveComplex shift(const Field& field, const InjectiveComplex& j, int k) {
  std::vector<int> deg = j.degrees();
  for (int& q : deg) q -= k;
  SparseMatrix d = (k % 2 == 0) ? j.differential() : scale(field, j.differential(), field.neg(Rational(1)));
  return InjectiveComplex(j.domain(), j.cells(), std::move(deg), std::move(d));
}

InjectiveComplex direct_sum(const InjectiveComplex& a, const InjectiveComplex& b) {
  if (a.domain() != b.domain()) throw std::invalid_argument("direct_sum: domain mismatch");
  std::vector<int> cell = a.cells();
  cell.insert(cell.end(), b.cells().begin(), b.cells().end());
  std::vector<int> deg = a.degrees();
  deg.insert(deg.end(), b.degrees().begin(), b.degrees().end());
  int na = a.size();
  int n = na + b.size();
  SparseMatrix d(n, n);
  for (int c = 0; c < na; ++c) d.set_col(c, a.differential().col(c));
  for (int c = 0; c < b.size(); ++c) {
    SparseVec col;
    for (const auto& [r, v] : b.differential().col(c)) col.emplace_back(r + na, v);
    d.set_col(na + c, std::move(col));
  }
  return InjectiveComplex(a.domain(), std::move(cell), std::move(deg), std::move(d));
}

namespace {

InjectiveComplex keep_cells(const InjectiveComplex& j, const SimplexSet& cells) {
  std::vector<int> gens = j.generators_on(cells.members());
  std::vector<int> cell;
  std::vector<int> deg;
  for (int g : gens) {
    cell.push_back(j.cells()[at(g)]);
    deg.push_back(j.degrees()[at(g)]);
  }
  return InjectiveComplex(cells, std::move(cell), std::move(deg), j.differential().select(gens, gens));
}

}  // namespace

InjectiveComplex restrict_open(const InjectiveComplex& j, const SimplexSet& u) {
  if (!u.subset_of(j.domain()) || !u.is_up_closed_in(j.domain())) {
    throw std::invalid_argument("restrict_open: set is not up-closed in the domain");
  }
  return keep_cells(j, u);
}

InjectiveComplex pushforward_open(const InjectiveComplex& j, const SimplexSet& v) {
  if (!j.domain().subset_of(v) || !j.domain().is_up_closed_in(v)) {
    throw std::invalid_argument("pushforward_open: domain is not up-closed in the target");
  }
  return InjectiveComplex(v, j.cells(), j.degrees(), j.differential());
}

InjectiveComplex extend_by_zero_closed(const InjectiveComplex& j, const SimplexSet& x) {
  if (!j.domain().subset_of(x) || !j.domain().is_down_closed_in(x)) {
    throw std::invalid_argument("extend_by_zero_closed: domain is not down-closed in the target");
  }
  return InjectiveComplex(x, j.cells(), j.degrees(), j.differential());
}

InjectiveComplex restrict_upper_shriek(const InjectiveComplex& j, const SimplexSet& z) {
  if (!z.subset_of(j.domain()) || !z.is_down_closed_in(j.domain())) {
    throw std::invalid_argument("restrict_upper_shriek: set is not down-closed in the domain");
  }
  return keep_cells(j, z);
}

InjectiveComplex minimize(const Field& field, const InjectiveComplex& j) {
  GradedComplex g = j.subcomplex([&] {
    std::vector<int> all(at(j.size()));
    std::iota(all.begin(), all.end(), 0);
    return all;
  }());
  ReduceOptions opt;
  opt.same_label_only = true;
  Reduction r = reduce_complex(field, g, opt);
  return InjectiveComplex(j.domain(), r.reduced.label, r.reduced.degree, r.reduced.d);
}

InjectiveComplex resolve(const Field& field, const SheafComplex& s, const ResolveOptions& options, ResolveStats* stats) {
  const auto& k = *s.domain.owner();
  std::vector<int> order = s.domain.members();
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return k.dim_of(a) > k.dim_of(b); });

  std::vector<int> gen_cell;
  std::vector<int> gen_degree;
  std::vector<SparseVec> dcols;                      // differential columns, global ids
  std::vector<std::vector<SparseVec>> phi(at(k.size()));  // phi[c][j]: column j of F(c) -> J(c)
  std::vector<int> pos;                              // generator -> local R index
  std::vector<int> assigned(at(k.size()), -1);      // cell -> cover used for psi
  std::vector<std::vector<int>> cell_gens(at(k.size()));
  int current_dim = order.empty() ? -1 : k.dim_of(order.front());

  for (int sigma : order) {
    int dsig = k.dim_of(sigma);
    if (dsig < current_dim) {
      // Cells two dimensions up are no longer needed as covers.
      for (int c : s.domain.members()) {
        if (k.dim_of(c) > dsig + 1) phi[at(c)].clear();
      }
      current_dim = dsig;
    }
    const CellValue& fv = s.value(sigma);
    int nf = fv.size();

    std::vector<int> covers;
    for (const auto& c : k.cofaces(sigma)) {
      if (s.domain.contains(c.other)) covers.push_back(c.other);
    }
    std::vector<int> upper = up_set_in(s.domain, sigma);
    upper.erase(upper.begin());
    std::vector<int> rgens;
    for (int rho : upper) {
      for (int c : covers) {
        if (k.is_face(c, rho)) {
          assigned[at(rho)] = c;
          break;
        }
      }
      rgens.insert(rgens.end(), cell_gens[at(rho)].begin(), cell_gens[at(rho)].end());
    }
    std::sort(rgens.begin(), rgens.end());
    pos.resize(gen_cell.size(), -1);
    for (std::size_t i = 0; i < rgens.size(); ++i) pos[at(rgens[i])] = static_cast<int>(i);
    int nr = static_cast<int>(rgens.size());

    // psi: F(sigma) -> R, columns over global generator ids.
    std::vector<std::map<int, Rational>> psi_acc(at(nf));
    for (int tau : covers) {
      SparseMatrix fr = s.map(sigma, tau);
      for (int j = 0; j < nf; ++j) {
        for (const auto& [i, v] : fr.col(j)) {
          for (const auto& [g, w] : phi[at(tau)][at(i)]) {
            if (assigned[at(gen_cell[at(g)])] != tau) continue;
            auto [it, inserted] = psi_acc[at(j)].try_emplace(g, Rational(0));
            it->second = field.add(it->second, field.mul(v, w));
          }
        }
      }
    }
    std::vector<SparseVec> psi(at(nf));
    for (int j = 0; j < nf; ++j) {
      for (auto& [g, v] : psi_acc[at(j)]) {
        if (!v.is_zero()) psi[at(j)].emplace_back(g, std::move(v));
      }
    }

    // Local fiber complex F(sigma) + R[-1].
    int nloc = nf + nr;
    GradedComplex loc;
    loc.degree.resize(at(nloc));
    for (int j = 0; j < nf; ++j) loc.degree[at(j)] = fv.degree[at(j)];
    for (int r = 0; r < nr; ++r) loc.degree[at(nf + r)] = gen_degree[at(rgens[at(r)])] + 1;
    loc.d = SparseMatrix(nloc, nloc);
    for (int j = 0; j < nf; ++j) {
      SparseVec col = fv.d.col(j);
      for (const auto& [g, v] : psi[at(j)]) col.emplace_back(nf + pos[at(g)], v);
      sort_vec(col);
      loc.d.set_col(j, std::move(col));
    }
    for (int r = 0; r < nr; ++r) {
      SparseVec col;
      for (const auto& [g, v] : dcols[at(rgens[at(r)])]) {
        if (pos[at(g)] >= 0) col.emplace_back(nf + pos[at(g)], field.neg(v));
      }
      sort_vec(col);
      loc.d.set_col(nf + r, std::move(col));
    }
    if (stats) stats->max_local_size = std::max(stats->max_local_size, nloc);

    Reduction red;
    if (options.cleanup) {
      ReduceOptions opt;
      opt.track_projection = true;
      red = reduce_complex(field, loc, opt);
    } else {
      red.survivors.resize(at(nloc));
      std::iota(red.survivors.begin(), red.survivors.end(), 0);
      red.reduced = loc;
      red.projection = SparseMatrix::identity(nloc);
    }
    int base = static_cast<int>(gen_cell.size());
    int nnew = red.reduced.size();
    for (int i = 0; i < nnew; ++i) {
      gen_cell.push_back(sigma);
      gen_degree.push_back(red.reduced.degree[at(i)]);
      SparseVec col;
      for (const auto& [r, v] : red.reduced.d.col(i)) col.emplace_back(base + r, v);
      dcols.push_back(std::move(col));
      cell_gens[at(sigma)].push_back(base + i);
    }
    // Components R -> V_sigma are -pi restricted to the R slot.
    for (int r = 0; r < nr; ++r) {
      auto& col = dcols[at(rgens[at(r)])];
      for (const auto& [i, v] : red.projection.col(nf + r)) col.emplace_back(base + i, field.neg(v));
    }
    phi[at(sigma)].resize(at(nf));
    for (int j = 0; j < nf; ++j) {
      SparseVec col = psi[at(j)];
      for (const auto& [i, v] : red.projection.col(j)) col.emplace_back(base + i, v);
      sort_vec(col);
      phi[at(sigma)][at(j)] = std::move(col);
    }
    for (int g : rgens) pos[at(g)] = -1;
    for (int rho : upper) assigned[at(rho)] = -1;
  }

  int n = static_cast<int>(gen_cell.size());
  SparseMatrix d(n, n);
  for (int h = 0; h < n; ++h) {
    sort_vec(dcols[at(h)]);
    d.set_col(h, std::move(dcols[at(h)]));
  }
  if (stats) stats->generators = n;
  return InjectiveComplex(s.domain, std::move(gen_cell), std::move(gen_degree), std::move(d));
}

InjectiveComplex truncate_le(const Field& field, const InjectiveComplex& j, int a, const ResolveOptions& options) {
  return resolve(field, truncate_le(field, j.to_sheaf(), a), options);
}

InjectiveComplex restrict_closed(const Field& field, const InjectiveComplex& j, const SimplexSet& z,
                                 const ResolveOptions& options) {
  return resolve(field, restrict_closed(j.to_sheaf(), z), options);
}

StalkAnalysis::StalkAnalysis(const Field& field, const InjectiveComplex& j) : field_(field) {
  int n = j.domain().owner()->size();
  gens_.resize(at(n));
  red_.resize(at(n));
  dims_.resize(at(n));
  for (int s : j.domain().members()) {
    gens_[at(s)] = j.star_generators(s);
    red_[at(s)] = full_reduction(field, j.subcomplex(gens_[at(s)]));
    for (int q : red_[at(s)].reduced.degree) ++dims_[at(s)][q];
  }
}

SparseMatrix StalkAnalysis::induced(int sigma, int tau, int a) const {
  const auto& sg = gens_[at(sigma)];
  const auto& tg = gens_[at(tau)];
  SparseMatrix r(static_cast<int>(tg.size()), static_cast<int>(sg.size()));
  std::size_t p = 0;
  for (std::size_t jx = 0; jx < sg.size(); ++jx) {
    while (p < tg.size() && tg[p] < sg[jx]) ++p;
    if (p < tg.size() && tg[p] == sg[jx]) r.set_col(static_cast<int>(jx), {{static_cast<int>(p), Rational(1)}});
  }
  return induced_on_cohomology(field_, red_[at(sigma)], red_[at(tau)], r, a);
}

bool StalkAnalysis::restriction_is_iso(int sigma, int tau, int a) const {
  auto get = [](const DegreeDims& d, int q) {
    auto it = d.find(q);
    return it == d.end() ? 0 : it->second;
  };
  int ds = get(dims(sigma), a);
  int dt = get(dims(tau), a);
  if (ds != dt) return false;
  if (ds == 0) return true;
  return rank(field_, induced(sigma, tau, a)) == ds;
}

bool StalkAnalysis::restriction_is_iso(int sigma, int tau) const {
  std::set<int> degrees;
  for (const auto& [q, n] : dims(sigma)) degrees.insert(q);
  for (const auto& [q, n] : dims(tau)) degrees.insert(q);
  return std::all_of(degrees.begin(), degrees.end(), [&](int a) { return restriction_is_iso(sigma, tau, a); });
}

}  // namespace icsheaf
