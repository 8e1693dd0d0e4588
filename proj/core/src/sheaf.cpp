#include "icsheaf/sheaf.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace icsheaf {

namespace {

std::size_t at(int i) { return static_cast<std::size_t>(i); }

GradedComplex as_graded(const CellValue& v) {
  GradedComplex g;
  g.degree = v.degree;
  g.d = v.d;
  return g;
}

// Column accumulator for building sparse matrices entry by entry.
class MatrixBuilder {
 public:
  MatrixBuilder(int rows, int cols) : rows_(rows), cols_(static_cast<std::size_t>(cols)) {}
  void add(const Field& field, int r, int c, const Rational& v) {
    if (v.is_zero()) return;
    auto [it, inserted] = cols_[at(c)].try_emplace(r, v);
    if (!inserted) it->second = field.add(it->second, v);
  }
  SparseMatrix build() const {
    SparseMatrix m(rows_, static_cast<int>(cols_.size()));
    for (std::size_t j = 0; j < cols_.size(); ++j) {
      SparseVec col;
      for (const auto& [i, v] : cols_[j]) {
        if (!v.is_zero()) col.emplace_back(i, v);
      }
      m.set_col(static_cast<int>(j), std::move(col));
    }
    return m;
  }

 private:
  int rows_;
  std::vector<std::map<int, Rational>> cols_;
};

std::map<int, std::vector<int>> by_degree(const CellValue& v) {
  std::map<int, std::vector<int>> out;
  for (int i = 0; i < v.size(); ++i) out[v.degree[at(i)]].push_back(i);
  return out;
}

}  // namespace

SparseMatrix CellularSheaf::map(int face, int coface) const {
  auto it = restriction.find({face, coface});
  if (it != restriction.end()) return it->second;
  return SparseMatrix(dim_at(coface), dim_at(face));
}

void verify_path_independence(const Field& field, const CellularSheaf& f) {
  const auto& k = *f.domain.owner();
  for (int s : f.domain.members()) {
    for (const auto& c1 : k.cofaces(s)) {
      if (!f.domain.contains(c1.other)) continue;
      for (const auto& c2 : k.cofaces(c1.other)) {
        int t = c2.other;
        if (!f.domain.contains(t)) continue;
        SparseMatrix first = multiply(field, f.map(c1.other, t), f.map(s, c1.other));
        for (const auto& alt : k.cofaces(s)) {
          if (alt.other == c1.other || !f.domain.contains(alt.other) || !k.is_face(alt.other, t)) continue;
          SparseMatrix second = multiply(field, f.map(alt.other, t), f.map(s, alt.other));
          if (!(first == second)) {
            throw std::invalid_argument("path-independence failure between " + k.tuple_string(s) + " and " +
                                        k.tuple_string(t));
          }
        }
      }
    }
  }
}

SparseMatrix SheafComplex::map(int face, int coface) const {
  auto it = restriction.find({face, coface});
  if (it != restriction.end()) return it->second;
  return SparseMatrix(value(coface).size(), value(face).size());
}

std::pair<int, int> SheafComplex::degree_range() const {
  int lo = 0;
  int hi = -1;
  bool any = false;
  for (int s : domain.members()) {
    for (int q : value(s).degree) {
      if (!any) {
        lo = hi = q;
        any = true;
      }
      lo = std::min(lo, q);
      hi = std::max(hi, q);
    }
  }
  return {lo, hi};
}

CellularSheaf SheafComplex::component(int q) const {
  CellularSheaf f;
  f.domain = domain;
  f.stalk_dim.assign(values.size(), 0);
  std::vector<std::vector<int>> idx(values.size());
  for (int s : domain.members()) {
    for (int i = 0; i < value(s).size(); ++i) {
      if (value(s).degree[at(i)] == q) idx[at(s)].push_back(i);
    }
    f.stalk_dim[at(s)] = static_cast<int>(idx[at(s)].size());
  }
  for (const auto& [pair, m] : restriction) {
    f.restriction[pair] = m.select(idx[at(pair.second)], idx[at(pair.first)]);
  }
  return f;
}

bool is_chain_map(const Field& field, const SheafComplex& s, const SheafComplex& t, const SheafMorphism& f) {
  if (s.domain != t.domain) return false;
  const auto& k = *s.domain.owner();
  for (int x : s.domain.members()) {
    const SparseMatrix& m = f.maps[at(x)];
    if (!(multiply(field, m, s.value(x).d) == multiply(field, t.value(x).d, m))) return false;
    for (const auto& c : k.cofaces(x)) {
      if (!s.domain.contains(c.other)) continue;
      const SparseMatrix& mc = f.maps[at(c.other)];
      if (!(multiply(field, mc, s.map(x, c.other)) == multiply(field, t.map(x, c.other), m))) return false;
    }
  }
  return true;
}

const SparseMatrix& RestrictionCache::get(int face, int coface) {
  auto key = std::make_pair(face, coface);
  auto it = memo_.find(key);
  if (it != memo_.end()) return it->second;
  const auto& k = *s_.domain.owner();
  SparseMatrix m;
  int df = k.dim_of(face);
  int dc = k.dim_of(coface);
  if (face == coface) {
    m = SparseMatrix::identity(s_.value(face).size());
  } else if (dc == df + 1) {
    m = s_.map(face, coface);
  } else {
    const auto& fv = k.vertices(face);
    const auto& cv = k.vertices(coface);
    std::vector<int> extra;
    std::set_difference(cv.begin(), cv.end(), fv.begin(), fv.end(), std::back_inserter(extra));
    std::vector<int> mid_v = fv;
    mid_v.push_back(extra.front());
    std::sort(mid_v.begin(), mid_v.end());
    int mid = *k.find(mid_v);
    SparseMatrix first = s_.map(face, mid);
    const SparseMatrix& rest = get(mid, coface);
    m = multiply(field_, rest, first);
  }
  return memo_.emplace(key, std::move(m)).first->second;
}

void verify_complex(const Field& field, const SheafComplex& s) {
  const auto& k = *s.domain.owner();
  for (int x : s.domain.members()) {
    const CellValue& v = s.value(x);
    if (v.d.rows() != v.size() || v.d.cols() != v.size()) throw std::logic_error("value differential has wrong shape");
    for (int j = 0; j < v.size(); ++j) {
      for (const auto& [i, val] : v.d.col(j)) {
        if (v.degree[at(i)] != v.degree[at(j)] + 1) throw std::logic_error("differential does not raise degree by one");
      }
    }
    if (!multiply(field, v.d, v.d).is_zero()) throw std::logic_error("d^2 != 0 at " + k.tuple_string(x));
  }
  for (const auto& [pair, m] : s.restriction) {
    auto [a, b] = pair;
    const CellValue& va = s.value(a);
    const CellValue& vb = s.value(b);
    if (m.rows() != vb.size() || m.cols() != va.size()) throw std::logic_error("restriction has wrong shape");
    for (int j = 0; j < m.cols(); ++j) {
      for (const auto& [i, val] : m.col(j)) {
        if (vb.degree[at(i)] != va.degree[at(j)]) throw std::logic_error("restriction does not preserve degree");
      }
    }
    if (!(multiply(field, m, va.d) == multiply(field, vb.d, m))) {
      throw std::logic_error("restriction " + k.tuple_string(a) + " -> " + k.tuple_string(b) + " is not a chain map");
    }
  }
  for (int x : s.domain.members()) {
    for (const auto& c1 : k.cofaces(x)) {
      if (!s.domain.contains(c1.other)) continue;
      for (const auto& c2 : k.cofaces(c1.other)) {
        if (!s.domain.contains(c2.other)) continue;
        SparseMatrix p1 = multiply(field, s.map(c1.other, c2.other), s.map(x, c1.other));
        for (const auto& alt : k.cofaces(x)) {
          if (alt.other <= c1.other || !s.domain.contains(alt.other) || !k.is_face(alt.other, c2.other)) continue;
          SparseMatrix p2 = multiply(field, s.map(alt.other, c2.other), s.map(x, alt.other));
          if (!(p1 == p2)) {
            throw std::logic_error("restrictions do not commute between " + k.tuple_string(x) + " and " +
                                   k.tuple_string(c2.other));
          }
        }
      }
    }
  }
}

SheafComplex from_sheaf(const CellularSheaf& f, int degree) {
  SheafComplex s;
  s.domain = f.domain;
  s.values.resize(f.stalk_dim.size());
  for (int x : f.domain.members()) {
    int n = f.dim_at(x);
    s.values[at(x)].degree.assign(at(n), degree);
    s.values[at(x)].d = SparseMatrix(n, n);
  }
  s.restriction = f.restriction;
  return s;
}

SheafComplex zero_complex(const SimplexSet& domain) {
  SheafComplex s;
  s.domain = domain;
  s.values.resize(at(domain.owner()->size()));
  return s;
}

SheafComplex shift(const Field& field, const SheafComplex& s, int k) {
  SheafComplex out = s;
  Rational sign = (k % 2 == 0) ? Rational(1) : field.neg(Rational(1));
  for (int x : s.domain.members()) {
    CellValue& v = out.values[at(x)];
    for (int& q : v.degree) q -= k;
    if (k % 2 != 0) v.d = scale(field, v.d, sign);
  }
  return out;
}

namespace {

SparseMatrix block_diag(const SparseMatrix& a, const SparseMatrix& b) {
  SparseMatrix m(a.rows() + b.rows(), a.cols() + b.cols());
  for (int j = 0; j < a.cols(); ++j) m.set_col(j, a.col(j));
  for (int j = 0; j < b.cols(); ++j) {
    SparseVec col;
    for (const auto& [i, v] : b.col(j)) col.emplace_back(i + a.rows(), v);
    m.set_col(a.cols() + j, std::move(col));
  }
  return m;
}

}  // namespace

SheafComplex direct_sum(const SheafComplex& s, const SheafComplex& t) {
  if (s.domain != t.domain) throw std::invalid_argument("direct_sum: domain mismatch");
  SheafComplex out;
  out.domain = s.domain;
  out.values.resize(s.values.size());
  for (int x : s.domain.members()) {
    CellValue& v = out.values[at(x)];
    v.degree = s.value(x).degree;
    v.degree.insert(v.degree.end(), t.value(x).degree.begin(), t.value(x).degree.end());
    v.d = block_diag(s.value(x).d, t.value(x).d);
  }
  const auto& k = *s.domain.owner();
  for (int x : s.domain.members()) {
    for (const auto& c : k.cofaces(x)) {
      if (!s.domain.contains(c.other)) continue;
      SparseMatrix m = block_diag(s.map(x, c.other), t.map(x, c.other));
      if (!m.is_zero()) out.restriction[{x, c.other}] = std::move(m);
    }
  }
  return out;
}

namespace {

SheafComplex restrict_to(const SheafComplex& s, const SimplexSet& a) {
  if (!a.subset_of(s.domain)) throw std::invalid_argument("restriction target is not inside the domain");
  SheafComplex out;
  out.domain = a;
  out.values.resize(s.values.size());
  for (int x : a.members()) out.values[at(x)] = s.value(x);
  for (const auto& [pair, m] : s.restriction) {
    if (a.contains(pair.first) && a.contains(pair.second)) out.restriction[pair] = m;
  }
  return out;
}

}  // namespace

SheafComplex restrict_open(const SheafComplex& s, const SimplexSet& u) {
  if (!u.subset_of(s.domain) || !u.is_up_closed_in(s.domain)) {
    throw std::invalid_argument("restrict_open: set is not up-closed in the domain");
  }
  return restrict_to(s, u);
}

SheafComplex restrict_closed(const SheafComplex& s, const SimplexSet& z) {
  if (!z.subset_of(s.domain) || !z.is_down_closed_in(s.domain)) {
    throw std::invalid_argument("restrict_closed: set is not down-closed in the domain");
  }
  return restrict_to(s, z);
}

SheafComplex extend_by_zero_closed(const SheafComplex& s, const SimplexSet& x) {
  if (!s.domain.subset_of(x) || !s.domain.is_down_closed_in(x)) {
    throw std::invalid_argument("extend_by_zero_closed: domain is not down-closed in the target");
  }
  SheafComplex out = s;
  out.domain = x;
  return out;
}

NerveComplex nerve_complex(const Field& field, const SheafComplex& s, const SimplexSet& p) {
  NerveComplex nc;
  std::map<std::vector<int>, int> index;
  for (int len = 0;; ++len) {
    auto chains = order_chains(p, len);
    if (chains.empty()) break;
    for (auto& c : chains) {
      index.emplace(c, static_cast<int>(nc.chains.size()));
      nc.chains.push_back(std::move(c));
    }
  }
  int total = 0;
  for (const auto& c : nc.chains) {
    nc.offset.push_back(total);
    total += s.value(c.back()).size();
  }
  nc.total.degree.resize(at(total));
  nc.total.label.resize(at(total));
  for (std::size_t ci = 0; ci < nc.chains.size(); ++ci) {
    const auto& c = nc.chains[ci];
    int p_len = static_cast<int>(c.size()) - 1;
    const CellValue& v = s.value(c.back());
    for (int b = 0; b < v.size(); ++b) {
      nc.total.degree[at(nc.offset[ci] + b)] = p_len + v.degree[at(b)];
      nc.total.label[at(nc.offset[ci] + b)] = static_cast<int>(ci);
    }
  }
  RestrictionCache cache(field, s);
  MatrixBuilder mb(total, total);
  Rational one(1);
  Rational minus_one = field.neg(one);
  for (std::size_t ci = 0; ci < nc.chains.size(); ++ci) {
    const auto& c = nc.chains[ci];
    int p_len = static_cast<int>(c.size()) - 1;
    const CellValue& v = s.value(c.back());
    int off = nc.offset[ci];
    // internal differential with sign (-1)^p
    const Rational& isign = (p_len % 2 == 0) ? one : minus_one;
    for (int j = 0; j < v.size(); ++j) {
      for (const auto& [i, val] : v.d.col(j)) mb.add(field, off + i, off + j, field.mul(isign, val));
    }
    // coboundary contributions into this chain from its faces
    if (p_len == 0) continue;
    for (int i = 0; i <= p_len; ++i) {
      std::vector<int> sub = c;
      sub.erase(sub.begin() + i);
      int src = index.at(sub);
      int soff = nc.offset[at(src)];
      const Rational& sign = (i % 2 == 0) ? one : minus_one;
      if (i < p_len) {
        for (int b = 0; b < v.size(); ++b) mb.add(field, off + b, soff + b, sign);
      } else {
        const SparseMatrix& r = cache.get(sub.back(), c.back());
        for (int j = 0; j < r.cols(); ++j) {
          for (const auto& [row, val] : r.col(j)) mb.add(field, off + row, soff + j, field.mul(sign, val));
        }
      }
    }
  }
  nc.total.d = mb.build();
  return nc;
}

SheafComplex pushforward_open(const Field& field, const SheafComplex& s, const SimplexSet& v) {
  if (!s.domain.subset_of(v) || !s.domain.is_up_closed_in(v)) {
    throw std::invalid_argument("pushforward_open: domain is not up-closed in the target");
  }
  const auto& k = *v.owner();
  SheafComplex out;
  out.domain = v;
  out.values.resize(at(k.size()));
  std::vector<NerveComplex> nerves(at(k.size()));
  for (int x : v.members()) {
    SimplexSet up(v.owner(), up_set_in(s.domain, x));
    nerves[at(x)] = nerve_complex(field, s, up);
    out.values[at(x)].degree = nerves[at(x)].total.degree;
    out.values[at(x)].d = nerves[at(x)].total.d;
  }
  for (int x : v.members()) {
    std::map<std::vector<int>, int> index;
    for (std::size_t i = 0; i < nerves[at(x)].chains.size(); ++i) index.emplace(nerves[at(x)].chains[i], static_cast<int>(i));
    for (const auto& c : k.cofaces(x)) {
      if (!v.contains(c.other)) continue;
      const NerveComplex& tn = nerves[at(c.other)];
      SparseMatrix m(tn.total.size(), nerves[at(x)].total.size());
      for (std::size_t ci = 0; ci < tn.chains.size(); ++ci) {
        int src = index.at(tn.chains[ci]);
        int soff = nerves[at(x)].offset[at(src)];
        int n = s.value(tn.chains[ci].back()).size();
        for (int b = 0; b < n; ++b) m.set_col(soff + b, {{tn.offset[ci] + b, Rational(1)}});
      }
      if (!m.is_zero()) out.restriction[{x, c.other}] = std::move(m);
    }
  }
  return out;
}

namespace {

// Value-wise truncation data for one simplex.
struct TruncatedValue {
  CellValue value;
  std::vector<int> keep;    // old indices kept (degree < a), in new order
  std::vector<int> old_a;   // old indices of degree a
  KernelBasis ker;          // kernel of d^a in local degree-a coordinates
  bool truncated = false;
};

TruncatedValue truncate_value(const Field& field, const CellValue& v, int a) {
  TruncatedValue t;
  t.truncated = true;
  auto blocks = by_degree(v);
  std::vector<int> above;
  for (const auto& [q, ids] : blocks) {
    if (q < a) t.keep.insert(t.keep.end(), ids.begin(), ids.end());
    if (q == a) t.old_a = ids;
    if (q == a + 1) above = ids;
  }
  std::sort(t.keep.begin(), t.keep.end());
  t.ker = kernel(field, v.d.select(above, t.old_a));
  int nk = static_cast<int>(t.keep.size());
  int nker = static_cast<int>(t.ker.vectors.size());
  std::vector<int> new_of_old(at(v.size()), -1);
  std::vector<int> local_a(at(v.size()), -1);
  for (int i = 0; i < nk; ++i) new_of_old[at(t.keep[at(i)])] = i;
  for (std::size_t i = 0; i < t.old_a.size(); ++i) local_a[at(t.old_a[i])] = static_cast<int>(i);
  t.value.degree.reserve(at(nk + nker));
  for (int i : t.keep) t.value.degree.push_back(v.degree[at(i)]);
  for (int i = 0; i < nker; ++i) t.value.degree.push_back(a);
  t.value.d = SparseMatrix(nk + nker, nk + nker);
  for (int j = 0; j < nk; ++j) {
    int old = t.keep[at(j)];
    SparseVec low;
    SparseVec in_a;
    for (const auto& [i, val] : v.d.col(old)) {
      if (new_of_old[at(i)] >= 0) {
        low.emplace_back(new_of_old[at(i)], val);
      } else if (local_a[at(i)] >= 0) {
        in_a.emplace_back(local_a[at(i)], val);
      }
    }
    std::sort(low.begin(), low.end(), [](const Entry& x, const Entry& y) { return x.first < y.first; });
    std::sort(in_a.begin(), in_a.end(), [](const Entry& x, const Entry& y) { return x.first < y.first; });
    for (const auto& [i, val] : t.ker.coordinates(field, in_a)) low.emplace_back(nk + i, val);
    t.value.d.set_col(j, std::move(low));
  }
  return t;
}

// Restriction between truncated/untruncated values built from the
// original restriction r: old_src -> old_dst.
SparseMatrix truncate_map(const Field& field, const SparseMatrix& r, const CellValue& src_old, const TruncatedValue& src,
                          const CellValue& dst_old, const TruncatedValue* dst, int a) {
  int src_n = src.value.size();
  int dst_n = dst ? dst->value.size() : dst_old.size();
  SparseMatrix m(dst_n, src_n);
  std::vector<int> dst_new(at(dst_old.size()), -1);
  std::vector<int> dst_local_a(at(dst_old.size()), -1);
  if (dst) {
    for (std::size_t i = 0; i < dst->keep.size(); ++i) dst_new[at(dst->keep[i])] = static_cast<int>(i);
    for (std::size_t i = 0; i < dst->old_a.size(); ++i) dst_local_a[at(dst->old_a[i])] = static_cast<int>(i);
  } else {
    for (int i = 0; i < dst_old.size(); ++i) dst_new[at(i)] = i;
  }
  (void)src_old;
  int nk = static_cast<int>(src.keep.size());
  for (int j = 0; j < nk; ++j) {
    SparseVec col;
    for (const auto& [i, val] : r.col(src.keep[at(j)])) {
      if (dst_new[at(i)] >= 0) col.emplace_back(dst_new[at(i)], val);
    }
    std::sort(col.begin(), col.end(), [](const Entry& x, const Entry& y) { return x.first < y.first; });
    m.set_col(j, std::move(col));
  }
  for (std::size_t kv = 0; kv < src.ker.vectors.size(); ++kv) {
    // kernel vector in old source coordinates
    SparseVec old_vec;
    for (const auto& [li, val] : src.ker.vectors[kv]) old_vec.emplace_back(src.old_a[at(li)], val);
    SparseVec image = apply(field, r, old_vec);
    SparseVec col;
    if (dst) {
      SparseVec local;
      for (const auto& [i, val] : image) {
        if (dst_local_a[at(i)] < 0) throw std::logic_error("truncation: restriction leaves degree a");
        local.emplace_back(dst_local_a[at(i)], val);
      }
      std::sort(local.begin(), local.end(), [](const Entry& x, const Entry& y) { return x.first < y.first; });
      int base = static_cast<int>(dst->keep.size());
      for (const auto& [i, val] : dst->ker.coordinates(field, local)) col.emplace_back(base + i, val);
    } else {
      col = image;
    }
    m.set_col(nk + static_cast<int>(kv), std::move(col));
  }
  (void)a;
  return m;
}

SheafComplex truncate_impl(const Field& field, const SheafComplex& s, int a, const SimplexSet* z) {
  const auto& k = *s.domain.owner();
  SheafComplex out;
  out.domain = s.domain;
  out.values.resize(s.values.size());
  std::vector<TruncatedValue> tv(s.values.size());
  for (int x : s.domain.members()) {
    if (z && !z->contains(x)) {
      out.values[at(x)] = s.value(x);
      continue;
    }
    tv[at(x)] = truncate_value(field, s.value(x), a);
    out.values[at(x)] = tv[at(x)].value;
  }
  for (const auto& [pair, r] : s.restriction) {
    auto [x, y] = pair;
    bool tx = tv[at(x)].truncated;
    bool ty = tv[at(y)].truncated;
    SparseMatrix m;
    if (!tx && !ty) {
      m = r;
    } else if (tx) {
      m = truncate_map(field, r, s.value(x), tv[at(x)], s.value(y), ty ? &tv[at(y)] : nullptr, a);
    } else {
      throw std::invalid_argument("truncate_le_on: truncation set is not down-closed at " + k.tuple_string(y));
    }
    if (!m.is_zero()) out.restriction[pair] = std::move(m);
  }
  return out;
}

}  // namespace

SheafComplex truncate_le(const Field& field, const SheafComplex& s, int a) { return truncate_impl(field, s, a, nullptr); }

SheafComplex truncate_le_on(const Field& field, const SheafComplex& s, int a, const SimplexSet& z) {
  if (!z.is_down_closed_in(s.domain)) throw std::invalid_argument("truncate_le_on: set is not down-closed in the domain");
  return truncate_impl(field, s, a, &z);
}

DegreeDims value_cohomology(const Field& field, const CellValue& v) { return cohomology_dims(field, as_graded(v)); }

DegreeDims stalk_cohomology(const Field& field, const SheafComplex& s, int sigma) {
  if (!s.domain.contains(sigma)) return {};
  return value_cohomology(field, s.value(sigma));
}

StalkTable stalk_table(const Field& field, const SheafComplex& s) {
  StalkTable t;
  for (int x : s.domain.members()) {
    DegreeDims d = value_cohomology(field, s.value(x));
    if (!d.empty()) t[x] = std::move(d);
  }
  return t;
}

Reduction full_reduction(const Field& field, const GradedComplex& c) {
  ReduceOptions opt;
  opt.track_projection = true;
  opt.track_inclusion = true;
  return reduce_complex(field, c, opt);
}

SparseMatrix induced_on_cohomology(const Field& field, const Reduction& src, const Reduction& dst,
                                   const SparseMatrix& map, int degree) {
  std::vector<int> cols;
  std::vector<int> rows;
  for (int i = 0; i < src.reduced.size(); ++i) {
    if (src.reduced.degree[at(i)] == degree) cols.push_back(i);
  }
  for (int i = 0; i < dst.reduced.size(); ++i) {
    if (dst.reduced.degree[at(i)] == degree) rows.push_back(i);
  }
  SparseMatrix incl = src.inclusion.select([&] {
    std::vector<int> all(at(src.inclusion.rows()));
    for (std::size_t i = 0; i < all.size(); ++i) all[i] = static_cast<int>(i);
    return all;
  }(), cols);
  SparseMatrix mid = multiply(field, map, incl);
  SparseMatrix proj_rows = dst.projection.select(rows, [&] {
    std::vector<int> all(at(dst.projection.cols()));
    for (std::size_t i = 0; i < all.size(); ++i) all[i] = static_cast<int>(i);
    return all;
  }());
  return multiply(field, proj_rows, mid);
}

CellularSheaf cohomology_sheaf(const Field& field, const SheafComplex& s, int a) {
  const auto& k = *s.domain.owner();
  CellularSheaf f;
  f.domain = s.domain;
  f.stalk_dim.assign(s.values.size(), 0);
  std::vector<Reduction> red(s.values.size());
  for (int x : s.domain.members()) {
    red[at(x)] = full_reduction(field, as_graded(s.value(x)));
    int n = 0;
    for (int q : red[at(x)].reduced.degree) n += (q == a);
    f.stalk_dim[at(x)] = n;
  }
  for (int x : s.domain.members()) {
    for (const auto& c : k.cofaces(x)) {
      if (!s.domain.contains(c.other)) continue;
      SparseMatrix m = induced_on_cohomology(field, red[at(x)], red[at(c.other)], s.map(x, c.other), a);
      if (!m.is_zero()) f.restriction[{x, c.other}] = std::move(m);
    }
  }
  return f;
}

DegreeDims cell_costalk(const Field& field, const SheafComplex& s, int sigma) {
  if (!s.domain.contains(sigma)) return {};
  const auto& owner = s.domain.owner();
  std::vector<int> up = up_set_in(s.domain, sigma);
  std::vector<int> punctured(up.begin() + 1, up.end());
  NerveComplex a = nerve_complex(field, s, SimplexSet(owner, up));
  NerveComplex b = nerve_complex(field, s, SimplexSet(owner, punctured));
  std::map<std::vector<int>, int> index;
  for (std::size_t i = 0; i < a.chains.size(); ++i) index.emplace(a.chains[i], static_cast<int>(i));
  SparseMatrix f(b.total.size(), a.total.size());
  for (std::size_t ci = 0; ci < b.chains.size(); ++ci) {
    int src = index.at(b.chains[ci]);
    int n = s.value(b.chains[ci].back()).size();
    for (int j = 0; j < n; ++j) f.set_col(a.offset[at(src)] + j, {{b.offset[ci] + j, Rational(1)}});
  }
  GradedComplex cone = mapping_cone(field, a.total, b.total, f);
  // fib = cone[-1], costalk = fib[-dim sigma]
  int dim = owner->dim_of(sigma);
  DegreeDims out;
  for (const auto& [q, h] : cohomology_dims(field, cone)) out[q + 1 + dim] = h;
  return out;
}

DegreeDims hypercohomology(const Field& field, const SheafComplex& s, const SimplexSet& u) {
  if (!u.subset_of(s.domain)) throw std::invalid_argument("hypercohomology: set is not inside the domain");
  return cohomology_dims(field, nerve_complex(field, s, u).total);
}

std::string format_dims(const DegreeDims& d) {
  std::ostringstream os;
  os << "{";
  bool first = true;
  for (const auto& [q, n] : d) {
    if (!first) os << ", ";
    first = false;
    os << q << ":" << n;
  }
  os << "}";
  return os.str();
}

}  // namespace icsheaf
