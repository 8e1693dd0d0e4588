#include "icsheaf/linalg.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace icsheaf {

Rational vec_get(const SparseVec& v, int index) {
  auto it = std::lower_bound(v.begin(), v.end(), index,
                             [](const Entry& e, int i) { return e.first < i; });
  if (it != v.end() && it->first == index) return it->second;
  return Rational(0);
}

SparseVec axpy(const Field& field, const SparseVec& y, const Rational& c, const SparseVec& x) {
  if (c.is_zero() || x.empty()) return y;
  SparseVec out;
  out.reserve(y.size() + x.size());
  auto iy = y.begin();
  auto ix = x.begin();
  while (iy != y.end() || ix != x.end()) {
    if (ix == x.end() || (iy != y.end() && iy->first < ix->first)) {
      out.push_back(*iy++);
    } else if (iy == y.end() || ix->first < iy->first) {
      out.emplace_back(ix->first, field.mul(c, ix->second));
      ++ix;
    } else {
      Rational v = field.sub_mul(iy->second, field.neg(c), ix->second);
      if (!v.is_zero()) out.emplace_back(iy->first, std::move(v));
      ++iy;
      ++ix;
    }
  }
  return out;
}

SparseVec scale(const Field& field, const SparseVec& v, const Rational& c) {
  if (c.is_zero()) return {};
  SparseVec out;
  out.reserve(v.size());
  for (const auto& [i, x] : v) out.emplace_back(i, field.mul(c, x));
  return out;
}

SparseMatrix SparseMatrix::identity(int n) {
  SparseMatrix m(n, n);
  for (int i = 0; i < n; ++i) m.data_[static_cast<std::size_t>(i)] = {{i, Rational(1)}};
  return m;
}

SparseMatrix SparseMatrix::from_dense(const Field& field, const std::vector<std::vector<Rational>>& rows) {
  int r = static_cast<int>(rows.size());
  int c = r == 0 ? 0 : static_cast<int>(rows[0].size());
  SparseMatrix m(r, c);
  for (int i = 0; i < r; ++i) {
    if (static_cast<int>(rows[static_cast<std::size_t>(i)].size()) != c) {
      throw std::invalid_argument("ragged matrix");
    }
    for (int j = 0; j < c; ++j) {
      Rational v = field.from_rational(rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]);
      if (!v.is_zero()) m.data_[static_cast<std::size_t>(j)].emplace_back(i, v);
    }
  }
  return m;
}

void SparseMatrix::add_entry(const Field& field, int r, int c, const Rational& v) {
  if (r < 0 || r >= rows_ || c < 0 || c >= cols_) throw std::out_of_range("matrix entry out of range");
  auto& col = data_[static_cast<std::size_t>(c)];
  auto it = std::lower_bound(col.begin(), col.end(), r,
                             [](const Entry& e, int i) { return e.first < i; });
  if (it != col.end() && it->first == r) {
    it->second = field.add(it->second, v);
    if (it->second.is_zero()) col.erase(it);
  } else if (!v.is_zero()) {
    col.insert(it, {r, v});
  }
}

std::size_t SparseMatrix::nnz() const {
  std::size_t n = 0;
  for (const auto& c : data_) n += c.size();
  return n;
}

bool SparseMatrix::is_zero() const {
  return std::all_of(data_.begin(), data_.end(), [](const SparseVec& c) { return c.empty(); });
}

SparseMatrix SparseMatrix::transpose() const {
  SparseMatrix t(cols_, rows_);
  for (int j = 0; j < cols_; ++j) {
    for (const auto& [i, v] : col(j)) t.data_[static_cast<std::size_t>(i)].emplace_back(j, v);
  }
  return t;
}

SparseMatrix SparseMatrix::select(const std::vector<int>& row_ids, const std::vector<int>& col_ids) const {
  std::vector<int> row_map(static_cast<std::size_t>(rows_), -1);
  for (std::size_t k = 0; k < row_ids.size(); ++k) row_map[static_cast<std::size_t>(row_ids[k])] = static_cast<int>(k);
  SparseMatrix m(static_cast<int>(row_ids.size()), static_cast<int>(col_ids.size()));
  for (std::size_t k = 0; k < col_ids.size(); ++k) {
    SparseVec out;
    for (const auto& [i, v] : col(col_ids[k])) {
      int ni = row_map[static_cast<std::size_t>(i)];
      if (ni >= 0) out.emplace_back(ni, v);
    }
    std::sort(out.begin(), out.end(), [](const Entry& a, const Entry& b) { return a.first < b.first; });
    m.data_[k] = std::move(out);
  }
  return m;
}

std::vector<std::vector<Rational>> SparseMatrix::to_dense() const {
  std::vector<std::vector<Rational>> d(static_cast<std::size_t>(rows_),
                                       std::vector<Rational>(static_cast<std::size_t>(cols_)));
  for (int j = 0; j < cols_; ++j) {
    for (const auto& [i, v] : col(j)) d[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = v;
  }
  return d;
}

SparseVec apply(const Field& field, const SparseMatrix& a, const SparseVec& x) {
  std::map<int, Rational> acc;
  for (const auto& [j, xv] : x) {
    for (const auto& [i, v] : a.col(j)) {
      auto [it, inserted] = acc.try_emplace(i, Rational(0));
      it->second = field.add(it->second, field.mul(v, xv));
    }
  }
  SparseVec out;
  for (auto& [i, v] : acc) {
    if (!v.is_zero()) out.emplace_back(i, std::move(v));
  }
  return out;
}

SparseMatrix multiply(const Field& field, const SparseMatrix& a, const SparseMatrix& b) {
  if (a.cols() != b.rows()) throw std::invalid_argument("matrix product dimension mismatch");
  SparseMatrix m(a.rows(), b.cols());
  for (int j = 0; j < b.cols(); ++j) m.set_col(j, apply(field, a, b.col(j)));
  return m;
}

SparseMatrix add(const Field& field, const SparseMatrix& a, const SparseMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw std::invalid_argument("matrix sum dimension mismatch");
  SparseMatrix m(a.rows(), a.cols());
  for (int j = 0; j < a.cols(); ++j) m.set_col(j, axpy(field, a.col(j), Rational(1), b.col(j)));
  return m;
}

SparseMatrix scale(const Field& field, const SparseMatrix& a, const Rational& c) {
  SparseMatrix m(a.rows(), a.cols());
  for (int j = 0; j < a.cols(); ++j) m.set_col(j, scale(field, a.col(j), c));
  return m;
}

namespace {

// Column reduction by lowest nonzero row. Returns reduced columns; when
// `track` is non-null it receives V with reduced = A * V.
std::vector<SparseVec> column_reduce(const Field& field, const SparseMatrix& a, std::vector<SparseVec>* track,
                                     std::vector<int>* pivot_rows) {
  std::vector<SparseVec> reduced(static_cast<std::size_t>(a.cols()));
  std::vector<int> owner(static_cast<std::size_t>(a.rows()), -1);
  if (track) {
    track->assign(static_cast<std::size_t>(a.cols()), {});
  }
  if (pivot_rows) pivot_rows->assign(static_cast<std::size_t>(a.cols()), -1);
  for (int j = 0; j < a.cols(); ++j) {
    SparseVec v = a.col(j);
    SparseVec t;
    if (track) t = {{j, Rational(1)}};
    while (!v.empty()) {
      int low = v.back().first;
      int k = owner[static_cast<std::size_t>(low)];
      if (k < 0) {
        owner[static_cast<std::size_t>(low)] = j;
        if (pivot_rows) (*pivot_rows)[static_cast<std::size_t>(j)] = low;
        break;
      }
      const SparseVec& pk = reduced[static_cast<std::size_t>(k)];
      Rational c = field.neg(field.div(v.back().second, pk.back().second));
      v = axpy(field, v, c, pk);
      if (track) t = axpy(field, t, c, (*track)[static_cast<std::size_t>(k)]);
    }
    reduced[static_cast<std::size_t>(j)] = std::move(v);
    if (track) (*track)[static_cast<std::size_t>(j)] = std::move(t);
  }
  return reduced;
}

}  // namespace

int rank(const Field& field, const SparseMatrix& a) {
  if (a.rows() == 0 || a.cols() == 0) return 0;
  // Reduce along the shorter side.
  const SparseMatrix& m = a;
  if (a.cols() > 2 * a.rows()) {
    SparseMatrix t = a.transpose();
    auto red = column_reduce(field, t, nullptr, nullptr);
    return static_cast<int>(std::count_if(red.begin(), red.end(), [](const SparseVec& v) { return !v.empty(); }));
  }
  auto red = column_reduce(field, m, nullptr, nullptr);
  return static_cast<int>(std::count_if(red.begin(), red.end(), [](const SparseVec& v) { return !v.empty(); }));
}

bool is_invertible(const Field& field, const SparseMatrix& a) {
  return a.rows() == a.cols() && rank(field, a) == a.rows();
}

KernelBasis kernel(const Field& field, const SparseMatrix& a) {
  KernelBasis kb;
  std::vector<SparseVec> v;
  auto red = column_reduce(field, a, &v, nullptr);
  for (int j = 0; j < a.cols(); ++j) {
    if (red[static_cast<std::size_t>(j)].empty()) {
      kb.vectors.push_back(std::move(v[static_cast<std::size_t>(j)]));
      kb.pivots.push_back(j);
    }
  }
  return kb;
}

SparseVec KernelBasis::coordinates(const Field& field, const SparseVec& v) const {
  SparseVec residual = v;
  SparseVec coords;
  for (int i = static_cast<int>(pivots.size()) - 1; i >= 0; --i) {
    Rational c = vec_get(residual, pivots[static_cast<std::size_t>(i)]);
    if (c.is_zero()) continue;
    coords.emplace_back(i, c);
    residual = axpy(field, residual, field.neg(c), vectors[static_cast<std::size_t>(i)]);
  }
  if (!residual.empty()) throw std::logic_error("vector is not in the kernel");
  std::reverse(coords.begin(), coords.end());
  return coords;
}

std::map<int, int> cohomology_dims(const Field& field, const GradedComplex& c) {
  std::map<int, std::vector<int>> by_degree;
  for (int i = 0; i < c.size(); ++i) by_degree[c.degree[static_cast<std::size_t>(i)]].push_back(i);
  std::map<int, int> ranks;
  for (const auto& [q, ids] : by_degree) {
    auto next = by_degree.find(q + 1);
    if (next == by_degree.end()) {
      ranks[q] = 0;
      continue;
    }
    ranks[q] = rank(field, c.d.select(next->second, ids));
  }
  std::map<int, int> dims;
  for (const auto& [q, ids] : by_degree) {
    int h = static_cast<int>(ids.size()) - ranks[q];
    auto prev = ranks.find(q - 1);
    if (prev != ranks.end()) h -= prev->second;
    if (h != 0) dims[q] = h;
  }
  return dims;
}

bool squares_to_zero(const Field& field, const GradedComplex& c) {
  return multiply(field, c.d, c.d).is_zero();
}

GradedComplex mapping_cone(const Field& field, const GradedComplex& a, const GradedComplex& b,
                           const SparseMatrix& f) {
  if (f.rows() != b.size() || f.cols() != a.size()) throw std::invalid_argument("mapping cone: map shape");
  GradedComplex cone;
  int nb = b.size();
  int na = a.size();
  cone.degree = b.degree;
  cone.label = b.label;
  cone.label.resize(static_cast<std::size_t>(nb), -1);
  for (int i = 0; i < na; ++i) {
    cone.degree.push_back(a.degree[static_cast<std::size_t>(i)] - 1);
    cone.label.push_back(static_cast<std::size_t>(i) < a.label.size() ? a.label[static_cast<std::size_t>(i)] : -1);
  }
  cone.d = SparseMatrix(nb + na, nb + na);
  for (int j = 0; j < nb; ++j) cone.d.set_col(j, b.d.col(j));
  for (int j = 0; j < na; ++j) {
    SparseVec col = f.col(j);
    for (const auto& [i, v] : a.d.col(j)) col.emplace_back(nb + i, field.neg(v));
    cone.d.set_col(nb + j, std::move(col));
  }
  return cone;
}

namespace {

class Reducer {
 public:
  Reducer(const Field& field, const GradedComplex& c, const ReduceOptions& opt)
      : field_(field), c_(c), opt_(opt), n_(c.size()) {
    cols_.resize(static_cast<std::size_t>(n_));
    rows_.resize(static_cast<std::size_t>(n_));
    alive_.assign(static_cast<std::size_t>(n_), true);
    for (int j = 0; j < n_; ++j) {
      cols_[static_cast<std::size_t>(j)] = c.d.col(j);
      for (const auto& [i, v] : c.d.col(j)) rows_[static_cast<std::size_t>(i)].insert(j);
    }
    if (opt.track_projection) {
      proj_.resize(static_cast<std::size_t>(n_));
      for (int i = 0; i < n_; ++i) proj_[static_cast<std::size_t>(i)] = {{i, Rational(1)}};
    }
    if (opt.track_inclusion) {
      incl_.resize(static_cast<std::size_t>(n_));
      for (int i = 0; i < n_; ++i) incl_[static_cast<std::size_t>(i)] = {{i, Rational(1)}};
    }
  }

  void run() {
    bool changed = true;
    while (changed) {
      changed = false;
      for (int x = 0; x < n_; ++x) {
        if (!alive_[static_cast<std::size_t>(x)]) continue;
        int y = choose_pivot(x);
        if (y < 0) continue;
        eliminate(x, y);
        changed = true;
      }
      if (!opt_.same_label_only) break;  // one pass suffices without labels
    }
  }

  Reduction result() const {
    Reduction r;
    std::vector<int> new_index(static_cast<std::size_t>(n_), -1);
    for (int i = 0; i < n_; ++i) {
      if (alive_[static_cast<std::size_t>(i)]) {
        new_index[static_cast<std::size_t>(i)] = static_cast<int>(r.survivors.size());
        r.survivors.push_back(i);
      }
    }
    int m = static_cast<int>(r.survivors.size());
    r.reduced.d = SparseMatrix(m, m);
    for (int k = 0; k < m; ++k) {
      int i = r.survivors[static_cast<std::size_t>(k)];
      r.reduced.degree.push_back(c_.degree[static_cast<std::size_t>(i)]);
      r.reduced.label.push_back(static_cast<std::size_t>(i) < c_.label.size() ? c_.label[static_cast<std::size_t>(i)] : -1);
      SparseVec col;
      for (const auto& [row, v] : cols_[static_cast<std::size_t>(i)]) {
        col.emplace_back(new_index[static_cast<std::size_t>(row)], v);
      }
      r.reduced.d.set_col(k, std::move(col));
    }
    if (opt_.track_projection) {
      SparseMatrix pt(n_, m);  // transpose of projection
      for (int k = 0; k < m; ++k) pt.set_col(k, proj_[static_cast<std::size_t>(r.survivors[static_cast<std::size_t>(k)])]);
      r.projection = pt.transpose();
    }
    if (opt_.track_inclusion) {
      r.inclusion = SparseMatrix(n_, m);
      for (int k = 0; k < m; ++k) r.inclusion.set_col(k, incl_[static_cast<std::size_t>(r.survivors[static_cast<std::size_t>(k)])]);
    }
    return r;
  }

 private:
  int label(int i) const {
    return static_cast<std::size_t>(i) < c_.label.size() ? c_.label[static_cast<std::size_t>(i)] : -1;
  }

  int choose_pivot(int x) const {
    for (const auto& [y, v] : cols_[static_cast<std::size_t>(x)]) {
      if (!opt_.same_label_only || label(y) == label(x)) return y;
    }
    return -1;
  }

  // col_c <- col_c + coef * col_x, keeping row sets in sync.
  void update_column(int c, const Rational& coef, int x) {
    const SparseVec& old = cols_[static_cast<std::size_t>(c)];
    SparseVec updated = axpy(field_, old, coef, cols_[static_cast<std::size_t>(x)]);
    auto io = old.begin();
    auto iu = updated.begin();
    while (io != old.end() || iu != updated.end()) {
      if (iu == updated.end() || (io != old.end() && io->first < iu->first)) {
        rows_[static_cast<std::size_t>(io->first)].erase(c);
        ++io;
      } else if (io == old.end() || iu->first < io->first) {
        rows_[static_cast<std::size_t>(iu->first)].insert(c);
        ++iu;
      } else {
        ++io;
        ++iu;
      }
    }
    cols_[static_cast<std::size_t>(c)] = std::move(updated);
  }

  void eliminate(int x, int y) {
    Rational b = vec_get(cols_[static_cast<std::size_t>(x)], y);
    Rational binv = field_.inv(b);
    // Columns touching row y, other than x.
    std::vector<int> touching(rows_[static_cast<std::size_t>(y)].begin(), rows_[static_cast<std::size_t>(y)].end());
    for (int c : touching) {
      if (c == x) continue;
      Rational coef = field_.neg(field_.mul(vec_get(cols_[static_cast<std::size_t>(c)], y), binv));
      if (opt_.track_inclusion) {
        incl_[static_cast<std::size_t>(c)] = axpy(field_, incl_[static_cast<std::size_t>(c)], coef, incl_[static_cast<std::size_t>(x)]);
      }
      update_column(c, coef, x);
    }
    if (opt_.track_projection) {
      for (const auto& [r, v] : cols_[static_cast<std::size_t>(x)]) {
        if (r == y) continue;
        Rational coef = field_.neg(field_.mul(v, binv));
        proj_[static_cast<std::size_t>(r)] = axpy(field_, proj_[static_cast<std::size_t>(r)], coef, proj_[static_cast<std::size_t>(y)]);
      }
    }
    // Drop x and y as both rows and columns.
    for (int dead : {x, y}) {
      for (const auto& [r, v] : cols_[static_cast<std::size_t>(dead)]) rows_[static_cast<std::size_t>(r)].erase(dead);
      cols_[static_cast<std::size_t>(dead)].clear();
      std::vector<int> users(rows_[static_cast<std::size_t>(dead)].begin(), rows_[static_cast<std::size_t>(dead)].end());
      for (int c : users) {
        auto& col = cols_[static_cast<std::size_t>(c)];
        col.erase(std::remove_if(col.begin(), col.end(), [dead](const Entry& e) { return e.first == dead; }), col.end());
      }
      rows_[static_cast<std::size_t>(dead)].clear();
      alive_[static_cast<std::size_t>(dead)] = false;
    }
  }

  const Field& field_;
  const GradedComplex& c_;
  ReduceOptions opt_;
  int n_;
  std::vector<SparseVec> cols_;
  std::vector<std::set<int>> rows_;
  std::vector<bool> alive_;
  std::vector<SparseVec> proj_;
  std::vector<SparseVec> incl_;
};

}  // namespace

Reduction reduce_complex(const Field& field, const GradedComplex& c, const ReduceOptions& options) {
  Reducer r(field, c, options);
  r.run();
  return r.result();
}

}  // namespace icsheaf
