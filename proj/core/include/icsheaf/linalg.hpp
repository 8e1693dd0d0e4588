#pragma once

#include <map>
#include <utility>
#include <vector>

#include "icsheaf/field.hpp"
#include "icsheaf/rational.hpp"

namespace icsheaf {

using Entry = std::pair<int, Rational>;
// Sorted by index, no explicit zeros.
using SparseVec = std::vector<Entry>;

Rational vec_get(const SparseVec& v, int index);
// y + c * x
SparseVec axpy(const Field& field, const SparseVec& y, const Rational& c, const SparseVec& x);
SparseVec scale(const Field& field, const SparseVec& v, const Rational& c);

// Column-major sparse matrix.
class SparseMatrix {
 public:
  SparseMatrix() = default;
  SparseMatrix(int rows, int cols) : rows_(rows), cols_(cols), data_(static_cast<std::size_t>(cols)) {}

  static SparseMatrix identity(int n);
  static SparseMatrix from_dense(const Field& field, const std::vector<std::vector<Rational>>& rows);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  const SparseVec& col(int j) const { return data_[static_cast<std::size_t>(j)]; }
  void set_col(int j, SparseVec v) { data_[static_cast<std::size_t>(j)] = std::move(v); }
  Rational at(int r, int c) const { return vec_get(col(c), r); }
  // Adds v to entry (r, c).
  void add_entry(const Field& field, int r, int c, const Rational& v);

  std::size_t nnz() const;
  bool is_zero() const;
  SparseMatrix transpose() const;
  // Keeps the listed rows/columns in the listed order.
  SparseMatrix select(const std::vector<int>& row_ids, const std::vector<int>& col_ids) const;
  std::vector<std::vector<Rational>> to_dense() const;

  friend bool operator==(const SparseMatrix& a, const SparseMatrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<SparseVec> data_;
};

SparseMatrix multiply(const Field& field, const SparseMatrix& a, const SparseMatrix& b);
SparseMatrix add(const Field& field, const SparseMatrix& a, const SparseMatrix& b);
SparseMatrix scale(const Field& field, const SparseMatrix& a, const Rational& c);
SparseVec apply(const Field& field, const SparseMatrix& a, const SparseVec& x);

int rank(const Field& field, const SparseMatrix& a);
bool is_invertible(const Field& field, const SparseMatrix& a);

// Kernel basis from column reduction. Vector i has a 1 at pivots[i] and
// zeros at all larger indices, so coordinates() is a back substitution.
struct KernelBasis {
  std::vector<SparseVec> vectors;
  std::vector<int> pivots;

  SparseVec coordinates(const Field& field, const SparseVec& v) const;
};
KernelBasis kernel(const Field& field, const SparseMatrix& a);

// A finite cochain complex with one basis element per entry of `degree`.
// d(y, x) may be nonzero only when degree[y] == degree[x] + 1.
// `label` is free for callers (cell ids); reductions can respect it.
struct GradedComplex {
  std::vector<int> degree;
  std::vector<int> label;
  SparseMatrix d;

  int size() const { return static_cast<int>(degree.size()); }
};

std::map<int, int> cohomology_dims(const Field& field, const GradedComplex& c);
bool squares_to_zero(const Field& field, const GradedComplex& c);

// cone(f)^q = B^q + A^{q+1} with differential [[d_B, f], [0, -d_A]].
// Basis: B's elements first, then A's.
GradedComplex mapping_cone(const Field& field, const GradedComplex& a, const GradedComplex& b,
                           const SparseMatrix& f);

struct ReduceOptions {
  bool same_label_only = false;
  bool track_projection = false;
  bool track_inclusion = false;
};

// Gaussian elimination of acyclic pairs. Pivots are taken in deterministic
// order (smallest column, then smallest row). The projection is a chain
// map original -> reduced, the inclusion a chain map reduced -> original;
// both are homotopy equivalences.
struct Reduction {
  std::vector<int> survivors;
  GradedComplex reduced;
  SparseMatrix projection;  // survivors x original
  SparseMatrix inclusion;   // original x survivors
};
Reduction reduce_complex(const Field& field, const GradedComplex& c, const ReduceOptions& options);

}  // namespace icsheaf
