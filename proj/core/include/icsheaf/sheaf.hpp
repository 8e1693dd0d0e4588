#pragma once

#include <map>
#include <utility>
#include <vector>

#include "icsheaf/field.hpp"
#include "icsheaf/linalg.hpp"
#include "icsheaf/simplicial.hpp"

namespace icsheaf {

using DegreeDims = std::map<int, int>;
// simplex id -> nonzero cohomology dims. Simplices with zero cohomology
// are omitted, so tables compare equal across domains.
using StalkTable = std::map<int, DegreeDims>;

// A functor on the face poset restricted to `domain`. Maps go from a face
// to a coface; only covering pairs are stored, missing pairs are zero.
struct CellularSheaf {
  SimplexSet domain;
  std::vector<int> stalk_dim;  // indexed by simplex id, 0 off the domain
  std::map<std::pair<int, int>, SparseMatrix> restriction;

  int dim_at(int s) const { return stalk_dim[static_cast<std::size_t>(s)]; }
  SparseMatrix map(int face, int coface) const;
};

// Throws if some two-step square fails to commute.
void verify_path_independence(const Field& field, const CellularSheaf& f);

// One cochain complex per simplex. Basis elements carry their degree.
struct CellValue {
  std::vector<int> degree;
  SparseMatrix d;

  int size() const { return static_cast<int>(degree.size()); }
};

// A bounded complex of cellular sheaves, stored value-wise: the value at a
// simplex is its cochain complex, restrictions are chain maps.
struct SheafComplex {
  SimplexSet domain;
  std::vector<CellValue> values;  // indexed by simplex id
  std::map<std::pair<int, int>, SparseMatrix> restriction;

  const CellValue& value(int s) const { return values[static_cast<std::size_t>(s)]; }
  SparseMatrix map(int face, int coface) const;
  std::pair<int, int> degree_range() const;  // {lo, hi}; {0,-1} if zero
  // The degree-q sheaf as a CellularSheaf.
  CellularSheaf component(int q) const;
};

// Per-degree, per-simplex maps between two complexes on the same domain.
struct SheafMorphism {
  std::vector<SparseMatrix> maps;  // indexed by simplex id
};
bool is_chain_map(const Field& field, const SheafComplex& s, const SheafComplex& t, const SheafMorphism& f);

// Composite restriction maps along arbitrary face relations.
class RestrictionCache {
 public:
  RestrictionCache(const Field& field, const SheafComplex& s) : field_(field), s_(s) {}
  const SparseMatrix& get(int face, int coface);

 private:
  const Field& field_;
  const SheafComplex& s_;
  std::map<std::pair<int, int>, SparseMatrix> memo_;
};

// Verifies d^2 = 0, that restrictions are chain maps, and path
// independence. Throws std::logic_error on failure.
void verify_complex(const Field& field, const SheafComplex& s);

SheafComplex from_sheaf(const CellularSheaf& f, int degree);
SheafComplex zero_complex(const SimplexSet& domain);
SheafComplex shift(const Field& field, const SheafComplex& s, int k);
SheafComplex direct_sum(const SheafComplex& s, const SheafComplex& t);
SheafComplex restrict_open(const SheafComplex& s, const SimplexSet& u);
SheafComplex restrict_closed(const SheafComplex& s, const SimplexSet& z);
SheafComplex extend_by_zero_closed(const SheafComplex& s, const SimplexSet& x);
// Derived pushforward along U -> V via nerve cochains over up-sets.
SheafComplex pushforward_open(const Field& field, const SheafComplex& s, const SimplexSet& v);
SheafComplex truncate_le(const Field& field, const SheafComplex& s, int a);
// tau_{<=a} on the down-closed part z, identity elsewhere.
SheafComplex truncate_le_on(const Field& field, const SheafComplex& s, int a, const SimplexSet& z);

DegreeDims value_cohomology(const Field& field, const CellValue& v);
DegreeDims stalk_cohomology(const Field& field, const SheafComplex& s, int sigma);
StalkTable stalk_table(const Field& field, const SheafComplex& s);
CellularSheaf cohomology_sheaf(const Field& field, const SheafComplex& s, int a);

// Total complex of the nerve double complex of s over the subposet p
// (a subset of the domain). Labels hold the chain index.
struct NerveComplex {
  std::vector<std::vector<int>> chains;
  std::vector<int> offset;  // start of each chain's block
  GradedComplex total;
};
NerveComplex nerve_complex(const Field& field, const SheafComplex& s, const SimplexSet& p);

DegreeDims cell_costalk(const Field& field, const SheafComplex& s, int sigma);
DegreeDims hypercohomology(const Field& field, const SheafComplex& s, const SimplexSet& u);

// Maps between cohomology of two fully reduced complexes.
SparseMatrix induced_on_cohomology(const Field& field, const Reduction& src, const Reduction& dst,
                                   const SparseMatrix& map, int degree);
Reduction full_reduction(const Field& field, const GradedComplex& c);

std::string format_dims(const DegreeDims& d);

}  // namespace icsheaf
