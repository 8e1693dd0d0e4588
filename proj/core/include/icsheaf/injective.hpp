#pragma once

#include <map>
#include <vector>

#include "icsheaf/sheaf.hpp"

namespace icsheaf {

// A complex of cellular sheaves made of one injective summand per cell:
// generator g sits on cell[g] and spans a copy of the sheaf that is the
// field on every face of cell[g]. The value at sigma is the quotient
// complex spanned by generators on cells containing sigma; restrictions
// are coordinate projections. D(g, h) may be nonzero only when cell[g]
// is a face of cell[h] and degree[g] = degree[h] + 1.
//
// Generators are sorted by cell id, so each cell's generators form the
// contiguous range [offset[c], offset[c+1]).
class InjectiveComplex {
 public:
  InjectiveComplex() = default;
  InjectiveComplex(SimplexSet domain, std::vector<int> cell, std::vector<int> degree, SparseMatrix d);

  const SimplexSet& domain() const { return domain_; }
  int size() const { return static_cast<int>(cell_.size()); }
  const std::vector<int>& cells() const { return cell_; }
  const std::vector<int>& degrees() const { return degree_; }
  const SparseMatrix& differential() const { return d_; }
  int begin(int c) const { return offset_[static_cast<std::size_t>(c)]; }
  int end(int c) const { return offset_[static_cast<std::size_t>(c) + 1]; }

  // Generators on the listed cells, ascending.
  std::vector<int> generators_on(const std::vector<int>& cells) const;
  // Generators on cells of the domain containing sigma.
  std::vector<int> star_generators(int sigma) const;
  // The quotient (or sub-) complex spanned by the given generators.
  GradedComplex subcomplex(const std::vector<int>& gens) const;

  GradedComplex stalk_complex(int sigma) const;
  DegreeDims stalk_cohomology(const Field& field, int sigma) const;
  StalkTable stalk_table(const Field& field) const;
  // H^a(i_x^! S) for x in the open cell of sigma.
  DegreeDims costalk(const Field& field, int sigma) const;
  StalkTable costalk_table(const Field& field, const std::vector<int>& sample) const;
  DegreeDims hypercohomology(const Field& field) const;
  DegreeDims hypercohomology(const Field& field, const SimplexSet& u) const;
  // Cohomology at sigma of i^! for the down-closed z (sigma in z).
  DegreeDims upper_shriek_stalk(const Field& field, const SimplexSet& z, int sigma) const;

  // Valuewise model with the same stalks and restrictions.
  SheafComplex to_sheaf() const;
  bool is_valid(const Field& field) const;

 private:
  SimplexSet domain_;
  std::vector<int> cell_;
  std::vector<int> degree_;
  SparseMatrix d_;
  std::vector<int> offset_;
};

InjectiveComplex shift(const Field& field, const InjectiveComplex& j, int k);
InjectiveComplex direct_sum(const InjectiveComplex& a, const InjectiveComplex& b);
// j^*: u up-closed in the domain.
InjectiveComplex restrict_open(const InjectiveComplex& j, const SimplexSet& u);
// Rj_*: the domain must be up-closed in v. Injective data is unchanged.
InjectiveComplex pushforward_open(const InjectiveComplex& j, const SimplexSet& v);
// i_*: the domain must be down-closed in x. Injective data is unchanged.
InjectiveComplex extend_by_zero_closed(const InjectiveComplex& j, const SimplexSet& x);
// i^!: z down-closed in the domain; the summands on z form a subcomplex.
InjectiveComplex restrict_upper_shriek(const InjectiveComplex& j, const SimplexSet& z);
// Cancels acyclic pairs inside single cells (the cleanup).
InjectiveComplex minimize(const Field& field, const InjectiveComplex& j);

struct ResolveOptions {
  bool cleanup = true;
};
struct ResolveStats {
  int generators = 0;
  int max_local_size = 0;
};
// Injective resolution of a valuewise complex, built cell by cell from the
// top dimension down. With cleanup each cell carries only the cohomology
// of its local fiber complex.
InjectiveComplex resolve(const Field& field, const SheafComplex& s, const ResolveOptions& options = {},
                         ResolveStats* stats = nullptr);

InjectiveComplex truncate_le(const Field& field, const InjectiveComplex& j, int a, const ResolveOptions& options = {});
InjectiveComplex restrict_closed(const Field& field, const InjectiveComplex& j, const SimplexSet& z,
                                 const ResolveOptions& options = {});

// Cached full reductions of all stalk complexes, for cohomology sheaf
// maps and isomorphism scans.
class StalkAnalysis {
 public:
  StalkAnalysis(const Field& field, const InjectiveComplex& j);

  const DegreeDims& dims(int sigma) const { return dims_[static_cast<std::size_t>(sigma)]; }
  // Induced map H^a(sigma) -> H^a(tau) for sigma a face of tau.
  SparseMatrix induced(int sigma, int tau, int a) const;
  // All H^a maps along sigma -> tau are isomorphisms.
  bool restriction_is_iso(int sigma, int tau) const;
  bool restriction_is_iso(int sigma, int tau, int a) const;

 private:
  Field field_;
  std::vector<std::vector<int>> gens_;
  std::vector<Reduction> red_;
  std::vector<DegreeDims> dims_;
};

}  // namespace icsheaf
