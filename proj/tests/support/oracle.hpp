#pragma once

#include <map>
#include <string>
#include <vector>

#include "icsheaf/bundled.hpp"
#include "icsheaf/deligne.hpp"

namespace icsheaf::oracle {

// Simplicial cohomology over F_p by dense elimination on coboundary
// matrices. Shares no code with the library's linear algebra.
std::map<int, int> cochain_cohomology(const std::vector<std::vector<int>>& simplices, long long p = 1000003);
std::map<int, int> cochain_cohomology(const SimplicialComplex& k, long long p = 1000003);

// Facets (vertex-index tuples) of the complex with vertex v replaced by one fresh
// vertex per connected component of its link.
std::vector<std::vector<int>> split_vertex(const SimplicialComplex& k, int v);

// H^*(X) for X = C1 u C2 glued along M x (0,1), where both cone charts
// have cohomology tau_{<=cut}(H^*(M)[shift]) and restrict isomorphically in
// those degrees.
std::map<int, int> suspension_mayer_vietoris(const std::map<int, int>& hm, int shift, int cut);

// Shared location of the materialized bundled spaces.
std::string cache_dir();
BundledSpace space(const std::string& name);

struct CorpusMember {
  std::string name;
  InjectiveComplex s;
};
// ICs, naive-filtration products, shifts, sums, constants and truncations
// of pushforwards on one bundled space.
std::vector<CorpusMember> axiom_corpus(const Field& field, const BundledSpace& b);

// Ranks of H^{-m} on the open strata, as a local system spec.
LocalSystemSpec observed_local(const Field& field, const InjectiveComplex& s, const Stratification& strat);

std::map<int, int> nonzero(const std::map<int, int>& d);

}  // namespace icsheaf::oracle
