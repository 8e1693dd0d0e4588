#pragma once

#include <map>
#include <utility>

#include <nlohmann/json.hpp>

#include "icsheaf/sheaf.hpp"

namespace icsheaf {

// Stratification-independent description of L = sum of L^m: a rank per
// complex dimension and optional explicit matrices on covering pairs
// (identity where none is given).
struct LocalSystemSpec {
  int default_rank = 1;
  std::map<int, int> rank_by_dim;
  // (face, coface) simplex ids -> rank x rank matrix
  std::map<std::pair<int, int>, SparseMatrix> matrices;

  int rank_for(int m) const;
  nlohmann::json to_json(const SimplicialComplex& k) const;
};

// {"rank": r} | {"ranks": {"2": r2, "1": r1}} with optional
// "matrices": [{"face": [...], "coface": [...], "matrix": [["1","0"],...]}].
LocalSystemSpec load_local_system(const ComplexPtr& k, const Field& field, const nlohmann::json& doc);

// Constant or explicit local system on an up-closed domain; verifies
// invertibility and path independence.
CellularSheaf make_local_system(const Field& field, const SimplexSet& domain, int rank,
                                const std::map<std::pair<int, int>, SparseMatrix>& matrices = {});
CellularSheaf make_local_system(const Field& field, const SimplexSet& domain, const LocalSystemSpec& spec, int m);

}  // namespace icsheaf
