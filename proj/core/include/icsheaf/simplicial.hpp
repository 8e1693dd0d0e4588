#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

#include "icsheaf/field.hpp"

namespace icsheaf {

// External vertex id: integer or string. Integers sort before strings.
using VertexLabel = std::variant<long long, std::string>;

std::string label_to_string(const VertexLabel& v);
nlohmann::json label_to_json(const VertexLabel& v);
VertexLabel label_from_json(const nlohmann::json& j);

class SimplicialComplex;
using ComplexPtr = std::shared_ptr<const SimplicialComplex>;

// Codimension-one incidence with sign (-1)^i where i is the position of
// the removed vertex in the ascending coface tuple.
struct Incidence {
  int other;
  int sign;
};

class SimplicialComplex {
 public:
  // `maximal` lists simplices by vertex index into `labels` (which must be
  // sorted and unique). The downward closure is taken.
  static ComplexPtr create(std::vector<VertexLabel> labels, const std::vector<std::vector<int>>& maximal,
                           bool allow_empty = false);

  int size() const { return static_cast<int>(simplices_.size()); }
  int dim() const { return dim_; }
  int vertex_count() const { return static_cast<int>(labels_.size()); }
  const std::vector<VertexLabel>& labels() const { return labels_; }

  const std::vector<int>& vertices(int id) const { return simplices_[static_cast<std::size_t>(id)]; }
  int dim_of(int id) const { return static_cast<int>(vertices(id).size()) - 1; }
  std::optional<int> find(const std::vector<int>& sorted_vertices) const;
  // Lookup by external labels (any order).
  std::optional<int> find_labels(const std::vector<VertexLabel>& labels) const;
  std::optional<int> vertex_index(const VertexLabel& label) const;

  const std::vector<Incidence>& faces(int id) const { return faces_[static_cast<std::size_t>(id)]; }
  const std::vector<Incidence>& cofaces(int id) const { return cofaces_[static_cast<std::size_t>(id)]; }
  // All proper faces / cofaces, ascending ids.
  const std::vector<int>& all_faces(int id) const { return down_[static_cast<std::size_t>(id)]; }
  const std::vector<int>& all_cofaces(int id) const { return up_[static_cast<std::size_t>(id)]; }
  bool is_face(int sigma, int tau) const;  // sigma subset of tau (non-strict)
  int sign(int face, int coface) const;    // codim 1 only

  std::vector<VertexLabel> label_tuple(int id) const;
  std::string tuple_string(int id) const;  // "[1,2,3]"
  nlohmann::json tuple_json(int id) const;
  std::vector<int> simplices_of_dim(int d) const;

 private:
  SimplicialComplex() = default;

  std::vector<VertexLabel> labels_;
  std::vector<std::vector<int>> simplices_;
  std::map<std::vector<int>, int> index_;
  std::vector<std::vector<Incidence>> faces_;
  std::vector<std::vector<Incidence>> cofaces_;
  std::vector<std::vector<int>> down_;
  std::vector<std::vector<int>> up_;
  int dim_ = -1;
};

// {"vertices": [...], "maximal_simplices": [[...], ...]}
ComplexPtr load_complex(const nlohmann::json& doc);
nlohmann::json complex_to_json(const SimplicialComplex& k);

enum class ClosureFlag { kUpClosed, kDownClosed, kClopen, kNeither };

// A set of simplices of one complex. Immutable.
class SimplexSet {
 public:
  SimplexSet() = default;
  SimplexSet(ComplexPtr owner, std::vector<int> ids);
  static SimplexSet all(const ComplexPtr& owner);
  static SimplexSet none(const ComplexPtr& owner);

  const ComplexPtr& owner() const { return owner_; }
  bool contains(int id) const { return mask_[static_cast<std::size_t>(id)] != 0; }
  int size() const { return static_cast<int>(members_.size()); }
  bool empty() const { return members_.empty(); }
  const std::vector<int>& members() const { return members_; }

  ClosureFlag closure_flag() const { return flag_; }
  bool is_up_closed() const { return flag_ == ClosureFlag::kUpClosed || flag_ == ClosureFlag::kClopen; }
  bool is_down_closed() const { return flag_ == ClosureFlag::kDownClosed || flag_ == ClosureFlag::kClopen; }
  // Relative closedness inside `ambient` (this must be a subset).
  bool is_up_closed_in(const SimplexSet& ambient) const;
  bool is_down_closed_in(const SimplexSet& ambient) const;
  bool subset_of(const SimplexSet& other) const;
  int max_dim() const;  // -1 when empty

  SimplexSet unite(const SimplexSet& o) const;
  SimplexSet intersect(const SimplexSet& o) const;
  SimplexSet minus(const SimplexSet& o) const;
  SimplexSet complement() const;

  nlohmann::json to_json() const;  // list of canonical tuples

  friend bool operator==(const SimplexSet& a, const SimplexSet& b) { return a.members_ == b.members_; }
  friend bool operator!=(const SimplexSet& a, const SimplexSet& b) { return !(a == b); }

 private:
  ComplexPtr owner_;
  std::vector<char> mask_;
  std::vector<int> members_;
  ClosureFlag flag_ = ClosureFlag::kClopen;
};

SimplexSet open_star(const ComplexPtr& k, int sigma);
SimplexSet closed_simplex(const ComplexPtr& k, int sigma);
SimplexSet down_closure(const SimplexSet& a);
SimplexSet up_closure(const SimplexSet& a);
ComplexPtr link_of(const ComplexPtr& k, int sigma);
std::vector<SimplexSet> components_of(const SimplexSet& a);
// Strict chains s0 < ... < sp inside `p`, lexicographic by id.
std::vector<std::vector<int>> order_chains(const SimplexSet& p, int length);
// Up-set of sigma intersected with p, ascending ids (sigma first if present).
std::vector<int> up_set_in(const SimplexSet& p, int sigma);

// Simplicial cohomology dims over `field`; `reduced` gives reduced
// cohomology (the empty complex has reduced H^{-1} of dim 1).
std::map<int, int> simplicial_cohomology(const SimplicialComplex& k, const Field& field, bool reduced = false);
// Same for a subcomplex given by a down-closed set.
std::map<int, int> simplicial_cohomology(const SimplexSet& subcomplex, const Field& field, bool reduced = false);

}  // namespace icsheaf
