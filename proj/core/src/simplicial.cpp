#include "icsheaf/simplicial.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <stdexcept>

#include "icsheaf/linalg.hpp"

namespace icsheaf {

std::string label_to_string(const VertexLabel& v) {
  if (const auto* i = std::get_if<long long>(&v)) return std::to_string(*i);
  return std::get<std::string>(v);
}

nlohmann::json label_to_json(const VertexLabel& v) {
  if (const auto* i = std::get_if<long long>(&v)) return *i;
  return std::get<std::string>(v);
}

VertexLabel label_from_json(const nlohmann::json& j) {
  if (j.is_number_integer()) return j.get<long long>();
  if (j.is_string()) return j.get<std::string>();
  throw std::invalid_argument("vertex id must be an integer or a string: " + j.dump());
}

namespace {

struct BySizeThenLex {
  bool operator()(const std::vector<int>& a, const std::vector<int>& b) const {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
  }
};

constexpr std::size_t kMaxSimplexSize = 24;

}  // namespace

ComplexPtr SimplicialComplex::create(std::vector<VertexLabel> labels, const std::vector<std::vector<int>>& maximal,
                                     bool allow_empty) {
  if (!std::is_sorted(labels.begin(), labels.end()) ||
      std::adjacent_find(labels.begin(), labels.end()) != labels.end()) {
    throw std::invalid_argument("vertex labels must be sorted and unique");
  }
  std::set<std::vector<int>, BySizeThenLex> all;
  for (auto s : maximal) {
    std::sort(s.begin(), s.end());
    if (std::adjacent_find(s.begin(), s.end()) != s.end()) {
      throw std::invalid_argument("duplicate vertex in simplex");
    }
    if (s.empty()) throw std::invalid_argument("empty simplex");
    if (s.size() > kMaxSimplexSize) throw std::invalid_argument("simplex too large");
    for (int v : s) {
      if (v < 0 || v >= static_cast<int>(labels.size())) throw std::invalid_argument("unknown vertex index");
    }
    std::size_t n = s.size();
    for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
      std::vector<int> sub;
      for (std::size_t i = 0; i < n; ++i) {
        if (mask & (1u << i)) sub.push_back(s[i]);
      }
      all.insert(std::move(sub));
    }
  }
  if (all.empty() && !allow_empty) throw std::invalid_argument("empty complex");

  std::shared_ptr<SimplicialComplex> k(new SimplicialComplex());
  k->labels_ = std::move(labels);
  k->simplices_.assign(all.begin(), all.end());
  for (std::size_t i = 0; i < k->simplices_.size(); ++i) {
    k->index_.emplace(k->simplices_[i], static_cast<int>(i));
    k->dim_ = std::max(k->dim_, static_cast<int>(k->simplices_[i].size()) - 1);
  }
  std::size_t n = k->simplices_.size();
  k->faces_.resize(n);
  k->cofaces_.resize(n);
  k->down_.resize(n);
  k->up_.resize(n);
  for (std::size_t id = 0; id < n; ++id) {
    const auto& s = k->simplices_[id];
    if (s.size() >= 2) {
      for (std::size_t i = 0; i < s.size(); ++i) {
        std::vector<int> f = s;
        f.erase(f.begin() + static_cast<std::ptrdiff_t>(i));
        int fid = k->index_.at(f);
        int sign = (i % 2 == 0) ? 1 : -1;
        k->faces_[id].push_back({fid, sign});
        k->cofaces_[static_cast<std::size_t>(fid)].push_back({static_cast<int>(id), sign});
      }
    }
    std::size_t m = s.size();
    for (std::uint32_t mask = 1; mask + 1 < (1u << m); ++mask) {
      std::vector<int> sub;
      for (std::size_t i = 0; i < m; ++i) {
        if (mask & (1u << i)) sub.push_back(s[i]);
      }
      int fid = k->index_.at(sub);
      k->down_[id].push_back(fid);
      k->up_[static_cast<std::size_t>(fid)].push_back(static_cast<int>(id));
    }
  }
  for (std::size_t id = 0; id < n; ++id) {
    std::sort(k->down_[id].begin(), k->down_[id].end());
    std::sort(k->up_[id].begin(), k->up_[id].end());
    std::sort(k->faces_[id].begin(), k->faces_[id].end(),
              [](const Incidence& a, const Incidence& b) { return a.other < b.other; });
    std::sort(k->cofaces_[id].begin(), k->cofaces_[id].end(),
              [](const Incidence& a, const Incidence& b) { return a.other < b.other; });
  }
  return k;
}

std::optional<int> SimplicialComplex::find(const std::vector<int>& sorted_vertices) const {
  auto it = index_.find(sorted_vertices);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::optional<int> SimplicialComplex::vertex_index(const VertexLabel& label) const {
  auto it = std::lower_bound(labels_.begin(), labels_.end(), label);
  if (it == labels_.end() || *it != label) return std::nullopt;
  return static_cast<int>(it - labels_.begin());
}

std::optional<int> SimplicialComplex::find_labels(const std::vector<VertexLabel>& labels) const {
  std::vector<int> vs;
  for (const auto& l : labels) {
    auto v = vertex_index(l);
    if (!v) return std::nullopt;
    vs.push_back(*v);
  }
  std::sort(vs.begin(), vs.end());
  if (std::adjacent_find(vs.begin(), vs.end()) != vs.end()) return std::nullopt;
  return find(vs);
}

bool SimplicialComplex::is_face(int sigma, int tau) const {
  if (sigma == tau) return true;
  const auto& d = all_faces(tau);
  return std::binary_search(d.begin(), d.end(), sigma);
}

int SimplicialComplex::sign(int face, int coface) const {
  for (const auto& inc : faces(coface)) {
    if (inc.other == face) return inc.sign;
  }
  throw std::invalid_argument("not a codimension-one face pair");
}

std::vector<VertexLabel> SimplicialComplex::label_tuple(int id) const {
  std::vector<VertexLabel> out;
  for (int v : vertices(id)) out.push_back(labels_[static_cast<std::size_t>(v)]);
  return out;
}

std::string SimplicialComplex::tuple_string(int id) const {
  std::string s = "[";
  bool first = true;
  for (int v : vertices(id)) {
    if (!first) s += ",";
    first = false;
    s += label_to_string(labels_[static_cast<std::size_t>(v)]);
  }
  return s + "]";
}

nlohmann::json SimplicialComplex::tuple_json(int id) const {
  nlohmann::json j = nlohmann::json::array();
  for (int v : vertices(id)) j.push_back(label_to_json(labels_[static_cast<std::size_t>(v)]));
  return j;
}

std::vector<int> SimplicialComplex::simplices_of_dim(int d) const {
  std::vector<int> out;
  for (int i = 0; i < size(); ++i) {
    if (dim_of(i) == d) out.push_back(i);
  }
  return out;
}

ComplexPtr load_complex(const nlohmann::json& doc) {
  if (!doc.is_object() || !doc.contains("vertices") || !doc.contains("maximal_simplices")) {
    throw std::invalid_argument("complex document needs 'vertices' and 'maximal_simplices'");
  }
  std::vector<VertexLabel> labels;
  for (const auto& v : doc.at("vertices")) labels.push_back(label_from_json(v));
  std::vector<VertexLabel> sorted = labels;
  std::sort(sorted.begin(), sorted.end());
  auto dup = std::adjacent_find(sorted.begin(), sorted.end());
  if (dup != sorted.end()) throw std::invalid_argument("duplicate vertex id " + label_to_string(*dup));
  std::vector<std::vector<int>> maximal;
  for (const auto& s : doc.at("maximal_simplices")) {
    std::vector<int> idx;
    for (const auto& v : s) {
      VertexLabel l = label_from_json(v);
      auto it = std::lower_bound(sorted.begin(), sorted.end(), l);
      if (it == sorted.end() || *it != l) throw std::invalid_argument("unknown vertex id " + label_to_string(l));
      idx.push_back(static_cast<int>(it - sorted.begin()));
    }
    std::vector<int> check = idx;
    std::sort(check.begin(), check.end());
    if (std::adjacent_find(check.begin(), check.end()) != check.end()) {
      throw std::invalid_argument("duplicate vertex in simplex " + s.dump());
    }
    maximal.push_back(std::move(idx));
  }
  return SimplicialComplex::create(std::move(sorted), maximal);
}

nlohmann::json complex_to_json(const SimplicialComplex& k) {
  nlohmann::json doc;
  doc["vertices"] = nlohmann::json::array();
  for (const auto& l : k.labels()) doc["vertices"].push_back(label_to_json(l));
  doc["maximal_simplices"] = nlohmann::json::array();
  for (int i = 0; i < k.size(); ++i) {
    if (k.cofaces(i).empty()) doc["maximal_simplices"].push_back(k.tuple_json(i));
  }
  return doc;
}

SimplexSet::SimplexSet(ComplexPtr owner, std::vector<int> ids) : owner_(std::move(owner)) {
  mask_.assign(static_cast<std::size_t>(owner_->size()), 0);
  for (int id : ids) {
    if (id < 0 || id >= owner_->size()) throw std::out_of_range("simplex id out of range");
    mask_[static_cast<std::size_t>(id)] = 1;
  }
  for (int i = 0; i < owner_->size(); ++i) {
    if (mask_[static_cast<std::size_t>(i)]) members_.push_back(i);
  }
  bool up = true;
  bool down = true;
  for (int id : members_) {
    if (up) {
      for (const auto& c : owner_->cofaces(id)) {
        if (!contains(c.other)) {
          up = false;
          break;
        }
      }
    }
    if (down) {
      for (const auto& f : owner_->faces(id)) {
        if (!contains(f.other)) {
          down = false;
          break;
        }
      }
    }
    if (!up && !down) break;
  }
  flag_ = up && down ? ClosureFlag::kClopen
          : up       ? ClosureFlag::kUpClosed
          : down     ? ClosureFlag::kDownClosed
                     : ClosureFlag::kNeither;
}

SimplexSet SimplexSet::all(const ComplexPtr& owner) {
  std::vector<int> ids(static_cast<std::size_t>(owner->size()));
  std::iota(ids.begin(), ids.end(), 0);
  return SimplexSet(owner, std::move(ids));
}

SimplexSet SimplexSet::none(const ComplexPtr& owner) { return SimplexSet(owner, {}); }

bool SimplexSet::is_up_closed_in(const SimplexSet& ambient) const {
  // Covering relations within the ambient set may skip levels, so check
  // all cofaces rather than codimension one.
  for (int id : members_) {
    for (int t : owner_->all_cofaces(id)) {
      if (ambient.contains(t) && !contains(t)) return false;
    }
  }
  return true;
}

bool SimplexSet::is_down_closed_in(const SimplexSet& ambient) const {
  for (int id : members_) {
    for (int f : owner_->all_faces(id)) {
      if (ambient.contains(f) && !contains(f)) return false;
    }
  }
  return true;
}

bool SimplexSet::subset_of(const SimplexSet& other) const {
  return std::all_of(members_.begin(), members_.end(), [&](int id) { return other.contains(id); });
}

int SimplexSet::max_dim() const {
  int d = -1;
  for (int id : members_) d = std::max(d, owner_->dim_of(id));
  return d;
}

SimplexSet SimplexSet::unite(const SimplexSet& o) const {
  std::vector<int> ids;
  std::set_union(members_.begin(), members_.end(), o.members_.begin(), o.members_.end(), std::back_inserter(ids));
  return SimplexSet(owner_, std::move(ids));
}

SimplexSet SimplexSet::intersect(const SimplexSet& o) const {
  std::vector<int> ids;
  std::set_intersection(members_.begin(), members_.end(), o.members_.begin(), o.members_.end(),
                        std::back_inserter(ids));
  return SimplexSet(owner_, std::move(ids));
}

SimplexSet SimplexSet::minus(const SimplexSet& o) const {
  std::vector<int> ids;
  std::set_difference(members_.begin(), members_.end(), o.members_.begin(), o.members_.end(),
                      std::back_inserter(ids));
  return SimplexSet(owner_, std::move(ids));
}

SimplexSet SimplexSet::complement() const { return SimplexSet::all(owner_).minus(*this); }

nlohmann::json SimplexSet::to_json() const {
  nlohmann::json j = nlohmann::json::array();
  for (int id : members_) j.push_back(owner_->tuple_json(id));
  return j;
}

SimplexSet open_star(const ComplexPtr& k, int sigma) {
  if (sigma < 0 || sigma >= k->size()) throw std::out_of_range("unknown simplex");
  std::vector<int> ids = k->all_cofaces(sigma);
  ids.push_back(sigma);
  return SimplexSet(k, std::move(ids));
}

SimplexSet closed_simplex(const ComplexPtr& k, int sigma) {
  if (sigma < 0 || sigma >= k->size()) throw std::out_of_range("unknown simplex");
  std::vector<int> ids = k->all_faces(sigma);
  ids.push_back(sigma);
  return SimplexSet(k, std::move(ids));
}

SimplexSet down_closure(const SimplexSet& a) {
  if (!a.owner()) return a;
  std::vector<char> mark(static_cast<std::size_t>(a.owner()->size()), 0);
  for (int id : a.members()) {
    mark[static_cast<std::size_t>(id)] = 1;
    for (int f : a.owner()->all_faces(id)) mark[static_cast<std::size_t>(f)] = 1;
  }
  std::vector<int> ids;
  for (std::size_t i = 0; i < mark.size(); ++i) {
    if (mark[i]) ids.push_back(static_cast<int>(i));
  }
  return SimplexSet(a.owner(), std::move(ids));
}

SimplexSet up_closure(const SimplexSet& a) {
  if (!a.owner()) return a;
  std::vector<char> mark(static_cast<std::size_t>(a.owner()->size()), 0);
  for (int id : a.members()) {
    mark[static_cast<std::size_t>(id)] = 1;
    for (int f : a.owner()->all_cofaces(id)) mark[static_cast<std::size_t>(f)] = 1;
  }
  std::vector<int> ids;
  for (std::size_t i = 0; i < mark.size(); ++i) {
    if (mark[i]) ids.push_back(static_cast<int>(i));
  }
  return SimplexSet(a.owner(), std::move(ids));
}

ComplexPtr link_of(const ComplexPtr& k, int sigma) {
  if (sigma < 0 || sigma >= k->size()) throw std::out_of_range("unknown simplex");
  const auto& sv = k->vertices(sigma);
  // Link simplices are tau with tau u sigma a coface; take the maximal ones.
  std::vector<std::vector<int>> maximal;
  std::set<int> verts;
  for (int t : k->all_cofaces(sigma)) {
    if (!k->cofaces(t).empty()) continue;
    std::vector<int> rest;
    std::set_difference(k->vertices(t).begin(), k->vertices(t).end(), sv.begin(), sv.end(),
                        std::back_inserter(rest));
    verts.insert(rest.begin(), rest.end());
    maximal.push_back(std::move(rest));
  }
  std::vector<VertexLabel> labels;
  std::map<int, int> remap;
  for (int v : verts) {
    remap[v] = static_cast<int>(labels.size());
    labels.push_back(k->labels()[static_cast<std::size_t>(v)]);
  }
  for (auto& m : maximal) {
    for (int& v : m) v = remap.at(v);
  }
  return SimplicialComplex::create(std::move(labels), maximal, true);
}

std::vector<SimplexSet> components_of(const SimplexSet& a) {
  if (!a.owner() || a.empty()) return {};
  const auto& k = *a.owner();
  std::vector<int> parent(static_cast<std::size_t>(k.size()));
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[static_cast<std::size_t>(x)] != x) {
      parent[static_cast<std::size_t>(x)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
      x = parent[static_cast<std::size_t>(x)];
    }
    return x;
  };
  for (int id : a.members()) {
    for (int f : k.all_faces(id)) {
      if (a.contains(f)) {
        int ra = find(id);
        int rb = find(f);
        if (ra != rb) parent[static_cast<std::size_t>(std::max(ra, rb))] = std::min(ra, rb);
      }
    }
  }
  std::map<int, std::vector<int>> groups;
  for (int id : a.members()) groups[find(id)].push_back(id);
  std::vector<SimplexSet> out;
  for (auto& [root, ids] : groups) out.emplace_back(a.owner(), std::move(ids));
  return out;
}

std::vector<int> up_set_in(const SimplexSet& p, int sigma) {
  std::vector<int> out;
  if (p.contains(sigma)) out.push_back(sigma);
  for (int t : p.owner()->all_cofaces(sigma)) {
    if (p.contains(t)) out.push_back(t);
  }
  return out;
}

std::vector<std::vector<int>> order_chains(const SimplexSet& p, int length) {
  std::vector<std::vector<int>> out;
  if (length < 0 || !p.owner()) return out;
  std::vector<int> chain;
  const auto& k = *p.owner();
  auto extend = [&](auto&& self, int last) -> void {
    if (static_cast<int>(chain.size()) == length + 1) {
      out.push_back(chain);
      return;
    }
    for (int t : k.all_cofaces(last)) {
      if (!p.contains(t)) continue;
      chain.push_back(t);
      self(self, t);
      chain.pop_back();
    }
  };
  for (int s : p.members()) {
    chain.push_back(s);
    extend(extend, s);
    chain.pop_back();
  }
  return out;
}

std::map<int, int> simplicial_cohomology(const SimplexSet& sub, const Field& field, bool reduced) {
  const auto& k = *sub.owner();
  std::map<int, std::vector<int>> by_dim;
  for (int id : sub.members()) by_dim[k.dim_of(id)].push_back(id);
  std::map<int, int> ranks;
  for (const auto& [p, ids] : by_dim) {
    auto next = by_dim.find(p + 1);
    if (next == by_dim.end()) continue;
    std::map<int, int> col_of;
    for (std::size_t i = 0; i < ids.size(); ++i) col_of[ids[i]] = static_cast<int>(i);
    // coboundary C^p -> C^{p+1}
    SparseMatrix delta(static_cast<int>(next->second.size()), static_cast<int>(ids.size()));
    for (std::size_t r = 0; r < next->second.size(); ++r) {
      for (const auto& f : k.faces(next->second[r])) {
        delta.add_entry(field, static_cast<int>(r), col_of.at(f.other), Rational(f.sign));
      }
    }
    ranks[p] = rank(field, delta);
  }
  std::map<int, int> dims;
  for (const auto& [p, ids] : by_dim) {
    int h = static_cast<int>(ids.size()) - ranks[p] - (ranks.count(p - 1) ? ranks[p - 1] : 0);
    if (p == 0 && reduced) h -= 1;
    if (h != 0) dims[p] = h;
  }
  if (reduced && sub.empty()) dims[-1] = 1;
  return dims;
}

std::map<int, int> simplicial_cohomology(const SimplicialComplex& k, const Field& field, bool reduced) {
  // Non-owning handle for the set API.
  ComplexPtr handle(std::shared_ptr<const SimplicialComplex>(), &k);
  return simplicial_cohomology(SimplexSet::all(handle), field, reduced);
}

}  // namespace icsheaf
