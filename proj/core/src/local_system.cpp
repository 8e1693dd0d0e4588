#include "icsheaf/local_system.hpp"

#include <stdexcept>

namespace icsheaf {

int LocalSystemSpec::rank_for(int m) const {
  auto it = rank_by_dim.find(m);
  return it == rank_by_dim.end() ? default_rank : it->second;
}

nlohmann::json LocalSystemSpec::to_json(const SimplicialComplex& k) const {
  nlohmann::json j;
  j["rank"] = default_rank;
  if (!rank_by_dim.empty()) {
    j["ranks"] = nlohmann::json::object();
    for (const auto& [m, r] : rank_by_dim) j["ranks"][std::to_string(m)] = r;
  }
  if (!matrices.empty()) {
    j["matrices"] = nlohmann::json::array();
    for (const auto& [pair, mat] : matrices) {
      nlohmann::json rows = nlohmann::json::array();
      for (const auto& row : mat.to_dense()) {
        nlohmann::json r = nlohmann::json::array();
        for (const auto& v : row) r.push_back(v.to_string());
        rows.push_back(r);
      }
      j["matrices"].push_back({{"face", k.tuple_json(pair.first)}, {"coface", k.tuple_json(pair.second)}, {"matrix", rows}});
    }
  }
  return j;
}

namespace {

int find_simplex(const SimplicialComplex& k, const nlohmann::json& tuple) {
  std::vector<VertexLabel> labels;
  for (const auto& v : tuple) labels.push_back(label_from_json(v));
  auto id = k.find_labels(labels);
  if (!id) throw std::invalid_argument("local system: unknown simplex " + tuple.dump());
  return *id;
}

Rational parse_entry(const nlohmann::json& v) {
  if (v.is_number_integer()) return Rational(v.get<long long>());
  if (v.is_string()) return Rational::parse(v.get<std::string>());
  throw std::invalid_argument("local system: matrix entries must be integers or \"p/q\" strings");
}

}  // namespace

LocalSystemSpec load_local_system(const ComplexPtr& k, const Field& field, const nlohmann::json& doc) {
  LocalSystemSpec spec;
  if (doc.contains("rank")) spec.default_rank = doc.at("rank").get<int>();
  if (doc.contains("ranks")) {
    for (const auto& [key, val] : doc.at("ranks").items()) spec.rank_by_dim[std::stoi(key)] = val.get<int>();
  }
  if (spec.default_rank < 0) throw std::invalid_argument("local system rank must be nonnegative");
  if (doc.contains("matrices")) {
    for (const auto& entry : doc.at("matrices")) {
      int face = find_simplex(*k, entry.at("face"));
      int coface = find_simplex(*k, entry.at("coface"));
      if (k->dim_of(coface) != k->dim_of(face) + 1 || !k->is_face(face, coface)) {
        throw std::invalid_argument("local system: matrix given on a non-covering pair");
      }
      std::vector<std::vector<Rational>> rows;
      for (const auto& row : entry.at("matrix")) {
        std::vector<Rational> r;
        for (const auto& v : row) r.push_back(parse_entry(v));
        rows.push_back(std::move(r));
      }
      SparseMatrix m = SparseMatrix::from_dense(field, rows);
      if (m.rows() != m.cols() || !is_invertible(field, m)) {
        throw std::invalid_argument("local system matrix on " + k->tuple_string(face) + " -> " +
                                    k->tuple_string(coface) + " is not invertible");
      }
      spec.matrices[{face, coface}] = std::move(m);
    }
  }
  return spec;
}

CellularSheaf make_local_system(const Field& field, const SimplexSet& domain, int rank,
                                const std::map<std::pair<int, int>, SparseMatrix>& matrices) {
  if (!domain.is_up_closed()) throw std::invalid_argument("local system domain must be up-closed");
  const auto& k = *domain.owner();
  CellularSheaf f;
  f.domain = domain;
  f.stalk_dim.assign(static_cast<std::size_t>(k.size()), 0);
  for (int s : domain.members()) f.stalk_dim[static_cast<std::size_t>(s)] = rank;
  for (int s : domain.members()) {
    for (const auto& c : k.cofaces(s)) {
      if (!domain.contains(c.other)) continue;
      auto it = matrices.find({s, c.other});
      SparseMatrix m = it == matrices.end() ? SparseMatrix::identity(rank) : it->second;
      if (m.rows() != rank || m.cols() != rank || !is_invertible(field, m)) {
        throw std::invalid_argument("local system matrix on " + k.tuple_string(s) + " -> " + k.tuple_string(c.other) +
                                    " is not invertible");
      }
      if (rank > 0) f.restriction[{s, c.other}] = std::move(m);
    }
  }
  verify_path_independence(field, f);
  return f;
}

CellularSheaf make_local_system(const Field& field, const SimplexSet& domain, const LocalSystemSpec& spec, int m) {
  return make_local_system(field, domain, spec.rank_for(m), spec.matrices);
}

}  // namespace icsheaf
