#include "icsheaf/serialize.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace icsheaf {

namespace {

std::size_t at(int i) { return static_cast<std::size_t>(i); }

nlohmann::json indexed_sets(const std::vector<SimplexSet>& sets, int first) {
  nlohmann::json j = nlohmann::json::object();
  for (int i = first; i < static_cast<int>(sets.size()); ++i) j[std::to_string(i)] = sets[at(i)].to_json();
  return j;
}

}  // namespace

nlohmann::json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw std::runtime_error(path.string() + ": " + e.what());
  }
}

void write_json_file(const std::filesystem::path& path, const nlohmann::json& doc) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << doc.dump(2) << "\n";
}

nlohmann::json dims_to_json(const DegreeDims& d) {
  nlohmann::json j = nlohmann::json::object();
  for (const auto& [q, v] : d) {
    if (v != 0) j[std::to_string(q)] = v;
  }
  return j;
}

DegreeDims dims_from_json(const nlohmann::json& j) {
  DegreeDims d;
  for (const auto& [key, val] : j.items()) {
    int v = val.get<int>();
    if (v != 0) d[std::stoi(key)] = v;
  }
  return d;
}

nlohmann::json table_to_json(const SimplicialComplex& k, const StalkTable& t) {
  nlohmann::json j = nlohmann::json::object();
  for (const auto& [s, d] : t) {
    if (!d.empty()) j[k.tuple_string(s)] = dims_to_json(d);
  }
  return j;
}

StalkTable table_from_json(const SimplicialComplex& k, const nlohmann::json& j) {
  StalkTable t;
  for (const auto& [key, val] : j.items()) {
    std::vector<VertexLabel> labels;
    for (const auto& v : nlohmann::json::parse(key)) labels.push_back(label_from_json(v));
    auto id = k.find_labels(labels);
    if (!id) throw std::invalid_argument("stalk table: unknown simplex " + key);
    DegreeDims d = dims_from_json(val);
    if (!d.empty()) t[*id] = std::move(d);
  }
  return t;
}

nlohmann::json report_to_json(const AxiomReport& r) {
  nlohmann::json j;
  j["axiom"] = r.axiom;
  j["pass"] = r.pass;
  j["clc"] = r.clc;
  j["clauses"] = nlohmann::json::array();
  for (const auto& c : r.clauses) j["clauses"].push_back({{"clause", c.clause}, {"pass", c.pass}, {"detail", c.detail}});
  j["witnesses"] = nlohmann::json::array();
  for (const auto& w : r.witnesses) {
    j["witnesses"].push_back({{"clause", w.clause},
                              {"degree", w.degree},
                              {"piece", w.piece},
                              {"bound", w.bound},
                              {"locus", w.locus.cells.to_json()},
                              {"locus_real_dim", w.locus.real_dim},
                              {"locus_complex_dim", w.locus.complex_dim},
                              {"violating", w.violating.to_json()}});
  }
  j["notes"] = r.notes;
  return j;
}

nlohmann::json filtration_to_json(const Stratification& strat, const OpenFiltration& filt) {
  nlohmann::json j;
  j["n"] = filt.n;
  j["canonical"] = filt.canonical;
  j["U^m"] = indexed_sets(filt.Um, 1);
  j["X^m"] = indexed_sets(filt.Xm, 1);
  if (filt.canonical) j["W_k"] = indexed_sets(filt.W, 1);
  j["U_k"] = indexed_sets(filt.U, 1);
  j["lemmas"] = nlohmann::json::array();
  if (filt.canonical) {
    for (const auto& l : check_filtration_lemmas(strat, filt)) {
      j["lemmas"].push_back({{"name", l.name}, {"holds", l.holds}, {"detail", l.detail}});
    }
  }
  return j;
}

nlohmann::json injective_to_json(const InjectiveComplex& j) {
  const auto& k = *j.domain().owner();
  nlohmann::json out;
  out["domain"] = j.domain().to_json();
  out["generators"] = nlohmann::json::array();
  for (int g = 0; g < j.size(); ++g) {
    out["generators"].push_back({{"cell", k.tuple_json(j.cells()[at(g)])}, {"degree", j.degrees()[at(g)]}});
  }
  out["differential"] = nlohmann::json::array();
  for (int c = 0; c < j.size(); ++c) {
    for (const auto& [r, v] : j.differential().col(c)) out["differential"].push_back({r, c, v.to_string()});
  }
  return out;
}

InjectiveComplex injective_from_json(const ComplexPtr& k, const Field& field, const nlohmann::json& doc) {
  auto find = [&](const nlohmann::json& tuple) {
    std::vector<VertexLabel> labels;
    for (const auto& v : tuple) labels.push_back(label_from_json(v));
    auto id = k->find_labels(labels);
    if (!id) throw std::invalid_argument("complex dump: unknown simplex " + tuple.dump());
    return *id;
  };
  std::vector<int> domain;
  for (const auto& t : doc.at("domain")) domain.push_back(find(t));
  std::vector<int> cell;
  std::vector<int> degree;
  for (const auto& g : doc.at("generators")) {
    cell.push_back(find(g.at("cell")));
    degree.push_back(g.at("degree").get<int>());
  }
  int n = static_cast<int>(cell.size());
  SparseMatrix d(n, n);
  for (const auto& e : doc.at("differential")) {
    int r = e.at(0).get<int>();
    int c = e.at(1).get<int>();
    if (r < 0 || r >= n || c < 0 || c >= n) throw std::invalid_argument("complex dump: entry out of range");
    d.add_entry(field, r, c, field.from_rational(Rational::parse(e.at(2).get<std::string>())));
  }
  InjectiveComplex out(SimplexSet(k, domain), std::move(cell), std::move(degree), std::move(d));
  if (!out.is_valid(field)) throw std::invalid_argument("complex dump: differential is not a valid injective complex");
  return out;
}

nlohmann::json RunManifest::to_json() const {
  nlohmann::json j;
  j["format"] = kFormat;
  j["convention"] = kConvention;
  j["command"] = command;
  j["inputs"] = inputs;
  j["field"] = field;
  j["options"] = {{"cleanup", cleanup},
                  {"check_links", check_links},
                  {"naive", naive},
                  {"refine", refine},
                  {"costalk_sample", costalk_sample}};
  j["stratification_hash"] = stratification_hash;
  return j;
}

RunManifest RunManifest::from_json(const nlohmann::json& j) {
  if (j.value("format", "") != kFormat) throw std::invalid_argument("unknown manifest format");
  RunManifest m;
  m.command = j.at("command").get<std::string>();
  m.inputs = j.at("inputs").get<std::map<std::string, std::string>>();
  m.field = j.at("field").get<std::string>();
  const auto& o = j.at("options");
  m.cleanup = o.at("cleanup").get<bool>();
  m.check_links = o.at("check_links").get<bool>();
  m.naive = o.at("naive").get<bool>();
  m.refine = o.at("refine").get<std::string>();
  m.costalk_sample = o.at("costalk_sample").get<int>();
  m.stratification_hash = j.at("stratification_hash").get<std::string>();
  return m;
}

nlohmann::json bundle_to_json(const ICBundle& b, const RunManifest& manifest) {
  const auto& k = *b.strat.complex();
  nlohmann::json j;
  j["manifest"] = manifest.to_json();
  j["stratification"] = b.strat.to_json();
  j["local_system"] = b.local.to_json(k);
  j["filtration"] = filtration_to_json(b.strat, b.filt);
  j["steps"] = nlohmann::json::array();
  for (const auto& s : b.log) {
    j["steps"].push_back({{"k", s.k},
                          {"cutoff", s.cutoff},
                          {"generators", s.generators},
                          {"max_local_size", s.max_local_size},
                          {"restriction_ok", s.restriction_ok},
                          {"rank_neutral", s.rank_neutral}});
  }
  j["failures"] = b.failures;
  j["ic"] = injective_to_json(b.ic());
  j["stalks"] = table_to_json(k, b.ic().stalk_table(b.field));
  j["hypercohomology"] = dims_to_json(b.ic().hypercohomology(b.field));
  return j;
}

}  // namespace icsheaf
