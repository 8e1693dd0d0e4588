#pragma once

#include <filesystem>
#include <map>
#include <string>

#include <nlohmann/json.hpp>

#include "icsheaf/axioms.hpp"
#include "icsheaf/deligne.hpp"

namespace icsheaf {

nlohmann::json read_json_file(const std::filesystem::path& path);
// Pretty-printed with a trailing newline; keys sorted, so output is stable.
void write_json_file(const std::filesystem::path& path, const nlohmann::json& doc);

// {"-2": 1, "-1": 1}
nlohmann::json dims_to_json(const DegreeDims& d);
DegreeDims dims_from_json(const nlohmann::json& j);
// {"[1,2]": {"-2": 1}}
nlohmann::json table_to_json(const SimplicialComplex& k, const StalkTable& t);
StalkTable table_from_json(const SimplicialComplex& k, const nlohmann::json& j);

nlohmann::json report_to_json(const AxiomReport& r);
nlohmann::json filtration_to_json(const Stratification& strat, const OpenFiltration& filt);

// Generators (cell, degree) and differential entries as [row, col, "p/q"].
nlohmann::json injective_to_json(const InjectiveComplex& j);
InjectiveComplex injective_from_json(const ComplexPtr& k, const Field& field, const nlohmann::json& doc);

struct RunManifest {
  static constexpr const char* kFormat = "icsheaf-run/1";
  static constexpr const char* kConvention = "paper-shifted";

  std::string command;
  std::map<std::string, std::string> inputs;
  std::string field = "q";
  bool cleanup = true;
  bool check_links = false;
  bool naive = false;
  std::string refine;
  int costalk_sample = 0;  // 0 = every simplex
  std::string stratification_hash;

  nlohmann::json to_json() const;
  static RunManifest from_json(const nlohmann::json& j);
};

nlohmann::json bundle_to_json(const ICBundle& b, const RunManifest& manifest);

}  // namespace icsheaf
