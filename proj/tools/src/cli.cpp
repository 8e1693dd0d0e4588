#include "cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <map>
#include <sstream>
#include <stdexcept>

#include "icsheaf/axioms.hpp"
#include "icsheaf/bundled.hpp"
#include "icsheaf/serialize.hpp"

namespace icsheaf::cli {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::size_t at(int i) { return static_cast<std::size_t>(i); }

struct Options {
  std::string input;
  std::string complex_path;
  std::string strat_path;
  std::string local_path;
  std::string sheaf_path;
  std::string second_path;
  std::string field = "q";
  std::string cleanup = "on";
  bool check_links = false;
  bool naive = false;
  bool table = false;
  std::string out;
  std::string refine;
  std::string cache;
  int sample = 0;
};

struct Loaded {
  Field field = Field::rationals();
  ComplexPtr complex;
  Stratification strat;
  LocalSystemSpec local;
  RunManifest manifest;
};

fs::path cache_dir(const Options& o) {
  if (!o.cache.empty()) return o.cache;
  if (const char* env = std::getenv("ICSHEAF_CACHE")) return env;
  if (const char* xdg = std::getenv("XDG_CACHE_HOME")) return fs::path(xdg) / "icsheaf";
  if (const char* home = std::getenv("HOME")) return fs::path(home) / ".cache" / "icsheaf";
  return fs::temp_directory_path() / "icsheaf-cache";
}

std::string pick(const std::string& given, const fs::path& dir, const char* file) {
  if (!given.empty()) return given;
  return (dir / file).string();
}

Loaded load(const Options& o, const std::string& command, bool apply_refine) {
  Loaded l;
  l.field = Field::parse(o.field);
  l.manifest.command = command;
  l.manifest.field = l.field.name();
  l.manifest.cleanup = o.cleanup == "on";
  l.manifest.check_links = o.check_links;
  l.manifest.naive = o.naive;
  l.manifest.refine = o.refine;
  l.manifest.costalk_sample = o.sample;
  if (!o.input.empty()) l.manifest.inputs["input"] = o.input;

  fs::path dir = o.input;
  bool demo = o.input.rfind("demo:", 0) == 0;
  if (demo) {
    std::string name = o.input.substr(5);
    const auto& names = bundled_names();
    if (std::find(names.begin(), names.end(), name) == names.end()) {
      throw std::invalid_argument("unknown bundled space: " + name);
    }
    load_bundled(name, cache_dir(o));
    dir = cache_dir(o) / name;
  }
  std::string cpath = pick(o.complex_path, dir, "complex.json");
  l.complex = load_complex(read_json_file(cpath));
  if (!o.complex_path.empty()) l.manifest.inputs["complex"] = o.complex_path;

  std::string spath = pick(o.strat_path, dir, "stratification.json");
  if (o.strat_path.empty() && !fs::exists(spath)) {
    l.strat = trivial_stratification(l.complex);
  } else {
    l.strat = load_stratification(l.complex, read_json_file(spath));
    if (!o.strat_path.empty()) l.manifest.inputs["stratification"] = o.strat_path;
  }

  std::string lpath = pick(o.local_path, dir, "local_system.json");
  if (o.local_path.empty() && !fs::exists(lpath)) {
    l.local = LocalSystemSpec{};
  } else {
    l.local = load_local_system(l.complex, l.field, read_json_file(lpath));
    if (!o.local_path.empty()) l.manifest.inputs["local_system"] = o.local_path;
  }
  if (!o.sheaf_path.empty()) l.manifest.inputs["sheaf"] = o.sheaf_path;
  if (!o.second_path.empty()) l.manifest.inputs["second"] = o.second_path;
  if (apply_refine && !o.refine.empty()) l.strat = refine(l.strat, o.refine);
  l.manifest.stratification_hash = l.strat.hash();
  return l;
}

BuildOptions build_options(const Options& o) {
  BuildOptions b;
  b.cleanup = o.cleanup == "on";
  b.naive = o.naive;
  return b;
}

// The complex under test: a dump given with --sheaf, else the IC.
InjectiveComplex subject(const Options& o, const Loaded& l) {
  if (!o.sheaf_path.empty()) {
    json doc = read_json_file(o.sheaf_path);
    // A build report nests the bundle under "result".
    if (doc.contains("result") && doc.at("result").is_object()) doc = doc.at("result");
    return injective_from_json(l.complex, l.field, doc.contains("ic") ? doc.at("ic") : doc);
  }
  ICBundle b = build_ic(l.field, l.strat, l.local, build_options(o));
  if (!b.ok()) throw std::runtime_error("construction invariant failed: " + b.failures.front());
  return b.ic();
}

// Evenly strided simplex ids; every simplex when n is 0 or too large.
std::vector<int> sample_ids(int size, int n) {
  std::vector<int> out;
  if (n <= 0 || n >= size) {
    for (int i = 0; i < size; ++i) out.push_back(i);
    return out;
  }
  for (int i = 0; i < n; ++i) out.push_back(static_cast<int>(static_cast<long long>(i) * size / n));
  return out;
}

json mismatch_json(const SimplicialComplex& k, const std::optional<TableMismatch>& m) {
  if (!m) return nullptr;
  return {{"simplex", k.tuple_string(m->simplex)}, {"degree", m->degree}, {"expected", m->expected}, {"actual", m->actual}};
}

std::string join_sets(const std::vector<SimplexSet>& sets, int k) {
  const auto& s = sets[at(k)];
  std::ostringstream os;
  os << s.size() << " " << s.to_json().dump();
  return os.str();
}

std::string filtration_table(const Stratification& strat, const OpenFiltration& f) {
  std::ostringstream os;
  os << (f.canonical ? "canonical" : "naive") << " filtration, n = " << f.n << "\n";
  for (int m = 1; m <= f.n; ++m) {
    os << "U^" << m << "  " << join_sets(f.Um, m) << "\n";
    os << "X^" << m << "  " << join_sets(f.Xm, m) << "\n";
  }
  for (int k = 1; k <= f.n + 1; ++k) {
    if (f.canonical) os << "W_" << k << "  " << join_sets(f.W, k) << "\n";
    os << "U_" << k << "  " << join_sets(f.U, k) << "\n";
  }
  if (f.canonical) {
    for (const auto& l : check_filtration_lemmas(strat, f)) {
      os << "lemma " << l.name << ": " << (l.holds ? "holds" : "FAILS");
      if (!l.detail.empty()) os << " (" << l.detail << ")";
      os << "\n";
    }
  }
  return os.str();
}

struct Outcome {
  json result;
  int code = kPass;
  std::string text;  // replaces the JSON on stdout when set
};

Outcome cmd_validate(const Options& o, const Loaded& l) {
  Outcome r;
  const auto& k = *l.complex;
  r.result["vertices"] = k.vertex_count();
  r.result["simplices"] = k.size();
  r.result["dim"] = k.dim();
  r.result["n"] = l.strat.n();
  r.result["strata"] = json::array();
  for (const auto& s : l.strat.strata()) {
    r.result["strata"].push_back({{"complex_dim", s.complex_dim},
                                  {"open", s.is_open},
                                  {"size", s.cells.size()},
                                  {"cells", s.cells.to_json()}});
  }
  if (o.check_links) {
    r.result["links"] = json::array();
    for (const auto& issue : check_links(l.strat, l.field)) {
      r.result["links"].push_back({{"stratum", issue.stratum},
                                   {"simplex", k.tuple_string(issue.simplex)},
                                   {"expected_sphere_dim", issue.expected_sphere_dim},
                                   {"reduced_cohomology", dims_to_json(issue.reduced_cohomology)}});
    }
  }
  return r;
}

Outcome cmd_filtration(const Options& o, const Loaded& l) {
  Outcome r;
  OpenFiltration f = o.naive ? naive_filtration(l.strat) : compute_open_filtration(l.strat);
  r.result = filtration_to_json(l.strat, f);
  if (o.table) r.text = filtration_table(l.strat, f);
  for (const auto& lemma : r.result["lemmas"]) {
    if (!lemma["holds"].get<bool>()) r.code = kFail;
  }
  return r;
}

Outcome cmd_build(const Options& o, const Loaded& l) {
  Outcome r;
  ICBundle b = build_ic(l.field, l.strat, l.local, build_options(o));
  r.result = bundle_to_json(b, l.manifest);
  r.result.erase("manifest");
  r.code = b.ok() ? kPass : kFail;
  return r;
}

Outcome cmd_check(const Options& o, const Loaded& l, const std::string& which) {
  Outcome r;
  InjectiveComplex s = subject(o, l);
  AxiomReport rep;
  if (which == "ax1") {
    rep = check_ax1(l.field, s, l.strat, o.sheaf_path.empty() ? &l.local : nullptr);
  } else if (which == "ax2") {
    rep = check_ax2(l.field, s, l.strat);
  } else {
    rep = check_classic_ax2(l.field, s);
  }
  r.result = report_to_json(rep);
  r.code = rep.pass ? kPass : kFail;
  return r;
}

Outcome cmd_hyperco(const Options& o, const Loaded& l) {
  Outcome r;
  InjectiveComplex s = subject(o, l);
  r.result["hypercohomology"] = dims_to_json(s.hypercohomology(l.field));
  return r;
}

Outcome cmd_stalks(const Options& o, const Loaded& l) {
  Outcome r;
  InjectiveComplex s = subject(o, l);
  r.result["stalks"] = table_to_json(*l.complex, s.stalk_table(l.field));
  return r;
}

Outcome cmd_costalks(const Options& o, const Loaded& l) {
  Outcome r;
  InjectiveComplex s = subject(o, l);
  r.result["costalks"] = table_to_json(*l.complex, s.costalk_table(l.field, sample_ids(l.complex->size(), o.sample)));
  return r;
}

Outcome cmd_compare(const Options& o, const Loaded& l) {
  Stratification second;
  if (!o.second_path.empty()) {
    second = load_stratification(l.complex, read_json_file(o.second_path));
  } else if (!o.refine.empty()) {
    second = refine(l.strat, o.refine);
  } else {
    throw std::invalid_argument("compare needs --second <stratification> or --refine <recipe>");
  }
  Outcome r;
  ComparisonReport c = compare_stratifications(l.field, l.strat, l.local, second, l.local,
                                               sample_ids(l.complex->size(), o.sample), build_options(o));
  const auto& k = *l.complex;
  r.result = {{"pass", c.pass()},
              {"stalks_equal", c.stalks_equal},
              {"costalks_equal", c.costalks_equal},
              {"hypercohomology_equal", c.hypercohomology_equal},
              {"stalk_mismatch", mismatch_json(k, c.stalk_mismatch)},
              {"costalk_mismatch", mismatch_json(k, c.costalk_mismatch)},
              {"hypercohomology_first", dims_to_json(c.hypercohomology_first)},
              {"hypercohomology_second", dims_to_json(c.hypercohomology_second)},
              {"second_stratification", second.to_json()},
              {"second_hash", second.hash()}};
  r.code = c.pass() ? kPass : kFail;
  return r;
}

Outcome cmd_coarsen(const Options& o, const Loaded& l) {
  Outcome r;
  InjectiveComplex s = subject(o, l);
  CoarseningState st = clc_coarsen(l.field, l.strat, s);
  json levels = json::object();
  for (int d = 0; d < static_cast<int>(st.levels.size()); ++d) levels[std::to_string(d)] = st.levels[at(d)].size();
  r.result["level_sizes"] = levels;
  r.result["merged"] = st.merged;
  r.result["blocked"] = st.blocked;
  if (st.result) {
    r.result["stratification"] = st.result->to_json();
    r.result["strata"] = st.result->strata().size();
  } else {
    r.result["validation_error"] = st.validation_error;
    r.code = kFail;
  }
  return r;
}

Outcome cmd_demo(const Options& o, const std::string& name) {
  BundledSpace b = make_bundled(name);
  fs::path dir = fs::path(o.out.empty() ? "." : o.out) / name;
  write_bundled(b, dir);
  Outcome r;
  r.result = {{"name", b.name},
              {"description", b.description},
              {"directory", dir.string()},
              {"simplices", b.complex->size()},
              {"n", b.stratification.n()},
              {"stratification_hash", b.stratification.hash()}};
  return r;
}

void add_common(CLI::App* sub, Options& o) {
  sub->add_option("input", o.input, "demo:<name> or a directory with complex.json, stratification.json, local_system.json");
  sub->add_option("--complex", o.complex_path, "complex file");
  sub->add_option("--strat", o.strat_path, "stratification file");
  sub->add_option("--local", o.local_path, "local system file");
  sub->add_option("--field", o.field, "q or fp:<p>");
  sub->add_option("--cleanup", o.cleanup, "on|off")->check(CLI::IsMember({"on", "off"}));
  sub->add_flag("--check-links", o.check_links, "advisory link homology check");
  sub->add_option("--out", o.out, "also write the report into this directory");
  sub->add_option("--refine", o.refine, "extra-point | fake-sphere | random:<seed>");
  sub->add_flag("--naive", o.naive, "use the naive open filtration");
  sub->add_option("--cache", o.cache, "cache directory for bundled spaces");
  sub->add_option("--costalk-sample", o.sample, "number of simplices for costalk scans (0 = all)");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Intersection complexes of stratified simplicial complexes", "icsheaf"};
  app.require_subcommand(1);
  Options o;
  std::string demo_name;
  const std::vector<std::pair<std::string, std::string>> names = {
      {"validate", "check the complex, stratification and local system"},
      {"filtration", "print U^m, X^m, W_k, U_k and the filtration lemmas"},
      {"build", "construct the intersection complex"},
      {"check-ax1", "check the filtration form of the axioms"},
      {"check-ax2", "check the support/cosupport form of the axioms"},
      {"check-classic-ax2", "check unstratified support and cosupport"},
      {"hyperco", "hypercohomology dimensions"},
      {"stalks", "stalk cohomology table"},
      {"costalks", "costalk cohomology table"},
      {"compare", "compare the ICs of two stratifications"},
      {"coarsen", "merge strata along which the complex is clc"}};
  std::map<std::string, CLI::App*> subs;
  for (const auto& [n, help] : names) {
    auto* sub = app.add_subcommand(n, help);
    add_common(sub, o);
    subs[n] = sub;
  }
  subs["filtration"]->add_flag("--table", o.table, "print a human-readable table");
  for (const char* n : {"check-ax1", "check-ax2", "check-classic-ax2", "hyperco", "stalks", "costalks", "coarsen"}) {
    subs[n]->add_option("--sheaf", o.sheaf_path, "complex dump (or bundle file) to use instead of the IC");
  }
  subs["compare"]->add_option("--second", o.second_path, "second stratification file");
  auto* demo = app.add_subcommand("demo", "write a bundled space to <out>/<name>");
  demo->add_option("name", demo_name)->required();
  demo->add_option("--out", o.out, "parent directory");

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kPass : kError;
  }

  try {
    if (demo->parsed()) {
      if (demo_name.rfind("demo:", 0) == 0) demo_name = demo_name.substr(5);
      Outcome r = cmd_demo(o, demo_name);
      out << r.result.dump(2) << "\n";
      return r.code;
    }
    std::string command;
    for (const auto& [n, sub] : subs) {
      if (sub->parsed()) command = n;
    }
    if (o.input.empty() && o.complex_path.empty()) throw std::invalid_argument("no input given");
    Loaded l = load(o, command, command != "compare");
    Outcome r;
    if (command == "validate") {
      r = cmd_validate(o, l);
    } else if (command == "filtration") {
      r = cmd_filtration(o, l);
    } else if (command == "build") {
      r = cmd_build(o, l);
    } else if (command == "check-ax1") {
      r = cmd_check(o, l, "ax1");
    } else if (command == "check-ax2") {
      r = cmd_check(o, l, "ax2");
    } else if (command == "check-classic-ax2") {
      r = cmd_check(o, l, "classic");
    } else if (command == "hyperco") {
      r = cmd_hyperco(o, l);
    } else if (command == "stalks") {
      r = cmd_stalks(o, l);
    } else if (command == "costalks") {
      r = cmd_costalks(o, l);
    } else if (command == "compare") {
      r = cmd_compare(o, l);
    } else {
      r = cmd_coarsen(o, l);
    }
    json report;
    report["manifest"] = l.manifest.to_json();
    report["result"] = r.result;
    report["exit_code"] = r.code;
    if (!o.out.empty()) write_json_file(fs::path(o.out) / (command + ".json"), report);
    if (!r.text.empty()) {
      out << r.text;
    } else {
      out << report.dump(2) << "\n";
    }
    return r.code;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kError;
  }
}

}  // namespace icsheaf::cli
