#pragma once

#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "icsheaf/simplicial.hpp"

namespace icsheaf {

struct Stratum {
  SimplexSet cells;
  int complex_dim = 0;
  bool is_open = false;
};

// Closed filtration X_n >= ... >= X_0 >= X_{-1} = {} by subcomplexes,
// indexed by complex dimension. Build with validate_stratification.
class Stratification {
 public:
  const ComplexPtr& complex() const { return complex_; }
  int n() const { return n_; }
  // X_k for any integer k: empty below 0, everything at or above n.
  const SimplexSet& level(int k) const;
  const std::vector<Stratum>& strata() const { return strata_; }
  int stratum_of(int simplex) const { return stratum_of_[static_cast<std::size_t>(simplex)]; }

  // Levels as generating simplices (maximal simplices of each X_k).
  nlohmann::json to_json() const;
  std::string hash() const;

 private:
  friend Stratification validate_stratification(const ComplexPtr& k, const std::vector<SimplexSet>& levels);

  ComplexPtr complex_;
  int n_ = 0;
  std::vector<SimplexSet> levels_;  // index k = 0..n
  SimplexSet empty_;
  std::vector<Stratum> strata_;
  std::vector<int> stratum_of_;
};

// levels[k] = X_k for k = 0..n. Throws std::invalid_argument naming the
// offending simplex or stratum.
Stratification validate_stratification(const ComplexPtr& k, const std::vector<SimplexSet>& levels);
// {"levels": {"2": [[...]], "1": [...], "0": [...]}}; a missing key k
// means X_k = X_{k-1}.
Stratification load_stratification(const ComplexPtr& k, const nlohmann::json& doc);
// The single-level stratification X_n = everything, lower levels empty.
Stratification trivial_stratification(const ComplexPtr& k);

struct OpenStrata {
  int n = 0;
  std::vector<SimplexSet> U;  // U^m, index m = 0..n (0 always empty)
  std::vector<SimplexSet> X;  // X^m = closure of U^m
  bool dense = false;
};
// Throws when the union of the X^m is not everything.
OpenStrata compute_open_strata(const Stratification& strat);

struct OpenFiltration {
  int n = 0;
  bool canonical = true;
  std::vector<SimplexSet> Um;  // index m = 0..n
  std::vector<SimplexSet> Xm;
  std::vector<SimplexSet> W;   // index k = 0..n+1 (0 unused); empty for naive
  std::vector<SimplexSet> U;   // index k = 0..n+1 (0 unused)
};

// U^m_k = X^m - X_{m-k}.
SimplexSet open_piece(const Stratification& strat, const OpenStrata& os, int m, int k);
OpenFiltration compute_open_filtration(const Stratification& strat);
// U_k = union over m of (X^m - X_{m-k}); not the canonical filtration.
OpenFiltration naive_filtration(const Stratification& strat);

struct LemmaCheck {
  std::string name;
  bool holds = true;
  std::string detail;
};
// The five identities: openness, density, strata content, closedness,
// W-difference.
std::vector<LemmaCheck> check_filtration_lemmas(const Stratification& strat, const OpenFiltration& filt);

struct RefinementResult {
  bool is_refinement = false;
  // For each stratum of the fine stratification, the coarse stratum
  // containing it (-1 when it straddles several).
  std::vector<int> coarse_of_fine;
};
RefinementResult is_refinement(const Stratification& fine, const Stratification& coarse);

struct LinkIssue {
  int stratum = -1;
  int simplex = -1;
  int expected_sphere_dim = 0;
  std::map<int, int> reduced_cohomology;
};
// Advisory: the link of every simplex inside its stratum closure should be
// a rational homology sphere of dimension 2k - dim(simplex) - 1.
std::vector<LinkIssue> check_links(const Stratification& strat, const Field& field);
ComplexPtr link_in(const SimplexSet& closed, int sigma);

}  // namespace icsheaf
