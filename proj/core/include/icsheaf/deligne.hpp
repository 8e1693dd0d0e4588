#pragma once

#include <optional>
#include <string>
#include <vector>

#include "icsheaf/injective.hpp"
#include "icsheaf/local_system.hpp"
#include "icsheaf/stratify.hpp"

namespace icsheaf {

struct BuildOptions {
  bool cleanup = true;
  // Compare valuewise and resolved stalk tables after every resolution.
  bool reference_check = true;
  // Use naive_filtration and truncate only on the newly added strata.
  bool naive = false;
};

struct BuildStep {
  int k = 0;
  int cutoff = 0;
  int generators = 0;
  int max_local_size = 0;
  bool restriction_ok = true;
  bool rank_neutral = true;
};

struct ICBundle {
  Field field = Field::rationals();
  Stratification strat;
  OpenFiltration filt;
  LocalSystemSpec local;
  bool cleanup = true;
  std::vector<InjectiveComplex> I;  // index 1..n+1 (0 unused)
  std::vector<BuildStep> log;
  // Human-readable invariant failures; empty when every check held.
  std::vector<std::string> failures;

  const InjectiveComplex& ic() const { return I.back(); }
  bool ok() const { return failures.empty(); }
};

// L^m[m] on U^m, resolved.
InjectiveComplex local_piece(const Field& field, const OpenFiltration& filt, const LocalSystemSpec& local, int m);

ICBundle build_ic(const Field& field, const Stratification& strat, const LocalSystemSpec& local,
                  const BuildOptions& options = {});

// Deligne construction on X^m alone with the filtration X^m - X_{m-k};
// the result lives on X^m.
InjectiveComplex build_ic_pure(const Field& field, const Stratification& strat, int m, const LocalSystemSpec& local,
                               const BuildOptions& options = {});

struct TableMismatch {
  int simplex = -1;
  int degree = 0;
  int expected = 0;
  int actual = 0;
};
// First difference between two stalk tables, if any.
std::optional<TableMismatch> first_mismatch(const StalkTable& expected, const StalkTable& actual);

struct DecompositionReport {
  bool equal = false;
  std::optional<TableMismatch> mismatch;
  std::vector<DegreeDims> summand_hypercohomology;  // index m
  DegreeDims total_hypercohomology;
};
DecompositionReport check_decomposition(const ICBundle& bundle, const BuildOptions& options = {});

struct ClcFailure {
  int stratum = -1;
  int face = -1;
  int coface = -1;
};
// Restriction maps between covering pairs inside a stratum that fail to be
// isomorphisms on some cohomology sheaf.
std::vector<ClcFailure> clc_failures(const Field& field, const InjectiveComplex& s, const Stratification& strat);

struct CoarseningState {
  std::vector<SimplexSet> levels;            // X^can_k, k = 0..n
  std::vector<std::vector<int>> merged;      // per k: input strata absorbed into the k-dimensional region
  std::vector<std::vector<int>> blocked;     // per k: adjacent strata kept apart
  std::optional<Stratification> result;      // when the levels validate
  std::string validation_error;
};
CoarseningState clc_coarsen(const Field& field, const Stratification& strat, const InjectiveComplex& s);

struct ComparisonReport {
  bool stalks_equal = false;
  bool costalks_equal = false;
  bool hypercohomology_equal = false;
  std::optional<TableMismatch> stalk_mismatch;
  std::optional<TableMismatch> costalk_mismatch;
  DegreeDims hypercohomology_first;
  DegreeDims hypercohomology_second;

  bool pass() const { return stalks_equal && costalks_equal && hypercohomology_equal; }
};
// sample empty means every simplex.
ComparisonReport compare_complexes(const Field& field, const InjectiveComplex& a, const InjectiveComplex& b,
                                   const std::vector<int>& sample = {});
ComparisonReport compare_stratifications(const Field& field, const Stratification& first,
                                         const LocalSystemSpec& first_local, const Stratification& second,
                                         const LocalSystemSpec& second_local, const std::vector<int>& sample = {},
                                         const BuildOptions& options = {});

}  // namespace icsheaf
