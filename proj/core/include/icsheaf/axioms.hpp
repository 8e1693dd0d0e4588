#pragma once

#include <string>
#include <vector>

#include "icsheaf/deligne.hpp"

namespace icsheaf {

enum class LocusMode { kStalk, kCostalk };

// A union of open simplices with the dimension of its closure. An empty
// locus has real_dim = complex_dim = -1 and satisfies every bound.
struct Locus {
  SimplexSet cells;
  int real_dim = -1;
  int complex_dim = -1;
};

// Cells whose degree-a stalk (or costalk) cohomology is nonzero, inside
// `within` when given. Throws std::domain_error when the closure has odd
// real dimension.
Locus support_locus(const Field& field, const InjectiveComplex& s, int a, LocusMode mode,
                    const SimplexSet* within = nullptr);

struct Witness {
  std::string clause;
  int degree = 0;
  int piece = 0;  // m for [AX2'], k for [AX1']
  Locus locus;
  // Part of the locus carrying the excess dimension (the whole locus for
  // vanishing clauses).
  SimplexSet violating;
  int bound = 0;
};

struct ClauseResult {
  std::string clause;
  bool pass = true;
  std::string detail;
};

struct AxiomReport {
  std::string axiom;
  bool pass = true;
  bool clc = true;
  std::vector<ClauseResult> clauses;
  std::vector<Witness> witnesses;
  std::vector<std::string> notes;

  const ClauseResult* clause(const std::string& name) const;
};

// [AX1'] with respect to strat. When `local` is given clause (a) also
// compares ranks.
AxiomReport check_ax1(const Field& field, const InjectiveComplex& s, const Stratification& strat,
                      const LocalSystemSpec* local = nullptr);
// [AX2'] with V^m = U^m of strat; strat also serves for the clc check.
AxiomReport check_ax2(const Field& field, const InjectiveComplex& s, const Stratification& strat);
// Classical support and cosupport with n = top complex dimension.
AxiomReport check_classic_ax2(const Field& field, const InjectiveComplex& s);

}  // namespace icsheaf
