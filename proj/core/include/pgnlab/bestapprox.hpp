// SPDX-License-Identifier: MIT
//
// Best-approximation engine: exhaustive, exact, desk-scale.  A record (x_i,
// X_i, L_i) enters the sequence when its residual strictly beats everything
// of smaller sup norm; X_i strictly increase while L_i strictly decrease.
#pragma once

#include <optional>
#include <vector>

#include "pgnlab/matrix.hpp"

namespace pgnlab {

struct BestApproxRecord {
  int index = 0;   // 1-based
  IntVec vector;   // canonical witness: first nonzero x-coordinate positive,
                   // lexicographically smallest among residual minimizers
  Int X;           // sup norm of the x part
  Rational L;      // sup-norm residual, > 0
};

struct BestApproxSequence {
  RMatrix xi;
  Int x_max;
  std::vector<BestApproxRecord> records;
};

// Exhaustive sweep over canonical x with sup norm 1..x_max.  Throws
// errc::precision if the denominator guard fails, errc::rationality if a
// zero residual shows up (the input is too coarse to stand in for an
// irrational target).  `sign_convention` = -1 flips the canonical-half rule
// (first nonzero x-coordinate negative); X_i and L_i must not change.
BestApproxSequence enumerate(const RMatrix& xi, const Int& x_max, int sign_convention = +1);

struct RatioStats {
  double sup_X_ratio = 0;   // max X_{i+1}/X_i over i > burn_in
  double sup_L_ratio = 0;   // max L_i/L_{i+1} over i > burn_in
  Rational min_badness;     // min X_i^m L_i^n over all records
  int burn_in = 0;          // number of leading ratios skipped
};
// burn_in defaults to 2: the first ratios are dominated by X_1 = 1
// start-up effects.  If the sequence is too short for the requested burn-in,
// it is reduced so at least one ratio remains.
RatioStats ratio_stats(const BestApproxSequence& seq, int burn_in = 2);

struct ExponentEstimate {
  bool omega_infinite = false;
  double omega_est = 0;      // max_{i in window} (-log L_i)/(log X_i)
  double omega_hat_est = 0;  // min_{i in window} (-log L_i)/(log X_{i+1})
  int i_lo = 0, i_hi = 0;    // window actually used (for omega)
};
ExponentEstimate exponent_estimates(const BestApproxSequence& seq, int i_burn = 2);

struct DirichletViolation {
  int i = 0;
  Rational product;  // X_{i+1}^m * L_i^n
};
struct DirichletReport {
  int checked = 0;
  std::vector<DirichletViolation> violations;
  bool pass() const { return violations.empty(); }
};
// Exact check of X_{i+1}^m * L_i^n <= 1 for every computed i.
DirichletReport dirichlet_check(const BestApproxSequence& seq);

struct GrowthViolation {
  int k = 0;
  Int X_k, X_k_step;
};
struct GrowthReport {
  int step = 0;  // 3^{m+n} - 1
  int checked = 0;
  std::vector<GrowthViolation> violations;
  bool pass() const { return violations.empty(); }
};
// X_{k+step} >= 2 X_k for every valid k; throws errc::insufficient_data when
// the prefix is shorter than one full step.
GrowthReport growth_check(const BestApproxSequence& seq);

// Euclidean-norm rerun of the same definition.  Squared quantities keep the
// arithmetic rational.
struct EuclidRecord {
  int index = 0;
  IntVec vector;
  Int X_sq;       // squared Euclidean norm of the x part
  Rational L_sq;  // squared Euclidean residual
};
struct EuclidSequence {
  Int x_max;  // records certified for squared norm <= x_max^2
  std::vector<EuclidRecord> records;
};
EuclidSequence enumerate_euclid(const RMatrix& xi, const Int& x_max);

struct CrossNormReport {
  double cap = 0;
  RatioStats sup_stats;
  double euclid_sup_X_ratio = 0;
  double euclid_sup_L_ratio = 0;
  bool bounded_sup = false;     // both sup-norm ratios under the cap
  bool bounded_euclid = false;  // both Euclidean ratios under the cap
  bool verdicts_agree = false;
  // Empirical interleaving of the two X-sequences per common index,
  // reported (norm equivalence predicts factors within [1, sqrt(m)]).
  double min_X_factor = 0, max_X_factor = 0;
};
CrossNormReport cross_norm_consistency(const RMatrix& xi, const Int& x_max, double cap = 1e3, int burn_in = 2);

}  // namespace pgnlab
