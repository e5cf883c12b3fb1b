// SPDX-License-Identifier: MIT
//
// Empirical geometry checks on enumerated best-approximation sequences:
// independence of successive triples, the 3x3 determinant bound for m = 2,
// runs trapped in a common plane, and the covolume growth witness for
// m = 1.  Everything is exact integer/rational arithmetic; quantities the
// theory leaves as unspecified constants are reported, never asserted.
#pragma once

#include <vector>

#include "pgnlab/bestapprox.hpp"

namespace pgnlab {

// Maximal stretch of consecutive records confined to one 2D sublattice.
// Adjacent runs share their boundary index, so the runs partition the
// index intervals between independent triples.
struct PatternRun {
  int nu = 0;  // first record index (0-based)
  int k = 0;   // last record index, nu < k
  IntVec basis_a, basis_b;  // the spanning pair (vectors nu, nu+1)
};

// Booleans for the triples (v_{i-1}, v_i, v_{i+1}); entry j covers the
// triple centered at record j+1.  Exact integer rank, full (x, y) vectors.
std::vector<bool> independence_pattern(const BestApproxSequence& seq);

struct DetRecord {
  int i = 0;  // center index of the triple
  Int det_value;
  double bound_ratio = 0;        // |det| / (X_i * X_{i+1} * L_{i-1})
  bool used_two_y_rows = false;  // proportional x-rows fallback engaged
};
struct DetBoundsReport {
  std::vector<DetRecord> records;
  double max_bound_ratio = 0;  // empirical stand-in for the hidden constant
};
// For every independent triple picks three coordinate rows spanning rank 3
// (the two x-rows plus the first suitable y-row; if the x-rows are
// proportional, one x-row plus two y-rows) and records the exact 3x3
// determinant.  Requires m = 2.
DetBoundsReport det_bounds_m2(const BestApproxSequence& seq);

std::vector<PatternRun> detect_2d_runs(const BestApproxSequence& seq);
std::vector<PatternRun> detect_2d_runs(const EuclidSequence& seq);

// Endpoint comparison L_nu X_{nu+1} <= C * L_{k-1} X_k along one run, in
// the Euclidean norm; squared rationals keep it exact.  ratio = rhs/lhs.
struct MonotonicityReport {
  Rational lhs_sq;
  Rational rhs_sq;
  double ratio = 0;
};
MonotonicityReport monotonicity_check(const EuclidSequence& seq, const PatternRun& run);

struct CovolRecord {
  int i = 0;    // index of the newer record of the pair
  Int covol_sq; // exact Gram determinant of the full vectors (i-1, i)
  double ratio = 0;  // L_{i-1} X_i / covol
};
struct CovolReport {
  std::vector<CovolRecord> records;
  double min_ratio = 0, max_ratio = 0;
};
// Covolume of span_Z(v_{i-1}, v_i) per index; requires m = 1.  The theory
// says the covolumes blow up; we record the normalized ratios and assert
// only positivity (exact).
CovolReport simultaneous_covol_check(const BestApproxSequence& seq);

}  // namespace pgnlab
