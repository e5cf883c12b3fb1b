// SPDX-License-Identifier: MIT
//
// Balanced piecewise-linear tuples ("templates"): m+n continuous functions
// with exact rational slopes subject to four structural axioms — sum zero,
// pointwise ordering, admissible slopes, convex partial sums on strict
// intervals.  Values live in doubles; every slope stays an exact rational.
#pragma once

#include <string>
#include <utility>
#include <vector>

#include "pgnlab/rational.hpp"

namespace pgnlab {

// Pointwise comparisons use this relative unit: tolerance at q is
// eps_eq * max(1, |q|), since values scale linearly with the abscissa.
inline constexpr double eps_eq = 1e-9;
inline double value_tol(double q) {
  double a = q < 0 ? -q : q;
  return eps_eq * (a > 1.0 ? a : 1.0);
}

struct PLPiece {
  double q_to = 0;
  Rational slope;
};

struct PiecewiseLinear {
  double q_start = 0;
  double start_value = 0;
  std::vector<PLPiece> pieces;
  std::vector<double> node_values;  // cache: value at q_start and each piece end

  void rebuild_cache();
  double q_end() const { return pieces.empty() ? q_start : pieces.back().q_to; }
  double end_value() const { return node_values.empty() ? start_value : node_values.back(); }
  double value_at(double q) const;
  const Rational& slope_at(double q) const;  // piece containing q (right-open)
  void append(const Rational& slope, double q_to);
};

struct Template {
  int m = 0, n = 0;
  std::vector<PiecewiseLinear> components;  // P_1 <= ... <= P_{m+n}
  std::vector<double> junctions;            // generation boundaries (metadata)

  double q_start() const { return components.empty() ? 0 : components.front().q_start; }
  double q_end() const { return components.empty() ? 0 : components.front().q_end(); }
};

enum class axiom {
  sum_zero,               // (i)
  ordering,               // (ii)
  slope_form,             // (iii)
  partial_sum_convexity,  // (iv)
};
const char* axiom_name(axiom a);

struct AxiomViolation {
  axiom id;
  double q_from = 0, q_to = 0;
  int component = 0;  // 1-based where meaningful, else 0
  std::string detail;
};

struct ValidationReport {
  std::vector<AxiomViolation> violations;
  // near-tangency strict/equal boundaries, informational only
  std::vector<std::pair<double, double>> borderline;
  bool ok() const { return violations.empty(); }
};

ValidationReport validate(const Template& t);

// True iff s = (-k n + l m)/(k + l) for some 0<=k<=m, 0<=l<=n, k+l>=1.
bool slope_admissible(const Rational& s, int m, int n);
// Integer slopes of partial sums: s = -k n + l m, same (k,l) box.
bool partial_slope_admissible(const Rational& s, int m, int n);

double evaluate(const Template& t, double q, int j);  // j is 1-based
std::vector<double> sorted_evaluate(const Template& t, double q);

// Joins two templates sharing a junction abscissa; component values must
// agree there within tolerance, else errc::validation.
Template concat(const Template& a, const Template& b);

struct AbcTemplateMeasurements {
  double max_slope_m_interval = 0;
  double max_slope_neg_n_interval = 0;
  double max_abs_local_min = 0;
};
// Generalized (a)/(b)/(c) measurement on P_1: longest maximal run of slope
// exactly m, of slope exactly -n, and the largest |local minimum|.
AbcTemplateMeasurements abc_measurements_template(const Template& t);

struct RatioExtremes {
  double liminf_est = 0;
  double limsup_est = 0;
};
// min/max of P_1(q)/q over the tail portion (by index) of the grid.
RatioExtremes p1_ratio_extremes(const Template& t, const std::vector<double>& q_grid, double tail_fraction = 0.5);
RatioExtremes p1_ratio_extremes(const Template& t, double tail_fraction = 0.5);

struct ContractionBounds {
  double lower = 0;
  double upper = 0;
  double zero_fraction = 0;
};
// Simplified rule: the template contributes the full rate m*n wherever it
// vanishes identically; elsewhere nothing is claimed.
ContractionBounds contraction_bounds(const Template& t);

}  // namespace pgnlab
