// SPDX-License-Identifier: MIT
#pragma once

#include <span>
#include <vector>

#include "pgnlab/rational.hpp"

namespace pgnlab {

// Integer candidate (x, y) in Z^{m+n}: x feeds the matrix, y absorbs the
// integer part row by row.
struct IntVec {
  std::vector<Int> x;
  std::vector<Int> y;
};

// Exact n x m rational matrix (n rows, m columns), row-major.
struct RMatrix {
  int m = 0;
  int n = 0;
  std::vector<Rational> entries;  // size n*m

  const Rational& at(int row, int col) const { return entries[size_t(row) * m + col]; }
  Rational& at(int row, int col) { return entries[size_t(row) * m + col]; }
};

// max |v_j|; empty input is a parameter error.
Int sup_norm(std::span<const Int> v);

// Exact sup-norm residual max_i |(xi * v.x)_i - v.y_i|.
Rational residual(const RMatrix& xi, const IntVec& v);

// Squared Euclidean residual sum_i ((xi * v.x)_i - v.y_i)^2, kept rational.
Rational residual_sq_euclid(const RMatrix& xi, const IntVec& v);

// Squared Euclidean norm of an integer vector.
Int norm_sq_euclid(std::span<const Int> v);

// Per-row nearest integer to (xi * x)_i; exact halves round toward -infinity.
std::vector<Int> best_y(const RMatrix& xi, std::span<const Int> x);

// Rational inputs stand in for irrational targets only while every
// denominator dwarfs the search box; this is the admission test.
struct GuardOffender {
  int row = 0, col = 0;
  Rational entry;
};
struct GuardReport {
  bool ok = false;
  Int required;  // 10^6 * x_max^2
  std::vector<GuardOffender> offenders;
};
GuardReport precision_guard(const RMatrix& xi, const Int& x_max);

}  // namespace pgnlab
