// SPDX-License-Identifier: MIT
#include "pgnlab/matrix.hpp"

#include "pgnlab/errors.hpp"

namespace pgnlab {

Int sup_norm(std::span<const Int> v) {
  if (v.empty()) fail(errc::parameter, "sup_norm of an empty vector");
  Int best = 0;
  for (const Int& c : v) {
    Int a = abs(c);
    if (a > best) best = a;
  }
  return best;
}

Int norm_sq_euclid(std::span<const Int> v) {
  Int s = 0;
  for (const Int& c : v) s += c * c;
  return s;
}

static void check_dims(const RMatrix& xi, const IntVec& v) {
  if (int(v.x.size()) != xi.m || int(v.y.size()) != xi.n)
    fail(errc::dimension, "vector shape does not match the matrix");
}

Rational residual(const RMatrix& xi, const IntVec& v) {
  check_dims(xi, v);
  Rational worst = 0;
  for (int i = 0; i < xi.n; ++i) {
    Rational s = -Rational(v.y[i]);
    for (int j = 0; j < xi.m; ++j) s += xi.at(i, j) * v.x[j];
    if (s < 0) s = -s;
    if (s > worst) worst = s;
  }
  return worst;
}

Rational residual_sq_euclid(const RMatrix& xi, const IntVec& v) {
  check_dims(xi, v);
  Rational total = 0;
  for (int i = 0; i < xi.n; ++i) {
    Rational s = -Rational(v.y[i]);
    for (int j = 0; j < xi.m; ++j) s += xi.at(i, j) * v.x[j];
    total += s * s;
  }
  return total;
}

std::vector<Int> best_y(const RMatrix& xi, std::span<const Int> x) {
  if (int(x.size()) != xi.m) fail(errc::dimension, "x length does not match the matrix");
  std::vector<Int> y(xi.n);
  for (int i = 0; i < xi.n; ++i) {
    Rational s = 0;
    for (int j = 0; j < xi.m; ++j) s += xi.at(i, j) * x[j];
    y[i] = round_half_down(num(s), den(s));
  }
  return y;
}

GuardReport precision_guard(const RMatrix& xi, const Int& x_max) {
  GuardReport rep;
  rep.required = Int(1000000) * x_max * x_max;
  for (int i = 0; i < xi.n; ++i)
    for (int j = 0; j < xi.m; ++j)
      if (den(xi.at(i, j)) < rep.required) rep.offenders.push_back({i, j, xi.at(i, j)});
  rep.ok = rep.offenders.empty();
  return rep;
}

}  // namespace pgnlab
