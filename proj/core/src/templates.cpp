// SPDX-License-Identifier: MIT
#include "pgnlab/templates.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "pgnlab/errors.hpp"

namespace pgnlab {

void PiecewiseLinear::rebuild_cache() {
  node_values.assign(1, start_value);
  double q_prev = q_start, v = start_value;
  for (const auto& p : pieces) {
    v += to_double(p.slope) * (p.q_to - q_prev);
    node_values.push_back(v);
    q_prev = p.q_to;
  }
}

void PiecewiseLinear::append(const Rational& slope, double q_to) {
  double prev = q_end();
  if (!(q_to > prev)) fail(errc::parameter, "piece must extend the domain");
  if (node_values.empty()) node_values.push_back(start_value);
  pieces.push_back({q_to, slope});
  node_values.push_back(node_values.back() + to_double(slope) * (q_to - prev));
}

double PiecewiseLinear::value_at(double q) const {
  if (pieces.empty()) return start_value;
  if (q <= q_start) return start_value;
  // locate the piece whose right end is >= q
  size_t lo = 0, hi = pieces.size();
  while (lo < hi) {
    size_t mid = (lo + hi) / 2;
    if (pieces[mid].q_to < q)
      lo = mid + 1;
    else
      hi = mid;
  }
  if (lo == pieces.size()) return node_values.back();
  double left_q = lo == 0 ? q_start : pieces[lo - 1].q_to;
  double left_v = node_values[lo];
  return left_v + to_double(pieces[lo].slope) * (q - left_q);
}

const Rational& PiecewiseLinear::slope_at(double q) const {
  if (pieces.empty()) fail(errc::domain, "no pieces");
  size_t lo = 0, hi = pieces.size();
  while (lo < hi) {
    size_t mid = (lo + hi) / 2;
    if (pieces[mid].q_to <= q)
      lo = mid + 1;
    else
      hi = mid;
  }
  if (lo == pieces.size()) lo = pieces.size() - 1;
  return pieces[lo].slope;
}

const char* axiom_name(axiom a) {
  switch (a) {
    case axiom::sum_zero: return "i";
    case axiom::ordering: return "ii";
    case axiom::slope_form: return "iii";
    case axiom::partial_sum_convexity: return "iv";
  }
  return "?";
}

bool slope_admissible(const Rational& s, int m, int n) {
  for (int k = 0; k <= m; ++k)
    for (int l = 0; l <= n; ++l) {
      if (k + l == 0) continue;
      if (s == Rational(-k * n + l * m, k + l)) return true;
    }
  return false;
}

bool partial_slope_admissible(const Rational& s, int m, int n) {
  if (den(s) != 1) return false;
  for (int k = 0; k <= m; ++k)
    for (int l = 0; l <= n; ++l)
      if (s == Rational(-k * n + l * m)) return true;
  return false;
}

namespace {

void check_shape(const Template& t) {
  if (t.m < 1 || t.n < 1) fail(errc::parameter, "template needs m, n >= 1");
  if (int(t.components.size()) != t.m + t.n)
    fail(errc::parameter, "template must have exactly m+n components");
  double qs = t.components.front().q_start, qe = t.components.front().q_end();
  for (const auto& c : t.components) {
    if (std::abs(c.q_start - qs) > value_tol(qs) || std::abs(c.q_end() - qe) > value_tol(qe))
      fail(errc::parameter, "components must share a common interval");
    if (c.node_values.size() != c.pieces.size() + 1)
      fail(errc::parameter, "component cache not built");
  }
}

// union of all component breakpoints, deduplicated at fp resolution
std::vector<double> refined_grid(const Template& t) {
  std::vector<double> g;
  g.push_back(t.q_start());
  for (const auto& c : t.components)
    for (const auto& p : c.pieces) g.push_back(p.q_to);
  std::sort(g.begin(), g.end());
  std::vector<double> out;
  for (double q : g)
    if (out.empty() || q - out.back() > 1e-12 * std::max(1.0, std::abs(q))) out.push_back(q);
  return out;
}

}  // namespace

ValidationReport validate(const Template& t) {
  check_shape(t);
  ValidationReport rep;
  int dim = t.m + t.n;
  std::vector<double> grid = refined_grid(t);

  // value checks at the nodes
  {
    double s = 0;
    for (const auto& c : t.components) s += c.start_value;
    if (std::abs(s) > value_tol(t.q_start()))
      rep.violations.push_back({axiom::sum_zero, t.q_start(), t.q_start(), 0,
                                "component values sum to " + std::to_string(s) + " at the left end"});
  }
  for (double q : grid) {
    for (int j = 0; j + 1 < dim; ++j) {
      double a = t.components[j].value_at(q), b = t.components[j + 1].value_at(q);
      if (a > b + value_tol(q)) {
        rep.violations.push_back({axiom::ordering, q, q, j + 1,
                                  "P_" + std::to_string(j + 1) + " = " + std::to_string(a) + " > P_" +
                                      std::to_string(j + 2) + " = " + std::to_string(b)});
      }
    }
  }

  // slope checks per refined interval
  std::set<Rational> seen_slopes;
  for (size_t i = 0; i + 1 < grid.size(); ++i) {
    double mid = 0.5 * (grid[i] + grid[i + 1]);
    Rational sum = 0;
    for (const auto& c : t.components) {
      const Rational& s = c.slope_at(mid);
      sum += s;
      seen_slopes.insert(s);
    }
    if (sum != 0)
      rep.violations.push_back({axiom::sum_zero, grid[i], grid[i + 1], 0,
                                "slopes sum to " + to_string(sum)});
  }
  for (const Rational& s : seen_slopes)
    if (!slope_admissible(s, t.m, t.n))
      rep.violations.push_back({axiom::slope_form, t.q_start(), t.q_end(), 0,
                                "slope " + to_string(s) + " is not (-k n + l m)/(k+l)"});

  // axiom (iv): on maximal strict-order intervals, partial sums are convex
  // with integer slopes of the admissible form
  for (int j = 0; j + 1 < dim; ++j) {
    std::vector<char> strict(grid.size() - 1, 0);
    for (size_t i = 0; i + 1 < grid.size(); ++i) {
      double ga = t.components[j + 1].value_at(grid[i]) - t.components[j].value_at(grid[i]);
      double gb = t.components[j + 1].value_at(grid[i + 1]) - t.components[j].value_at(grid[i + 1]);
      double gm = 0.5 * (ga + gb);
      double tol = value_tol(0.5 * (grid[i] + grid[i + 1]));
      if (gm > tol)
        strict[i] = 1;
      else if (gm > 0)
        rep.borderline.emplace_back(grid[i], grid[i + 1]);
    }
    size_t i = 0;
    while (i < strict.size()) {
      if (!strict[i]) {
        ++i;
        continue;
      }
      size_t run_end = i;
      while (run_end < strict.size() && strict[run_end]) ++run_end;
      Rational prev;
      bool have_prev = false;
      for (size_t k = i; k < run_end; ++k) {
        if (k > i) {
          // a touch point P_j = P_{j+1} ends the strict-order interval, so the
          // convexity chain restarts there even though both sides stay strict
          double jg = t.components[j + 1].value_at(grid[k]) - t.components[j].value_at(grid[k]);
          if (jg <= value_tol(grid[k])) have_prev = false;
        }
        double mid = 0.5 * (grid[k] + grid[k + 1]);
        Rational fslope = 0;
        for (int c = 0; c <= j; ++c) fslope += t.components[c].slope_at(mid);
        if (!partial_slope_admissible(fslope, t.m, t.n))
          rep.violations.push_back({axiom::partial_sum_convexity, grid[k], grid[k + 1], j + 1,
                                    "partial-sum slope " + to_string(fslope) + " not of the form -k n + l m"});
        if (have_prev && fslope < prev)
          rep.violations.push_back({axiom::partial_sum_convexity, grid[k], grid[k + 1], j + 1,
                                    "partial sum F_" + std::to_string(j + 1) + " concave: slope " +
                                        to_string(fslope) + " after " + to_string(prev)});
        prev = fslope;
        have_prev = true;
      }
      i = run_end;
    }
  }
  return rep;
}

double evaluate(const Template& t, double q, int j) {
  check_shape(t);
  if (j < 1 || j > t.m + t.n) fail(errc::parameter, "component index out of range");
  if (q < t.q_start() - value_tol(q) || q > t.q_end() + value_tol(q))
    fail(errc::domain, "q outside the template domain");
  return t.components[j - 1].value_at(q);
}

std::vector<double> sorted_evaluate(const Template& t, double q) {
  check_shape(t);
  if (q < t.q_start() - value_tol(q) || q > t.q_end() + value_tol(q))
    fail(errc::domain, "q outside the template domain");
  std::vector<double> vals;
  vals.reserve(t.components.size());
  for (const auto& c : t.components) vals.push_back(c.value_at(q));
  std::sort(vals.begin(), vals.end());
  return vals;
}

Template concat(const Template& a, const Template& b) {
  check_shape(a);
  check_shape(b);
  if (a.m != b.m || a.n != b.n) fail(errc::dimension, "mismatched template dimensions");
  double ja = a.q_end(), jb = b.q_start();
  if (std::abs(ja - jb) > value_tol(ja))
    fail(errc::parameter, "templates do not share a junction abscissa");
  for (int j = 0; j < a.m + a.n; ++j) {
    double va = a.components[j].end_value(), vb = b.components[j].start_value;
    if (std::abs(va - vb) > value_tol(ja))
      fail(errc::validation, "junction mismatch in component " + std::to_string(j + 1) + ": " +
                                 std::to_string(va) + " vs " + std::to_string(vb));
  }
  Template out = a;
  for (int j = 0; j < a.m + a.n; ++j) {
    auto& comp = out.components[j];
    for (const auto& p : b.components[j].pieces) comp.append(p.slope, p.q_to);
  }
  out.junctions.push_back(ja);
  for (double g : b.junctions) out.junctions.push_back(g);
  return out;
}

AbcTemplateMeasurements abc_measurements_template(const Template& t) {
  check_shape(t);
  const PiecewiseLinear& P1 = t.components.front();
  AbcTemplateMeasurements out;
  Rational slope_m(t.m), slope_neg_n(-t.n);
  double run_m = 0, run_n = 0, prev_q = P1.q_start;
  for (const auto& piece : P1.pieces) {
    double len = piece.q_to - prev_q;
    if (piece.slope == slope_m) {
      run_m += len;
      out.max_slope_m_interval = std::max(out.max_slope_m_interval, run_m);
    } else {
      run_m = 0;
    }
    if (piece.slope == slope_neg_n) {
      run_n += len;
      out.max_slope_neg_n_interval = std::max(out.max_slope_neg_n_interval, run_n);
    } else {
      run_n = 0;
    }
    prev_q = piece.q_to;
  }
  // local minima: a strictly falling piece followed (across flats) by a rise
  for (size_t i = 0; i + 1 < P1.pieces.size(); ++i) {
    if (!(P1.pieces[i].slope < 0)) continue;
    size_t k = i + 1;
    while (k < P1.pieces.size() && P1.pieces[k].slope == 0) ++k;
    if (k < P1.pieces.size() && P1.pieces[k].slope > 0)
      out.max_abs_local_min = std::max(out.max_abs_local_min, std::abs(P1.node_values[i + 1]));
  }
  // a boundary point also minimizes when the template only rises away from it
  // (or only falls into it); without these the measurement would understate a
  // template whose domain starts or ends mid-valley
  {
    size_t f = 0;
    while (f < P1.pieces.size() && P1.pieces[f].slope == 0) ++f;
    if (f < P1.pieces.size() && P1.pieces[f].slope > 0)
      out.max_abs_local_min = std::max(out.max_abs_local_min, std::abs(P1.start_value));
    size_t b = P1.pieces.size();
    while (b > 0 && P1.pieces[b - 1].slope == 0) --b;
    if (b > 0 && P1.pieces[b - 1].slope < 0)
      out.max_abs_local_min = std::max(out.max_abs_local_min, std::abs(P1.node_values.back()));
  }
  return out;
}

RatioExtremes p1_ratio_extremes(const Template& t, const std::vector<double>& q_grid, double tail_fraction) {
  check_shape(t);
  if (q_grid.empty()) fail(errc::parameter, "empty evaluation grid");
  if (!t.junctions.empty() && t.junctions.size() < 10)
    fail(errc::insufficient_data, "need a horizon of at least 10 generations");
  size_t start = size_t(double(q_grid.size()) * (1.0 - tail_fraction));
  if (start >= q_grid.size()) start = q_grid.size() - 1;
  RatioExtremes out;
  bool first = true;
  for (size_t i = start; i < q_grid.size(); ++i) {
    double q = q_grid[i];
    if (q <= 0) continue;
    double r = t.components.front().value_at(q) / q;
    if (first || r < out.liminf_est) out.liminf_est = r;
    if (first || r > out.limsup_est) out.limsup_est = r;
    first = false;
  }
  if (first) fail(errc::parameter, "grid has no positive abscissae");
  return out;
}

RatioExtremes p1_ratio_extremes(const Template& t, double tail_fraction) {
  check_shape(t);
  const PiecewiseLinear& P1 = t.components.front();
  std::vector<double> grid;
  double prev = P1.q_start;
  grid.push_back(prev);
  for (const auto& p : P1.pieces) {
    grid.push_back(0.5 * (prev + p.q_to));
    grid.push_back(p.q_to);
    prev = p.q_to;
  }
  return p1_ratio_extremes(t, grid, tail_fraction);
}

ContractionBounds contraction_bounds(const Template& t) {
  check_shape(t);
  std::vector<double> grid = refined_grid(t);
  double zero_len = 0, total = t.q_end() - t.q_start();
  for (size_t i = 0; i + 1 < grid.size(); ++i) {
    bool zero = true;
    for (const auto& c : t.components) {
      if (std::abs(c.value_at(grid[i])) > value_tol(grid[i]) ||
          std::abs(c.value_at(grid[i + 1])) > value_tol(grid[i + 1])) {
        zero = false;
        break;
      }
    }
    if (zero) zero_len += grid[i + 1] - grid[i];
  }
  ContractionBounds out;
  out.zero_fraction = total > 0 ? zero_len / total : 0.0;
  out.upper = double(t.m) * t.n;
  out.lower = out.upper * out.zero_fraction;
  return out;
}

}  // namespace pgnlab
