// SPDX-License-Identifier: MIT
#include "pgnlab/diagnostics.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "pgnlab/errors.hpp"

namespace pgnlab {

namespace {

std::vector<Int> flat(const IntVec& v) {
  std::vector<Int> out(v.x.begin(), v.x.end());
  out.insert(out.end(), v.y.begin(), v.y.end());
  return out;
}

// Fraction-free Gaussian elimination; the inputs here are tiny (a handful of
// rows of length m + n), so cross-multiplication growth is harmless.
int integer_rank(std::vector<std::vector<Int>> rows) {
  const size_t nr = rows.size();
  if (nr == 0) return 0;
  const size_t nc = rows[0].size();
  size_t rank = 0;
  for (size_t col = 0; col < nc && rank < nr; ++col) {
    size_t piv = rank;
    while (piv < nr && rows[piv][col] == 0) ++piv;
    if (piv == nr) continue;
    std::swap(rows[piv], rows[rank]);
    for (size_t r = rank + 1; r < nr; ++r) {
      if (rows[r][col] == 0) continue;
      const Int a = rows[rank][col], b = rows[r][col];
      for (size_t c = col; c < nc; ++c) rows[r][c] = rows[r][c] * a - rows[rank][c] * b;
    }
    ++rank;
  }
  return static_cast<int>(rank);
}

int triple_rank(const IntVec& a, const IntVec& b, const IntVec& c) {
  return integer_rank({flat(a), flat(b), flat(c)});
}

Int det3(const std::array<Int, 3>& r0, const std::array<Int, 3>& r1, const std::array<Int, 3>& r2) {
  return r0[0] * (r1[1] * r2[2] - r1[2] * r2[1]) - r0[1] * (r1[0] * r2[2] - r1[2] * r2[0]) +
         r0[2] * (r1[0] * r2[1] - r1[1] * r2[0]);
}

template <class Record>
std::vector<PatternRun> runs_impl(const std::vector<Record>& recs) {
  if (recs.size() < 4) fail(errc::insufficient_data, "need at least 4 records to decompose into runs");
  std::vector<PatternRun> runs;
  size_t nu = 0;
  while (nu + 1 < recs.size()) {
    PatternRun run;
    run.nu = static_cast<int>(nu);
    run.basis_a = recs[nu].vector;
    run.basis_b = recs[nu + 1].vector;
    size_t k = nu + 1;
    while (k + 1 < recs.size() && triple_rank(run.basis_a, run.basis_b, recs[k + 1].vector) <= 2) ++k;
    run.k = static_cast<int>(k);
    runs.push_back(std::move(run));
    if (k + 1 >= recs.size()) break;
    nu = k;  // boundary index shared with the next run
  }
  return runs;
}

}  // namespace

std::vector<bool> independence_pattern(const BestApproxSequence& seq) {
  const auto& r = seq.records;
  if (r.size() < 3) fail(errc::insufficient_data, "need at least 3 records for triples");
  std::vector<bool> out(r.size() - 2);
  for (size_t j = 0; j + 2 < r.size(); ++j)
    out[j] = triple_rank(r[j].vector, r[j + 1].vector, r[j + 2].vector) == 3;
  return out;
}

DetBoundsReport det_bounds_m2(const BestApproxSequence& seq) {
  if (seq.xi.m != 2) fail(errc::dimension, "determinant bound check requires m = 2");
  const auto& r = seq.records;
  if (r.size() < 3) fail(errc::insufficient_data, "need at least 3 records for triples");
  const int n = seq.xi.n;

  DetBoundsReport rep;
  const auto flags = independence_pattern(seq);
  for (size_t j = 0; j + 2 < r.size(); ++j) {
    if (!flags[j]) continue;
    const IntVec& a = r[j].vector;
    const IntVec& b = r[j + 1].vector;
    const IntVec& c = r[j + 2].vector;
    const std::array<Int, 3> rx0{a.x[0], b.x[0], c.x[0]};
    const std::array<Int, 3> rx1{a.x[1], b.x[1], c.x[1]};
    auto yrow = [&](int row) { return std::array<Int, 3>{a.y[row], b.y[row], c.y[row]}; };

    DetRecord rec;
    rec.i = static_cast<int>(j) + 1;
    for (int row = 0; row < n && rec.det_value == 0; ++row)
      rec.det_value = det3(rx0, rx1, yrow(row));
    if (rec.det_value == 0) {
      // x-rows proportional: fall back to one x-row plus two y-rows
      rec.used_two_y_rows = true;
      for (int r1 = 0; r1 < n && rec.det_value == 0; ++r1)
        for (int r2 = r1 + 1; r2 < n && rec.det_value == 0; ++r2) {
          rec.det_value = det3(rx0, yrow(r1), yrow(r2));
          if (rec.det_value == 0) rec.det_value = det3(rx1, yrow(r1), yrow(r2));
        }
    }
    if (rec.det_value == 0)
      fail(errc::internal, "independent triple yielded no rank-3 row selection");
    const Rational denom = Rational(r[j + 1].X * r[j + 2].X) * r[j].L;
    rec.bound_ratio = to_double(Rational(abs(rec.det_value)) / denom);
    rep.max_bound_ratio = std::max(rep.max_bound_ratio, rec.bound_ratio);
    rep.records.push_back(std::move(rec));
  }
  return rep;
}

std::vector<PatternRun> detect_2d_runs(const BestApproxSequence& seq) { return runs_impl(seq.records); }
std::vector<PatternRun> detect_2d_runs(const EuclidSequence& seq) { return runs_impl(seq.records); }

MonotonicityReport monotonicity_check(const EuclidSequence& seq, const PatternRun& run) {
  const auto& r = seq.records;
  if (run.nu < 0 || run.k >= static_cast<int>(r.size()) || run.nu > run.k)
    fail(errc::parameter, "run indices outside the sequence");
  if (run.k - run.nu < 1) fail(errc::insufficient_data, "run spans fewer than 2 records");
  // precondition: the run really is coplanar
  for (int i = run.nu; i <= run.k; ++i)
    if (triple_rank(r[run.nu].vector, r[run.nu + 1].vector, r[i].vector) > 2)
      fail(errc::parameter, "run vectors are not coplanar");

  MonotonicityReport rep;
  rep.lhs_sq = r[run.nu].L_sq * Rational(r[run.nu + 1].X_sq);
  rep.rhs_sq = r[run.k - 1].L_sq * Rational(r[run.k].X_sq);
  rep.ratio = std::sqrt(to_double(rep.rhs_sq / rep.lhs_sq));
  return rep;
}

CovolReport simultaneous_covol_check(const BestApproxSequence& seq) {
  if (seq.xi.m != 1) fail(errc::dimension, "covolume check requires m = 1");
  const auto& r = seq.records;
  if (r.size() < 2) fail(errc::insufficient_data, "need at least 2 records for covolumes");

  CovolReport rep;
  for (size_t i = 1; i < r.size(); ++i) {
    const auto a = flat(r[i - 1].vector), b = flat(r[i].vector);
    Int g11(0), g12(0), g22(0);
    for (size_t d = 0; d < a.size(); ++d) {
      g11 += a[d] * a[d];
      g12 += a[d] * b[d];
      g22 += b[d] * b[d];
    }
    CovolRecord rec;
    rec.i = static_cast<int>(i);
    rec.covol_sq = g11 * g22 - g12 * g12;
    if (rec.covol_sq <= 0)
      fail(errc::internal, "Gram determinant of consecutive records not positive");
    rec.ratio = to_double(r[i - 1].L) * to_double(Rational(r[i].X)) /
                std::sqrt(to_double(Rational(rec.covol_sq)));
    rep.records.push_back(rec);
  }
  rep.min_ratio = rep.max_ratio = rep.records.front().ratio;
  for (const auto& rec : rep.records) {
    rep.min_ratio = std::min(rep.min_ratio, rec.ratio);
    rep.max_ratio = std::max(rep.max_ratio, rec.ratio);
  }
  return rep;
}

}  // namespace pgnlab
