// SPDX-License-Identifier: MIT
//
// Acceptance gate: seven end-to-end criteria, each with a stated tolerance
// and a wall-clock budget.  One line of output per criterion, exit 0 only if
// every line passes.  Nothing here is mocked; every number is recomputed
// from the bundled fixtures through the public library surface.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "pgnlab/constructions.hpp"
#include "pgnlab/diagnostics.hpp"
#include "pgnlab/fixtures.hpp"
#include "pgnlab/io.hpp"
#include "pgnlab/minimaprofile.hpp"
#include "pgnlab/templates.hpp"

using namespace pgnlab;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

RMatrix fixture_matrix(const std::string& name) {
  return matrix_from_json(fixture(name).payload);
}

double profile_identity_error(const BestApproxSequence& seq, const MinimaProfile& prof) {
  const double mn = prof.m + prof.n;
  double err = 0;
  std::vector<double> p_of_record(seq.records.size() + 1,
                                  std::numeric_limits<double>::quiet_NaN());
  for (size_t i = 0; i < prof.p.size(); ++i) {
    const int rec = prof.p_record[i];
    const auto& R = seq.records[size_t(rec) - 1];
    const double lx = log_int(R.X), ll = log_rational(R.L);
    err = std::max(err, std::fabs(mn * prof.p[i] - (lx - ll)));
    err = std::max(err,
                   std::fabs(profile_value(prof, prof.p[i]) - (prof.m * lx + prof.n * ll) / mn));
    p_of_record[size_t(rec)] = prof.p[i];
  }
  for (size_t i = 0; i < prof.qn.size(); ++i) {
    const int rec = prof.qn_record[i];
    const auto& R = seq.records[size_t(rec) - 1];
    const double lx = log_int(R.X), ll = log_rational(R.L);
    const double lx1 = log_int(seq.records[size_t(rec)].X);
    err = std::max(err, std::fabs(mn * prof.qn[i] - (lx1 - ll)));
    const double p_i = p_of_record[size_t(rec)];
    if (!std::isnan(p_i))
      err = std::max(err, std::fabs(std::fabs(prof.qn[i] - p_i) - (lx1 - lx) / mn));
  }
  return err;
}

// ---------------------------------------------------------------- criteria

// 1. The sqrt(2)-1 fixture at x_max = 1e4 must reproduce the Pell record
//    list exactly, with the denominator-ratio and badness statistics in
//    their stated bands and both product inequalities clean.
Outcome criterion1() {
  Outcome out;
  const auto seq = enumerate(fixture_matrix("sqrt2m1-1x1"), Int(10000));
  std::vector<long long> pell{1, 2};
  while (pell.back() <= 10000) pell.push_back(2 * pell[pell.size() - 1] + pell[pell.size() - 2]);
  pell.pop_back();
  bool x_ok = seq.records.size() == pell.size();
  if (x_ok)
    for (size_t i = 0; i < pell.size(); ++i) x_ok = x_ok && seq.records[i].X == pell[i];

  const auto stats = ratio_stats(seq);
  const double sup = to_double(stats.sup_X_ratio);
  const double badness = to_double(stats.min_badness);
  const auto dir = dirichlet_check(seq);
  const auto gro = growth_check(seq);

  out.pass = x_ok && sup >= 2.40 && sup <= 2.45 && badness >= 0.3 && dir.pass() && gro.pass();
  std::ostringstream ss;
  ss << seq.records.size() << " records, sup X ratio " << format_real(sup) << ", min badness "
     << format_real(badness) << ", product checks " << dir.checked << "+" << gro.checked
     << " clean";
  out.detail = ss.str();
  return out;
}

// 2. Nick identities within 1e-9 on every bundled matrix fixture, and the
//    product inequality with zero violations across 24 random guarded
//    matrices (entries k/P for a fixed 13-digit prime P) at x_max = 200.
Outcome criterion2() {
  Outcome out;
  double worst = 0;
  int fixtures_checked = 0;
  for (const auto& f : fixtures()) {
    if (f.kind != "matrix") continue;
    const auto seq = enumerate(matrix_from_json(f.payload), Int(200));
    if (seq.records.size() < 2) continue;
    const auto prof = h1_profile(seq, certified_q_end(seq));
    worst = std::max(worst, profile_identity_error(seq, prof));
    ++fixtures_checked;
  }

  const Int P("1000000000039");
  std::mt19937_64 rng(0xC0FFEEu);
  std::uniform_int_distribution<long long> pick(1, 1000000000038LL);
  int corpus = 0, violations = 0;
  const std::pair<int, int> shapes[] = {{1, 1}, {1, 2}, {2, 1}, {2, 2}};
  for (auto [m, n] : shapes) {
    for (int rep = 0; rep < 6; ++rep) {
      RMatrix xi;
      xi.m = m;
      xi.n = n;
      for (int e = 0; e < m * n; ++e) xi.entries.emplace_back(Int(pick(rng)), P);
      const auto seq = enumerate(xi, Int(200));
      violations += int(dirichlet_check(seq).violations.size());
      ++corpus;
    }
  }

  out.pass = fixtures_checked >= 8 && worst < 1e-9 && corpus >= 20 && violations == 0;
  std::ostringstream ss;
  ss << fixtures_checked << " fixtures, worst identity error " << format_real(worst) << ", "
     << corpus << " random matrices, " << violations << " product violations";
  out.detail = ss.str();
  return out;
}

// 3. Every bundled construction validates with zero violations, and twelve
//    deliberately broken templates are each rejected under the axiom that
//    was broken.
Outcome criterion3() {
  Outcome out;
  int built = 0, build_violations = 0;
  for (const auto& f : fixtures()) {
    if (f.kind != "construction") continue;
    const auto res = run_construction(construction_from_json(f.payload));
    build_violations += int(validate(res.tpl).violations.size());
    ++built;
  }
  // a small cross-family grid beyond the bundled parameter points
  {
    OrdParams p;
    p.q1 = 100.0;
    p.lambda1 = -0.25;
    p.generations = 8;
    for (auto [m, n, v, w] : {std::tuple{3, 3, 1, 1}, {2, 3, 0, 2}}) {
      p.m = m, p.n = n, p.v = v, p.w = w;
      for (double theta : {0.0, 1.0}) {
        p.schedule = Schedule::mix_preset(theta);
        build_violations += int(validate(build_ord(p).tpl).violations.size());
        ++built;
      }
    }
    UnifBParams ub;
    ub.m = 4, ub.n = 3, ub.v = 1, ub.q1 = 100.0, ub.lambda1 = -0.5, ub.generations = 8;
    ub.schedule = Schedule::mix_preset(0.5);
    build_violations += int(validate(build_unifb(ub).tpl).violations.size());
    ++built;
    UnifBCParams uc;
    uc.m = 3, uc.n = 4, uc.u = 2, uc.q1 = 100.0, uc.lambda1 = -0.6, uc.generations = 12;
    uc.schedule = Schedule::mix_preset(0.5);
    build_violations += int(validate(build_unifbc(uc).tpl).violations.size());
    ++built;
  }

  // mutation battery
  auto line = [](double q0, double v0, std::initializer_list<std::pair<Rational, double>> ps) {
    PiecewiseLinear pl;
    pl.q_start = q0;
    pl.start_value = v0;
    for (const auto& [s, q] : ps) pl.append(s, q);
    return pl;
  };
  const Rational r1(1), rm1(-1), rhalf(Int(-1), Int(2));
  const Template beau = build_beau({2, 2, 100.0, 2}).tpl;
  const Template ord = run_construction(construction_from_json(fixture("ord-2x2-v1w1").payload)).tpl;
  const Template ubc =
      run_construction(construction_from_json(fixture("unifBC-2x2-u1").payload)).tpl;

  struct Mutant {
    Template t;
    axiom expect;
  };
  std::vector<Mutant> mutants;
  for (const Template* base : {&beau, &ord, &ubc}) {
    Template t = *base;  // slopes forced off the admissible lattice
    t.components.front().pieces[0].slope -= Rational(Int(1), Int(7));
    t.components.back().pieces[0].slope += Rational(Int(1), Int(7));
    t.components.front().rebuild_cache();
    t.components.back().rebuild_cache();
    mutants.push_back({std::move(t), axiom::slope_form});
  }
  for (const Template* base : {&beau, &ord, &ubc}) {
    Template t = *base;  // one admissible slope swapped in: sums break
    t.components.back().pieces[0].slope = Rational(0);
    t.components.back().rebuild_cache();
    mutants.push_back({std::move(t), axiom::sum_zero});
  }
  for (const Template* base : {&beau, &ord, &ubc}) {
    Template t = *base;  // order inverted
    std::swap(t.components.front(), t.components.back());
    mutants.push_back({std::move(t), axiom::ordering});
  }
  mutants.push_back({Template{1, 1,
                              {line(0, -2, {{r1, 1}, {rm1, 2}}), line(0, 2, {{rm1, 1}, {r1, 2}})},
                              {}},
                     axiom::partial_sum_convexity});
  mutants.push_back({Template{1, 1,
                              {line(5, -6, {{r1, 8}, {rm1, 11}}), line(5, 6, {{rm1, 8}, {r1, 11}})},
                              {}},
                     axiom::partial_sum_convexity});
  mutants.push_back({Template{1, 2,
                              {line(0, -9, {{r1, 2}, {rhalf, 4}}),
                               line(0, 2, {{rhalf, 2}, {rhalf, 4}}),
                               line(0, 7, {{rhalf, 2}, {r1, 4}})},
                              {}},
                     axiom::partial_sum_convexity});

  int rejected = 0;
  for (const auto& mu : mutants) {
    const auto rep = validate(mu.t);
    bool found = false;
    for (const auto& v : rep.violations) found = found || v.id == mu.expect;
    if (!rep.ok() && found) ++rejected;
  }

  out.pass = built >= 8 && build_violations == 0 && mutants.size() >= 12 &&
             rejected == int(mutants.size());
  std::ostringstream ss;
  ss << built << " builds with " << build_violations << " violations; " << rejected << "/"
     << mutants.size() << " mutants rejected under the intended axiom";
  out.detail = ss.str();
  return out;
}

// 4. The first family at (3,4), q1 = 100, horizon past 1e8: the vanishing
//    stretches must keep at least 90% of the full contraction rate mn, and
//    the deepest dip must exceed 3.
Outcome criterion4() {
  Outcome out;
  const auto built = build_beau({3, 4, 100.0, 3});
  const double horizon = built.tpl.q_end();
  const auto cb = contraction_bounds(built.tpl);
  const auto abc = abc_measurements_template(built.tpl);
  out.pass = horizon >= 1e8 && validate(built.tpl).ok() && cb.lower >= 0.9 * 12.0 &&
             abc.max_abs_local_min > 3.0;
  std::ostringstream ss;
  ss << "horizon " << format_real(horizon) << ", contraction lower " << format_real(cb.lower)
     << " of 12, deepest dip " << format_real(abc.max_abs_local_min);
  out.detail = ss.str();
  return out;
}

// 5. Schedule sweeps: the (2,2,1,1) family covers dip slopes [-2/3, 0]
//    (ordinary exponents [1,2]) with gaps at most 0.05; the (2,2,1) uniform
//    family reaches uniform exponent 4/3 within 0.05 and never beyond
//    4/3 + 0.02.
Outcome criterion5() {
  Outcome out;
  SweepSpec ord = sweep_from_json(fixture("ord-2x2-v1w1").payload);
  const auto rep_ord = sweep_range(ord);
  bool ord_ok = rep_ord.max_gap <= 0.05 && rep_ord.claimed_lo <= -2.0 / 3.0 + 1e-9 &&
                rep_ord.claimed_hi >= -1e-9;
  double ord_lo = 0, ord_hi = -1;
  for (const auto& pt : rep_ord.points) {
    ord_ok = ord_ok && pt.ok;
    ord_lo = std::min(ord_lo, pt.achieved);
    ord_hi = std::max(ord_hi, pt.achieved);
  }
  const auto w_hi = exponent_from_slope(std::max(ord_lo, -2.0 / 3.0), 2, 2);
  ord_ok = ord_ok && !w_hi.infinite && w_hi.value >= 2.0 - 0.15;

  SweepSpec ubc = sweep_from_json(fixture("unifBC-2x2-u1").payload);
  const auto rep_ubc = sweep_range(ubc);
  bool ubc_ok = rep_ubc.max_gap <= 0.05;
  double omega_hat_max = 0;
  for (const auto& pt : rep_ubc.points) {
    ubc_ok = ubc_ok && pt.ok;
    const auto w = exponent_from_slope(pt.achieved, 2, 2);
    if (!w.infinite) omega_hat_max = std::max(omega_hat_max, w.value);
  }
  ubc_ok = ubc_ok && omega_hat_max >= 4.0 / 3.0 - 0.05 && omega_hat_max <= 4.0 / 3.0 + 0.02;

  out.pass = ord_ok && ubc_ok;
  std::ostringstream ss;
  ss << "dip sweep gap " << format_real(rep_ord.max_gap) << " over ["
     << format_real(rep_ord.claimed_lo) << ", " << format_real(rep_ord.claimed_hi)
     << "]; uniform sweep gap " << format_real(rep_ubc.max_gap) << ", max uniform exponent "
     << format_real(omega_hat_max) << " vs 4/3";
  out.detail = ss.str();
  return out;
}

// 6. Fifty sampled parameters across dimensions 2, 3 and 4: the successive
//    minima from the box enumeration satisfy the lattice product bound
//    |sum h_d| <= log((m+n)!), and h_1 matches the profile within 1e-9.
Outcome criterion6() {
  Outcome out;
  struct Probe {
    const char* name;
    long long x_max;
    double q_lo, q_hi;
    int samples;
  };
  const Probe probes[] = {
      {"golden-1x1", 200, 0.3, 2.8, 20},
      {"sqrt23-2x1", 400, 0.3, 2.6, 15},
      {"rand1x2-a", 100000, 0.2, 1.5, 10},
      {"rand2x2-a", 300, 0.2, 1.3, 5},
  };
  std::mt19937 rng(97);
  int samples = 0;
  double worst_sum = 0, worst_h1 = 0;
  bool ok = true;
  for (const auto& pr : probes) {
    const RMatrix xi = fixture_matrix(pr.name);
    const int dim = xi.m + xi.n;
    double bound = 0;
    for (int k = 2; k <= dim; ++k) bound += std::log(double(k));
    const auto seq = enumerate(xi, Int(pr.x_max));
    const double q_end = certified_q_end(seq);
    const auto prof = h1_profile(seq, q_end);
    const double hi = std::min(pr.q_hi, q_end - 0.05);
    std::uniform_real_distribution<double> pick(pr.q_lo, hi);
    for (int s = 0; s < pr.samples; ++s) {
      const double q = pick(rng);
      const auto sample = successive_minima_at(xi, q);
      double sum = 0;
      for (double h : sample.h) sum += h;
      worst_sum = std::max(worst_sum, std::fabs(sum) - bound);
      ok = ok && std::fabs(sum) <= bound + 1e-9;
      const double gap = std::fabs(sample.h[0] - profile_value(prof, q));
      worst_h1 = std::max(worst_h1, gap);
      ok = ok && gap < 1e-9;
      ++samples;
    }
  }
  out.pass = ok && samples == 50;
  std::ostringstream ss;
  ss << samples << " samples, worst product slack " << format_real(worst_sum)
     << ", worst h_1 mismatch " << format_real(worst_h1);
  out.detail = ss.str();
  return out;
}

// 7. Diagnostics across the five random 2x2 fixtures at x_max = 200:
//    every independent-triple determinant has |det| >= 1, planar runs
//    partition the index range, monotonicity ratios stay finite, and the
//    growth inequality holds on every enumerated prefix.  With ~20 records
//    against a doubling step of 3^4 - 1 = 80 the growth check has no window
//    to act on; that vacuous outcome is reported, not hidden, and the same
//    inequality is exercised for real on the 1x1 data in criterion 1.
Outcome criterion7() {
  Outcome out;
  bool ok = true;
  int dets = 0, runs_total = 0, vacuous = 0, growth_checked = 0;
  double min_ratio = std::numeric_limits<double>::infinity();
  const char* names[] = {"rand2x2-a", "rand2x2-b", "rand2x2-c", "rand2x2-d", "rand2x2-e"};
  for (const char* name : names) {
    const RMatrix xi = fixture_matrix(name);
    const auto seq = enumerate(xi, Int(200));

    const auto det_rep = det_bounds_m2(seq);
    for (const auto& r : det_rep.records) {
      ok = ok && abs(r.det_value) >= 1 && std::isfinite(r.bound_ratio);
      ++dets;
    }

    const auto runs = detect_2d_runs(seq);
    ok = ok && !runs.empty() && runs.front().nu == 0 &&
         runs.back().k == int(seq.records.size()) - 1;
    for (size_t i = 1; i < runs.size(); ++i) ok = ok && runs[i].nu == runs[i - 1].k;
    runs_total += int(runs.size());

    const auto euc = enumerate_euclid(xi, Int(200));
    for (const auto& run : detect_2d_runs(euc)) {
      const auto mono = monotonicity_check(euc, run);
      ok = ok && mono.ratio > 0 && std::isfinite(mono.ratio);
      min_ratio = std::min(min_ratio, mono.ratio);
    }

    // growth on every prefix the enumeration visited
    for (long long cap : {50LL, 100LL, 200LL}) {
      const auto prefix = enumerate(xi, Int(cap));
      try {
        const auto g = growth_check(prefix);
        ok = ok && g.pass();
        ++growth_checked;
      } catch (const Error& e) {
        if (e.kind() == errc::insufficient_data)
          ++vacuous;  // honest outcome: too few records for the 2x2 step
        else
          ok = false;
      }
    }
  }
  out.pass = ok && dets > 0 && runs_total >= 5;
  std::ostringstream ss;
  ss << dets << " determinants, " << runs_total << " runs, min monotonicity ratio "
     << format_real(min_ratio) << ", growth " << growth_checked << " real / " << vacuous
     << " vacuous (record count below the 2x2 doubling step)";
  out.detail = ss.str();
  return out;
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    Outcome (*fn)();
    double budget_s;
  };
  const Criterion table[] = {
      {1, "pell reproduction", criterion1, 10.0},
      {2, "identity suite", criterion2, 120.0},
      {3, "template axioms", criterion3, 60.0},
      {4, "first-family measurement", criterion4, 5.0},
      {5, "sweep coverage", criterion5, 120.0},
      {6, "minima product bound", criterion6, 120.0},
      {7, "diagnostics battery", criterion7, 120.0},
  };

  bool all = true;
  for (const auto& c : table) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome res;
    try {
      res = c.fn();
    } catch (const std::exception& e) {
      res.pass = false;
      res.detail = std::string("exception: ") + e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (secs > c.budget_s) {
      res.pass = false;
      res.detail += " [over budget]";
    }
    std::printf("[%s] criterion %d (%s): %s (%.2f s, budget %.0f s)\n",
                res.pass ? "PASS" : "FAIL", c.id, c.name, res.detail.c_str(), secs, c.budget_s);
    all = all && res.pass;
  }
  std::printf("%s\n", all ? "acceptance: all criteria passed" : "acceptance: FAILURES present");
  return all ? 0 : 1;
}
