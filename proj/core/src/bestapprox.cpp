// SPDX-License-Identifier: MIT
#include "pgnlab/bestapprox.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "pgnlab/errors.hpp"
#include "pgnlab/parallel.hpp"

namespace pgnlab {

namespace {

// All residual comparisons run on integer numerators over one common
// denominator D = lcm of every entry denominator.
struct ScaledMatrix {
  int m, n;
  Int D;
  std::vector<std::vector<Int>> N;  // n rows of m scaled numerators

  explicit ScaledMatrix(const RMatrix& xi) : m(xi.m), n(xi.n), D(1) {
    for (const auto& e : xi.entries) D = boost::multiprecision::lcm(D, den(e));
    N.assign(n, std::vector<Int>(m));
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < m; ++j) N[i][j] = num(xi.at(i, j)) * (D / den(xi.at(i, j)));
  }
};

bool lex_less(const std::vector<Int>& a, const std::vector<Int>& b) {
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

struct Cand {
  bool set = false;
  Int key;  // residual numerator (sup) or squared-residual numerator (euclid)
  std::vector<Int> x;

  void offer(const Int& k, const std::vector<Int>& xv) {
    if (!set || k < key || (k == key && lex_less(xv, x))) {
      set = true;
      key = k;
      x = xv;
    }
  }
};

// Enumerate canonical x (first nonzero coordinate positive, sup norm <= B)
// whose first coordinate is fixed to x0, carrying partial row sums so the
// innermost loop is a pure increment.
template <class Visit>
void walk_tail(const ScaledMatrix& sm, long B, std::vector<Int>& x, std::vector<Int>& sums, int depth,
               bool pinned_nonzero, const Visit& visit) {
  int m = sm.m, n = sm.n;
  if (depth == m) {
    if (pinned_nonzero) visit(x, sums);
    return;
  }
  long lo = pinned_nonzero ? -B : 0;
  std::vector<Int> saved = sums;
  for (long v = lo; v <= B; ++v) {
    x[depth] = v;
    for (int i = 0; i < n; ++i) sums[i] = saved[i] + sm.N[i][depth] * v;
    walk_tail(sm, B, x, sums, depth + 1, pinned_nonzero || v != 0, visit);
  }
  x[depth] = 0;
  sums = saved;
}

template <class Visit>
void walk_first_coord(const ScaledMatrix& sm, long B, long x0, const Visit& visit) {
  std::vector<Int> x(sm.m, Int(0)), sums(sm.n, Int(0));
  x[0] = x0;
  for (int i = 0; i < sm.n; ++i) sums[i] = sm.N[i][0] * x0;
  walk_tail(sm, B, x, sums, 1, x0 != 0, visit);
}

long small_bound(const Int& x_max) {
  if (x_max < 1) fail(errc::parameter, "x_max must be positive");
  if (x_max > 100000000) fail(errc::parameter, "x_max beyond desk scale (max 10^8)");
  return x_max.convert_to<long>();
}

void require_guard(const RMatrix& xi, const Int& x_max) {
  GuardReport guard = precision_guard(xi, x_max);
  if (!guard.ok) {
    const auto& off = guard.offenders.front();
    fail(errc::precision, "denominator guard failed: entry (" + std::to_string(off.row) + "," +
                              std::to_string(off.col) + ") has denominator " + den(off.entry).str() +
                              " < required " + guard.required.str() + " (and " +
                              std::to_string(guard.offenders.size() - 1) + " more)");
  }
}

Rational rational_pow(Rational base, int e) {
  Rational r = 1;
  for (int i = 0; i < e; ++i) r *= base;
  return r;
}

}  // namespace

BestApproxSequence enumerate(const RMatrix& xi, const Int& x_max, int sign_convention) {
  require_guard(xi, x_max);
  long B = small_bound(x_max);
  ScaledMatrix sm(xi);
  bool flip = sign_convention < 0;

  // One pass over the canonical half-box keeps, for each sup-norm shell, the
  // best (residual, lex) candidate; chunks over the first coordinate merge
  // deterministically in index order.
  using Table = std::vector<Cand>;
  std::function<Table(std::size_t, std::size_t)> body = [&](std::size_t lo, std::size_t hi) {
    Table shells(size_t(B) + 1);
    std::vector<Int> flipped;
    for (std::size_t x0 = lo; x0 < hi; ++x0) {
      walk_first_coord(sm, B, long(x0), [&](const std::vector<Int>& x, const std::vector<Int>& sums) {
        Int rnum = 0;
        for (int i = 0; i < sm.n; ++i) {
          Int y = round_half_down(sums[i], sm.D);
          Int rem = sums[i] - y * sm.D;
          if (rem < 0) rem = -rem;
          if (rem > rnum) rnum = rem;
        }
        long shell = 0;
        for (const Int& c : x) {
          long a = std::abs(c.convert_to<long>());
          if (a > shell) shell = a;
        }
        if (!flip) {
          shells[shell].offer(rnum, x);
        } else {
          flipped.assign(x.size(), Int(0));
          for (size_t j = 0; j < x.size(); ++j) flipped[j] = -x[j];
          shells[shell].offer(rnum, flipped);
        }
      });
    }
    return shells;
  };
  auto chunks = parallel_map_chunks<Table>(size_t(B) + 1, body);

  Table final_shells(size_t(B) + 1);
  for (const auto& t : chunks)
    for (long s = 1; s <= B; ++s)
      if (t[s].set) final_shells[s].offer(t[s].key, t[s].x);

  BestApproxSequence seq;
  seq.xi = xi;
  seq.x_max = x_max;
  bool have_min = false;
  Int best_key = 0;
  for (long s = 1; s <= B; ++s) {
    const Cand& c = final_shells[s];
    if (!c.set) continue;
    if (have_min && c.key >= best_key) continue;
    if (c.key == 0)
      fail(errc::rationality, "zero residual at sup norm " + std::to_string(s) +
                                  ": input too coarse for this search range");
    best_key = c.key;
    have_min = true;
    BestApproxRecord rec;
    rec.index = int(seq.records.size()) + 1;
    rec.vector.x = c.x;
    rec.vector.y = best_y(xi, c.x);
    rec.X = Int(s);
    rec.L = Rational(c.key, sm.D);
    seq.records.push_back(std::move(rec));
  }
  if (seq.records.empty()) fail(errc::internal, "enumeration produced no records");
  return seq;
}

EuclidSequence enumerate_euclid(const RMatrix& xi, const Int& x_max) {
  require_guard(xi, x_max);
  long B = small_bound(x_max);
  ScaledMatrix sm(xi);
  Int X2cap = x_max * x_max;

  using Table = std::map<Int, Cand>;  // squared norm -> best candidate
  std::function<Table(std::size_t, std::size_t)> body = [&](std::size_t lo, std::size_t hi) {
    Table table;
    for (std::size_t x0 = lo; x0 < hi; ++x0) {
      walk_first_coord(sm, B, long(x0), [&](const std::vector<Int>& x, const std::vector<Int>& sums) {
        Int X2 = 0;
        for (const Int& c : x) X2 += c * c;
        if (X2 > X2cap) return;  // only the Euclidean ball is certified
        Int l2num = 0;
        for (int i = 0; i < sm.n; ++i) {
          Int y = round_half_down(sums[i], sm.D);
          Int rem = sums[i] - y * sm.D;
          l2num += rem * rem;
        }
        table[X2].offer(l2num, x);
      });
    }
    return table;
  };
  auto chunks = parallel_map_chunks<Table>(size_t(B) + 1, body);

  Table merged;
  for (const auto& t : chunks)
    for (const auto& [X2, cand] : t) merged[X2].offer(cand.key, cand.x);

  EuclidSequence seq;
  seq.x_max = x_max;
  bool have_min = false;
  Int best_key = 0;
  Int D2 = sm.D * sm.D;
  for (const auto& [X2, cand] : merged) {
    if (have_min && cand.key >= best_key) continue;
    if (cand.key == 0)
      fail(errc::rationality, "zero residual in Euclidean sweep: input too coarse");
    best_key = cand.key;
    have_min = true;
    EuclidRecord rec;
    rec.index = int(seq.records.size()) + 1;
    rec.vector.x = cand.x;
    rec.vector.y = best_y(xi, cand.x);
    rec.X_sq = X2;
    rec.L_sq = Rational(cand.key, D2);
    seq.records.push_back(std::move(rec));
  }
  return seq;
}

RatioStats ratio_stats(const BestApproxSequence& seq, int burn_in) {
  int len = int(seq.records.size());
  if (len < 2) fail(errc::insufficient_data, "ratio_stats needs at least 2 records");
  if (burn_in < 0) burn_in = 0;
  int eff = std::min(burn_in, len - 2);  // keep at least one ratio in play

  RatioStats st;
  st.burn_in = eff;
  for (int i = eff; i + 1 < len; ++i) {
    const auto& a = seq.records[i];      // record i+1 (1-based), ratio index i+1
    const auto& b = seq.records[i + 1];
    st.sup_X_ratio = std::max(st.sup_X_ratio, to_double(Rational(b.X, a.X)));
    st.sup_L_ratio = std::max(st.sup_L_ratio, to_double(a.L / b.L));
  }
  bool first = true;
  for (const auto& r : seq.records) {
    Rational bad = rational_pow(Rational(r.X), seq.xi.m) * rational_pow(r.L, seq.xi.n);
    if (first || bad < st.min_badness) st.min_badness = bad;
    first = false;
  }
  return st;
}

ExponentEstimate exponent_estimates(const BestApproxSequence& seq, int i_burn) {
  int len = int(seq.records.size());
  if (len < 3) fail(errc::insufficient_data, "exponent_estimates needs at least 3 records");
  if (i_burn < 1) i_burn = 1;
  if (i_burn > len - 1) fail(errc::insufficient_data, "burn-in leaves no window");

  ExponentEstimate est;
  est.i_lo = i_burn;
  est.i_hi = len;
  bool first_o = true, first_h = true;
  for (int i = i_burn; i <= len; ++i) {
    const auto& r = seq.records[i - 1];
    double logX = log_int(r.X);
    if (logX == 0.0) fail(errc::domain, "log X_i = 0 inside the estimate window");
    double val = -log_rational(r.L) / logX;
    if (first_o || val > est.omega_est) est.omega_est = val;
    first_o = false;
    if (i < len) {
      double logXn = log_int(seq.records[i].X);
      double hat = -log_rational(r.L) / logXn;
      if (first_h || hat < est.omega_hat_est) est.omega_hat_est = hat;
      first_h = false;
    }
  }
  return est;
}

DirichletReport dirichlet_check(const BestApproxSequence& seq) {
  int len = int(seq.records.size());
  if (len < 2) fail(errc::insufficient_data, "dirichlet_check needs at least 2 records");
  DirichletReport rep;
  for (int i = 0; i + 1 < len; ++i) {
    Rational product = rational_pow(Rational(seq.records[i + 1].X), seq.xi.m) *
                       rational_pow(seq.records[i].L, seq.xi.n);
    ++rep.checked;
    if (product > 1) rep.violations.push_back({i + 1, product});
  }
  return rep;
}

GrowthReport growth_check(const BestApproxSequence& seq) {
  int dim = seq.xi.m + seq.xi.n;
  long step = 1;
  for (int i = 0; i < dim; ++i) step *= 3;
  step -= 1;
  int len = int(seq.records.size());
  if (len <= step)
    fail(errc::insufficient_data, "growth_check needs more than " + std::to_string(step) +
                                      " records, have " + std::to_string(len));
  GrowthReport rep;
  rep.step = int(step);
  for (int k = 0; k + step < len; ++k) {
    ++rep.checked;
    if (seq.records[k + step].X < 2 * seq.records[k].X)
      rep.violations.push_back({k + 1, seq.records[k].X, seq.records[k + step].X});
  }
  return rep;
}

CrossNormReport cross_norm_consistency(const RMatrix& xi, const Int& x_max, double cap, int burn_in) {
  CrossNormReport rep;
  rep.cap = cap;
  BestApproxSequence sup_seq = enumerate(xi, x_max);
  EuclidSequence euc_seq = enumerate_euclid(xi, x_max);
  rep.sup_stats = ratio_stats(sup_seq, burn_in);

  int elen = int(euc_seq.records.size());
  if (elen < 2) fail(errc::insufficient_data, "Euclidean rerun produced fewer than 2 records");
  int eff = std::min(burn_in, elen - 2);
  for (int i = eff; i + 1 < elen; ++i) {
    const auto& a = euc_seq.records[i];
    const auto& b = euc_seq.records[i + 1];
    rep.euclid_sup_X_ratio = std::max(rep.euclid_sup_X_ratio, std::sqrt(to_double(Rational(b.X_sq, a.X_sq))));
    rep.euclid_sup_L_ratio = std::max(rep.euclid_sup_L_ratio, std::sqrt(to_double(a.L_sq / b.L_sq)));
  }
  rep.bounded_sup = rep.sup_stats.sup_X_ratio <= cap && rep.sup_stats.sup_L_ratio <= cap;
  rep.bounded_euclid = rep.euclid_sup_X_ratio <= cap && rep.euclid_sup_L_ratio <= cap;
  rep.verdicts_agree = rep.bounded_sup == rep.bounded_euclid;

  int common = std::min(int(sup_seq.records.size()), elen);
  bool first = true;
  for (int i = 0; i < common; ++i) {
    double f = std::sqrt(to_double(Rational(euc_seq.records[i].X_sq))) /
               to_double(Rational(sup_seq.records[i].X));
    if (first || f < rep.min_X_factor) rep.min_X_factor = f;
    if (first || f > rep.max_X_factor) rep.max_X_factor = f;
    first = false;
  }
  return rep;
}

}  // namespace pgnlab
