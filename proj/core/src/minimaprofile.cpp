// SPDX-License-Identifier: MIT
#include "pgnlab/minimaprofile.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "pgnlab/errors.hpp"

namespace pgnlab {

double gauge(const RMatrix& xi, const IntVec& v, double q) {
  Int nx = v.x.empty() ? Int(0) : sup_norm(std::span<const Int>(v.x));
  Rational L = residual(xi, v);
  double right;
  if (L == 0) {
    if (nx == 0) fail(errc::parameter, "gauge of the zero vector");
    fail(errc::rationality, "zero residual in gauge computation");
  }
  right = log_rational(L) + xi.m * q;
  if (nx == 0) return right;
  return std::max(log_int(nx) - xi.n * q, right);
}

double certified_q_end(const BestApproxSequence& seq) {
  int len = int(seq.records.size());
  if (len < 2) fail(errc::insufficient_data, "profile horizon needs at least 2 records");
  int dim = seq.xi.m + seq.xi.n;
  return (log_int(seq.records[len - 1].X) - log_rational(seq.records[len - 2].L)) / dim;
}

namespace {

struct GaugeLine {
  double lx;  // log X_v
  double ll;  // log L_v
};

double eval_gauge(const GaugeLine& g, int m, int n, double q) {
  return std::max(g.lx - n * q, g.ll + m * q);
}

}  // namespace

MinimaProfile h1_profile(const BestApproxSequence& seq, double q_end) {
  int len = int(seq.records.size());
  double cert = certified_q_end(seq);
  if (q_end > cert + 1e-12)
    fail(errc::horizon, "q_end " + std::to_string(q_end) + " beyond certified horizon " + std::to_string(cert));
  if (q_end <= 0) fail(errc::parameter, "q_end must be positive");

  int m = seq.xi.m, n = seq.xi.n, dim = m + n;
  std::vector<GaugeLine> g(len);
  for (int v = 0; v < len; ++v) {
    g[v].lx = log_int(seq.records[v].X);
    g[v].ll = log_rational(seq.records[v].L);
  }

  // Candidate breakpoints: every vertex and every descending/ascending
  // branch crossing between two gauges; the envelope is linear in between.
  std::vector<double> cand{0.0, q_end};
  for (int u = 0; u < len; ++u) {
    double vertex = (g[u].lx - g[u].ll) / dim;
    if (vertex > 0 && vertex < q_end) cand.push_back(vertex);
    for (int v = 0; v < len; ++v) {
      if (u == v) continue;
      double cross = (g[u].lx - g[v].ll) / dim;  // A_u meets B_v
      if (cross > 0 && cross < q_end) cand.push_back(cross);
    }
  }
  std::sort(cand.begin(), cand.end());
  cand.erase(std::unique(cand.begin(), cand.end(),
                         [](double a, double b) { return std::abs(a - b) < 1e-13; }),
             cand.end());

  struct Seg {
    double q_from, q_to;
    int rec;    // 0-based record index
    int slope;  // -n or m
  };
  std::vector<Seg> segs;
  for (size_t i = 0; i + 1 < cand.size(); ++i) {
    double mid = 0.5 * (cand[i] + cand[i + 1]);
    int best = 0;
    double bestv = eval_gauge(g[0], m, n, mid);
    for (int v = 1; v < len; ++v) {
      double val = eval_gauge(g[v], m, n, mid);
      if (val < bestv - 1e-13) {
        bestv = val;
        best = v;
      }
    }
    int slope = (g[best].lx - n * mid >= g[best].ll + m * mid) ? -n : m;
    if (!segs.empty() && segs.back().rec == best && segs.back().slope == slope) {
      segs.back().q_to = cand[i + 1];
    } else {
      segs.push_back({cand[i], cand[i + 1], best, slope});
    }
  }
  if (segs.empty()) fail(errc::internal, "empty envelope");

  MinimaProfile prof;
  prof.m = m;
  prof.n = n;
  prof.q_end = q_end;
  auto line_value = [&](const Seg& s, double q) {
    return s.slope == -n ? g[s.rec].lx - n * q : g[s.rec].ll + m * q;
  };
  prof.start_value = line_value(segs.front(), 0.0);
  for (const Seg& s : segs)
    prof.nodes.push_back({s.q_to, line_value(s, s.q_to), s.slope, s.rec + 1});

  for (size_t i = 0; i + 1 < segs.size(); ++i) {
    const Seg& a = segs[i];
    const Seg& b = segs[i + 1];
    if (a.slope == -n && b.slope == m) {
      prof.p.push_back(a.q_to);
      prof.p_record.push_back(b.rec + 1);  // the vertex belongs to the vector rising out of it
    } else if (a.slope == m && b.slope == -n) {
      prof.qn.push_back(a.q_to);
      prof.qn_record.push_back(a.rec + 1);
    }
  }
  prof.index_offset = prof.p_record.empty() ? 0 : prof.p_record.front() - 1;
  return prof;
}

double profile_value(const MinimaProfile& prof, double q) {
  if (q < -1e-12 || q > prof.q_end + 1e-12) fail(errc::domain, "q outside the profile domain");
  double prev_q = 0, prev_v = prof.start_value;
  for (const auto& node : prof.nodes) {
    if (q <= node.q + 1e-15) {
      double t = node.q == prev_q ? 0.0 : (q - prev_q) / (node.q - prev_q);
      return prev_v + t * (node.value - prev_v);
    }
    prev_q = node.q;
    prev_v = node.value;
  }
  return prev_v;
}

AbcMeasurements abc_measurements(const MinimaProfile& prof) {
  if (prof.p.size() < 2) fail(errc::insufficient_data, "need at least 2 local minima");
  AbcMeasurements out;
  // p. and qn. alternate: p[0] < qn[0] < p[1] < qn[1] < ...
  for (size_t i = 0; i < prof.qn.size() && i < prof.p.size(); ++i)
    out.max_slope_m_interval = std::max(out.max_slope_m_interval, prof.qn[i] - prof.p[i]);
  for (size_t i = 0; i + 1 < prof.p.size() && i < prof.qn.size(); ++i)
    out.max_slope_neg_n_interval = std::max(out.max_slope_neg_n_interval, prof.p[i + 1] - prof.qn[i]);
  for (double pv : prof.p) out.max_abs_local_min = std::max(out.max_abs_local_min, std::abs(profile_value(prof, pv)));
  return out;
}

namespace {

// Exact integer rank via fraction-free elimination on a copy.
int int_rank(std::vector<std::vector<Int>> rows) {
  int r = 0;
  size_t cols = rows.empty() ? 0 : rows[0].size();
  for (size_t c = 0; c < cols && r < int(rows.size()); ++c) {
    int pivot = -1;
    for (int i = r; i < int(rows.size()); ++i)
      if (rows[i][c] != 0) {
        pivot = i;
        break;
      }
    if (pivot < 0) continue;
    std::swap(rows[r], rows[pivot]);
    for (int i = r + 1; i < int(rows.size()); ++i) {
      if (rows[i][c] == 0) continue;
      Int a = rows[r][c], b = rows[i][c];
      for (size_t j = c; j < cols; ++j) rows[i][j] = rows[i][j] * a - rows[r][j] * b;
    }
    ++r;
  }
  return r;
}

std::vector<Int> flatten(const IntVec& v) {
  std::vector<Int> out;
  out.reserve(v.x.size() + v.y.size());
  out.insert(out.end(), v.x.begin(), v.x.end());
  out.insert(out.end(), v.y.begin(), v.y.end());
  return out;
}

}  // namespace

MinimaSample successive_minima_at(const RMatrix& xi, double q, const Int& x_box) {
  if (q < 0) fail(errc::parameter, "q must be nonnegative");
  int m = xi.m, n = xi.n, dim = m + n;
  Int box = x_box;
  if (box == 0) box = Int(std::llround(std::ceil(4.0 * std::exp(double(n) * q))));
  if (box < 1) fail(errc::parameter, "x_box must be positive");
  GuardReport guard = precision_guard(xi, box);
  if (!guard.ok) fail(errc::precision, "denominator guard failed for the minima box");

  long B = box.convert_to<long>();
  double cap = log_int(box + 1) - n * q;  // points outside the box exceed this gauge
  long K = std::lround(std::ceil(std::exp(cap - m * q) + 0.5)) + 1;

  struct Point {
    double gauge;
    std::vector<Int> flat;
  };
  std::vector<Point> pts;

  auto consider = [&](const std::vector<Int>& xv, bool x_zero) {
    // scan the y-window around the per-row minimizer
    std::vector<Int> y0 = best_y(xi, xv);
    std::vector<long> t(n, -K);
    while (true) {
      IntVec w;
      w.x = xv;
      w.y.resize(n);
      for (int i = 0; i < n; ++i) w.y[i] = y0[i] + t[i];
      bool zero_x = x_zero;
      bool all_zero = zero_x;
      for (const Int& c : w.y)
        if (c != 0) all_zero = false;
      if (!(zero_x && all_zero)) {
        bool skip = false;
        if (zero_x) {
          // canonical half for pure-y points: first nonzero y positive
          for (const Int& c : w.y) {
            if (c > 0) break;
            if (c < 0) {
              skip = true;
              break;
            }
          }
        }
        if (!skip) {
          Rational L = residual(xi, w);
          if (L == 0) fail(errc::rationality, "zero residual inside the minima box");
          double lg = log_rational(L) + m * q;
          if (!zero_x) {
            Int nx = sup_norm(std::span<const Int>(w.x));
            lg = std::max(lg, log_int(nx) - n * q);
          }
          if (lg <= cap + 1e-9) pts.push_back({lg, flatten(w)});
        }
      }
      int d = n - 1;
      while (d >= 0 && t[d] == K) {
        t[d] = -K;
        --d;
      }
      if (d < 0) break;
      ++t[d];
    }
  };

  // canonical x over the box (first nonzero positive), plus the x = 0 sheet
  std::vector<Int> xv(m, Int(0));
  std::function<void(int, bool)> rec = [&](int depth, bool pinned) {
    if (depth == m) {
      consider(xv, !pinned);
      return;
    }
    long lo = pinned ? -B : 0;
    for (long vv = lo; vv <= B; ++vv) {
      xv[depth] = vv;
      rec(depth + 1, pinned || vv != 0);
    }
    xv[depth] = 0;
  };
  rec(0, false);

  std::sort(pts.begin(), pts.end(), [](const Point& a, const Point& b) {
    if (a.gauge != b.gauge) return a.gauge < b.gauge;
    return std::lexicographical_compare(a.flat.begin(), a.flat.end(), b.flat.begin(), b.flat.end());
  });

  MinimaSample sample;
  sample.q = q;
  sample.x_box = box;
  std::vector<std::vector<Int>> picked;
  for (const Point& pt : pts) {
    if (int(picked.size()) == dim) break;
    picked.push_back(pt.flat);
    if (int_rank(picked) < int(picked.size())) {
      picked.pop_back();
      continue;
    }
    sample.h.push_back(pt.gauge);
    IntVec w;
    w.x.assign(pt.flat.begin(), pt.flat.begin() + m);
    w.y.assign(pt.flat.begin() + m, pt.flat.end());
    sample.witnesses.push_back(std::move(w));
  }
  if (int(sample.h.size()) < dim)
    fail(errc::coverage, "box " + box.str() + " too small to certify " + std::to_string(dim) +
                             " independent minima at q = " + std::to_string(q));
  return sample;
}

double slope_from_exponent(double w, int m, int n) {
  if (std::isinf(w)) return double(-n);
  if (w < double(m) / n - 1e-12) fail(errc::domain, "exponent below the Dirichlet floor m/n");
  return (m - n * w) / (1.0 + w);
}

ExponentFromSlope exponent_from_slope(double s, int m, int n) {
  if (s < -double(n) - 1e-12 || s >= double(m)) fail(errc::domain, "slope outside [-n, m)");
  ExponentFromSlope out;
  if (std::abs(s + n) < 1e-15) {
    out.infinite = true;
    out.value = HUGE_VAL;
    return out;
  }
  out.value = (m - s) / (n + s);
  return out;
}

}  // namespace pgnlab
