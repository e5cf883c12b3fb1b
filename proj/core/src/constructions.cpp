// SPDX-License-Identifier: MIT
//
// Template family builders.  Geometry conventions shared by all families:
// a generation lives on [q_k, q_{k+1}]; the bottom component group carries
// the peak parameter lambda_k = P_1(q_k)/q_k; every interval's slope
// multiset sums to zero exactly, so value drift stays at floating-point
// noise and validate()'s relative tolerance absorbs it.
//
// Two displayed formulas in the source material do not survive a
// consistency check and are replaced by the quantity they were evidently
// meant to denote (see the decisions ledger):
//   * mu_k carries a minus sign (initial values must sum to zero),
//   * the auxiliary abscissae p'_k, q'_k, q_k^max are computed as the line
//     intersections that define them, not from the printed displays.

#include "pgnlab/constructions.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <sstream>

#include "pgnlab/errors.hpp"
#include "pgnlab/minimaprofile.hpp"
#include "pgnlab/parallel.hpp"

namespace pgnlab {

namespace {

// Generation loops stop once q passes this; chosen so that intra-generation
// quantities (up to ~q^1.5 for the widest parameter choices) stay finite.
constexpr double kQCap = 1e200;
constexpr double kInf = std::numeric_limits<double>::infinity();

double rd(const Rational& x) { return to_double(x); }

Rational rat(long long num, long long den) { return Rational(Int(num), Int(den)); }

void require_dims(int m, int n) {
  if (m < 1 || n < 1) fail(errc::parameter, "dimensions must satisfy m, n >= 1");
}

void check_slope_range(const Rational& s, int m, int n, const char* name) {
  if (s < Rational(-n) || s > Rational(m)) {
    std::ostringstream os;
    os << name << " = " << to_string(s) << " falls outside [-n, m] = [" << -n << ", " << m << "]";
    fail(errc::domain, os.str());
  }
}

[[noreturn]] void gen_fail(int k, const std::string& what) {
  std::ostringstream os;
  os << "generation " << k << ": " << what;
  fail(errc::parameter, os.str());
}

// Appends a slope up to `to`, skipping zero-length stretches produced by
// coincident breakpoints (p' = p, r = p', ...).
void put(PiecewiseLinear& pl, const Rational& s, double to) {
  if (to > pl.q_end()) pl.append(s, to);
}

void put_group(std::vector<PiecewiseLinear>& comps, int lo, int hi, const Rational& s, double to) {
  for (int j = lo; j < hi; ++j) put(comps[j], s, to);
}

double clamp_peak(double lambda, double lo, double hi, int k) {
  if (lambda < lo - 1e-6 || lambda > hi + 1e-6) {
    std::ostringstream os;
    os << "peak parameter " << lambda << " outside [" << lo << ", " << hi << "]";
    gen_fail(k, os.str());
  }
  return std::min(hi, std::max(lo, lambda));
}

}  // namespace

// --------------------------------------------------------------- schedules

Schedule Schedule::endpoint_low_preset() {
  Schedule s;
  s.kind = Kind::endpoint_low;
  return s;
}

Schedule Schedule::endpoint_high_preset() {
  Schedule s;
  s.kind = Kind::endpoint_high;
  return s;
}

Schedule Schedule::mix_preset(double theta) {
  if (!(theta >= 0.0 && theta <= 1.0)) fail(errc::parameter, "mix parameter must lie in [0, 1]");
  Schedule s;
  s.kind = Kind::mix;
  s.theta = theta;
  return s;
}

Schedule Schedule::explicit_preset(std::vector<ScheduleStep> steps) {
  if (steps.empty()) fail(errc::parameter, "explicit schedule needs at least one step");
  Schedule s;
  s.kind = Kind::explicit_steps;
  s.steps = std::move(steps);
  return s;
}

Schedule Schedule::from_name(const std::string& name, double theta) {
  if (name == "endpoint-sigma-c" || name == "endpoint-\xcf\x83_c" || name == "endpoint-low")
    return endpoint_low_preset();
  if (name == "endpoint-zero-sigma-b" || name == "endpoint-0/\xcf\x83_b" || name == "endpoint-high")
    return endpoint_high_preset();
  if (name == "mix") return mix_preset(theta);
  fail(errc::parameter, "unknown schedule preset: " + name);
}

std::string Schedule::name() const {
  switch (kind) {
    case Kind::endpoint_low: return "endpoint-sigma-c";
    case Kind::endpoint_high: return "endpoint-zero-sigma-b";
    case Kind::mix: return "mix";
    case Kind::explicit_steps: return "explicit";
  }
  return "?";
}

// ------------------------------------------------------------------ slopes

OrdSlopes ord_slopes(int m, int n, int v, int w) {
  require_dims(m, n);
  if (v < 0 || v >= n) fail(errc::parameter, "ord: v must satisfy 0 <= v < n");
  if (w < 1 || w > std::min(m, n - v)) fail(errc::parameter, "ord: w must satisfy 1 <= w <= min(m, n - v)");
  OrdSlopes s;
  s.gamma = n - v - 2 * w;
  s.sigma_c = rat(-static_cast<long long>(n) * m + static_cast<long long>(m) * v, m + v);
  s.sigma_b = rat(-static_cast<long long>(n) * (m - w) + static_cast<long long>(m) * (v + w), m + v);
  if (s.gamma <= 0)
    s.sigma_1 = Rational(-n);
  else
    s.sigma_1 = rat(-static_cast<long long>(w) * n + static_cast<long long>(s.gamma) * m, n - w - v);
  if (s.gamma >= 0)
    s.sigma_2 = Rational(m);
  else
    s.sigma_2 = rat(static_cast<long long>(s.gamma) * n + static_cast<long long>(w + s.gamma) * m, w);
  s.sigma_3 = rat(-static_cast<long long>(w) * n + static_cast<long long>(n - v - w) * m, n - v);
  if (v + w < n)
    s.mu_factor = rat(-(static_cast<long long>(m) + v + w), n - v - w);
  check_slope_range(s.sigma_c, m, n, "sigma_c");
  check_slope_range(s.sigma_b, m, n, "sigma_b");
  check_slope_range(s.sigma_1, m, n, "sigma_1");
  check_slope_range(s.sigma_2, m, n, "sigma_2");
  check_slope_range(s.sigma_3, m, n, "sigma_3");
  return s;
}

UnifBSlopes unifb_slopes(int m, int n, int v) {
  require_dims(m, n);
  if (m < 3) fail(errc::parameter, "unifB: needs m >= 3 so that u >= 2");
  UnifBSlopes s;
  s.u = std::min((m + 1) / 2, n + 1);
  const int u = s.u;
  if (v < 0 || v > n + 1 - u) fail(errc::parameter, "unifB: v must satisfy 0 <= v <= n + 1 - u");
  s.sigma_c = rat(-static_cast<long long>(n) * u + static_cast<long long>(m) * v, u + v);
  s.sigma_b = rat(-static_cast<long long>(n) + static_cast<long long>(m) * (u + v - 1), u + v);
  s.sigma_1 = rat(-static_cast<long long>(n) * (m - u) + static_cast<long long>(m) * (n - v - u + 1),
                  m + n - 2 * u - v + 1);
  s.sigma_2 = rat(-static_cast<long long>(n) * (m - u) + static_cast<long long>(m) * (n - v), m + n - u - v);
  // Sum-zero across [p_k, r_k] forces this value; the printed display has
  // the sign of the n-term flipped and is not even representable as an
  // admissible slope for (3, 2, 2, 0).
  s.sigma_3 = rat(static_cast<long long>(n) - static_cast<long long>(m) * (u + v - 1), m + n - u - v);
  if (m + n - 3 * u - v + 2 > 0) {
    s.sigma_1p = rat(-static_cast<long long>(n) * (m - 2 * u + 1) + static_cast<long long>(m) * (n - v - u + 1),
                     m + n - 3 * u - v + 2);
  }  // else: no component ever carries it; leave the zero sentinel
  s.sigma_2p = rat(-static_cast<long long>(n) * (m - 2 * u + 1) + static_cast<long long>(m) * (n - v),
                   m + n - 2 * u - v + 1);
  s.sigma_3p = s.sigma_1;
  s.mu_factor = rat(-(2LL * u + v - 1), m + n - 2 * u - v + 1);
  check_slope_range(s.sigma_c, m, n, "sigma_c");
  check_slope_range(s.sigma_b, m, n, "sigma_b");
  check_slope_range(s.sigma_1, m, n, "sigma_1");
  check_slope_range(s.sigma_2, m, n, "sigma_2");
  check_slope_range(s.sigma_3, m, n, "sigma_3");
  check_slope_range(s.sigma_2p, m, n, "sigma_2'");
  check_slope_range(s.sigma_3p, m, n, "sigma_3'");
  return s;
}

UnifBCSlopes unifbc_slopes(int m, int n, int u) {
  require_dims(m, n);
  if (u < 1 || u > n - 1) fail(errc::parameter, "unifBC: u must satisfy 1 <= u <= n - 1");
  UnifBCSlopes s;
  s.sigma_c = rat(static_cast<long long>(m) * u - static_cast<long long>(m) * n, m + u);
  s.sigma_b = rat(static_cast<long long>(m) * u - static_cast<long long>(m - 1) * n, m + u - 1);
  const Rational k = (Rational(m) - s.sigma_c) / (Rational(n) + s.sigma_b);
  s.gamma_u = (s.sigma_c + s.sigma_b * k) / (Rational(1) + k);
  check_slope_range(s.sigma_c, m, n, "sigma_c");
  check_slope_range(s.sigma_b, m, n, "sigma_b");
  return s;
}

double gamma_u(int m, int n, int u) { return rd(unifbc_slopes(m, n, u).gamma_u); }

// ------------------------------------------------------------------- beau

BuildResult build_beau(const BeauParams& params) {
  require_dims(params.m, params.n);
  if (params.generations < 1) fail(errc::parameter, "generations must be >= 1");
  const int m = params.m, n = params.n, dim = m + n;
  const double q1 = params.q1;
  if (!(q1 > 1.0)) fail(errc::parameter, "q_1 must exceed 1");
  if (q1 * q1 < q1 + (static_cast<double>(dim) / n) * std::log(q1))
    fail(errc::parameter, "q_1 too small: q_1^2 < q_1 + ((m+n)/n) log q_1");

  const Rational sigma_c = rat(-m, dim - 1);
  const Rational sigma_b = rat(n, dim - 1);
  const Rational zero(0);

  BuildResult out;
  out.tpl.m = m;
  out.tpl.n = n;
  out.tpl.components.assign(dim, PiecewiseLinear{});
  for (auto& c : out.tpl.components) {
    c.q_start = q1;
    c.start_value = 0.0;
  }

  double q = q1;
  for (int k = 1; k <= params.generations; ++k) {
    if (k > 1 && q > kQCap) break;  // out of double range; keep what we have
    const double lg = std::log(q);
    const double b = q + lg;
    const double t = q + (static_cast<double>(dim) / n) * lg;
    const double q_next = q * q;
    if (k > 1) out.tpl.junctions.push_back(q);
    put_group(out.tpl.components, 0, dim - 1, sigma_c, b);
    put(out.tpl.components[dim - 1], Rational(m), b);
    put_group(out.tpl.components, 0, dim - 1, sigma_b, t);
    put(out.tpl.components[dim - 1], Rational(-n), t);
    put_group(out.tpl.components, 0, dim, zero, q_next);
    out.generations.push_back({k, q, b, t, q_next, 0.0, 0.0});
    q = q_next;
  }
  return out;
}

// -------------------------------------------------------------------- ord

namespace {

// State carried across one ord generation; everything in doubles except the
// slopes.  Group layout: A = [0, m+v), B = [m+v, m+v+w), C = [m+v+w, m+n).
struct OrdGen {
  double q, lambda;
  double a_q;          // bottom value at q_k
  double c_q;          // top value at q_k (meaningless when C empty)
  bool has_c;
  double p = 0, p_prime = 0, r = 0, q_next = 0, q_max = kInf;
  double lambda_next = 0;
};

}  // namespace

BuildResult build_ord(const OrdParams& params) {
  const OrdSlopes S = ord_slopes(params.m, params.n, params.v, params.w);
  if (params.generations < 1) fail(errc::parameter, "generations must be >= 1");
  if (!(params.q1 >= 2.0)) fail(errc::parameter, "q_1 must be >= 2");
  const int m = params.m, n = params.n, v = params.v, w = params.w, dim = m + n;
  const bool has_c = v + w < n;
  const double sc = rd(S.sigma_c), sb = rd(S.sigma_b);
  const double hi = std::min(0.0, sb);
  double lambda = clamp_peak(params.lambda1, sc, hi, 1);

  BuildResult out;
  out.tpl.m = m;
  out.tpl.n = n;
  out.tpl.components.assign(dim, PiecewiseLinear{});
  const double mu1 = has_c ? rd(S.mu_factor) * lambda : 0.0;
  // With C empty the B block alone must balance A for the values to sum to
  // zero; otherwise B sits at the bottom with A and C carries the balance.
  const double lambda_b1 = has_c ? lambda : -(double(m + v) / w) * lambda;
  for (int j = 0; j < dim; ++j) {
    auto& c = out.tpl.components[j];
    c.q_start = params.q1;
    c.start_value = (j < m + v ? lambda : (j < m + v + w ? lambda_b1 : mu1)) * params.q1;
  }

  const Rational slope_m(m), slope_neg_n(-n);
  const int A0 = 0, A1 = m + v, B1 = m + v + w;
  double q = params.q1;

  for (int k = 1; k <= params.generations; ++k) {
    if (k > 1 && q > kQCap) break;
    OrdGen g;
    g.q = q;
    g.lambda = lambda;
    g.a_q = out.tpl.components[0].end_value();
    g.c_q = has_c ? out.tpl.components[dim - 1].end_value() : 0.0;
    const double b_q = out.tpl.components[A1].end_value();
    g.has_c = has_c;
    const double lg = std::log(q);

    // --- resolve p_k ---------------------------------------------------
    const double p_min = q + lg;
    double p = 0, r = -1;
    bool explicit_step = params.schedule.kind == Schedule::Kind::explicit_steps;
    if (explicit_step) {
      if (static_cast<size_t>(k) > params.schedule.steps.size())
        gen_fail(k, "explicit schedule has no step for this generation");
      p = params.schedule.steps[k - 1].p;
      r = params.schedule.steps[k - 1].r;
      if (p < p_min - 1e-9 * p_min) gen_fail(k, "p below q + log q");
      p = std::max(p, p_min);
    } else if (params.schedule.kind == Schedule::Kind::endpoint_low) {
      p = std::max(std::pow(q, 1.5), p_min);
    } else if (params.schedule.kind == Schedule::Kind::endpoint_high) {
      p = p_min;
    } else {  // mix: aim the dip P_1(p)/p at t(theta)
      const double t = sc + params.schedule.theta * (hi - sc);
      if (t - sc < 1e-9 * (1.0 + std::fabs(sc)))
        p = std::max(std::pow(q, 1.5), p_min);
      else
        p = std::max(q * (lambda - sc) / (t - sc), p_min);
    }
    // When sigma_b exceeds sigma_2 the gap between A and B shrinks on
    // [p, p']; p must be large enough that they do not cross before B
    // reaches C.
    if (has_c && S.sigma_b > S.sigma_2) {
      const double p_floor =
          q + (sb - rd(S.sigma_2)) * (g.c_q - b_q) / (rd(S.sigma_2 - S.sigma_1) * (m - sc));
      if (explicit_step) {
        if (p < p_floor - value_tol(p_floor)) gen_fail(k, "p too small: A crosses B before p'");
      }
      p = std::max(p, p_floor);
    }
    g.p = p;

    // --- dependent abscissae -------------------------------------------
    // B and C both climb at slope m on [q, p], so their gap stays (mu-lambda)q
    // and closes on [p, p'] at rate sigma_2 - sigma_1.
    if (has_c) {
      if (S.sigma_1 == S.sigma_2) gen_fail(k, "sigma_1 = sigma_2 leaves p' undefined");
      g.p_prime = p + (g.c_q - b_q) / rd(S.sigma_2 - S.sigma_1);
    } else {
      g.p_prime = p;
    }
    const double s2 = rd(S.sigma_2), s3 = rd(S.sigma_3);
    const double a_p = g.a_q + sc * (p - q);
    // gap between the merged B/C path and A, measured at p'; B may start
    // above A (it does whenever C is empty), hence the b_q - a_q offset
    const double gap_pp =
        (b_q - g.a_q) + (static_cast<double>(m) - sc) * (p - q) + (s2 - sb) * (g.p_prime - p);
    if (sb > 0) g.q_max = g.p_prime + gap_pp / (sb - s3);

    // --- resolve r_k ----------------------------------------------------
    if (!has_c) {
      // B falls at -n from p regardless, so r is inert; any choice in
      // [p', q_max] yields the same template.
      r = g.p_prime;
    } else if (explicit_step) {
      if (r < g.p_prime - value_tol(g.p_prime) || r > g.q_max + value_tol(r))
        gen_fail(k, "r outside [p', q_max]");
      r = std::min(std::max(r, g.p_prime), g.q_max);
    } else if (params.schedule.kind == Schedule::Kind::endpoint_low) {
      r = std::min(std::max(p + std::log(p), g.p_prime), g.q_max);
    } else {  // endpoint_high and mix both drive the next peak to min(0, sigma_b)
      if (sb > 0) {
        r = g.q_max;  // next peak lands exactly on zero
      } else {
        // approach sigma_b geometrically: solve the linear system for the
        // r that makes the next peak hit the waypoint target
        const double target = sb + (lambda - sb) / 4.0;
        if (std::fabs(target - sb) < 1e-14 * (1.0 + std::fabs(sb))) {
          r = std::max(p + std::log(p), g.p_prime);  // already converged
        } else {
          const double need_d = (a_p - target * p) / (target - sb);  // q' - p
          const double c_r = (n + s3) / (n + sb);
          const double rhs = need_d + p - (gap_pp + (sb - s3) * g.p_prime) / (n + sb);
          r = c_r > 1e-12 ? rhs / c_r : g.p_prime;
          r = std::max(r, g.p_prime);
        }
      }
    }
    g.r = r;

    // --- generation end --------------------------------------------------
    const double gap_r = gap_pp + (s3 - sb) * (r - g.p_prime);
    if (gap_r < -value_tol(r)) gen_fail(k, "r too large: B drops below A before q'");
    g.q_next = r + std::max(gap_r, 0.0) / (n + sb);
    if (!(g.q_next > q)) gen_fail(k, "empty generation (q' <= q)");

    // --- emit pieces ------------------------------------------------------
    if (k > 1) out.tpl.junctions.push_back(q);
    put_group(out.tpl.components, A0, A1, S.sigma_c, p);
    put_group(out.tpl.components, A1, dim, slope_m, p);
    put_group(out.tpl.components, A0, A1, S.sigma_b, g.q_next);
    put_group(out.tpl.components, A1, B1, S.sigma_2, g.p_prime);
    put_group(out.tpl.components, A1, B1, S.sigma_3, r);
    put_group(out.tpl.components, A1, B1, slope_neg_n, g.q_next);
    if (has_c) {
      put_group(out.tpl.components, B1, dim, S.sigma_1, g.p_prime);
      put_group(out.tpl.components, B1, dim, S.sigma_3, r);
      put_group(out.tpl.components, B1, dim, slope_m, g.q_next);
    }

    g.lambda_next = out.tpl.components[0].end_value() / g.q_next;
    lambda = std::min(hi, std::max(sc, g.lambda_next));
    out.generations.push_back({k, g.q, g.p, g.r, g.q_next, g.lambda, g.lambda_next});
    q = g.q_next;
  }
  return out;
}

// ------------------------------------------------------------------ unifB

BuildResult build_unifb(const UnifBParams& params) {
  const UnifBSlopes S = unifb_slopes(params.m, params.n, params.v);
  if (params.generations < 1) fail(errc::parameter, "generations must be >= 1");
  if (!(params.q1 >= 2.0)) fail(errc::parameter, "q_1 must be >= 2");
  const int m = params.m, n = params.n, v = params.v, u = S.u, dim = m + n;
  const double sc = rd(S.sigma_c), sb = rd(S.sigma_b);
  const double s1 = rd(S.sigma_1), s2 = rd(S.sigma_2), s3 = rd(S.sigma_3);
  const double hi = std::min(0.0, sb);
  double lambda = clamp_peak(params.lambda1, sc, hi, 1);

  // Group layout: A = [0, u+v) at the peak value; M = [u+v, 2u+v-1) starts
  // with A and climbs at slope m; T = [2u+v-1, m+n) starts at mu_k q_k.
  const int A1 = u + v, M1 = 2 * u + v - 1;

  BuildResult out;
  out.tpl.m = m;
  out.tpl.n = n;
  out.tpl.components.assign(dim, PiecewiseLinear{});
  const double mu1 = rd(S.mu_factor) * lambda;
  for (int j = 0; j < dim; ++j) {
    auto& c = out.tpl.components[j];
    c.q_start = params.q1;
    c.start_value = (j < M1 ? lambda : mu1) * params.q1;
  }

  const Rational slope_m(m), slope_neg_n(-n);
  double q = params.q1;

  for (int k = 1; k <= params.generations; ++k) {
    if (k > 1 && q > kQCap) break;
    const double lg = std::log(q);
    const double a_q = out.tpl.components[0].end_value();
    const double t_q = out.tpl.components[dim - 1].end_value();

    // --- merge abscissa of M into T ---------------------------------------
    // M climbs at m from the peak value; T descends at sigma_1 from mu q.
    const double s_merge = std::max(q, q + (t_q - a_q) / (m - s1));

    // --- resolve p_k and r_k -----------------------------------------------
    // p must not precede the merge: the [s, p] drift phase needs s <= p.
    const double p_min = std::max(q + lg, s_merge);
    const double merge_val = a_q + static_cast<double>(m) * (s_merge - q);
    // The -n line through (r, Q_1(r)) has to meet the merged path at or after
    // the merge abscissa; equivalently its value at s must reach merge_val.
    auto peel_slack = [&](double p_, double r_) {
      return (a_q + sc * (p_ - q) + sb * (r_ - p_)) + n * (r_ - s_merge) - merge_val;
    };
    double p = 0, r = -1;
    const bool explicit_step = params.schedule.kind == Schedule::Kind::explicit_steps;
    if (explicit_step) {
      if (static_cast<size_t>(k) > params.schedule.steps.size())
        gen_fail(k, "explicit schedule has no step for this generation");
      p = params.schedule.steps[k - 1].p;
      r = params.schedule.steps[k - 1].r;
      if (p < p_min - 1e-9 * p_min) gen_fail(k, "p below max(q + log q, merge abscissa)");
      p = std::max(p, p_min);
      if (r < p - value_tol(p)) gen_fail(k, "r below p");
      r = std::max(r, p);
      if (peel_slack(p, r) < -value_tol(r))
        gen_fail(k, "the -n line from (r, Q_1(r)) misses the merged path; grow r or p");
    } else {
      // pick the peak target for this generation, then take the smallest
      // (p, r) that realises Q_1(r)/r = t with a legal peel
      const double eta = std::ldexp(1.0, -k - 1);  // decay onto endpoints we can only approach
      double t;
      if (params.schedule.kind == Schedule::Kind::endpoint_low) {
        t = sc + (hi - sc) * eta;
      } else if (params.schedule.kind == Schedule::Kind::endpoint_high) {
        t = sb > 0 ? 0.0 : sb + (lambda - sb) / 4.0;
      } else {  // mix
        t = sc + params.schedule.theta * (hi - sc);
        if (t - sc < 1e-9 * (1.0 + std::fabs(sc))) t = sc + (hi - sc) * eta;
        else if (sb <= 0 && sb - t < 1e-9 * (1.0 + std::fabs(sb)))
          t = sb + (lambda - sb) / 4.0;
      }
      if (sb <= 0 && std::fabs(t - sb) < 1e-14 * (1.0 + std::fabs(sb))) {
        // converged onto sigma_b itself: any short climb keeps the ratio there
        p = p_min;
        r = std::max(p + lg, p - peel_slack(p, p) / (n + sb));
      } else {
        // the dip has to pass below t before the sigma_b phase can land on it
        const double p_reach = q * (lambda - sc) / (t - sc);
        p = std::max(p_min, p_reach * (1.0 + 1e-12));
        auto r_of = [&](double p_) { return (a_q + sc * (p_ - q) - sb * p_) / (t - sb); };
        r = r_of(p);
        const double f0 = peel_slack(p, r);
        if (f0 < 0) {
          // slack is affine in p (with r tracking r(t)), slope (sc-sb)(t+n)/(t-sb),
          // so one exact step widens p onto zero slack without moving the target
          const double dfdp = (sc - sb) * (t + n) / (t - sb);
          if (dfdp > 1e-12) {
            p = (p - f0 / dfdp) * (1.0 + 1e-12);
            r = r_of(p);
          } else {
            r = std::max(r, p - peel_slack(p, p) / (n + sb));
          }
        }
        r = std::max(r, p);
      }
    }

    const double top_p = merge_val + s2 * (p - s_merge);
    const double a_p = a_q + sc * (p - q);
    const double gap_p = top_p - a_p;
    const double x_star = sb > 0 ? p + gap_p / (sb - s3) : kInf;
    if (sb > 0) {
      if (explicit_step && r > x_star + value_tol(r))
        gen_fail(k, "r too large: Q_1(r) > Q_{m+n}(r)");
      r = std::min(r, x_star);
    }
    const double gap_r = gap_p + (s3 - sb) * (r - p);
    if (gap_r < -value_tol(r)) gen_fail(k, "r too large: Q_1(r) > Q_{m+n}(r)");
    const double a_r = a_p + sb * (r - p);

    // --- peel abscissa r' --------------------------------------------------
    // line of slope -n through (r, Q_1(r)), intersected backwards with the
    // merged top path (slope sigma_3 on [p, r], sigma_2 on [s, p])
    double r_prime;
    if (n + s3 > 1e-12) {
      r_prime = (a_r + n * r - top_p + s3 * p) / (n + s3);
    } else {
      r_prime = p - 1.0;  // sigma_3 parallel to the line; fall through to [s, p]
    }
    if (r_prime < p - value_tol(p)) {
      r_prime = (a_r + n * r - merge_val + s2 * s_merge) / (n + s2);
      if (r_prime < s_merge - value_tol(s_merge))
        gen_fail(k, "the -n line from (r, Q_1(r)) misses the merged path; grow r or p");
      r_prime = std::min(std::max(r_prime, s_merge), p);
    } else {
      r_prime = std::min(std::max(r_prime, p), r);
    }

    // --- emit pieces ---------------------------------------------------------
    if (k > 1) out.tpl.junctions.push_back(q);
    // A group: sigma_c then sigma_b, unaffected by the peel
    put_group(out.tpl.components, 0, A1, S.sigma_c, p);
    put_group(out.tpl.components, 0, A1, S.sigma_b, r);
    // M slots: climb, merged drift, then ride the -n line from r'
    put_group(out.tpl.components, A1, M1, slope_m, s_merge);
    put_group(out.tpl.components, A1, M1, S.sigma_2, std::min(r_prime, p));
    if (r_prime > p) put_group(out.tpl.components, A1, M1, S.sigma_3, r_prime);
    put_group(out.tpl.components, A1, M1, slope_neg_n, r);
    // T slots: sigma_1 to the merge, then base slopes switching to primed
    // variants once the riders drop out at r'
    put_group(out.tpl.components, M1, dim, S.sigma_1, s_merge);
    if (r_prime < p) {
      put_group(out.tpl.components, M1, dim, S.sigma_2, r_prime);
      put_group(out.tpl.components, M1, dim, S.sigma_2p, p);
      put_group(out.tpl.components, M1, dim, S.sigma_3p, r);
    } else {
      put_group(out.tpl.components, M1, dim, S.sigma_2, p);
      put_group(out.tpl.components, M1, dim, S.sigma_3, r_prime);
      put_group(out.tpl.components, M1, dim, S.sigma_3p, r);
    }

    const double lambda_next = out.tpl.components[0].end_value() / r;
    out.generations.push_back({k, q, p, r, r, lambda, lambda_next});
    lambda = std::min(hi, std::max(sc, lambda_next));
    q = r;
  }
  return out;
}

// ----------------------------------------------------------------- unifBC

BuildResult build_unifbc(const UnifBCParams& params) {
  const UnifBCSlopes S = unifbc_slopes(params.m, params.n, params.u);
  if (params.generations < 1) fail(errc::parameter, "generations must be >= 1");
  if (!(params.q1 >= 2.0)) fail(errc::parameter, "q_1 must be >= 2");
  const int m = params.m, n = params.n, u = params.u, dim = m + n;
  const double sc = rd(S.sigma_c), sb = rd(S.sigma_b), gu = rd(S.gamma_u);
  const double hi = std::min(0.0, sb);
  double lambda = clamp_peak(params.lambda1, sc, hi, 1);

  const int B1 = m + u;        // bottom group = [0, B1)
  const int tops = n - u;      // free upper components

  BuildResult out;
  out.tpl.m = m;
  out.tpl.n = n;
  out.tpl.components.assign(dim, PiecewiseLinear{});
  // upper components equally spaced above the peak value, spacing chosen so
  // that everything sums to zero
  const double delta = tops > 0 ? -2.0 * lambda * params.q1 * (m + n) / (static_cast<double>(tops) * (tops + 1)) : 0.0;
  for (int j = 0; j < dim; ++j) {
    auto& c = out.tpl.components[j];
    c.q_start = params.q1;
    c.start_value = j < B1 ? lambda * params.q1 : lambda * params.q1 + delta * (j - B1 + 1);
  }

  const Rational slope_m(m), slope_neg_n(-n);
  const double c1 = (m - sc) / (n + sb);
  double q = params.q1;

  for (int k = 1; k <= params.generations; ++k) {
    if (k > 1 && q > kQCap) break;
    const double lg = std::log(q);
    const double a_q = out.tpl.components[0].end_value();
    const double top_q = out.tpl.components[dim - 1].end_value();
    const double d0 = (top_q - a_q) / (n + sb);

    // --- resolve p_k -----------------------------------------------------
    const double p_min = q + lg;
    double p;
    if (params.schedule.kind == Schedule::Kind::explicit_steps) {
      if (static_cast<size_t>(k) > params.schedule.steps.size())
        gen_fail(k, "explicit schedule has no step for this generation");
      p = params.schedule.steps[k - 1].p;
      if (p < p_min - 1e-9 * p_min) gen_fail(k, "p below q + log q");
      p = std::max(p, p_min);
    } else if (params.schedule.kind == Schedule::Kind::endpoint_low) {
      p = std::max(std::pow(q, 1.5), p_min);
    } else if (params.schedule.kind == Schedule::Kind::endpoint_high) {
      p = p_min;
    } else {  // mix: solve the linear peak map for lambda_{k+1} = t(theta)
      const double t = gu + params.schedule.theta * (hi - gu);
      const double denom = (1.0 + c1) * (t - gu);
      if (std::fabs(denom) < 1e-12) {
        p = std::max(std::pow(q, 1.5), p_min);
      } else {
        const double x = (q * (lambda - t) + d0 * (sb - t)) / denom;
        p = std::max(q + x, p_min);
      }
    }

    // --- generation end and peak ------------------------------------------
    const double a_p = a_q + sc * (p - q);
    const double top_p = top_q + static_cast<double>(m) * (p - q);
    const double q_next = p + (top_p - a_p) / (n + sb);
    if (!(q_next > p)) gen_fail(k, "degenerate generation (q' <= p)");
    const double lambda_next = (a_p + sb * (q_next - p)) / q_next;
    if (lambda_next > hi + 1e-6) gen_fail(k, "p too large: next peak exceeds min(0, sigma_b)");

    // --- emit ----------------------------------------------------------------
    if (k > 1) out.tpl.junctions.push_back(q);
    put_group(out.tpl.components, 0, B1, S.sigma_c, p);
    put_group(out.tpl.components, B1, dim, slope_m, p);
    put_group(out.tpl.components, 0, B1 - 1, S.sigma_b, q_next);

    // braid on [p, q']: one path descends at -n from the top, n-u risers
    // climb at slope m (the erstwhile bottom-group splinter plus the lower
    // upper components); sorted slots swap paths at the crossings
    struct Path {
      double v;
      bool descending;
    };
    std::vector<Path> paths;
    // the splinter rising off the bottom group, the lower upper components,
    // and the descender peeling off the very top (already climbed to p)
    paths.push_back({out.tpl.components[B1 - 1].end_value(), false});
    for (int j = B1; j < dim - 1; ++j) paths.push_back({out.tpl.components[j].end_value(), false});
    paths.push_back({out.tpl.components[dim - 1].end_value(), true});

    std::vector<double> cuts{p, q_next};
    for (const auto& pt : paths) {
      if (pt.descending) continue;
      const double x = p + (paths.back().v - pt.v) / (m + n);
      if (x > p && x < q_next) cuts.push_back(x);
    }
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end(),
                           [](double a, double b) { return std::fabs(a - b) <= 1e-13 * (std::fabs(b) + 1.0); }),
               cuts.end());

    std::vector<size_t> order(paths.size());
    for (size_t i = 0; i < order.size(); ++i) order[i] = i;
    for (size_t c = 0; c + 1 < cuts.size(); ++c) {
      const double x0 = cuts[c], x1 = cuts[c + 1], mid = 0.5 * (x0 + x1);
      std::stable_sort(order.begin(), order.end(), [&](size_t a, size_t b) {
        const double va = paths[a].v + (paths[a].descending ? -static_cast<double>(n) : m) * (mid - x0);
        const double vb = paths[b].v + (paths[b].descending ? -static_cast<double>(n) : m) * (mid - x0);
        return va < vb;
      });
      for (size_t i = 0; i < order.size(); ++i) {
        const auto& pt = paths[order[i]];
        put(out.tpl.components[B1 - 1 + static_cast<int>(i)],
            pt.descending ? slope_neg_n : slope_m, x1);
      }
      for (auto& pt : paths) pt.v += (pt.descending ? -static_cast<double>(n) : m) * (x1 - x0);
    }

    out.generations.push_back({k, q, p, q_next, q_next, lambda, lambda_next});
    lambda = std::min(hi, std::max(sc, lambda_next));
    q = q_next;
  }
  return out;
}

// ------------------------------------------------------------------- menus

namespace {

struct MenuPair {
  int v, w;
};

void add_pair(std::vector<MenuPair>& pairs, std::set<std::pair<int, int>>& seen, int m, int n, int v, int w) {
  if (v < 0 || v >= n) return;
  if (w < 1 || w > std::min(m, n - v)) return;
  if (seen.insert({v, w}).second) pairs.push_back({v, w});
}

}  // namespace

std::vector<MenuEntry> ord_param_menu(int m, int n, PropertyGoal goal, double omega) {
  require_dims(m, n);
  const double lo = static_cast<double>(m) / n;
  const bool unbounded = goal == PropertyGoal::B;
  if (std::isinf(omega)) {
    if (!unbounded) fail(errc::domain, "omega = infinity only admissible for goal B");
  } else {
    if (!(omega >= lo - 1e-12)) fail(errc::domain, "omega below m/n");
    if (!unbounded && omega > m + 1e-12) fail(errc::domain, "omega above m for this goal");
  }

  std::vector<MenuPair> pairs;
  std::set<std::pair<int, int>> seen;
  const auto ladder = [&](int l_start) {
    for (int l = l_start;; ++l) {
      double vl_d = std::pow(static_cast<double>(m), l) - m;
      if (vl_d >= static_cast<double>(n)) break;
      const int vl = static_cast<int>(vl_d);
      const int wl = std::min(m - 1, m + n - static_cast<int>(std::pow(static_cast<double>(m), l)));
      if (wl < 1) break;
      add_pair(pairs, seen, m, n, vl, wl);
    }
  };
  switch (goal) {
    case PropertyGoal::B:
      if (m < 2) return {};  // slope m is forced on the top group when m = 1
      add_pair(pairs, seen, m, n, 0, std::min(m - 1, n));
      ladder(2);
      break;
    case PropertyGoal::C:
      if (n < 2) return {};  // v >= 1 impossible when n = 1
      add_pair(pairs, seen, m, n, 1, std::min(m, n - 1));
      break;
    case PropertyGoal::BC:
      if (m < 2 || n < 2) return {};
      add_pair(pairs, seen, m, n, 1, std::min(m - 1, n - 1));
      if (n >= m * m) {
        add_pair(pairs, seen, m, n, 2, m - 1);
        ladder(2);
      }
      break;
  }

  const double target = slope_from_exponent(omega, m, n);
  std::vector<MenuEntry> menu;
  for (const auto& pr : pairs) {
    const OrdSlopes S = ord_slopes(m, n, pr.v, pr.w);
    MenuEntry e;
    e.v = pr.v;
    e.w = pr.w;
    e.sigma_c = S.sigma_c;
    e.sigma_b = S.sigma_b;
    e.slope_lo = S.sigma_c;
    e.slope_hi = S.sigma_b < Rational(0) ? S.sigma_b : Rational(0);
    const double slo = rd(e.slope_lo), shi = rd(e.slope_hi);
    const auto w_hi = exponent_from_slope(slo, m, n);
    e.omega_hi_infinite = w_hi.infinite;
    e.omega_hi = w_hi.infinite ? kInf : w_hi.value;
    e.omega_lo = exponent_from_slope(shi, m, n).value;
    const double tol = 1e-9 * (1.0 + std::fabs(slo));
    if (target < slo - tol || target > shi + tol) continue;
    e.theta = shi > slo ? std::min(1.0, std::max(0.0, (target - slo) / (shi - slo))) : 0.0;
    menu.push_back(e);
  }
  std::sort(menu.begin(), menu.end(), [](const MenuEntry& a, const MenuEntry& b) {
    return a.v != b.v ? a.v < b.v : a.w < b.w;
  });
  return menu;
}

// ------------------------------------------------------------------ sweeps

SweepReport sweep_range(const SweepSpec& spec) {
  if (spec.thetas.empty()) fail(errc::parameter, "sweep grid must be nonempty");
  if (spec.generations < 10) fail(errc::insufficient_data, "sweep horizon must be >= 10 generations");
  for (double th : spec.thetas)
    if (!(th >= 0.0 && th <= 1.0)) fail(errc::parameter, "sweep grid values must lie in [0, 1]");

  SweepReport rep;
  rep.family = spec.family;
  double lo = 0, hi = 0;
  if (spec.family == "ord") {
    const OrdSlopes S = ord_slopes(spec.m, spec.n, spec.v, spec.w);
    lo = rd(S.sigma_c);
    hi = std::min(0.0, rd(S.sigma_b));
    rep.uses_limsup = false;
  } else if (spec.family == "unifB") {
    const UnifBSlopes S = unifb_slopes(spec.m, spec.n, spec.v);
    lo = rd(S.sigma_c);
    hi = std::min(0.0, rd(S.sigma_b));
    rep.uses_limsup = true;
  } else if (spec.family == "unifBC") {
    const UnifBCSlopes S = unifbc_slopes(spec.m, spec.n, spec.u);
    lo = rd(S.gamma_u);
    hi = std::min(0.0, rd(S.sigma_b));
    rep.uses_limsup = true;
  } else {
    fail(errc::parameter, "unknown sweep family: " + spec.family);
  }
  rep.claimed_lo = lo;
  rep.claimed_hi = hi;

  const size_t np = spec.thetas.size();
  auto results = parallel_map_chunks<std::vector<SweepPoint>>(np, [&](size_t b, size_t e) {
    std::vector<SweepPoint> chunk;
    for (size_t i = b; i < e; ++i) {
      const double theta = spec.thetas[i];
      SweepPoint pt;
      pt.theta = theta;
      pt.target = lo + theta * (hi - lo);
      try {
        BuildResult built;
        if (spec.family == "ord") {
          OrdParams p{spec.m, spec.n, spec.v, spec.w, spec.q1,
                      std::min(hi, std::max(lo, pt.target)), spec.generations,
                      Schedule::mix_preset(theta)};
          built = build_ord(p);
        } else if (spec.family == "unifB") {
          UnifBParams p{spec.m, spec.n, spec.v, spec.q1,
                        std::min(hi, std::max(lo, pt.target)), spec.generations,
                        Schedule::mix_preset(theta)};
          built = build_unifb(p);
        } else {
          UnifBCParams p{spec.m, spec.n, spec.u, spec.q1,
                         std::min(hi, std::max(lo, pt.target)), spec.generations,
                         Schedule::mix_preset(theta)};
          built = build_unifbc(p);
        }
        const RatioExtremes ex = p1_ratio_extremes(built.tpl);
        pt.achieved = rep.uses_limsup ? ex.limsup_est : ex.liminf_est;
        pt.ok = true;
      } catch (const Error& err) {
        std::ostringstream os;
        os << "theta=" << theta << ": " << err.what();
        fail(err.kind(), os.str());
      }
      chunk.push_back(pt);
    }
    return chunk;
  });
  for (auto& chunk : results)
    rep.points.insert(rep.points.end(), chunk.begin(), chunk.end());

  std::vector<double> achieved;
  rep.max_target_err = 0;
  for (const auto& pt : rep.points) {
    if (!pt.ok) continue;
    achieved.push_back(std::min(hi, std::max(lo, pt.achieved)));
    rep.max_target_err = std::max(rep.max_target_err, std::fabs(pt.achieved - pt.target));
  }
  if (achieved.empty()) {
    rep.max_gap = hi - lo;
    return rep;
  }
  std::sort(achieved.begin(), achieved.end());
  rep.max_gap = std::max(achieved.front() - lo, hi - achieved.back());
  for (size_t i = 0; i + 1 < achieved.size(); ++i)
    rep.max_gap = std::max(rep.max_gap, achieved[i + 1] - achieved[i]);
  return rep;
}

}  // namespace pgnlab
