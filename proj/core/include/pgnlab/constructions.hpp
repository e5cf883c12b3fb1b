// SPDX-License-Identifier: MIT
//
// The four explicit template families.  Each builder assembles a template
// generation by generation from exact rational slopes, enforcing every
// admissibility inequality along the way; schedules decide the free
// abscissae (p_k, r_k) per generation, either from a named preset or from
// an explicit list.
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "pgnlab/rational.hpp"
#include "pgnlab/templates.hpp"

namespace pgnlab {

// ---------------------------------------------------------------- schedules

struct ScheduleStep {
  double p = 0;
  double r = 0;  // ignored by families that derive the generation end from p
};

struct Schedule {
  enum class Kind {
    endpoint_low,   // p_k = q_k^{3/2}, r_k = p_k + log p_k: drives the
                    // bottom-slope extreme of the range lemma
    endpoint_high,  // p_k = q_k + log q_k, r_k chosen so the next peak
                    // parameter lands on min(0, sigma_b)
    mix,            // interpolate: peak/dip targets set from theta in [0,1]
    explicit_steps,
  };
  Kind kind = Kind::mix;
  double theta = 0.5;
  std::vector<ScheduleStep> steps;

  static Schedule endpoint_low_preset();
  static Schedule endpoint_high_preset();
  static Schedule mix_preset(double theta);
  static Schedule explicit_preset(std::vector<ScheduleStep> steps);
  // Accepts "endpoint-sigma-c", "endpoint-zero-sigma-b", "mix" (and the
  // unicode spellings with the Greek sigma); theta only read for "mix".
  static Schedule from_name(const std::string& name, double theta);
  std::string name() const;
};

// ------------------------------------------------------------------ slopes

struct OrdSlopes {
  Rational sigma_c, sigma_b, sigma_1, sigma_2, sigma_3;
  // mu_k = mu_factor * lambda_k; meaningless when the top group is empty
  // (v + w = n), in which case it is left at zero.
  Rational mu_factor;
  int gamma = 0;  // n - v - 2w, selects the sigma_1/sigma_2 branches
};
OrdSlopes ord_slopes(int m, int n, int v, int w);

struct UnifBSlopes {
  int u = 0;  // min(floor((m+1)/2), n+1)
  Rational sigma_c, sigma_b;
  Rational sigma_1, sigma_2, sigma_3;     // base slopes
  Rational sigma_1p, sigma_2p, sigma_3p;  // primed variants on the peel window
  Rational mu_factor;                     // mu_k = mu_factor * lambda_k
};
UnifBSlopes unifb_slopes(int m, int n, int v);

struct UnifBCSlopes {
  Rational sigma_c, sigma_b;
  Rational gamma_u;  // fixed point of the peak map under p_k >> q_k
};
UnifBCSlopes unifbc_slopes(int m, int n, int u);
double gamma_u(int m, int n, int u);

// -------------------------------------------------------------- parameters

struct BeauParams {
  int m = 0, n = 0;
  double q1 = 0;
  int generations = 0;
};

struct OrdParams {
  int m = 0, n = 0, v = 0, w = 1;
  double q1 = 0;
  double lambda1 = 0;
  int generations = 0;
  Schedule schedule;
};

struct UnifBParams {
  int m = 0, n = 0, v = 0;
  double q1 = 0;
  double lambda1 = 0;
  int generations = 0;
  Schedule schedule;
};

struct UnifBCParams {
  int m = 0, n = 0, u = 1;
  double q1 = 0;
  double lambda1 = 0;
  int generations = 0;
  Schedule schedule;
};

// ------------------------------------------------------------------ builds

struct GenerationInfo {
  int index = 0;  // 1-based
  double q = 0, p = 0, r = 0, q_next = 0;
  double lambda = 0, lambda_next = 0;
};

struct BuildResult {
  Template tpl;
  std::vector<GenerationInfo> generations;
};

BuildResult build_beau(const BeauParams& params);
BuildResult build_ord(const OrdParams& params);
BuildResult build_unifb(const UnifBParams& params);
BuildResult build_unifbc(const UnifBCParams& params);

// ------------------------------------------------------------------- menus

enum class PropertyGoal { B, C, BC };

struct MenuEntry {
  int v = 0, w = 0;
  Rational sigma_c, sigma_b;
  Rational slope_lo, slope_hi;  // [sigma_c, min(0, sigma_b)]
  double omega_lo = 0;          // exponent reached at slope_hi
  double omega_hi = 0;          // exponent reached at slope_lo (inf if -n)
  bool omega_hi_infinite = false;
  double theta = 0;  // mix parameter whose dip target realizes omega
};

// Admissible (v, w) pairs whose reachable peak/dip slope interval covers the
// requested ordinary exponent.  goal B needs m >= 2, C needs n >= 2, BC both.
std::vector<MenuEntry> ord_param_menu(int m, int n, PropertyGoal goal, double omega);

// ------------------------------------------------------------------ sweeps

struct SweepSpec {
  std::string family;  // "ord" | "unifB" | "unifBC"
  int m = 0, n = 0;
  int v = 0, w = 1, u = 1;  // family-specific, unused values ignored
  double q1 = 100;
  int generations = 12;
  std::vector<double> thetas;  // grid over [0,1]; must be nonempty
};

struct SweepPoint {
  double theta = 0;
  double target = 0;    // slope the schedule aims the extreme at
  double achieved = 0;  // measured liminf (ord) or limsup (unifB/unifBC)
  bool ok = false;
  std::string note;
};

struct SweepReport {
  std::string family;
  bool uses_limsup = false;  // else liminf
  double claimed_lo = 0, claimed_hi = 0;
  std::vector<SweepPoint> points;
  double max_gap = 0;         // covering gap over the claimed interval
  double max_target_err = 0;  // worst |achieved - target| among ok points
};

SweepReport sweep_range(const SweepSpec& spec);

}  // namespace pgnlab
