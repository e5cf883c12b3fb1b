// SPDX-License-Identifier: MIT
//
// Successive-minima picture: the first-minimum function h(q) is the lower
// envelope of per-vector gauges, a sawtooth with slopes -n and m whose nick
// abscissae encode the (X_i, L_i) data exactly.
#pragma once

#include "pgnlab/bestapprox.hpp"
#include "pgnlab/matrix.hpp"

namespace pgnlab {

// max(log||v.x|| - n q, log residual + m q); the first branch is -infinity
// when v.x = 0.  Zero residual throws errc::rationality.
double gauge(const RMatrix& xi, const IntVec& v, double q);

struct ProfileNode {
  double q = 0;           // right endpoint of a linear segment
  double value = 0;
  int incoming_slope = 0; // -n or m
  int record = 0;         // 1-based index of the active best-approximation record
};

struct MinimaProfile {
  int m = 0, n = 0;
  double q_end = 0;
  double start_value = 0;        // value at q = 0
  std::vector<ProfileNode> nodes;
  std::vector<double> p;         // local-minimum abscissae
  std::vector<double> qn;        // local-maximum abscissae
  std::vector<int> p_record;     // record index active at each p
  std::vector<int> qn_record;    // record index active left of each local max
  int index_offset = 0;          // p_record[0] - 1 (anchoring convention)
};

double profile_value(const MinimaProfile& prof, double q);

// Lower envelope of the recorded vectors' gauges on [0, q_end].  The horizon
// is certified only up to the second-to-last q-nick, (log X_last -
// log L_{last-1})/(m+n); asking beyond throws errc::horizon.
MinimaProfile h1_profile(const BestApproxSequence& seq, double q_end);

double certified_q_end(const BestApproxSequence& seq);

struct AbcMeasurements {
  double max_slope_m_interval = 0;      // max |q_i - p_i|
  double max_slope_neg_n_interval = 0;  // max |p_{i+1} - q_i|
  double max_abs_local_min = 0;         // max |h(p_i)|
};
AbcMeasurements abc_measurements(const MinimaProfile& prof);

struct MinimaSample {
  double q = 0;
  std::vector<double> h;          // h_1 <= ... <= h_{m+n}
  std::vector<IntVec> witnesses;  // the greedy independent points
  Int x_box;                      // box actually searched
};

// Exhaustive successive minima of the parametric body at parameter q.
// x_box = 0 picks the default ceil(4 e^{n q}).  If the box cannot certify
// m+n independent points below its coverage ceiling, throws errc::coverage.
MinimaSample successive_minima_at(const RMatrix& xi, double q, const Int& x_box = Int(0));

// s = (m - n w)/(1 + w) and its inverse w = (m - s)/(n + s).
double slope_from_exponent(double w, int m, int n);
struct ExponentFromSlope {
  bool infinite = false;
  double value = 0;
};
ExponentFromSlope exponent_from_slope(double s, int m, int n);

}  // namespace pgnlab
