// SPDX-License-Identifier: MIT
//
// Serialization boundary.  Conventions: rationals travel as "num/den"
// strings (bit-exact), big integers as decimal strings, floating read-outs
// as 12-significant-digit strings so that reruns diff byte-identically.
#pragma once

#include <nlohmann/json.hpp>

#include <string>
#include <vector>

#include "pgnlab/bestapprox.hpp"
#include "pgnlab/constructions.hpp"
#include "pgnlab/diagnostics.hpp"
#include "pgnlab/errors.hpp"
#include "pgnlab/minimaprofile.hpp"
#include "pgnlab/templates.hpp"

namespace pgnlab {

using json = nlohmann::json;

// 12 significant digits, "%.12g"; -0 normalized to 0.
std::string format_real(double x);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

// Matrix files: either {"m", "n", "entries": [["num/den", ...], ...]}
// (row-major, n rows of m entries) or a continued-fraction generator
// {"cf": [a0, a1, ...], "truncate_den": N} yielding the 1x1 matrix whose
// entry is the first convergent with denominator >= N.
RMatrix matrix_from_json(const json& j);
json matrix_to_json(const RMatrix& mat);
RMatrix load_matrix(const std::string& path);

// CSV columns: index, X, L_num, L_den, x_1..x_m, y_1..y_n.
std::string sequence_to_csv(const BestApproxSequence& seq);
json sequence_to_json(const BestApproxSequence& seq);

// CSV columns: q, value, slope — one row per profile node, preceded by the
// starting point at q = 0.
std::string profile_to_csv(const MinimaProfile& prof);

// CSV columns: q, h_1..h_{dim}.
std::string minima_samples_to_csv(int dim, const std::vector<MinimaSample>& samples);

// Template JSON: {m, n, q_start, components: [{start_value, pieces:
// [{q_to, slope: "num/den"}]}]} plus an auxiliary "junctions" array.
// Slopes round-trip bit-exactly; abscissae and values carry 12 digits.
json template_to_json(const Template& t);
Template template_from_json(const json& j);
Template load_template(const std::string& path);

json validation_to_json(const ValidationReport& rep);

// Construction spec: {family: "beau"|"ord"|"unifB"|"unifBC", m, n,
// v/w/u as the family needs, q1, lambda1, generations, schedule, theta}.
// schedule is a preset name or an explicit [[p, r], ...] list.
struct ConstructionJob {
  std::string family;
  BeauParams beau{};
  OrdParams ord{};
  UnifBParams unifb{};
  UnifBCParams unifbc{};
};
ConstructionJob construction_from_json(const json& j);
BuildResult run_construction(const ConstructionJob& job);

// Sweep spec: {family, m, n, v/w/u, q1, generations, grid or thetas}.
SweepSpec sweep_from_json(const json& j);
json sweep_to_json(const SweepReport& rep);

json ratio_stats_to_json(const RatioStats& st);
json exponents_to_json(const ExponentEstimate& est);
json dirichlet_to_json(const DirichletReport& rep);
json growth_to_json(const GrowthReport& rep);
json runs_to_json(const std::vector<PatternRun>& runs);
json det_bounds_to_json(const DetBoundsReport& rep);
json covol_to_json(const CovolReport& rep);
json cross_norm_to_json(const CrossNormReport& rep);

json error_to_json(const Error& e);

// 0 handled elsewhere; validation -> 2; precision/rationality/coverage -> 4;
// everything else -> 3.
int exit_code_for(errc kind);

}  // namespace pgnlab
