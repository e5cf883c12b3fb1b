// SPDX-License-Identifier: MIT
#include "pgnlab/io.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace pgnlab {

namespace {

const json& req(const json& j, const char* key) {
  auto it = j.find(key);
  if (it == j.end()) fail(errc::parameter, std::string("missing field '") + key + "'");
  return *it;
}

double req_real(const json& j, const char* key) {
  const json& v = req(j, key);
  if (!v.is_number()) fail(errc::parameter, std::string("field '") + key + "' must be a number");
  return v.get<double>();
}

int req_int(const json& j, const char* key) {
  const json& v = req(j, key);
  if (!v.is_number_integer()) fail(errc::parameter, std::string("field '") + key + "' must be an integer");
  return v.get<int>();
}

int opt_int(const json& j, const char* key, int dflt) {
  return j.contains(key) ? req_int(j, key) : dflt;
}

double opt_real(const json& j, const char* key, double dflt) {
  return j.contains(key) ? req_real(j, key) : dflt;
}

Int big_from_json(const json& v, const char* key) {
  try {
    if (v.is_string()) return Int(v.get<std::string>());
    if (v.is_number_integer()) return Int(v.get<long long>());
  } catch (const std::exception&) {
  }
  fail(errc::parameter, std::string("field '") + key + "' must be an integer or decimal string");
}

// Node coordinates in reloadable artifacts must survive a save/load cycle
// bit-for-bit; 12 digits would fuse adjacent breakpoints once q ~ 1e16.
std::string format_exact(double x) {
  if (x == 0.0) x = 0.0;
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  double back = std::strtod(buf, nullptr);
  if (back == x) {
    // prefer the shortest representation that still round-trips
    for (int prec = 12; prec < 17; ++prec) {
      char sh[40];
      std::snprintf(sh, sizeof sh, "%.*g", prec, x);
      if (std::strtod(sh, nullptr) == x) return sh;
    }
  }
  return buf;
}

Schedule schedule_from_json(const json& j) {
  const double theta = opt_real(j, "theta", 0.5);
  if (!j.contains("schedule")) return Schedule::mix_preset(theta);
  const json& s = j.at("schedule");
  if (s.is_string()) return Schedule::from_name(s.get<std::string>(), theta);
  if (s.is_array()) {
    std::vector<ScheduleStep> steps;
    for (const auto& e : s) {
      if (e.is_array() && e.size() == 2)
        steps.push_back({e[0].get<double>(), e[1].get<double>()});
      else if (e.is_object())
        steps.push_back({req_real(e, "p"), opt_real(e, "r", 0.0)});
      else
        fail(errc::parameter, "schedule steps must be [p, r] pairs or {p, r} objects");
    }
    return Schedule::explicit_preset(std::move(steps));
  }
  fail(errc::parameter, "schedule must be a preset name or a step list");
}

}  // namespace

std::string format_real(double x) {
  if (x == 0.0) x = 0.0;  // collapse -0
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(errc::parameter, "cannot open file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) fail(errc::parameter, "cannot write file: " + path);
  out << content;
  if (!out) fail(errc::parameter, "write failed: " + path);
}

// ------------------------------------------------------------------ matrix

RMatrix matrix_from_json(const json& j) {
  if (j.contains("cf")) {
    const json& cf = j.at("cf");
    if (!cf.is_array() || cf.empty()) fail(errc::parameter, "'cf' must be a nonempty array");
    const Int cut = big_from_json(req(j, "truncate_den"), "truncate_den");
    if (cut < 1) fail(errc::parameter, "'truncate_den' must be positive");
    Int p_prev(1), p_cur(cf[0].get<long long>());
    Int q_prev(0), q_cur(1);
    bool reached = q_cur >= cut;
    for (size_t i = 1; i < cf.size() && !reached; ++i) {
      const long long a = cf[i].get<long long>();
      if (a < 1) fail(errc::parameter, "continued-fraction terms after the first must be >= 1");
      const Int p_next = Int(a) * p_cur + p_prev;
      const Int q_next = Int(a) * q_cur + q_prev;
      p_prev = p_cur;
      p_cur = p_next;
      q_prev = q_cur;
      q_cur = q_next;
      reached = q_cur >= cut;
    }
    if (!reached)
      fail(errc::parameter, "continued fraction too short to reach the requested denominator");
    RMatrix mat;
    mat.m = 1;
    mat.n = 1;
    mat.entries = {Rational(p_cur, q_cur)};
    return mat;
  }

  RMatrix mat;
  mat.m = req_int(j, "m");
  mat.n = req_int(j, "n");
  if (mat.m < 1 || mat.n < 1) fail(errc::parameter, "matrix needs m, n >= 1");
  const json& rows = req(j, "entries");
  if (!rows.is_array() || static_cast<int>(rows.size()) != mat.n)
    fail(errc::dimension, "'entries' must hold n rows");
  for (const auto& row : rows) {
    if (!row.is_array() || static_cast<int>(row.size()) != mat.m)
      fail(errc::dimension, "each entries row must hold m values");
    for (const auto& cell : row) {
      if (cell.is_string())
        mat.entries.push_back(parse_rational(cell.get<std::string>()));
      else if (cell.is_number_integer())
        mat.entries.push_back(Rational(cell.get<long long>()));
      else
        fail(errc::parameter, "matrix entries must be \"num/den\" strings or integers");
    }
  }
  return mat;
}

json matrix_to_json(const RMatrix& mat) {
  json rows = json::array();
  for (int r = 0; r < mat.n; ++r) {
    json row = json::array();
    for (int c = 0; c < mat.m; ++c) row.push_back(to_string(mat.at(r, c)));
    rows.push_back(std::move(row));
  }
  return json{{"m", mat.m}, {"n", mat.n}, {"entries", std::move(rows)}};
}

RMatrix load_matrix(const std::string& path) {
  json j;
  try {
    j = json::parse(read_text_file(path));
  } catch (const json::exception& e) {
    fail(errc::parameter, "bad JSON in " + path + ": " + e.what());
  }
  return matrix_from_json(j);
}

// --------------------------------------------------------------- sequences

std::string sequence_to_csv(const BestApproxSequence& seq) {
  std::ostringstream out;
  out << "index,X,L_num,L_den";
  for (int c = 1; c <= seq.xi.m; ++c) out << ",x_" << c;
  for (int r = 1; r <= seq.xi.n; ++r) out << ",y_" << r;
  out << "\n";
  for (const auto& rec : seq.records) {
    out << rec.index << ',' << rec.X.str() << ',' << num(rec.L).str() << ',' << den(rec.L).str();
    for (const auto& v : rec.vector.x) out << ',' << v.str();
    for (const auto& v : rec.vector.y) out << ',' << v.str();
    out << "\n";
  }
  return out.str();
}

json sequence_to_json(const BestApproxSequence& seq) {
  json records = json::array();
  for (const auto& rec : seq.records) {
    json xs = json::array(), ys = json::array();
    for (const auto& v : rec.vector.x) xs.push_back(v.str());
    for (const auto& v : rec.vector.y) ys.push_back(v.str());
    records.push_back(json{{"index", rec.index},
                           {"X", rec.X.str()},
                           {"L", to_string(rec.L)},
                           {"x", std::move(xs)},
                           {"y", std::move(ys)}});
  }
  return json{{"m", seq.xi.m}, {"n", seq.xi.n}, {"x_max", seq.x_max.str()}, {"records", std::move(records)}};
}

std::string profile_to_csv(const MinimaProfile& prof) {
  std::ostringstream out;
  out << "q,value,slope\n";
  out << "0," << format_real(prof.start_value) << ",0\n";
  for (const auto& node : prof.nodes)
    out << format_real(node.q) << ',' << format_real(node.value) << ',' << node.incoming_slope << "\n";
  return out.str();
}

std::string minima_samples_to_csv(int dim, const std::vector<MinimaSample>& samples) {
  std::ostringstream out;
  out << "q";
  for (int d = 1; d <= dim; ++d) out << ",h_" << d;
  out << "\n";
  for (const auto& s : samples) {
    out << format_real(s.q);
    for (double h : s.h) out << ',' << format_real(h);
    out << "\n";
  }
  return out.str();
}

// --------------------------------------------------------------- templates

json template_to_json(const Template& t) {
  json comps = json::array();
  for (const auto& c : t.components) {
    json pieces = json::array();
    for (const auto& pc : c.pieces)
      pieces.push_back(json{{"q_to", format_exact(pc.q_to)}, {"slope", to_string(pc.slope)}});
    comps.push_back(json{{"start_value", format_exact(c.start_value)}, {"pieces", std::move(pieces)}});
  }
  json junctions = json::array();
  for (double q : t.junctions) junctions.push_back(format_exact(q));
  return json{{"m", t.m},
              {"n", t.n},
              {"q_start", format_exact(t.q_start())},
              {"components", std::move(comps)},
              {"junctions", std::move(junctions)}};
}

namespace {
double real_field(const json& v, const char* key) {
  if (v.is_string()) return std::strtod(v.get<std::string>().c_str(), nullptr);
  if (v.is_number()) return v.get<double>();
  fail(errc::parameter, std::string("field '") + key + "' must be a number or numeric string");
}
}  // namespace

Template template_from_json(const json& j) {
  Template t;
  t.m = req_int(j, "m");
  t.n = req_int(j, "n");
  if (t.m < 1 || t.n < 1) fail(errc::parameter, "template needs m, n >= 1");
  const double q_start = real_field(req(j, "q_start"), "q_start");
  const json& comps = req(j, "components");
  if (!comps.is_array() || static_cast<int>(comps.size()) != t.m + t.n)
    fail(errc::dimension, "template needs exactly m + n components");
  for (const auto& cj : comps) {
    PiecewiseLinear pl;
    pl.q_start = q_start;
    pl.start_value = real_field(req(cj, "start_value"), "start_value");
    for (const auto& pj : req(cj, "pieces")) {
      const Rational slope = parse_rational(req(pj, "slope").get<std::string>());
      pl.append(slope, real_field(req(pj, "q_to"), "q_to"));
    }
    t.components.push_back(std::move(pl));
  }
  if (j.contains("junctions"))
    for (const auto& v : j.at("junctions")) t.junctions.push_back(real_field(v, "junctions"));
  return t;
}

Template load_template(const std::string& path) {
  json j;
  try {
    j = json::parse(read_text_file(path));
  } catch (const json::exception& e) {
    fail(errc::parameter, "bad JSON in " + path + ": " + e.what());
  }
  return template_from_json(j);
}

json validation_to_json(const ValidationReport& rep) {
  json violations = json::array();
  for (const auto& v : rep.violations)
    violations.push_back(json{{"axiom", axiom_name(v.id)},
                              {"q_from", format_real(v.q_from)},
                              {"q_to", format_real(v.q_to)},
                              {"component", v.component},
                              {"detail", v.detail}});
  json borderline = json::array();
  for (const auto& b : rep.borderline)
    borderline.push_back(json::array({format_real(b.first), format_real(b.second)}));
  return json{{"ok", rep.ok()}, {"violations", std::move(violations)}, {"borderline", std::move(borderline)}};
}

// ----------------------------------------------------------- constructions

ConstructionJob construction_from_json(const json& j) {
  ConstructionJob job;
  job.family = req(j, "family").get<std::string>();
  const int m = req_int(j, "m"), n = req_int(j, "n");
  const double q1 = opt_real(j, "q1", 100.0);
  const int generations = opt_int(j, "generations", 12);
  if (job.family == "beau") {
    job.beau = BeauParams{m, n, q1, generations};
  } else if (job.family == "ord") {
    job.ord = OrdParams{m, n, opt_int(j, "v", 0), opt_int(j, "w", 1), q1,
                        opt_real(j, "lambda1", 0.0), generations, schedule_from_json(j)};
  } else if (job.family == "unifB") {
    job.unifb = UnifBParams{m, n, opt_int(j, "v", 0), q1,
                            opt_real(j, "lambda1", 0.0), generations, schedule_from_json(j)};
  } else if (job.family == "unifBC") {
    job.unifbc = UnifBCParams{m, n, opt_int(j, "u", 1), q1,
                              opt_real(j, "lambda1", 0.0), generations, schedule_from_json(j)};
  } else {
    fail(errc::parameter, "unknown construction family: " + job.family);
  }
  return job;
}

BuildResult run_construction(const ConstructionJob& job) {
  if (job.family == "beau") return build_beau(job.beau);
  if (job.family == "ord") return build_ord(job.ord);
  if (job.family == "unifB") return build_unifb(job.unifb);
  return build_unifbc(job.unifbc);
}

SweepSpec sweep_from_json(const json& j) {
  SweepSpec spec;
  spec.family = req(j, "family").get<std::string>();
  spec.m = req_int(j, "m");
  spec.n = req_int(j, "n");
  spec.v = opt_int(j, "v", 0);
  spec.w = opt_int(j, "w", 1);
  spec.u = opt_int(j, "u", 1);
  spec.q1 = opt_real(j, "q1", 100.0);
  spec.generations = opt_int(j, "generations", 12);
  if (j.contains("thetas")) {
    for (const auto& v : j.at("thetas")) spec.thetas.push_back(v.get<double>());
  } else {
    const int grid = opt_int(j, "grid", 25);
    if (grid < 2) fail(errc::parameter, "'grid' must be >= 2");
    for (int i = 0; i < grid; ++i) spec.thetas.push_back(static_cast<double>(i) / (grid - 1));
  }
  return spec;
}

json sweep_to_json(const SweepReport& rep) {
  json points = json::array();
  for (const auto& pt : rep.points)
    points.push_back(json{{"theta", format_real(pt.theta)},
                          {"target", format_real(pt.target)},
                          {"achieved", format_real(pt.achieved)},
                          {"ok", pt.ok}});
  return json{{"family", rep.family},
              {"statistic", rep.uses_limsup ? "limsup" : "liminf"},
              {"claimed_lo", format_real(rep.claimed_lo)},
              {"claimed_hi", format_real(rep.claimed_hi)},
              {"max_gap", format_real(rep.max_gap)},
              {"max_target_err", format_real(rep.max_target_err)},
              {"points", std::move(points)}};
}

// ----------------------------------------------------------------- reports

json ratio_stats_to_json(const RatioStats& st) {
  return json{{"sup_X_ratio", format_real(st.sup_X_ratio)},
              {"sup_L_ratio", format_real(st.sup_L_ratio)},
              {"min_badness", to_string(st.min_badness)},
              {"min_badness_real", format_real(to_double(st.min_badness))},
              {"burn_in", st.burn_in}};
}

json exponents_to_json(const ExponentEstimate& est) {
  return json{{"omega_infinite", est.omega_infinite},
              {"omega_est", format_real(est.omega_est)},
              {"omega_hat_est", format_real(est.omega_hat_est)},
              {"i_lo", est.i_lo},
              {"i_hi", est.i_hi}};
}

json dirichlet_to_json(const DirichletReport& rep) {
  json violations = json::array();
  for (const auto& v : rep.violations)
    violations.push_back(json{{"i", v.i}, {"product", to_string(v.product)}});
  return json{{"checked", rep.checked}, {"pass", rep.pass()}, {"violations", std::move(violations)}};
}

json growth_to_json(const GrowthReport& rep) {
  json violations = json::array();
  for (const auto& v : rep.violations)
    violations.push_back(json{{"k", v.k}, {"X_k", v.X_k.str()}, {"X_k_step", v.X_k_step.str()}});
  return json{{"step", rep.step},
              {"checked", rep.checked},
              {"pass", rep.pass()},
              {"violations", std::move(violations)}};
}

json runs_to_json(const std::vector<PatternRun>& runs) {
  json out = json::array();
  for (const auto& r : runs) out.push_back(json{{"nu", r.nu}, {"k", r.k}});
  return out;
}

json det_bounds_to_json(const DetBoundsReport& rep) {
  json records = json::array();
  for (const auto& r : rep.records)
    records.push_back(json{{"i", r.i},
                           {"det", r.det_value.str()},
                           {"bound_ratio", format_real(r.bound_ratio)},
                           {"used_two_y_rows", r.used_two_y_rows}});
  return json{{"max_bound_ratio", format_real(rep.max_bound_ratio)}, {"records", std::move(records)}};
}

json covol_to_json(const CovolReport& rep) {
  json records = json::array();
  for (const auto& r : rep.records)
    records.push_back(json{{"i", r.i}, {"covol_sq", r.covol_sq.str()}, {"ratio", format_real(r.ratio)}});
  return json{{"min_ratio", format_real(rep.min_ratio)},
              {"max_ratio", format_real(rep.max_ratio)},
              {"records", std::move(records)}};
}

json cross_norm_to_json(const CrossNormReport& rep) {
  return json{{"cap", format_real(rep.cap)},
              {"bounded_sup", rep.bounded_sup},
              {"bounded_euclid", rep.bounded_euclid},
              {"verdicts_agree", rep.verdicts_agree},
              {"min_X_factor", format_real(rep.min_X_factor)},
              {"max_X_factor", format_real(rep.max_X_factor)}};
}

json error_to_json(const Error& e) {
  return json{{"error", json{{"kind", e.kind_name()}, {"message", e.what()}}}};
}

int exit_code_for(errc kind) {
  switch (kind) {
    case errc::validation:
      return 2;
    case errc::precision:
    case errc::rationality:
    case errc::coverage:
      return 4;
    default:
      return 3;
  }
}

}  // namespace pgnlab
