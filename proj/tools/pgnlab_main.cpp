// SPDX-License-Identifier: MIT
//
// pgnlab — command-line front end.
//
//   analyze            enumerate best approximations, identity reports, profile
//   template-build     build a parametric construction and validate it
//   template-validate  validate a template file against the axioms
//   sweep              exponent-coverage sweep over a schedule parameter
//   diagnose           independence / determinant / monotonicity battery
//   fixtures           list or dump the bundled inputs
//
// Output convention: the main artifact goes to stdout as JSON; --output DIR
// additionally writes fixed-name files (sequence.csv, analysis.json, ...).
// All failures print {"error": {"kind", "message"}} and exit with 2
// (validation), 4 (precision / rationality / coverage) or 3 (anything else).

#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "pgnlab/bestapprox.hpp"
#include "pgnlab/constructions.hpp"
#include "pgnlab/diagnostics.hpp"
#include "pgnlab/errors.hpp"
#include "pgnlab/fixtures.hpp"
#include "pgnlab/io.hpp"
#include "pgnlab/minimaprofile.hpp"
#include "pgnlab/templates.hpp"

namespace {

using pgnlab::Error;
using pgnlab::errc;
using pgnlab::json;

struct Opts {
  std::string input;
  std::string output;
  long long x_max = 1000;
  double horizon = 0;      // 0: certified default
  std::string preset;      // schedule override for template-build
  int grid = 0;            // 0: spec / default grid
  double tolerance = 0;    // 0: no coverage gate
};

json resolve_input(const std::string& where) {
  if (where.empty()) throw Error(errc::parameter, "--input is required");
  if (where.rfind("fixture:", 0) == 0)
    return pgnlab::fixture(where.substr(8)).payload;
  std::string text = pgnlab::read_text_file(where);
  try {
    return json::parse(text);
  } catch (const std::exception& e) {
    throw Error(errc::parameter, std::string("cannot parse ") + where + ": " + e.what());
  }
}

void emit(const Opts& o, const std::string& name, const std::string& content) {
  if (o.output.empty()) return;
  std::filesystem::create_directories(o.output);
  pgnlab::write_text_file((std::filesystem::path(o.output) / name).string(), content);
}

void emit_json(const Opts& o, const std::string& name, const json& j) {
  emit(o, name, j.dump(2) + "\n");
}

int finish(const json& j) {
  std::cout << j.dump(2) << "\n";
  return 0;
}

pgnlab::Int checked_x_max(const Opts& o) {
  if (o.x_max < 1) throw Error(errc::parameter, "--x-max must be >= 1");
  return pgnlab::Int(o.x_max);
}

// ----------------------------------------------------------------- analyze

int cmd_analyze(const Opts& o) {
  pgnlab::RMatrix xi = pgnlab::matrix_from_json(resolve_input(o.input));
  pgnlab::Int xm = checked_x_max(o);
  auto guard = pgnlab::precision_guard(xi, xm);
  auto seq = pgnlab::enumerate(xi, xm);

  json analysis{
      {"m", xi.m},
      {"n", xi.n},
      {"x_max", std::to_string(o.x_max)},
      {"records", seq.records.size()},
      {"guard", json{{"ok", guard.ok}, {"required", pgnlab::to_string(guard.required)}}},
      {"ratios", pgnlab::ratio_stats_to_json(pgnlab::ratio_stats(seq))},
      {"exponents", pgnlab::exponents_to_json(pgnlab::exponent_estimates(seq))},
      {"dirichlet", pgnlab::dirichlet_to_json(pgnlab::dirichlet_check(seq))},
  };
  try {
    analysis["growth"] = pgnlab::growth_to_json(pgnlab::growth_check(seq));
  } catch (const Error& e) {
    if (e.kind() != errc::insufficient_data) throw;
    analysis["growth"] = json{{"skipped", e.what()}};
  }

  if (seq.records.size() >= 2) {
    double q_end = o.horizon > 0 ? o.horizon : pgnlab::certified_q_end(seq);
    auto prof = pgnlab::h1_profile(seq, q_end);
    auto abc = pgnlab::abc_measurements(prof);
    analysis["profile"] =
        json{{"q_end", pgnlab::format_real(prof.q_end)},
             {"nodes", prof.nodes.size()},
             {"local_minima", prof.p.size()},
             {"max_rise_interval", pgnlab::format_real(abc.max_slope_m_interval)},
             {"max_fall_interval", pgnlab::format_real(abc.max_slope_neg_n_interval)},
             {"max_abs_local_min", pgnlab::format_real(abc.max_abs_local_min)}};
    emit(o, "profile.csv", pgnlab::profile_to_csv(prof));
  } else {
    analysis["profile"] = json{{"skipped", "fewer than 2 records"}};
  }

  emit(o, "sequence.csv", pgnlab::sequence_to_csv(seq));
  emit_json(o, "sequence.json", pgnlab::sequence_to_json(seq));
  emit_json(o, "analysis.json", analysis);
  return finish(analysis);
}

// ---------------------------------------------------------- template-build

int cmd_template_build(const Opts& o) {
  json spec = resolve_input(o.input);
  if (!o.preset.empty()) {
    spec["schedule"] = o.preset;  // parsed (and spell-checked) by the loader
    spec.erase("steps");
  }
  auto job = pgnlab::construction_from_json(spec);
  auto built = pgnlab::run_construction(job);
  auto rep = pgnlab::validate(built.tpl);

  emit_json(o, "template.json", pgnlab::template_to_json(built.tpl));
  emit_json(o, "validation.json", pgnlab::validation_to_json(rep));

  json summary{{"family", job.family},
               {"generations", built.generations.size()},
               {"components", built.tpl.components.size()},
               {"q_start", pgnlab::format_real(built.tpl.q_start())},
               {"q_end", pgnlab::format_real(built.tpl.q_end())},
               {"ok", rep.ok()},
               {"violations", rep.violations.size()}};
  if (!built.generations.empty()) {
    const auto& last = built.generations.back();
    summary["final_lambda"] = pgnlab::format_real(last.lambda_next);
  }
  int rc = finish(summary);
  return rep.ok() ? rc : 2;
}

// ------------------------------------------------------- template-validate

int cmd_template_validate(const Opts& o) {
  auto tpl = pgnlab::template_from_json(resolve_input(o.input));
  auto rep = pgnlab::validate(tpl);
  json out = pgnlab::validation_to_json(rep);
  emit_json(o, "validation.json", out);
  int rc = finish(out);
  return rep.ok() ? rc : 2;
}

// ------------------------------------------------------------------- sweep

int cmd_sweep(const Opts& o) {
  json spec = resolve_input(o.input);
  if (o.grid > 0) spec["grid"] = o.grid;
  auto sw = pgnlab::sweep_from_json(spec);
  auto rep = pgnlab::sweep_range(sw);
  json out = pgnlab::sweep_to_json(rep);
  emit_json(o, "sweep.json", out);
  if (o.tolerance > 0 && rep.max_gap > o.tolerance)
    throw Error(errc::coverage,
                "coverage gap " + pgnlab::format_real(rep.max_gap) +
                    " exceeds tolerance " + pgnlab::format_real(o.tolerance));
  return finish(out);
}

// ---------------------------------------------------------------- diagnose

int cmd_diagnose(const Opts& o) {
  pgnlab::RMatrix xi = pgnlab::matrix_from_json(resolve_input(o.input));
  pgnlab::Int xm = checked_x_max(o);
  auto seq = pgnlab::enumerate(xi, xm);

  json diag{{"m", xi.m},
            {"n", xi.n},
            {"x_max", std::to_string(o.x_max)},
            {"records", seq.records.size()}};

  try {
    auto pattern = pgnlab::independence_pattern(seq);
    json arr = json::array();
    int independent = 0;
    for (bool b : pattern) {
      arr.push_back(b ? 1 : 0);
      independent += b ? 1 : 0;
    }
    diag["independence"] = json{{"pattern", arr}, {"independent_count", independent}};
  } catch (const Error& e) {
    if (e.kind() != errc::insufficient_data) throw;
    diag["independence"] = json{{"skipped", e.what()}};
  }

  try {
    diag["growth"] = pgnlab::growth_to_json(pgnlab::growth_check(seq));
  } catch (const Error& e) {
    if (e.kind() != errc::insufficient_data) throw;
    diag["growth"] = json{{"skipped", e.what()}};
  }

  if (xi.m == 2 && xi.n == 2) {
    diag["runs"] = pgnlab::runs_to_json(pgnlab::detect_2d_runs(seq));
    diag["det_bounds"] = pgnlab::det_bounds_to_json(pgnlab::det_bounds_m2(seq));
    auto euclid = pgnlab::enumerate_euclid(xi, xm);
    auto eruns = pgnlab::detect_2d_runs(euclid);
    json mono = json::array();
    double min_ratio = 0;
    bool have = false;
    for (const auto& run : eruns) {
      auto rep = pgnlab::monotonicity_check(euclid, run);
      mono.push_back(json{{"nu", run.nu},
                          {"k", run.k},
                          {"ratio", pgnlab::format_real(rep.ratio)}});
      if (!have || rep.ratio < min_ratio) min_ratio = rep.ratio;
      have = true;
    }
    diag["monotonicity"] =
        json{{"runs", mono},
             {"min_ratio", have ? json(pgnlab::format_real(min_ratio)) : json()}};
  }

  if (xi.m == 1)
    diag["covolume"] = pgnlab::covol_to_json(pgnlab::simultaneous_covol_check(seq));

  diag["cross_norm"] =
      pgnlab::cross_norm_to_json(pgnlab::cross_norm_consistency(xi, xm));

  emit_json(o, "diagnostics.json", diag);
  return finish(diag);
}

// ---------------------------------------------------------------- fixtures

int cmd_fixtures(const Opts& o) {
  if (!o.input.empty()) {
    std::string name = o.input.rfind("fixture:", 0) == 0 ? o.input.substr(8) : o.input;
    const auto& f = pgnlab::fixture(name);
    if (!o.output.empty()) emit_json(o, f.name + ".json", f.payload);
    return finish(json{{"name", f.name}, {"kind", f.kind}, {"note", f.note}, {"payload", f.payload}});
  }
  json index = json::array();
  for (const auto& f : pgnlab::fixtures()) {
    index.push_back(json{{"name", f.name}, {"kind", f.kind}, {"note", f.note}});
    if (!o.output.empty()) emit_json(o, f.name + ".json", f.payload);
  }
  if (!o.output.empty()) emit_json(o, "index.json", index);
  return finish(index);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"laboratory for best rational approximation and parametric successive minima"};
  app.require_subcommand(1);
  Opts o;

  auto add_common = [&](CLI::App* c) {
    c->add_option("--input", o.input, "input file path, or fixture:NAME");
    c->add_option("--output", o.output, "directory for artifact files");
  };

  CLI::App* c_an = app.add_subcommand("analyze", "best-approximation sequence, identity checks, minima profile");
  add_common(c_an);
  c_an->add_option("--x-max", o.x_max, "search box bound (default 1000)");
  c_an->add_option("--horizon", o.horizon, "profile right endpoint (default: certified)");

  CLI::App* c_tb = app.add_subcommand("template-build", "build a construction and validate it");
  add_common(c_tb);
  c_tb->add_option("--preset", o.preset, "schedule override: endpoint-low | endpoint-high | mix");

  CLI::App* c_tv = app.add_subcommand("template-validate", "validate a template file");
  add_common(c_tv);

  CLI::App* c_sw = app.add_subcommand("sweep", "exponent-coverage sweep over the schedule parameter");
  add_common(c_sw);
  c_sw->add_option("--grid", o.grid, "number of schedule points on [0,1]");
  c_sw->add_option("--tolerance", o.tolerance, "fail (exit 4) if the coverage gap exceeds this");

  CLI::App* c_dg = app.add_subcommand("diagnose", "independence pattern, determinant and monotonicity battery");
  add_common(c_dg);
  c_dg->add_option("--x-max", o.x_max, "search box bound (default 1000)");

  CLI::App* c_fx = app.add_subcommand("fixtures", "list bundled fixtures, or dump one with --input NAME");
  add_common(c_fx);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    Error err(errc::parameter, e.what());
    std::cout << pgnlab::error_to_json(err).dump(2) << "\n";
    return 3;
  }

  try {
    if (c_an->parsed()) return cmd_analyze(o);
    if (c_tb->parsed()) return cmd_template_build(o);
    if (c_tv->parsed()) return cmd_template_validate(o);
    if (c_sw->parsed()) return cmd_sweep(o);
    if (c_dg->parsed()) return cmd_diagnose(o);
    if (c_fx->parsed()) return cmd_fixtures(o);
    throw Error(errc::parameter, "no command given");
  } catch (const Error& e) {
    std::cout << pgnlab::error_to_json(e).dump(2) << "\n";
    return pgnlab::exit_code_for(e.kind());
  } catch (const std::exception& e) {
    Error err(errc::internal, e.what());
    std::cout << pgnlab::error_to_json(err).dump(2) << "\n";
    return 3;
  }
}
