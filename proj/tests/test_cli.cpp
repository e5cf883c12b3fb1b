// SPDX-License-Identifier: MIT
// End-to-end runs of the installed command-line binary: exit codes, artifact
// layout, JSON error envelopes, and byte-level determinism across reruns.
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "doctest.h"
#include "pgnlab/io.hpp"

#ifndef PGNLAB_CLI_PATH
#error "PGNLAB_CLI_PATH must point at the built binary"
#endif

namespace fs = std::filesystem;

namespace {

struct RunResult {
  int exit_code = -1;
  std::string out;
};

RunResult run_cli(const std::string& args) {
  static int counter = 0;
  const fs::path out_path = fs::temp_directory_path() / ("pgnlab_cli_out_" + std::to_string(counter++) + ".txt");
  const std::string cmd =
      std::string(PGNLAB_CLI_PATH) + " " + args + " > " + out_path.string() + " 2>&1";
  const int raw = std::system(cmd.c_str());
  RunResult r;
#if defined(_WIN32)
  r.exit_code = raw;
#else
  r.exit_code = (raw >= 0 && WIFEXITED(raw)) ? WEXITSTATUS(raw) : -1;
#endif
  std::ifstream in(out_path);
  std::ostringstream ss;
  ss << in.rdbuf();
  r.out = ss.str();
  fs::remove(out_path);
  return r;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

fs::path fresh_dir(const char* tag) {
  const fs::path p = fs::temp_directory_path() / (std::string("pgnlab_cli_") + tag);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

}  // namespace

TEST_CASE("analyze: known prefix, artifacts on disk, exit 0") {
  const fs::path dir = fresh_dir("analyze");
  const auto r = run_cli("analyze --input fixture:sqrt2m1-1x1 --x-max 100 --output " + dir.string());
  REQUIRE(r.exit_code == 0);

  const auto j = pgnlab::json::parse(r.out);
  CHECK(j.at("records").get<int>() == 6);
  CHECK(j.at("dirichlet").at("pass").get<bool>() == true);

  CHECK(fs::exists(dir / "analysis.json"));
  CHECK(fs::exists(dir / "profile.csv"));
  const std::string csv = slurp(dir / "sequence.csv");
  CHECK(csv.find("\n1,1,") != std::string::npos);
  CHECK(csv.find("\n2,2,") != std::string::npos);
  CHECK(csv.find("\n3,5,") != std::string::npos);
  CHECK(csv.find("\n4,12,") != std::string::npos);
  fs::remove_all(dir);
}

TEST_CASE("analyze: reruns are byte-identical") {
  const fs::path dir1 = fresh_dir("det1");
  const fs::path dir2 = fresh_dir("det2");
  const std::string args = "analyze --input fixture:rand2x2-a --x-max 150 --output ";
  const auto r1 = run_cli(args + dir1.string());
  const auto r2 = run_cli(args + dir2.string());
  REQUIRE(r1.exit_code == 0);
  REQUIRE(r2.exit_code == 0);
  CHECK(r1.out == r2.out);
  for (const char* name : {"analysis.json", "sequence.csv", "sequence.json", "profile.csv"})
    CHECK(slurp(dir1 / name) == slurp(dir2 / name));
  fs::remove_all(dir1);
  fs::remove_all(dir2);
}

TEST_CASE("template pipeline: build artifact revalidates clean") {
  const fs::path dir = fresh_dir("tpl");
  const auto rb = run_cli("template-build --input fixture:unifBC-2x2-u1 --output " + dir.string());
  REQUIRE(rb.exit_code == 0);
  const auto jb = pgnlab::json::parse(rb.out);
  CHECK(jb.at("ok").get<bool>() == true);
  CHECK(jb.at("violations").get<int>() == 0);

  const auto rv = run_cli("template-validate --input " + (dir / "template.json").string());
  CHECK(rv.exit_code == 0);
  const auto jv = pgnlab::json::parse(rv.out);
  CHECK(jv.at("ok").get<bool>() == true);

  // sabotage one slope: the validator must reject with exit 2
  auto tj = pgnlab::json::parse(slurp(dir / "template.json"));
  tj.at("components")[0].at("pieces")[0]["slope"] = "1/7";
  const fs::path bad = dir / "broken.json";
  std::ofstream(bad) << tj.dump(2);
  const auto rbad = run_cli("template-validate --input " + bad.string());
  CHECK(rbad.exit_code == 2);
  const auto jbad = pgnlab::json::parse(rbad.out);
  CHECK(jbad.at("ok").get<bool>() == false);
  CHECK(jbad.at("violations").size() >= 1);
  fs::remove_all(dir);
}

TEST_CASE("sweep: coverage within tolerance exits 0, impossible tolerance exits 4") {
  const fs::path dir = fresh_dir("sweep");
  const auto ok = run_cli("sweep --input fixture:ord-2x2-v1w1 --grid 13 --tolerance 0.08 --output " +
                          dir.string());
  REQUIRE(ok.exit_code == 0);
  const auto j = pgnlab::json::parse(ok.out);
  // reals in CLI JSON are fixed-precision strings, so parse before comparing
  CHECK(std::stod(j.at("max_gap").get<std::string>()) <= 0.08);
  CHECK(fs::exists(dir / "sweep.json"));

  const auto tight = run_cli("sweep --input fixture:ord-2x2-v1w1 --grid 5 --tolerance 1e-9");
  CHECK(tight.exit_code == 4);
  const auto je = pgnlab::json::parse(tight.out);
  CHECK(je.at("error").at("kind").get<std::string>() == "coverage");
  fs::remove_all(dir);
}

TEST_CASE("diagnose: runs and determinant records present") {
  const auto r = run_cli("diagnose --input fixture:rand2x2-a --x-max 150");
  REQUIRE(r.exit_code == 0);
  const auto j = pgnlab::json::parse(r.out);
  CHECK(j.at("runs").size() >= 1);
  CHECK(j.at("det_bounds").at("records").size() >= 1);
  CHECK(j.at("cross_norm").at("verdicts_agree").get<bool>() == true);
}

TEST_CASE("fixtures subcommand lists the registry") {
  const auto r = run_cli("fixtures");
  REQUIRE(r.exit_code == 0);
  const auto j = pgnlab::json::parse(r.out);
  CHECK(j.size() >= 10);
  bool seen = false;
  for (const auto& e : j) seen = seen || e.at("name").get<std::string>() == "beau-3x4";
  CHECK(seen);
}

TEST_CASE("error envelopes and exit codes") {
  // unknown fixture -> parameter error, exit 3
  const auto r3 = run_cli("analyze --input fixture:missing --x-max 50");
  CHECK(r3.exit_code == 3);
  const auto j3 = pgnlab::json::parse(r3.out);
  CHECK(j3.at("error").at("kind").get<std::string>() == "parameter");

  // horizon beyond the certified endpoint -> exit 3 with kind "horizon"
  const auto rh = run_cli("analyze --input fixture:sqrt2m1-1x1 --x-max 100 --horizon 100");
  CHECK(rh.exit_code == 3);
  CHECK(pgnlab::json::parse(rh.out).at("error").at("kind").get<std::string>() == "horizon");

  // unguarded matrix -> exit 4 with kind "precision"
  const fs::path bad = fs::temp_directory_path() / "pgnlab_cli_bad_matrix.json";
  std::ofstream(bad) << R"({"m":1,"n":1,"entries":[["1/3"]]})";
  const auto r4 = run_cli("analyze --input " + bad.string() + " --x-max 100");
  CHECK(r4.exit_code == 4);
  CHECK(pgnlab::json::parse(r4.out).at("error").at("kind").get<std::string>() == "precision");
  fs::remove(bad);

  // missing required input -> exit 3
  CHECK(run_cli("analyze --x-max 10").exit_code == 3);
  // unknown subcommand -> exit 3
  CHECK(run_cli("frobnicate").exit_code == 3);
}

TEST_CASE("thread budget variable does not change results") {
  const fs::path dir = fresh_dir("thr");
  const std::string base = "analyze --input fixture:sqrt23-2x1 --x-max 400";
  const auto a = run_cli(base);
  REQUIRE(a.exit_code == 0);
  // rerun with an explicit single-thread budget through the environment
  const fs::path out_path = dir / "one_thread.txt";
  const std::string full = "PGNLAB_THREADS=1 " + std::string(PGNLAB_CLI_PATH) + " " + base +
                           " > " + out_path.string() + " 2>&1";
  REQUIRE(std::system(full.c_str()) == 0);
  CHECK(slurp(out_path) == a.out);
  fs::remove_all(dir);
}
