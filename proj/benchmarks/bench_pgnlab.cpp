// SPDX-License-Identifier: MIT
//
// Microbenchmarks for the hot paths: exhaustive enumeration, one-parameter
// successive minima, construction builds, validation.

#include <benchmark/benchmark.h>

#include "pgnlab/bestapprox.hpp"
#include "pgnlab/constructions.hpp"
#include "pgnlab/fixtures.hpp"
#include "pgnlab/io.hpp"
#include "pgnlab/minimaprofile.hpp"
#include "pgnlab/templates.hpp"

namespace {

pgnlab::RMatrix fixture_matrix(const char* name) {
  return pgnlab::matrix_from_json(pgnlab::fixture(name).payload);
}

void BM_enumerate_1x1(benchmark::State& state) {
  auto xi = fixture_matrix("sqrt2m1-1x1");
  pgnlab::Int xm(state.range(0));
  for (auto _ : state) {
    auto seq = pgnlab::enumerate(xi, xm);
    benchmark::DoNotOptimize(seq.records.size());
  }
}
BENCHMARK(BM_enumerate_1x1)->Arg(1000)->Arg(10000)->Arg(100000);

void BM_enumerate_2x2(benchmark::State& state) {
  auto xi = fixture_matrix("rand2x2-a");
  pgnlab::Int xm(state.range(0));
  for (auto _ : state) {
    auto seq = pgnlab::enumerate(xi, xm);
    benchmark::DoNotOptimize(seq.records.size());
  }
}
BENCHMARK(BM_enumerate_2x2)->Arg(20)->Arg(50)->Arg(100);

void BM_successive_minima_2x2(benchmark::State& state) {
  auto xi = fixture_matrix("rand2x2-a");
  double q = static_cast<double>(state.range(0)) / 10.0;
  for (auto _ : state) {
    auto sample = pgnlab::successive_minima_at(xi, q);
    benchmark::DoNotOptimize(sample.h.size());
  }
}
BENCHMARK(BM_successive_minima_2x2)->Arg(5)->Arg(15)->Arg(25);

void BM_profile_1x1(benchmark::State& state) {
  auto xi = fixture_matrix("sqrt2m1-1x1");
  auto seq = pgnlab::enumerate(xi, pgnlab::Int(100000));
  double q_end = pgnlab::certified_q_end(seq);
  for (auto _ : state) {
    auto prof = pgnlab::h1_profile(seq, q_end);
    benchmark::DoNotOptimize(prof.nodes.size());
  }
}
BENCHMARK(BM_profile_1x1);

void BM_build_and_validate_ord(benchmark::State& state) {
  pgnlab::OrdParams p;
  p.m = 2; p.n = 2; p.v = 1; p.w = 1;
  p.q1 = 100; p.lambda1 = -1.0 / 3.0;
  p.generations = static_cast<int>(state.range(0));
  p.schedule = pgnlab::Schedule::mix_preset(0.5);
  for (auto _ : state) {
    auto built = pgnlab::build_ord(p);
    auto rep = pgnlab::validate(built.tpl);
    benchmark::DoNotOptimize(rep.violations.size());
  }
}
BENCHMARK(BM_build_and_validate_ord)->Arg(8)->Arg(16)->Arg(32);

void BM_build_unifbc(benchmark::State& state) {
  pgnlab::UnifBCParams p;
  p.m = 2; p.n = 2; p.u = 1;
  p.q1 = 100; p.lambda1 = -1.0 / 7.0;
  p.generations = static_cast<int>(state.range(0));
  p.schedule = pgnlab::Schedule::mix_preset(0.5);
  for (auto _ : state) {
    auto built = pgnlab::build_unifbc(p);
    benchmark::DoNotOptimize(built.tpl.junctions.size());
  }
}
BENCHMARK(BM_build_unifbc)->Arg(16)->Arg(64);

}  // namespace

BENCHMARK_MAIN();
