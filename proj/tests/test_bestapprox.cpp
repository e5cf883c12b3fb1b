// SPDX-License-Identifier: MIT
// Best-approximation enumeration against independent oracles: the Pell and
// Fibonacci recurrences, a from-scratch running-minimum scan, and the product
// / growth inequalities the records must satisfy.
#include <random>

#include "doctest.h"
#include "test_support.hpp"

using namespace pgnlab;
using testsup::enum_fixture;
using testsup::fixture_matrix;

namespace {

// Re-derive the 1x1 record list without touching the library's enumeration:
// walk x upward, keep the running best sup-residual, and log strict drops.
std::vector<std::pair<long long, Rational>> brute_records_1x1(const RMatrix& xi, long long x_max) {
  std::vector<std::pair<long long, Rational>> out;
  Rational best(-1);
  for (long long x = 1; x <= x_max; ++x) {
    std::vector<Int> xs{Int(x)};
    IntVec v;
    v.x = xs;
    v.y = best_y(xi, xs);
    const Rational r = residual(xi, v);
    if (best < 0 || r < best) {
      best = r;
      out.emplace_back(x, r);
    }
  }
  return out;
}

}  // namespace

TEST_CASE("sqrt(2)-1 records follow the Pell recurrence") {
  const auto seq = enum_fixture("sqrt2m1-1x1", 100);
  REQUIRE(seq.records.size() == 6);
  CHECK(seq.records[0].X == 1);

  std::vector<long long> pell{1, 2};
  while (pell.size() < 6) pell.push_back(2 * pell[pell.size() - 1] + pell[pell.size() - 2]);
  for (size_t i = 0; i < 6; ++i) {
    CHECK(seq.records[i].X == pell[i]);
    CHECK(seq.records[i].index == int(i) + 1);
  }
}

TEST_CASE("1x1 enumeration equals the brute-force running minimum") {
  for (const char* name : {"sqrt2m1-1x1", "golden-1x1", "liouville-1x1"}) {
    CAPTURE(name);
    const RMatrix xi = fixture_matrix(name);
    const auto seq = enumerate(xi, Int(100));
    const auto brute = brute_records_1x1(xi, 100);
    REQUIRE(seq.records.size() == brute.size());
    for (size_t i = 0; i < brute.size(); ++i) {
      CHECK(seq.records[i].X == brute[i].first);
      CHECK(seq.records[i].L == brute[i].second);
    }
  }
}

TEST_CASE("golden ratio denominators are Fibonacci numbers") {
  const auto seq = enum_fixture("golden-1x1", 10000);
  std::vector<long long> fib{1, 2};
  while (fib.back() <= 10000) fib.push_back(fib[fib.size() - 1] + fib[fib.size() - 2]);
  REQUIRE(seq.records.size() >= 10);
  for (size_t i = 0; i < seq.records.size(); ++i) CHECK(seq.records[i].X == fib[i]);

  const auto stats = ratio_stats(seq);
  const double sup = to_double(stats.sup_X_ratio);
  CHECK(sup >= 1.5);
  CHECK(sup <= 2.0);
}

TEST_CASE("sqrt(2)-1 denominator ratios sit in the Pell band") {
  const auto stats = ratio_stats(enum_fixture("sqrt2m1-1x1", 10000));
  const double sup = to_double(stats.sup_X_ratio);
  CHECK(sup >= 2.0);
  CHECK(sup <= 2.5);
  CHECK(to_double(stats.min_badness) > 0.0);
}

TEST_CASE("X strictly increases and L strictly decreases") {
  auto check_seq = [](const BestApproxSequence& seq) {
    for (size_t i = 1; i < seq.records.size(); ++i) {
      CHECK(seq.records[i].X > seq.records[i - 1].X);
      CHECK(seq.records[i].L < seq.records[i - 1].L);
    }
    REQUIRE(!seq.records.empty());
    CHECK(seq.records[0].X == 1);
  };
  for (const char* name : {"sqrt2m1-1x1", "golden-1x1", "sqrt23-2x1", "rand1x2-a", "rand2x2-a"})
    check_seq(enum_fixture(name, 150));
  for (const auto& xi : testsup::random_corpus(2)) check_seq(enumerate(xi, Int(80)));
}

TEST_CASE("mirrored sign convention reproduces the same records") {
  const RMatrix xi = fixture_matrix("rand2x2-a");
  const auto plus = enumerate(xi, Int(120), +1);
  const auto minus = enumerate(xi, Int(120), -1);
  REQUIRE(plus.records.size() == minus.records.size());
  for (size_t i = 0; i < plus.records.size(); ++i) {
    CHECK(plus.records[i].X == minus.records[i].X);
    CHECK(plus.records[i].L == minus.records[i].L);
  }
}

TEST_CASE("records are optimal: nothing below X_{i+1} beats L_i") {
  const RMatrix xi = fixture_matrix("rand2x2-b");
  const auto seq = enumerate(xi, Int(60));
  REQUIRE(seq.records.size() >= 3);
  std::mt19937 rng(23);
  int samples = 0;
  while (samples < 1000) {
    const size_t i = rng() % (seq.records.size() - 1);
    const long long cap = seq.records[i + 1].X.convert_to<long long>() - 1;
    std::uniform_int_distribution<long long> coord(-cap, cap);
    IntVec v;
    v.x = {Int(coord(rng)), Int(coord(rng))};
    if (sup_norm(v.x) == 0) continue;
    v.y = best_y(xi, v.x);
    CHECK(residual(xi, v) >= seq.records[i].L);
    ++samples;
  }
}

TEST_CASE("dirichlet product check passes on real data, flags corruption") {
  for (const char* name : {"sqrt2m1-1x1", "golden-1x1", "sqrt23-2x1", "rand2x2-a"}) {
    CAPTURE(name);
    const auto rep = dirichlet_check(enum_fixture(name, 200));
    CHECK(rep.pass());
    CHECK(rep.checked > 0);
  }

  BestApproxSequence fake;
  fake.xi = testsup::mat(1, 1, {testsup::rat(1, 2)});
  fake.x_max = Int(10);
  fake.records.push_back({1, {}, Int(1), testsup::rat(1)});
  fake.records.push_back({2, {}, Int(2), testsup::rat(1, 3)});
  const auto rep = dirichlet_check(fake);
  CHECK_FALSE(rep.pass());
  REQUIRE(rep.violations.size() == 1);
  CHECK(rep.violations[0].i == 1);
  CHECK(rep.violations[0].product == testsup::rat(2));
}

TEST_CASE("growth check: doubling within the pigeonhole step") {
  const auto seq = enum_fixture("golden-1x1", 10000);
  const auto rep = growth_check(seq);
  CHECK(rep.step == 8);  // 3^(m+n) - 1 for m = n = 1
  CHECK(rep.pass());
  CHECK(rep.checked > 0);

  // independent: Fibonacci grows by phi^8 > 2 every 8 records
  for (size_t i = 0; i + 8 < seq.records.size(); ++i)
    CHECK(seq.records[i + 8].X >= 2 * seq.records[i].X);

  BestApproxSequence tiny;
  tiny.xi = seq.xi;
  tiny.x_max = Int(2);
  tiny.records = {seq.records[0], seq.records[1]};
  CHECK_THROWS_AS(growth_check(tiny), Error);
  try {
    growth_check(tiny);
  } catch (const Error& e) {
    CHECK(e.kind() == errc::insufficient_data);
  }
}

TEST_CASE("exponent estimates land where the targets say") {
  const auto pell = exponent_estimates(enum_fixture("sqrt2m1-1x1", 10000));
  CHECK_FALSE(pell.omega_infinite);
  CHECK(pell.omega_hat_est >= 0.90);
  CHECK(pell.omega_hat_est <= 1.05);
  CHECK(pell.omega_est >= pell.omega_hat_est - 1e-12);

  const auto liou = exponent_estimates(enum_fixture("liouville-1x1", 10000));
  CHECK(liou.omega_est >= 1.8);
}

TEST_CASE("uniform exponent estimate respects the Dirichlet floor") {
  for (const auto& xi : testsup::random_corpus(3)) {
    const auto est = exponent_estimates(enumerate(xi, Int(200)));
    CHECK(est.omega_hat_est >= double(xi.m) / double(xi.n) - 0.1);
  }
}

TEST_CASE("sup and euclid enumerations agree in one dimension") {
  const RMatrix xi = fixture_matrix("sqrt2m1-1x1");
  const auto sup = enumerate(xi, Int(500));
  const auto euc = enumerate_euclid(xi, Int(500));
  REQUIRE(sup.records.size() == euc.records.size());
  for (size_t i = 0; i < sup.records.size(); ++i) {
    CHECK(euc.records[i].X_sq == sup.records[i].X * sup.records[i].X);
    CHECK(euc.records[i].L_sq == sup.records[i].L * sup.records[i].L);
  }
}

TEST_CASE("cross-norm comparison: verdicts agree, factors bounded") {
  const auto one = cross_norm_consistency(fixture_matrix("sqrt2m1-1x1"), Int(2000));
  CHECK(one.verdicts_agree);
  CHECK(one.min_X_factor >= 1.0 - 1e-9);
  CHECK(one.max_X_factor <= 1.0 + 1e-9);

  const auto two = cross_norm_consistency(fixture_matrix("sqrt23-2x1"), Int(800));
  CHECK(two.verdicts_agree);
  CHECK(two.max_X_factor <= std::sqrt(2.0) + 1e-9);
}

TEST_CASE("ratio stats shrink the burn-in rather than fail, but need 2 records") {
  const auto seq = enum_fixture("sqrt2m1-1x1", 100);
  const auto wide = ratio_stats(seq, 100);  // far beyond the record count
  CHECK(wide.burn_in < int(seq.records.size()));
  CHECK(to_double(wide.sup_X_ratio) > 1.0);

  BestApproxSequence single;
  single.xi = seq.xi;
  single.x_max = Int(1);
  single.records = {seq.records[0]};
  CHECK_THROWS_AS(ratio_stats(single, 0), Error);
}

TEST_CASE("enumeration refuses unguarded input") {
  CHECK_THROWS_AS(enumerate(testsup::mat(1, 1, {testsup::rat(1, 3)}), Int(100)), Error);
  try {
    enumerate(testsup::mat(1, 1, {testsup::rat(1, 3)}), Int(100));
  } catch (const Error& e) {
    CHECK(e.kind() == errc::precision);
  }
}
