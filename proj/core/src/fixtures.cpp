// SPDX-License-Identifier: MIT

#include "pgnlab/fixtures.hpp"

#include <stdexcept>
#include <utility>

#include "pgnlab/errors.hpp"
#include "pgnlab/rational.hpp"

namespace pgnlab {
namespace {

// First continued-fraction convergent whose denominator reaches min_den.
// Used to bake deep rational truncations of quadratic targets into fixtures
// without shipping 15-digit literals by hand.
Rational cf_convergent(const std::vector<long long>& terms, const Int& min_den) {
  Int p_prev = 1, q_prev = 0;
  Int p_cur = terms.at(0), q_cur = 1;
  for (size_t i = 1; i < terms.size(); ++i) {
    if (q_cur >= min_den) break;
    Int a = terms[i];
    Int p_next = a * p_cur + p_prev;
    Int q_next = a * q_cur + q_prev;
    p_prev = p_cur;
    q_prev = q_cur;
    p_cur = p_next;
    q_cur = q_next;
  }
  if (q_cur < min_den)
    throw Error(errc::internal, "fixture continued fraction too short");
  return Rational(p_cur, q_cur);
}

std::vector<long long> repeat_cf(long long head, long long rep, int count) {
  std::vector<long long> t{head};
  for (int i = 0; i < count; ++i) t.push_back(rep);
  return t;
}

json cf_payload(long long head, long long rep, int count, const char* truncate_den) {
  json cf = json::array();
  cf.push_back(head);
  for (int i = 0; i < count; ++i) cf.push_back(rep);
  return json{{"cf", cf}, {"truncate_den", truncate_den}};
}

std::string rat_str(const Rational& r) { return to_string(r); }

// Rows-of-entries matrix payload.
json matrix_payload(int m, int n, std::vector<std::vector<std::string>> rows) {
  json entries = json::array();
  for (auto& row : rows) {
    json jr = json::array();
    for (auto& e : row) jr.push_back(e);
    entries.push_back(jr);
  }
  return json{{"m", m}, {"n", n}, {"entries", entries}};
}

// Entry from the first `digits` decimals of a constant, given as the digit
// string without the leading "0.".  Denominator 10^len keeps every fixture
// far above the precision guard for the x-ranges the suite uses.
std::string digits_entry(const char* digits) {
  std::string num(digits);
  std::string den = "1";
  den.append(num.size(), '0');
  // strip leading zeros in the numerator (parse_rational dislikes "047...")
  size_t nz = num.find_first_not_of('0');
  if (nz == std::string::npos) num = "0"; else num = num.substr(nz);
  return num + "/" + den;
}

std::vector<Fixture> make_fixtures() {
  std::vector<Fixture> out;

  out.push_back({"sqrt2m1-1x1", "matrix",
                 "target sqrt(2)-1 truncated to a deep convergent; "
                 "best-approximation denominators follow the Pell recurrence "
                 "x' = 2x + x_prev",
                 cf_payload(0, 2, 60, "100000000000000")});

  out.push_back({"pell-check", "matrix",
                 "same sqrt(2)-1 target with a deeper truncation, for wider "
                 "enumeration windows",
                 cf_payload(0, 2, 75, "10000000000000000")});

  out.push_back({"golden-1x1", "matrix",
                 "golden-ratio tail: all partial quotients are 1, the slowest "
                 "converging case; denominators are Fibonacci numbers",
                 cf_payload(0, 1, 90, "100000000000000")});

  {
    json cf = json::array();
    cf.push_back(0);
    cf.push_back(10);
    cf.push_back(100);
    cf.push_back(10000);
    cf.push_back(100000000);
    cf.push_back(10000000000000000LL);
    out.push_back({"liouville-1x1", "matrix",
                   "squaring partial quotients make an extremely well "
                   "approximable target: the ordinary exponent blows up while "
                   "the uniform one stays tame",
                   json{{"cf", cf}, {"truncate_den", "100000000000000"}}});
  }

  {
    // linear form in two quadratic irrationals, each truncated independently
    Int cut("1000000000000");
    Rational s2 = cf_convergent(repeat_cf(0, 2, 40), cut);       // sqrt(2)-1
    std::vector<long long> s3{0};
    for (int i = 0; i < 30; ++i) { s3.push_back(1); s3.push_back(2); }
    Rational r3 = cf_convergent(s3, cut);                        // sqrt(3)-1
    out.push_back({"sqrt23-2x1", "matrix",
                   "one linear form in sqrt(2)-1 and sqrt(3)-1, each entry a "
                   "convergent with denominator >= 1e12",
                   matrix_payload(2, 1, {{rat_str(s2), rat_str(r3)}})});
  }

  out.push_back({"rand1x2-a", "matrix",
                 "simultaneous approximation pair from the decimal expansions "
                 "of pi-3 and e-2",
                 matrix_payload(1, 2,
                                {{digits_entry("14159265358979323")},
                                 {digits_entry("71828182845904523")}})});

  // Generic guarded 2x2 matrices.  Entries are 17-digit decimal truncations
  // of well-known constants, so reruns are reproducible and no entry is a
  // small-denominator rational that could zero out a residual.
  out.push_back({"rand2x2-a", "matrix",
                 "generic guarded 2x2 from digits of pi, e, sqrt(2), sqrt(3)",
                 matrix_payload(2, 2,
                                {{digits_entry("31415926535897932"),
                                  digits_entry("27182818284590452")},
                                 {digits_entry("41421356237309504"),
                                  digits_entry("73205080756887729")}})});
  out.push_back({"rand2x2-b", "matrix",
                 "generic guarded 2x2 from digits of phi, ln 2, "
                 "Euler-Mascheroni, zeta(3)",
                 matrix_payload(2, 2,
                                {{digits_entry("61803398874989484"),
                                  digits_entry("69314718055994530")},
                                 {digits_entry("57721566490153286"),
                                  digits_entry("20205690315959428")}})});
  out.push_back({"rand2x2-c", "matrix",
                 "generic guarded 2x2 from digits of sqrt(5)-2, 2^(1/3)-1, "
                 "3^(1/3)-1, sqrt(7)-2",
                 matrix_payload(2, 2,
                                {{digits_entry("23606797749978969"),
                                  digits_entry("25992104989487316")},
                                 {digits_entry("44224957030740838"),
                                  digits_entry("64575131106459059")}})});
  out.push_back({"rand2x2-d", "matrix",
                 "generic guarded 2x2 from digits of sqrt(6)-2, sqrt(10)-3, "
                 "ln 3 - 1, e^2/10 - 0.7",
                 matrix_payload(2, 2,
                                {{digits_entry("44948974968163890"),
                                  digits_entry("16227766016837933")},
                                 {digits_entry("09861228866810969"),
                                  digits_entry("03890560989306495")}})});
  out.push_back({"rand2x2-e", "matrix",
                 "generic guarded 2x2 from digits of pi^2/10 - 0.9, "
                 "sqrt(2)/10, cos(1), sin(1) - 0.8",
                 matrix_payload(2, 2,
                                {{digits_entry("08696044010893586"),
                                  digits_entry("14142135623730950")},
                                 {digits_entry("54030230586813972"),
                                  digits_entry("04147098480789650")}})});

  out.push_back({"beau-3x4", "construction",
                 "two-group template: the bottom block dips and returns to "
                 "zero while the top component mirrors it; q squares every "
                 "generation",
                 json{{"family", "beau"}, {"m", 3}, {"n", 4},
                      {"q1", 100.0}, {"generations", 4}}});

  out.push_back({"ord-2x2-v1w1", "construction",
                 "three-group family tuned for liminf control of the first "
                 "component; the mix schedule pins the dip depth each "
                 "generation",
                 json{{"family", "ord"}, {"m", 2}, {"n", 2}, {"v", 1},
                      {"w", 1}, {"q1", 100.0},
                      {"lambda1", -1.0 / 3.0}, {"generations", 14},
                      {"schedule", "mix"}, {"theta", 0.5}, {"grid", 25}}});

  out.push_back({"unifB-3x2-v0", "construction",
                 "five-component family with a rider peel; the mix schedule "
                 "pins the next peak value",
                 json{{"family", "unifB"}, {"m", 3}, {"n", 2}, {"v", 0},
                      {"q1", 100.0}, {"lambda1", -1.0},
                      {"generations", 12}, {"schedule", "mix"},
                      {"theta", 0.5}}});

  out.push_back({"unifBC-2x2-u1", "construction",
                 "braided family with one descender per generation; peaks "
                 "approach the schedule target from below, so sweeps near "
                 "zero need many generations",
                 json{{"family", "unifBC"}, {"m", 2}, {"n", 2}, {"u", 1},
                      {"q1", 100.0}, {"lambda1", -1.0 / 7.0},
                      {"generations", 96}, {"schedule", "mix"},
                      {"theta", 0.5}, {"grid", 25}}});

  return out;
}

}  // namespace

const std::vector<Fixture>& fixtures() {
  static const std::vector<Fixture> all = make_fixtures();
  return all;
}

const Fixture& fixture(const std::string& name) {
  for (const auto& f : fixtures())
    if (f.name == name) return f;
  throw Error(errc::parameter, "unknown fixture: " + name);
}

}  // namespace pgnlab
