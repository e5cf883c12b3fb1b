// SPDX-License-Identifier: MIT
#include "pgnlab/rational.hpp"

#include <cctype>
#include <cmath>

#include "pgnlab/errors.hpp"

namespace pgnlab {

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  return true;
}

Int parse_int(std::string_view s) {
  bool neg = false;
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
    neg = s.front() == '-';
    s.remove_prefix(1);
  }
  if (!all_digits(s)) fail(errc::parameter, "not an integer literal: '" + std::string(s) + "'");
  Int v{std::string(s)};
  if (neg) v = -v;
  return v;
}

}  // namespace

Rational parse_rational(std::string_view s) {
  auto slash = s.find('/');
  if (slash == std::string_view::npos) return Rational(parse_int(s));
  Int n = parse_int(s.substr(0, slash));
  Int d = parse_int(s.substr(slash + 1));
  if (d == 0) fail(errc::parameter, "zero denominator in '" + std::string(s) + "'");
  return Rational(n, d);
}

std::string to_string(const Rational& r) {
  if (den(r) == 1) return num(r).str();
  return num(r).str() + "/" + den(r).str();
}

Int floor_div(const Int& a, const Int& b) {
  if (b <= 0) fail(errc::domain, "floor_div needs a positive divisor");
  Int q = a / b;
  if (a % b != 0 && a < 0) --q;
  return q;
}

Int round_half_down(const Int& n, const Int& d) {
  if (d <= 0) fail(errc::domain, "round_half_down needs a positive denominator");
  // nearest integer with exact halves sent down = ceil(n/d - 1/2)
  return floor_div(2 * n + d - 1, 2 * d);
}

double log_int(const Int& x) {
  if (x <= 0) fail(errc::domain, "log of a non-positive integer");
  unsigned b = boost::multiprecision::msb(x);
  if (b <= 52) return std::log(x.convert_to<double>());
  // Keep the top 53 bits exactly; the discarded tail contributes less than
  // 2^-52 to the logarithm.
  unsigned shift = b - 52;
  Int hi = x >> shift;
  return std::log(hi.convert_to<double>()) + double(shift) * M_LN2;
}

double log_rational(const Rational& x) {
  if (x <= 0) fail(errc::domain, "log of a non-positive rational");
  return log_int(num(x)) - log_int(den(x));
}

double to_double(const Rational& r) {
  if (r == 0) return 0.0;
  double magnitude = log_rational(r > 0 ? r : Rational(-r));
  if (magnitude > 700.0) return r > 0 ? HUGE_VAL : -HUGE_VAL;
  if (magnitude < -745.0) return r > 0 ? 0.0 : -0.0;
  return r.convert_to<double>();
}

int sign(const Rational& r) { return r.sign(); }

}  // namespace pgnlab
