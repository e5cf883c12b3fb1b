// SPDX-License-Identifier: MIT
//
// Exact arithmetic primitives.  Everything number-theoretic in this library
// runs on arbitrary-precision integers and rationals; doubles appear only in
// logarithmic/read-out quantities, never in comparisons that decide results.
#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>
#include <string_view>

namespace pgnlab {

using Int = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

// "num/den" or plain "num"; optional sign; throws errc::parameter on junk
// or a zero denominator.  The result is canonical (lowest terms, den > 0).
Rational parse_rational(std::string_view s);

// Canonical text form: "num/den", or just "num" when den == 1.
std::string to_string(const Rational& r);

inline Int num(const Rational& r) { return boost::multiprecision::numerator(r); }
inline Int den(const Rational& r) { return boost::multiprecision::denominator(r); }

// Floor division, b > 0.
Int floor_div(const Int& a, const Int& b);

// Nearest integer to num/den (den > 0); exact halves round toward -infinity.
Int round_half_down(const Int& num, const Int& den);

// Natural logarithm with absolute error well below 1e-13 for the magnitudes
// this library produces (top 53 bits exactly, remainder bounded by 2^-52).
double log_int(const Int& x);        // requires x > 0
double log_rational(const Rational& x);  // requires x > 0

double to_double(const Rational& r);

int sign(const Rational& r);

}  // namespace pgnlab
