// SPDX-License-Identifier: MIT
#pragma once

#include <stdexcept>
#include <string>

namespace pgnlab {

// Every failure the library can diagnose is thrown as an Error with one of
// these kinds.  The CLI maps kinds onto exit codes; tests match on them.
enum class errc {
  parameter,          // bad argument / inadmissible parameter combination
  domain,             // input outside the mathematical domain of an operation
  dimension,          // shape mismatch between objects
  horizon,            // requested range exceeds what the data supports
  insufficient_data,  // a check needs more records than are available
  precision,          // denominator guard refused the input
  rationality,        // exact zero residual: target is rational, sequence finite
  coverage,           // an enumeration box cannot certify its result
  validation,         // structural axiom violated (templates, junctions)
  internal,           // broken invariant inside the library itself
};

const char* errc_name(errc) noexcept;

class Error : public std::runtime_error {
public:
  Error(errc kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  errc kind() const noexcept { return kind_; }
  const char* kind_name() const noexcept { return errc_name(kind_); }

private:
  errc kind_;
};

[[noreturn]] inline void fail(errc kind, const std::string& msg) { throw Error(kind, msg); }

}  // namespace pgnlab
