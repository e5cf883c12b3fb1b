// SPDX-License-Identifier: MIT
//
// Bundled reference inputs: matrices with known behavior and construction
// specs exercised by the acceptance suite.  Payloads are exactly the JSON
// documents the loaders accept, so a fixture can be piped through the same
// code path as a user file.
#pragma once

#include <string>
#include <vector>

#include "pgnlab/io.hpp"

namespace pgnlab {

struct Fixture {
  std::string name;
  std::string kind;  // "matrix" | "construction"
  std::string note;
  json payload;
};

const std::vector<Fixture>& fixtures();

// Lookup by name; unknown names are a parameter error.
const Fixture& fixture(const std::string& name);

}  // namespace pgnlab
