// SPDX-License-Identifier: MIT
#include "pgnlab/errors.hpp"

namespace pgnlab {

const char* errc_name(errc k) noexcept {
  switch (k) {
    case errc::parameter: return "parameter";
    case errc::domain: return "domain";
    case errc::dimension: return "dimension";
    case errc::horizon: return "horizon";
    case errc::insufficient_data: return "insufficient_data";
    case errc::precision: return "precision";
    case errc::rationality: return "rationality";
    case errc::coverage: return "coverage";
    case errc::validation: return "validation";
    case errc::internal: return "internal";
  }
  return "unknown";
}

}  // namespace pgnlab
