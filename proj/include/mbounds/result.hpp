#pragma once

#include <cstddef>

namespace mbounds {

/// Size and quality figures of one solved program.
struct Diagnostics {
  int variables = 0;
  int constraints = 0;
  std::size_t nonzeros = 0;
  long iterations = 0;
  double max_residual = 0.0;
  double support_bound = 0.0;
};

template <typename Witness>
struct BoundsResult {
  double lower = 0.0;
  double upper = 0.0;
  Witness witness_lower;
  Witness witness_upper;
  Diagnostics diagnostics_lower;
  Diagnostics diagnostics_upper;
};

}  // namespace mbounds
