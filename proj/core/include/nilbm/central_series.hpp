#pragma once

#include "nilbm/structure_constants.hpp"

namespace nilbm {

struct NotNilpotentError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Lower central series g_0 >= g_1 >= ... with g_{i+1} = [g, g_i].
/// `subspaces[i]` is the canonical (RREF) basis of g_i; the final entry is
/// the zero subspace. `dims[i]` = dim g_i, step r with g_r = 0.
struct CentralSeries {
  std::vector<Rref> subspaces;
  std::vector<int> dims;
  int step = 0;
};

/// Throws NotNilpotentError when the series stabilizes at positive dimension.
CentralSeries lower_central_series(const StructureConstants& sc);

}  // namespace nilbm
