#pragma once

#include "nilbm/central_series.hpp"

namespace nilbm {

/// Ordered basis X_1..X_d (rows of `change`, in input coordinates) adapted to
/// the lower central series: the last n vectors span an ideal for every n,
/// and the last dims[i] vectors span g_i exactly.
struct MalcevBasis {
  Mat change;
  /// marks[i] = 1-based index where the g_i block begins (d - dims[i] + 1).
  std::vector<int> marks;
};

MalcevBasis malcev_basis(const StructureConstants& sc);
MalcevBasis malcev_basis(const StructureConstants& sc, const CentralSeries& series);

/// Exact check of the defining invariants: every tail span is an ideal and
/// the tail of length dims[i] equals g_i. Returns an empty string on success,
/// else a diagnostic.
std::string check_malcev(const StructureConstants& sc, const CentralSeries& series,
                         const MalcevBasis& basis);

}  // namespace nilbm
