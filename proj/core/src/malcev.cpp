#include "nilbm/malcev.hpp"

#include <algorithm>
#include <set>

namespace nilbm {

MalcevBasis malcev_basis(const StructureConstants& sc) {
  return malcev_basis(sc, lower_central_series(sc));
}

MalcevBasis malcev_basis(const StructureConstants& sc, const CentralSeries& series) {
  (void)sc;
  const int d = series.dims[0];
  MalcevBasis out;
  // Front-to-back: complement of g_1 in g_0 first, then complement of g_2 in
  // g_1, ..., ending with g_{r-1}. Complements are read off the canonical
  // RREF bases: rows of g_i whose pivot is not a pivot of g_{i+1}. Pivot sets
  // nest because every leading index of a subspace is a leading index of any
  // superspace.
  for (int level = 0; level + 1 < static_cast<int>(series.subspaces.size()); ++level) {
    const Rref& big = series.subspaces[level];
    const Rref& small = series.subspaces[level + 1];
    std::set<int> small_pivots(small.pivots.begin(), small.pivots.end());
    for (std::size_t r = 0; r < big.basis.size(); ++r) {
      if (!small_pivots.count(big.pivots[r])) out.change.push_back(big.basis[r]);
    }
  }
  if (static_cast<int>(out.change.size()) != d)
    throw std::logic_error("malcev_basis: adapted basis has wrong size");
  out.marks.reserve(series.dims.size());
  for (int n : series.dims) out.marks.push_back(d - n + 1);
  return out;
}

std::string check_malcev(const StructureConstants& sc, const CentralSeries& series,
                         const MalcevBasis& basis) {
  const int d = sc.dim();
  if (static_cast<int>(basis.change.size()) != d) return "basis has wrong number of vectors";
  if (rank(basis.change) != d) return "basis vectors are linearly dependent";
  // Tail spans are ideals: [X_j, tail] stays in the tail span.
  for (int n = 1; n <= d; ++n) {
    Mat tail(basis.change.begin() + (d - n), basis.change.end());
    Rref tail_span = rref(tail);
    for (int j = 0; j < d; ++j)
      for (int t = d - n; t < d; ++t) {
        RatVec br = sc.bracket(basis.change[j], basis.change[t]);
        if (!in_span(tail_span, br))
          return "tail of length " + std::to_string(n) + " is not an ideal (bracket with X" +
                 std::to_string(j + 1) + ")";
      }
  }
  // Tail of length dims[i] spans g_i.
  for (std::size_t i = 0; i < series.dims.size(); ++i) {
    int n = series.dims[i];
    Mat tail(basis.change.begin() + (d - n), basis.change.end());
    if (!span_equal(rref(tail), series.subspaces[i]))
      return "tail of length " + std::to_string(n) + " does not span g_" + std::to_string(i);
  }
  return {};
}

}  // namespace nilbm
