#include "nilbm/central_series.hpp"

namespace nilbm {

CentralSeries lower_central_series(const StructureConstants& sc) {
  const int d = sc.dim();
  CentralSeries out;
  out.subspaces.push_back(rref(identity_mat(d)));
  out.dims.push_back(d);
  while (true) {
    const Rref& cur = out.subspaces.back();
    if (cur.basis.empty()) break;
    Mat gens;
    for (int i = 1; i <= d; ++i) {
      RatVec ei(d, Rat(0));
      ei[i - 1] = 1;
      for (const RatVec& v : cur.basis) gens.push_back(sc.bracket(ei, v));
    }
    Rref next = rref(std::move(gens));
    int dim_next = static_cast<int>(next.pivots.size());
    if (dim_next == out.dims.back() && dim_next > 0)
      throw NotNilpotentError("lower central series stabilizes at dimension " +
                              std::to_string(dim_next));
    out.subspaces.push_back(std::move(next));
    out.dims.push_back(dim_next);
    if (dim_next == 0) break;
  }
  out.step = static_cast<int>(out.dims.size()) - 1;
  return out;
}

}  // namespace nilbm
