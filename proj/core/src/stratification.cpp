#include "nilbm/stratification.hpp"

namespace nilbm {

StratifyResult stratify(const StructureConstants& sc) {
  return stratify(sc, lower_central_series(sc));
}

StratifyResult stratify(const StructureConstants& sc, const CentralSeries& series) {
  const int d = sc.dim();
  const int r = series.step;
  const int n1 = series.dims.size() > 1 ? series.dims[1] : 0;

  auto fail = [](std::string why) {
    StratifyResult out;
    out.diagnostic = "stratification candidate failed: " + std::move(why) +
                     " (single-candidate test; this does not prove the algebra is unstratifiable)";
    return out;
  };

  // V_1 := complement of g_1 spanned by the first d - n1 coordinate vectors.
  Mat v1_rows;
  for (int i = 0; i < d - n1; ++i) {
    RatVec e(d, Rat(0));
    e[i] = 1;
    v1_rows.push_back(e);
  }
  std::vector<Rref> layers;
  layers.push_back(rref(v1_rows));
  if (static_cast<int>(layers[0].pivots.size()) != d - n1)
    return fail("V_1 has wrong dimension");

  // V_{i+1} = [V_1, V_i] until it vanishes.
  while (true) {
    Mat gens;
    for (const RatVec& a : layers[0].basis)
      for (const RatVec& b : layers.back().basis) gens.push_back(sc.bracket(a, b));
    Rref next = rref(std::move(gens));
    if (next.pivots.empty()) break;
    layers.push_back(std::move(next));
    if (static_cast<int>(layers.size()) > r) return fail("layer chain exceeds the series step");
  }
  if (static_cast<int>(layers.size()) != r)
    return fail("layer chain terminates at step " + std::to_string(layers.size()) +
                " but the series has step " + std::to_string(r));

  // Direct sum: dimensions add up to d and the stacked bases are independent.
  int total = 0;
  Mat stacked;
  for (const Rref& l : layers) {
    total += static_cast<int>(l.pivots.size());
    for (const RatVec& v : l.basis) stacked.push_back(v);
  }
  if (total != d) return fail("layer dimensions sum to " + std::to_string(total));
  if (rank(stacked) != d) return fail("layers are not independent");

  // g_{k} = V_{k+1} + ... + V_r, checked by exact span equality.
  for (int k = 1; k < r; ++k) {
    Mat tail;
    for (int t = k; t < r; ++t)
      for (const RatVec& v : layers[t].basis) tail.push_back(v);
    if (!span_equal(rref(tail), series.subspaces[k]))
      return fail("V_" + std::to_string(k + 1) + "+...+V_" + std::to_string(r) +
                  " does not equal g_" + std::to_string(k));
  }

  // Layers must be coordinate blocks so dilations act diagonally.
  Stratification s;
  s.layers = layers;
  s.weights.assign(d, 0);
  int next_coord = 0;
  for (int t = 0; t < r; ++t) {
    const Rref& l = layers[t];
    for (std::size_t row = 0; row < l.basis.size(); ++row) {
      if (l.pivots[row] != next_coord) return fail("layers are not consecutive coordinate blocks");
      RatVec expect(d, Rat(0));
      expect[next_coord] = 1;
      if (l.basis[row] != expect) return fail("layer basis is not the coordinate basis");
      s.weights[next_coord] = t + 1;
      ++next_coord;
    }
  }

  s.Q = 0;
  for (int t = 0; t < r; ++t) s.Q += (t + 1) * static_cast<int>(layers[t].pivots.size());
  StratifyResult out;
  out.stratification = std::move(s);
  return out;
}

int homogeneous_dimension(const Stratification& s) { return s.Q; }

}  // namespace nilbm
