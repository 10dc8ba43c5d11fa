#pragma once

#include "nilbm/central_series.hpp"

namespace nilbm {

/// Layer decomposition g = V_1 + ... + V_r with [V_1, V_i] = V_{i+1}.
/// Coordinates are required to align with layers (each V_t is a consecutive
/// coordinate block in the Malcev order), which is what makes dilations act
/// diagonally: coordinate j scales by lambda^weights[j].
struct Stratification {
  std::vector<Rref> layers;
  std::vector<int> weights;  // per-coordinate layer index, 1-based
  int Q = 0;                 // homogeneous dimension, sum of i*dim(V_i)
};

/// Single-candidate stratification test: V_1 := span of the first
/// d - dim(g_1) coordinate vectors, V_{i+1} := [V_1, V_i], then every
/// defining condition is checked exactly. Failure means "this candidate
/// failed", not a proof that no stratification exists.
struct StratifyResult {
  std::optional<Stratification> stratification;
  std::string diagnostic;  // nonempty iff no stratification
  bool ok() const { return stratification.has_value(); }
};

StratifyResult stratify(const StructureConstants& sc);
StratifyResult stratify(const StructureConstants& sc, const CentralSeries& series);

int homogeneous_dimension(const Stratification& s);

}  // namespace nilbm
