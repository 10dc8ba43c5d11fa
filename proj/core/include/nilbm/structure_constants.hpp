#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>

#include "nilbm/linalg.hpp"
#include "nilbm/rational.hpp"

namespace nilbm {

struct UnknownGroupError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// A Lie algebra presented by exact rational structure constants
/// [X_i, X_j] = sum_k c[i][j][k] X_k, indices 1-based. Entries are stored
/// sparsely and exactly as given; validate() checks the algebra axioms.
class StructureConstants {
 public:
  explicit StructureConstants(int dim) : dim_(dim) {}

  int dim() const { return dim_; }

  /// Records c[i][j][k] = value as given (no antisymmetric completion).
  void set(int i, int j, int k, const Rat& value);

  /// Coefficient of X_k in [X_i, X_j], honoring implied antisymmetry for
  /// pairs stored only one way.
  Rat coeff(int i, int j, int k) const;

  /// [u, v] for coefficient vectors over any commutative ring T supporting
  /// +, -, * with Rat. Used with T = Rat for span computations and
  /// T = Polynomial for the product-law series.
  template <class T>
  std::vector<T> bracket(const std::vector<T>& u, const std::vector<T>& v) const {
    std::vector<T> out(dim_);
    for (const auto& [ij, terms] : entries_) {
      auto [i, j] = ij;
      if (explicit_pair(j, i)) {
        // Both orders stored: use each literally (validate flags mismatches).
        for (const auto& [k, c] : terms) out[k - 1] = out[k - 1] + u[i - 1] * v[j - 1] * c;
      } else {
        for (const auto& [k, c] : terms)
          out[k - 1] = out[k - 1] + (u[i - 1] * v[j - 1] - u[j - 1] * v[i - 1]) * c;
      }
    }
    return out;
  }

  const std::map<std::pair<int, int>, std::map<int, Rat>>& entries() const { return entries_; }

  bool explicit_pair(int i, int j) const { return entries_.count({i, j}) != 0; }

 private:
  int dim_;
  std::map<std::pair<int, int>, std::map<int, Rat>> entries_;
};

/// Outcome of the axiom check. `ok` exactly when antisymmetry and the Jacobi
/// identity hold coefficient-wise; otherwise the first violated triple.
struct ValidationResult {
  enum class Code { Valid, Antisymmetry, Jacobi };
  Code code = Code::Valid;
  int i = 0, j = 0, k = 0;
  std::string message;
  bool ok() const { return code == Code::Valid; }
};

ValidationResult validate(const StructureConstants& sc);

/// Built-in algebras, already in strong Malcev order:
///   abelian(d), heisenberg(n), engel, free23.
StructureConstants catalog(const std::string& name);

/// Constants rewritten in the basis whose rows (in input coordinates) are
/// `change`. Requires `change` invertible.
StructureConstants change_basis(const StructureConstants& sc, const Mat& change);

}  // namespace nilbm
