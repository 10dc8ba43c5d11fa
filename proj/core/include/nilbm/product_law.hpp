#pragma once

#include <optional>
#include <string>
#include <vector>

#include "nilbm/malcev.hpp"
#include "nilbm/polynomial.hpp"
#include "nilbm/stratification.hpp"

namespace nilbm {

struct DimensionMismatchError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct NonpositiveLambdaError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Coordinate product z * w = z + w + (P_1(z,w), ..., P_d(z,w)) with P_1
/// constant and each P_i a polynomial in z_1..z_{i-1}, w_1..w_{i-1} only.
/// Group-derived laws come out of the series expansion below; custom laws of
/// the same triangular shape are first-class so the volume machinery can run
/// on products that are not group multiplications.
struct ProductLaw {
  enum class Kind { Group, Custom };
  int dim = 0;
  int n1 = 0;  // dim of g_1 for group-derived laws; 0 for custom
  Kind kind = Kind::Custom;
  std::vector<Polynomial> polys;  // P_1..P_d in z/w variables
};

/// Exact product law of a nilpotent algebra in Malcev order, from Dynkin's
/// commutator series truncated at the nilpotency step. The truncation is
/// exact: every bracket of depth > step vanishes. Coefficients are produced
/// by the series itself, never hardcoded.
ProductLaw derive_bch(const StructureConstants& sc);

/// Custom law of the triangular shape; throws std::invalid_argument when
/// F_1 is non-constant or some F_i touches a coordinate >= i.
ProductLaw make_custom_law(int dim, std::vector<Polynomial> polys);

struct TriangularReport {
  bool pass = true;
  int coordinate = 0;
  std::string variable;
};
TriangularReport verify_triangular(const ProductLaw& law);

struct FirstLayerReport {
  bool pass = true;
  int coordinate = 0;
};
FirstLayerReport verify_first_layer(const ProductLaw& law, int n1);

/// z * w, exact.
RatVec eval(const ProductLaw& law, const RatVec& z, const RatVec& w);

/// Box containing { z * w : z in Z, w in W }.
IntervalBox eval_interval(const ProductLaw& law, const IntervalBox& Z, const IntervalBox& W);

struct AssociativityReport {
  bool pass = true;
  bool symbolic = false;
  long samples_checked = 0;
  std::string counterexample;
};
/// Symbolic when the composed degree stays small, otherwise exact rational
/// sample triples from a fixed seed.
AssociativityReport verify_associativity(const ProductLaw& law, long samples,
                                         std::uint64_t seed = 0x5eed0001ULL);

/// Checks 0 * w = w and z * 0 = z symbolically.
bool verify_identity_at_zero(const ProductLaw& law);

/// Per-coordinate dilation weights plus homogeneous dimension.
struct DilationSpec {
  std::vector<int> weights;
  int Q = 0;
};
DilationSpec dilation_spec(const Stratification& s);

/// Coordinate i scales by lambda^weights[i]; exact, lambda > 0.
RatVec dilate(const DilationSpec& spec, const Rat& lambda, const RatVec& x);

struct DilationAutomorphismReport {
  bool pass = true;
  int coordinate = 0;
  std::string mismatch;
};
/// Polynomial identity delta(z * w) = delta(z) * delta(w) in (scale, z, w).
DilationAutomorphismReport verify_dilation_automorphism(const ProductLaw& law,
                                                        const DilationSpec& spec);

/// Determinant of the Jacobian of w -> z * w. The triangular shape forces a
/// unit lower-triangular matrix, verified symbolically; the value is 1.
Rat translation_jacobian(const ProductLaw& law, const RatVec& z);

/// Law on d-1 coordinates obtained by freezing the first coordinates of both
/// factors: coordinates shift down by one and F'_i(z~,w~) =
/// F_{i+1}((z1',z~),(w1',w~)). The result has the same triangular shape with
/// constant F'_1.
ProductLaw freeze_first_coordinate(const ProductLaw& law, const Rat& z1, const Rat& w1);

}  // namespace nilbm
