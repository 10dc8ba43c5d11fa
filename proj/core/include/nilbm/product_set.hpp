#pragma once

#include "nilbm/box_union.hpp"
#include "nilbm/product_law.hpp"

namespace nilbm {

inline constexpr long kDefaultCellPairBudget = 1L << 26;

struct BudgetExceededError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Certified enclosure of |A * B|.
struct VolumeBounds {
  Rat lower{0};
  Rat upper{0};
  int depth = 0;  // deepest refinement level computed
  Rat gap{0};     // upper - lower
};

enum class BoundsStatus { Converged, MaxDepthReached, BudgetExceeded };

struct ProductSetApprox {
  BoxUnion inner;  // certified subset of A * B
  BoxUnion outer;  // certified superset of A * B
  VolumeBounds bounds;
  BoundsStatus status = BoundsStatus::MaxDepthReached;
  long cell_pairs = 0;
};

/// How a triangular law tells the refiner to treat each coordinate.
///
/// level[j] ("influence level") is 0 when neither z_j nor w_j appears in any
/// F_i; otherwise 1 + max level over the coordinates whose F depends on j.
/// At refinement depth k, coordinate j is subdivided on the dyadic grid of
/// mesh 2^(-k*level[j]), so each coordinate is resolved strictly finer than
/// the coordinates it feeds. This grading is what makes the inner bound
/// converge: the oscillation bound delta_i over a cell is controlled by the
/// mesh of the coordinates F_i reads, which shrinks by a factor 2^k relative
/// to coordinate i's own mesh. Subdividing uniformly would leave delta_i/h_i
/// constant, and the inner rule would stall.
///
/// Coordinates with level > 0 and F_j identically zero translate exactly
/// (z_j* + cell); their images stay on a shifted copy of the grid, so they
/// index a footprint lattice. All other coordinates are carried in the
/// fibers as exact rational intervals. The last coordinate never appears in
/// any F, so there is always at least one fiber coordinate.
struct CoordScheme {
  int dim = 0;
  std::vector<int> level;
  std::vector<bool> subdivided;  // level > 0
  std::vector<bool> lattice;     // subdivided and F_j == 0
  std::vector<int> lattice_coords;
  std::vector<int> fiber_coords;
};

CoordScheme coord_scheme(const ProductLaw& law);

/// Subdivision cells of one box at the given depth under the law's scheme.
/// The functional-inequality hypothesis check uses this to mirror the outer
/// enclosure cells exactly.
std::vector<Box> scheme_cells(const Box& box, const ProductLaw& law, int depth);

/// Certified superset of A * B at the given depth: interval enclosures of
/// every cell pair, footprint coordinates rasterized outward onto the grid,
/// fiber coordinates kept exact.
BoxUnion outer_product_set(const BoxUnion& A, const BoxUnion& B, const ProductLaw& law, int depth,
                           long budget = kDefaultCellPairBudget);

/// Certified subset of A * B at the given depth, built from the sheared-box
/// containment rule.
///
/// Rule: fix an A-cell a with midpoint sample z* on the subdivided
/// coordinates, and a B-cell b with midpoint m and half-widths h. Let
/// delta_i bound the oscillation of F_i(z*, .) over b. Then the box with
///   - lattice coordinate i:  z*_i + b_i                  (F_i = 0, exact)
///   - carried coordinate i:  eval_i(z*, m) +- (h_i - delta_i)
///   - free coordinate i:     a_i + b_i + F_i(z*, m) shrunk by delta_i
/// is contained in a * b. Proof sketch: given a target p, solve
/// w_i = p_i - z_i - F_i(z, w_{<i}) coordinate by coordinate. On subdivided
/// coordinates keep z_i = z*_i; the solved w_i stays within h_i of m_i
/// because |p_i - c_i| <= h_i - delta_i and F_i moves by at most delta_i.
/// On free coordinates z_i and w_i split the interval sum a_i + b_i, and
/// since free coordinates feed no F, the choice never disturbs later steps.
BoxUnion inner_product_set(const BoxUnion& A, const BoxUnion& B, const ProductLaw& law, int depth,
                           long budget = kDefaultCellPairBudget);

/// Incremental refinement engine shared by the bound-driven verifiers.
/// step() computes the next depth and folds the result into the running
/// (monotone) bounds; the certified sets stored are the ones achieving them.
class BoundsRefiner {
 public:
  BoundsRefiner(BoxUnion A, BoxUnion B, const ProductLaw& law,
                long budget = kDefaultCellPairBudget);

  /// False when the next depth would exceed the budget (depth 0 always runs).
  bool can_step() const;
  void step();

  int next_depth() const { return next_depth_; }
  long cell_pairs_used() const { return pairs_used_; }
  const Rat& lower() const { return lower_; }
  const Rat& upper() const { return upper_; }
  bool has_bounds() const { return computed_; }
  const BoxUnion& inner_set() const { return inner_; }
  const BoxUnion& outer_set() const { return outer_; }

  ProductSetApprox snapshot(BoundsStatus status) const;

 private:
  BoxUnion A_, B_;
  const ProductLaw& law_;
  CoordScheme scheme_;
  long budget_;
  long pairs_used_ = 0;
  int next_depth_ = 0;
  bool computed_ = false;
  Rat lower_{0}, upper_{0};
  BoxUnion inner_, outer_;
};

/// Refines until gap <= tol * upper, max_depth, or budget exhaustion.
/// BudgetExceeded is a status carrying the best bounds so far, not an error.
ProductSetApprox product_volume_bounds(const BoxUnion& A, const BoxUnion& B,
                                       const ProductLaw& law, const Rat& tol, int max_depth,
                                       long budget = kDefaultCellPairBudget);

}  // namespace nilbm
