#pragma once

#include <vector>

#include "nilbm/interval.hpp"

namespace nilbm {

/// Axis-aligned box with exact rational endpoints. Degenerate (zero-width)
/// coordinates are allowed; such boxes carry zero volume but still matter
/// for Minkowski sums and product sets.
using Box = IntervalBox;

Rat box_volume(const Box& b);
bool box_is_degenerate(const Box& b);

/// Measurable set represented as a finite union of boxes, kept normalized:
/// positive-volume boxes have pairwise disjoint interiors and canonical
/// (lexicographic) order; degenerate boxes are retained verbatim after them.
/// Volume is the exact sum over the positive-volume part.
class BoxUnion {
 public:
  BoxUnion() = default;
  explicit BoxUnion(int dim) : dim_(dim) {}

  /// Normalizes an arbitrary (possibly overlapping) collection.
  static BoxUnion normalized(int dim, std::vector<Box> boxes);

  /// Trusts the caller that interiors are pairwise disjoint; sorts only.
  static BoxUnion from_disjoint(int dim, std::vector<Box> boxes);

  int dim() const { return dim_; }
  const std::vector<Box>& boxes() const { return boxes_; }
  bool empty() const { return boxes_.empty(); }
  Rat volume() const;

  bool operator==(const BoxUnion&) const = default;

 private:
  int dim_ = 0;
  std::vector<Box> boxes_;
};

/// { a + b : a in A, b in B }, exact: pairwise box sums, then normalization.
BoxUnion minkowski_sum(const BoxUnion& A, const BoxUnion& B);

/// Measure-theoretic difference A \ B (zero-width slivers dropped).
BoxUnion difference(const BoxUnion& A, const BoxUnion& B);

/// A subset of B up to a null set.
bool subset(const BoxUnion& A, const BoxUnion& B);

/// Closed intersection of two boxes, if nonempty.
bool boxes_intersect(const Box& a, const Box& b);

/// Product set A x B (concatenated coordinates).
BoxUnion cross(const BoxUnion& A, const BoxUnion& B);

/// Coordinate i scaled by lambda^weights[i]; exact, lambda > 0.
BoxUnion dilate(const BoxUnion& U, const std::vector<int>& weights, const Rat& lambda);

Box bounding_box(const BoxUnion& U);

}  // namespace nilbm
