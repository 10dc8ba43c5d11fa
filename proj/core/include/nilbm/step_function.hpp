#pragma once

#include "nilbm/box_union.hpp"

namespace nilbm {

struct OverlappingPiecesError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Nonnegative step function: finitely many (box, value) pieces with
/// pairwise disjoint interiors, zero elsewhere. Zero-value pieces are
/// dropped on construction; the integral is an exact rational.
class StepFunction {
 public:
  struct Piece {
    Box box;
    Rat value;
  };

  static StepFunction make(int dim, std::vector<Piece> pieces);

  int dim() const { return dim_; }
  const std::vector<Piece>& pieces() const { return pieces_; }
  Rat integral() const;
  BoxUnion support() const;

 private:
  int dim_ = 0;
  std::vector<Piece> pieces_;
};

}  // namespace nilbm
