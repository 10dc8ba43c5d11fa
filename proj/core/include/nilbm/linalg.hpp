#pragma once

#include <vector>

#include "nilbm/rational.hpp"

namespace nilbm {

/// Dense rational matrix, rows as vectors. Sizes here are the Lie algebra
/// dimension (single digits), so dense Gaussian elimination is the right
/// tool; determinism comes from always pivoting on the lowest-index
/// nonzero coordinate.
using Mat = std::vector<RatVec>;

Mat identity_mat(int n);

/// Reduced row echelon form. Returns the RREF with zero rows dropped and the
/// ascending pivot column list. The RREF is a canonical basis of the row
/// span, so two spans are equal iff their RREFs are equal.
struct Rref {
  Mat basis;
  std::vector<int> pivots;
};
Rref rref(Mat rows);

int rank(const Mat& rows);

/// True iff v lies in the row span of an RREF basis.
bool in_span(const Rref& span, const RatVec& v);

bool span_equal(const Rref& a, const Rref& b);

/// Inverse of a square matrix; throws std::domain_error when singular.
Mat inverse(const Mat& m);

RatVec mat_vec(const Mat& m, const RatVec& v);
Mat mat_mul(const Mat& a, const Mat& b);

}  // namespace nilbm
