#pragma once

// Test-side oracles, deliberately independent of the implementation paths
// they check. The series oracle spells out the classical depth-3 commutator
// expansion; the image oracles work from hand-derived fiber descriptions of
// specific product sets.

#include "nilbm/box_union.hpp"
#include "nilbm/product_law.hpp"

namespace nilbm::oracle {

/// log(exp X exp Y) = X + Y + [X,Y]/2 + [X,[X,Y]]/12 + [Y,[Y,X]]/12,
/// written out literally. Exact for algebras of step <= 3.
ProductLaw bch_depth3(const StructureConstants& sc);

/// For the plane law z*w = z + w + (0, z1*w1) on A = B = [0,1]^2 the image
/// is { (s, y) : 0 <= s <= 2, phi_min(s) <= y <= 2 + s^2/4 } with
/// phi_min(s) = max(0, s-1). Returns box unions under/over the image on
/// vertical strips of width 2^-p (fiber endpoints are monotone in s, so the
/// strip extrema sit at strip ends).
struct StripSandwich {
  BoxUnion under;  // subset of the image
  BoxUnion over;   // superset of the image
};
StripSandwich plane_law_image_strips(int p);

/// Exact image volume of the instance above: 25/6.
Rat plane_law_image_volume();

/// Bracket of the product-set volume of two unit cubes under the rank-one
/// bilinear vertical law (the 3-dimensional step-2 case), by exact
/// integration of the fiber length 2 + (s2*k(s1) + s1*k(s2))/2 with
/// k(s) = 1 - |1 - s| over an N x N grid (N even so cells avoid the kink).
struct VolumeBracket {
  Rat lo, hi;
};
VolumeBracket cube_product_volume_bracket(int N);

/// Pixel rasterization of a 2-d box union at resolution 2^-p: pixels fully
/// inside (under) and pixels touching (over).
StripSandwich rasterize_2d(const BoxUnion& u, int p);

}  // namespace nilbm::oracle
