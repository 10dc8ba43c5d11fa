#pragma once

#include "nilbm/product_set.hpp"
#include "nilbm/step_function.hpp"

namespace nilbm {

enum class Verdict { Holds, Fails, Inconclusive };
std::string verdict_str(Verdict v);

/// (a^(1/m) + b^(1/m))^m for nonnegative rationals a, b. Exactly rational
/// iff b/a (or a, b themselves) has a rational m-th root; otherwise certified
/// directed brackets, tightened on demand. A verdict may only cite the
/// bracket endpoint that rounds against the claim being made.
struct RhsPower {
  Rat a{0}, b{0};
  unsigned m = 1;
  std::optional<Rat> exact;
  Rat lo{0}, hi{0};
  unsigned bits = 0;

  void tighten(unsigned t);
};
RhsPower make_rhs_power(const Rat& a, const Rat& b, unsigned m);

/// Certified verdict for  lower >= rhs / upper < rhs  against an RhsPower.
/// Tightens the rhs bracket until it no longer straddles either bound.
Verdict decide_bm(RhsPower& rhs, const Rat& lower, const Rat& upper);

struct BMReport {
  std::string clause;  // which inequality variant the verdict certifies
  unsigned m = 1;
  Rat vol_a{0}, vol_b{0};
  Rat lower{0}, upper{0};
  int depth = 0;
  long cell_pairs = 0;
  BoundsStatus bounds_status = BoundsStatus::Converged;
  std::optional<Rat> rhs_exact;
  Rat rhs_lo{0}, rhs_hi{0};
  Verdict verdict = Verdict::Inconclusive;
  Rat margin{0};  // Holds: lower - rhs; Fails: rhs - upper; else upper - lower
};

/// Multiplicative Brunn-Minkowski check |A*B|^(1/m) >= |A|^(1/m) + |B|^(1/m)
/// via certified volume bounds, refined until the verdict is decidable, the
/// gap falls under tol*upper, or the budget runs out.
BMReport bm_verify(const BoxUnion& A, const BoxUnion& B, const ProductLaw& law, unsigned m,
                   const Rat& tol, int max_depth, long budget = kDefaultCellPairBudget);

/// Euclidean counterpart on the exact Minkowski sum; no bounds gap.
BMReport bm_euclidean_check(const BoxUnion& A, const BoxUnion& B, unsigned m);

struct CylinderReport {
  enum class Status { StrictCertified, Undecided, OutOfTheoremScope };
  Status status = Status::Undecided;
  Rat product_lower{0}, product_upper{0};
  Rat sum_volume{0};
  int depth = 0;
  long cell_pairs = 0;
  std::string note;
};

/// Strictness check |A*B| > |A+B| for cylinders A = A1 x A2, B = B1 x B2
/// (A2, B2 one-dimensional vertical factors). Inputs with |A1| = 0 or
/// |B1| = 0 fall outside the covered hypotheses and get
/// OutOfTheoremScope instead of a verdict.
CylinderReport cylinder_strict(const BoxUnion& A1, const BoxUnion& A2, const BoxUnion& B1,
                               const BoxUnion& B2, const ProductLaw& law, int max_depth,
                               long budget = kDefaultCellPairBudget);

struct SharpnessRow {
  Rat eps{0};
  BMReport report;
};

/// Family A = B = [0,eps]^(d-1) x [0,1] tested at the homogeneous-dimension
/// exponent m = Q; emits one row per eps.
std::vector<SharpnessRow> sharpness_scan(const ProductLaw& law, const DilationSpec& spec,
                                         const std::vector<Rat>& eps_list, const Rat& tol,
                                         int max_depth, long budget = kDefaultCellPairBudget);

struct ReductionReport {
  Rat lhs_lower{0}, lhs_upper{0};
  Rat tail_lower{0}, tail_upper{0};
  Rat len_sum{0};  // |I + J|
  Rat s1{0}, z1{0}, w1{0};
  int grid_points = 0;
  bool inequality_ok = false;
  bool equality_applicable = false;
  bool equality_ok = false;
  std::string note;
};

/// Reduction check for A = I x At, B = J x Bt: certified bounds must satisfy
/// lhs_lower + tol*lhs_upper >= |I+J| * tail_lower, where the tail product
/// freezes the first coordinates at the selector value
/// z1(s1) = (s1 - (a+a'))/(l+l') * l + a for the grid point s1 minimizing
/// the certified tail lower bound. When no F touches the first coordinate
/// the two sides agree and equality is certified within tol.
ReductionReport lemma31_verify(const Interval& I, const Interval& J, const BoxUnion& A_tail,
                               const BoxUnion& B_tail, const ProductLaw& law, const Rat& tol,
                               int grid_points, int max_depth,
                               long budget = kDefaultCellPairBudget);

struct PLReport {
  bool hypothesis_verified = false;
  std::string failing_pair;  // description of the first unverified cell pair
  Rat integral_h{0}, integral_f{0}, integral_g{0};
  Rat alpha{0};
  std::optional<Rat> rhs_exact;
  Verdict verdict = Verdict::Inconclusive;
  Rat margin_pow{0};  // lhs^q - rhs^q, the exact cross-powered margin
  int hypothesis_depth = 0;
};

/// Functional inequality check: hypothesis h(a*b) >= f(a)^(1-alpha) g(b)^alpha
/// certified pairwise over support cells (interval image + exact minimum of h
/// over the enclosure), conclusion compared exactly by cross-powering with
/// alpha = p/q. A Verified hypothesis is sound; Unverified only means the
/// conservative check could not certify it.
PLReport pl_verify(const StepFunction& f, const StepFunction& g, const StepFunction& h,
                   const Rat& alpha, const ProductLaw& law, int max_depth,
                   long budget = kDefaultCellPairBudget);

enum class CarnotForm { Root, Product };

struct CarnotReport {
  CarnotForm form = CarnotForm::Root;
  Rat alpha{0};
  Rat vol_a_dilated{0}, vol_b_dilated{0};
  BMReport report;  // Root: full bm report on the dilated sets
  // Product form data (cross-powered comparison):
  Rat lhs_pow{0}, rhs_pow{0};
};

/// Dilated Brunn-Minkowski variants: A scaled by delta_{1-alpha}, B by
/// delta_alpha (exact on boxes). Root form reduces to bm_verify at m = d on
/// the dilated sets; Product form compares |dA * dB| against
/// (1-alpha)^((Q-d)(1-alpha)) alpha^((Q-d)alpha) |A|^(1-alpha) |B|^alpha
/// by exact cross-powering.
CarnotReport carnot_bm(const BoxUnion& A, const BoxUnion& B, const Rat& alpha,
                       const ProductLaw& law, const DilationSpec& spec, CarnotForm form,
                       const Rat& tol, int max_depth, long budget = kDefaultCellPairBudget);

struct OrderCompareReport {
  BMReport ab, ba;
  bool min_side_ok = false;  // min(upper_AB, upper_BA) never certifies a failure
};

OrderCompareReport bm_order_compare(const BoxUnion& A, const BoxUnion& B, const ProductLaw& law,
                                    unsigned m, const Rat& tol, int max_depth,
                                    long budget = kDefaultCellPairBudget);

/// Re-derives a report's verdict from its stored rationals; verdicts are
/// certificates and must reproduce exactly.
bool recheck_bm(const BMReport& r);

}  // namespace nilbm
