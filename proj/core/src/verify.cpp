#include "nilbm/verify.hpp"

#include <algorithm>

namespace nilbm {

std::string verdict_str(Verdict v) {
  switch (v) {
    case Verdict::Holds:
      return "holds";
    case Verdict::Fails:
      return "fails";
    case Verdict::Inconclusive:
      return "inconclusive";
  }
  return "?";
}

void RhsPower::tighten(unsigned t) {
  if (exact) return;
  auto [la, ha] = mth_root_bracket(a, m, t);
  auto [lb, hb] = mth_root_bracket(b, m, t);
  lo = pow_rat(Rat(la + lb), m);
  hi = pow_rat(Rat(ha + hb), m);
  bits = t;
}

RhsPower make_rhs_power(const Rat& a, const Rat& b, unsigned m) {
  if (a < 0 || b < 0) throw std::domain_error("rhs power: negative volume");
  RhsPower out;
  out.a = a;
  out.b = b;
  out.m = m;
  if (a == 0 || b == 0) {
    out.exact = Rat(a + b);
  } else {
    // (a^(1/m) + b^(1/m))^m is rational iff b/a is an m-th power of a
    // rational (conjugation argument on 1 + (b/a)^(1/m)); in that case it
    // equals a*(1+rho)^m exactly.
    Rat ratio = Rat(b / a);
    if (auto rho = rational_mth_root(ratio, m)) out.exact = Rat(a * pow_rat(Rat(1 + *rho), m));
  }
  if (out.exact) {
    out.lo = *out.exact;
    out.hi = *out.exact;
  } else {
    out.tighten(16);
  }
  return out;
}

Verdict decide_bm(RhsPower& rhs, const Rat& lower, const Rat& upper) {
  if (rhs.exact) {
    if (lower >= *rhs.exact) return Verdict::Holds;
    if (upper < *rhs.exact) return Verdict::Fails;
    return Verdict::Inconclusive;
  }
  while (true) {
    if (lower >= rhs.hi) return Verdict::Holds;
    if (upper < rhs.lo) return Verdict::Fails;
    // The true rhs is irrational here, so it cannot equal either rational
    // bound; once the bracket separates from both bounds the verdict is
    // genuinely undecidable at the current volume bounds.
    if (rhs.lo > lower && rhs.hi <= upper) return Verdict::Inconclusive;
    if (rhs.bits >= 4096) return Verdict::Inconclusive;
    rhs.tighten(rhs.bits * 2);
  }
}

namespace {

void fill_margin(BMReport& r) {
  switch (r.verdict) {
    case Verdict::Holds:
      r.margin = Rat(r.lower - (r.rhs_exact ? *r.rhs_exact : r.rhs_hi));
      break;
    case Verdict::Fails:
      r.margin = Rat((r.rhs_exact ? *r.rhs_exact : r.rhs_lo) - r.upper);
      break;
    case Verdict::Inconclusive:
      r.margin = Rat(r.upper - r.lower);
      break;
  }
}

BoxUnion interval_as_union(const Interval& iv) {
  return BoxUnion::from_disjoint(1, {Box{iv}});
}

}  // namespace

BMReport bm_verify(const BoxUnion& A, const BoxUnion& B, const ProductLaw& law, unsigned m,
                   const Rat& tol, int max_depth, long budget) {
  BMReport r;
  r.m = m;
  r.vol_a = A.volume();
  r.vol_b = B.volume();
  r.clause = (m == static_cast<unsigned>(law.dim)) ? "bm-topdim" : ("bm-m" + std::to_string(m));
  RhsPower rhs = make_rhs_power(r.vol_a, r.vol_b, m);

  BoundsRefiner refiner(A, B, law, budget);
  r.bounds_status = BoundsStatus::MaxDepthReached;
  while (true) {
    if (!refiner.can_step()) {
      r.bounds_status = BoundsStatus::BudgetExceeded;
      break;
    }
    refiner.step();
    r.verdict = decide_bm(rhs, refiner.lower(), refiner.upper());
    if (r.verdict != Verdict::Inconclusive) {
      r.bounds_status = BoundsStatus::Converged;
      break;
    }
    Rat gap = Rat(refiner.upper() - refiner.lower());
    if (gap <= Rat(tol * refiner.upper())) {
      r.bounds_status = BoundsStatus::Converged;
      break;
    }
    if (refiner.next_depth() > max_depth) break;
  }
  r.lower = refiner.lower();
  r.upper = refiner.upper();
  r.depth = refiner.next_depth() - 1;
  r.cell_pairs = refiner.cell_pairs_used();
  r.rhs_exact = rhs.exact;
  r.rhs_lo = rhs.lo;
  r.rhs_hi = rhs.hi;
  fill_margin(r);
  return r;
}

BMReport bm_euclidean_check(const BoxUnion& A, const BoxUnion& B, unsigned m) {
  BMReport r;
  r.clause = "bm-euclidean";
  r.m = m;
  r.vol_a = A.volume();
  r.vol_b = B.volume();
  Rat vol = minkowski_sum(A, B).volume();
  r.lower = vol;
  r.upper = vol;
  RhsPower rhs = make_rhs_power(r.vol_a, r.vol_b, m);
  r.verdict = decide_bm(rhs, vol, vol);
  r.rhs_exact = rhs.exact;
  r.rhs_lo = rhs.lo;
  r.rhs_hi = rhs.hi;
  fill_margin(r);
  return r;
}

CylinderReport cylinder_strict(const BoxUnion& A1, const BoxUnion& A2, const BoxUnion& B1,
                               const BoxUnion& B2, const ProductLaw& law, int max_depth,
                               long budget) {
  if (A2.dim() != 1 || B2.dim() != 1)
    throw std::invalid_argument("cylinder_strict: vertical factors must be one-dimensional");
  if (A1.dim() + 1 != law.dim || B1.dim() + 1 != law.dim)
    throw DimensionMismatchError("cylinder_strict: factor dimensions do not match the law");
  CylinderReport r;
  r.note =
      "vertical coordinate uses the derived-law normalization; rescaling it multiplies both "
      "|A*B| and |A+B| by the same factor, so the strictness verdict is unaffected";
  if (A1.volume() == 0 || B1.volume() == 0) {
    r.status = CylinderReport::Status::OutOfTheoremScope;
    r.note = "|A1| = 0 or |B1| = 0: outside the covered hypotheses (includes parallel "
             "vertical hyperplanes and the open horizontal degenerate case); no verdict issued";
    return r;
  }
  BoxUnion A = cross(A1, A2), B = cross(B1, B2);
  r.sum_volume = minkowski_sum(A, B).volume();

  BoundsRefiner refiner(A, B, law, budget);
  while (true) {
    if (!refiner.can_step()) break;
    refiner.step();
    if (refiner.lower() > r.sum_volume) {
      r.status = CylinderReport::Status::StrictCertified;
      break;
    }
    if (refiner.next_depth() > max_depth) break;
  }
  r.product_lower = refiner.lower();
  r.product_upper = refiner.upper();
  r.depth = refiner.next_depth() - 1;
  r.cell_pairs = refiner.cell_pairs_used();
  return r;
}

std::vector<SharpnessRow> sharpness_scan(const ProductLaw& law, const DilationSpec& spec,
                                         const std::vector<Rat>& eps_list, const Rat& tol,
                                         int max_depth, long budget) {
  std::vector<SharpnessRow> rows;
  for (const Rat& eps : eps_list) {
    if (eps <= 0 || eps > 1) throw std::invalid_argument("sharpness_scan: eps must be in (0, 1]");
    Box box(law.dim);
    for (int i = 0; i + 1 < law.dim; ++i) box[i] = {Rat(0), eps};
    box[law.dim - 1] = {Rat(0), Rat(1)};
    BoxUnion A = BoxUnion::from_disjoint(law.dim, {box});
    SharpnessRow row;
    row.eps = eps;
    row.report = bm_verify(A, A, law, static_cast<unsigned>(spec.Q), tol, max_depth, budget);
    row.report.clause = "bm-homdim-sharpness";
    rows.push_back(std::move(row));
  }
  return rows;
}

ReductionReport lemma31_verify(const Interval& I, const Interval& J, const BoxUnion& A_tail,
                               const BoxUnion& B_tail, const ProductLaw& law, const Rat& tol,
                               int grid_points, int max_depth, long budget) {
  if (law.dim < 2) throw std::invalid_argument("lemma31_verify: law dimension must be >= 2");
  if (A_tail.dim() != law.dim - 1 || B_tail.dim() != law.dim - 1)
    throw DimensionMismatchError("lemma31_verify: tail dimension mismatch");
  if (grid_points < 1) throw std::invalid_argument("lemma31_verify: grid_points must be >= 1");

  ReductionReport r;
  r.grid_points = grid_points;
  r.len_sum = Rat(I.width() + J.width());

  BoxUnion A = cross(interval_as_union(I), A_tail);
  BoxUnion B = cross(interval_as_union(J), B_tail);
  ProductSetApprox lhs = product_volume_bounds(A, B, law, tol, max_depth, budget);
  r.lhs_lower = lhs.bounds.lower;
  r.lhs_upper = lhs.bounds.upper;

  // Does any F read the first coordinate?
  r.equality_applicable = true;
  for (const Polynomial& p : law.polys)
    for (const Var& v : p.vars())
      if (v.index == 1) r.equality_applicable = false;

  const Rat lo_sum = Rat(I.lo + J.lo);
  const Rat len = r.len_sum;
  const Rat l = I.width();
  auto selector = [&](const Rat& s1) {
    if (len == 0) return I.lo;
    return Rat(I.lo + Rat((s1 - lo_sum) * l / len));
  };

  bool first = true;
  const int points = r.equality_applicable ? 0 : grid_points;
  for (int i = 0; i <= points; ++i) {
    Rat s1 = Rat(lo_sum + Rat(len * Rat(i, std::max(points, 1))));
    s1.canonicalize();
    Rat z1 = selector(s1);
    Rat w1 = Rat(s1 - z1);
    ProductLaw reduced = freeze_first_coordinate(law, z1, w1);
    ProductSetApprox tail = product_volume_bounds(A_tail, B_tail, reduced, tol, max_depth, budget);
    if (first || tail.bounds.lower < r.tail_lower) {
      first = false;
      r.tail_lower = tail.bounds.lower;
      r.tail_upper = tail.bounds.upper;
      r.s1 = s1;
      r.z1 = z1;
      r.w1 = w1;
    }
  }

  r.inequality_ok = Rat(r.lhs_lower + tol * r.lhs_upper) >= Rat(r.len_sum * r.tail_lower);
  if (r.equality_applicable) {
    Rat rl = Rat(r.len_sum * r.tail_lower), ru = Rat(r.len_sum * r.tail_upper);
    Rat lo = std::min(r.lhs_lower, rl), hi = std::max(r.lhs_upper, ru);
    r.equality_ok = Rat(hi - lo) <= Rat(tol * hi);
  }
  r.note =
      "s1 chosen on a finite grid; any grid point yields a valid reduced product, so the "
      "inequality test is sound but the equality test may be suboptimal off-grid";
  return r;
}

PLReport pl_verify(const StepFunction& f, const StepFunction& g, const StepFunction& h,
                   const Rat& alpha, const ProductLaw& law, int max_depth, long budget) {
  if (f.dim() != law.dim || g.dim() != law.dim || h.dim() != law.dim)
    throw DimensionMismatchError("pl_verify: function dimension mismatch");
  if (alpha <= 0 || alpha >= 1) throw std::invalid_argument("pl_verify: alpha must be in (0,1)");

  PLReport r;
  r.alpha = alpha;
  r.integral_f = f.integral();
  r.integral_g = g.integral();
  r.integral_h = h.integral();
  const long p = alpha.get_num().get_si();
  const long q = alpha.get_den().get_si();
  const int d = law.dim;
  const Rat one_minus = Rat(1 - alpha);

  // Hypothesis: every support-cell pair's interval image must sit inside
  // { h >= f_val^(1-alpha) g_val^alpha }, certified by the exact minimum of
  // h over the enclosure and cross-powered value comparison.
  BoxUnion hsupp = h.support();
  long pairs_used = 0;
  for (int depth = 0; depth <= max_depth && !r.hypothesis_verified; ++depth) {
    bool all_ok = true;
    std::string failing;
    for (const auto& fp : f.pieces()) {
      std::vector<Box> fcells = scheme_cells(fp.box, law, depth);
      for (const auto& gp : g.pieces()) {
        std::vector<Box> gcells = scheme_cells(gp.box, law, depth);
        pairs_used += static_cast<long>(fcells.size()) * static_cast<long>(gcells.size());
        if (pairs_used > budget) {
          r.failing_pair = "cell-pair budget exceeded during hypothesis check";
          r.hypothesis_depth = depth;
          r.verdict = Verdict::Inconclusive;
          return r;
        }
        for (const Box& fc : fcells) {
          for (const Box& gc : gcells) {
            IntervalBox image = eval_interval(law, fc, gc);
            Box image_box(image.begin(), image.end());
            Rat min_h(0);
            if (subset(BoxUnion::from_disjoint(d, {image_box}), hsupp)) {
              bool found = false;
              for (const auto& hp : h.pieces()) {
                if (boxes_intersect(hp.box, image_box)) {
                  if (!found || hp.value < min_h) min_h = hp.value;
                  found = true;
                }
              }
              if (!found) min_h = 0;
            }
            // min_h >= f^(1-alpha) g^alpha  <=>  min_h^q >= f^(q-p) g^p
            Rat lhs = pow_rat(min_h, q);
            Rat rhs = Rat(pow_rat(fp.value, q - p) * pow_rat(gp.value, p));
            if (lhs < rhs) {
              all_ok = false;
              failing = "f-box " + rat_str(fc[0].lo) + ".. x g-box " + rat_str(gc[0].lo) +
                        ".. at depth " + std::to_string(depth);
              break;
            }
          }
          if (!all_ok) break;
        }
        if (!all_ok) break;
      }
      if (!all_ok) break;
    }
    if (all_ok) {
      r.hypothesis_verified = true;
      r.hypothesis_depth = depth;
    } else {
      r.failing_pair = failing;
      r.hypothesis_depth = depth;
    }
  }

  // Conclusion: integral_h >= (1-alpha)^(-d(1-alpha)) alpha^(-d alpha)
  // * If^(1-alpha) * Ig^alpha, compared exactly at the q-th power.
  bool conclusion;
  if (r.integral_f == 0 || r.integral_g == 0) {
    conclusion = true;
    r.rhs_exact = Rat(0);
    r.margin_pow = pow_rat(r.integral_h, q);
  } else {
    Rat lhs_pow = Rat(pow_rat(r.integral_h, q) * pow_rat(one_minus, d * (q - p)) *
                      pow_rat(alpha, d * p));
    Rat rhs_pow = Rat(pow_rat(r.integral_f, q - p) * pow_rat(r.integral_g, p));
    conclusion = lhs_pow >= rhs_pow;
    r.margin_pow = Rat(lhs_pow - rhs_pow);
    Rat rhs_q = Rat(rhs_pow / Rat(pow_rat(one_minus, d * (q - p)) * pow_rat(alpha, d * p)));
    r.rhs_exact = rational_mth_root(rhs_q, static_cast<unsigned>(q));
  }

  if (!r.hypothesis_verified)
    r.verdict = Verdict::Inconclusive;
  else
    r.verdict = conclusion ? Verdict::Holds : Verdict::Fails;
  return r;
}

CarnotReport carnot_bm(const BoxUnion& A, const BoxUnion& B, const Rat& alpha,
                       const ProductLaw& law, const DilationSpec& spec, CarnotForm form,
                       const Rat& tol, int max_depth, long budget) {
  if (alpha <= 0 || alpha >= 1) throw std::invalid_argument("carnot_bm: alpha must be in (0,1)");
  CarnotReport r;
  r.form = form;
  r.alpha = alpha;
  const Rat one_minus = Rat(1 - alpha);
  BoxUnion Ad = dilate(A, spec.weights, one_minus);
  BoxUnion Bd = dilate(B, spec.weights, alpha);
  r.vol_a_dilated = Ad.volume();
  r.vol_b_dilated = Bd.volume();

  if (form == CarnotForm::Root) {
    // |dA * dB|^(1/d) >= ((1-a)^Q |A|)^(1/d) + (a^Q |B|)^(1/d): exactly the
    // top-dimension check on the dilated sets, since |dA| = (1-a)^Q |A|.
    r.report = bm_verify(Ad, Bd, law, static_cast<unsigned>(law.dim), tol, max_depth, budget);
    r.report.clause = "carnot-bm-root";
    return r;
  }

  const long p = alpha.get_num().get_si();
  const long q = alpha.get_den().get_si();
  const long qd = static_cast<long>(spec.Q - law.dim);
  ProductSetApprox bounds = product_volume_bounds(Ad, Bd, law, tol, max_depth, budget);
  r.report.clause = "carnot-bm-product";
  r.report.m = static_cast<unsigned>(law.dim);
  r.report.vol_a = A.volume();
  r.report.vol_b = B.volume();
  r.report.lower = bounds.bounds.lower;
  r.report.upper = bounds.bounds.upper;
  r.report.depth = bounds.bounds.depth;
  r.report.cell_pairs = bounds.cell_pairs;
  r.report.bounds_status = bounds.status;
  // |dA*dB|^q >= (1-a)^((Q-d)(q-p)) a^((Q-d)p) |A|^(q-p) |B|^p
  r.rhs_pow = Rat(pow_rat(one_minus, qd * (q - p)) * pow_rat(alpha, qd * p) *
                  pow_rat(r.report.vol_a, q - p) * pow_rat(r.report.vol_b, p));
  r.lhs_pow = pow_rat(r.report.lower, q);
  if (r.lhs_pow >= r.rhs_pow) {
    r.report.verdict = Verdict::Holds;
    r.report.margin = Rat(r.lhs_pow - r.rhs_pow);
  } else if (pow_rat(r.report.upper, q) < r.rhs_pow) {
    r.report.verdict = Verdict::Fails;
    r.report.margin = Rat(r.rhs_pow - pow_rat(r.report.upper, q));
  } else {
    r.report.verdict = Verdict::Inconclusive;
    r.report.margin = Rat(r.report.upper - r.report.lower);
  }
  return r;
}

OrderCompareReport bm_order_compare(const BoxUnion& A, const BoxUnion& B, const ProductLaw& law,
                                    unsigned m, const Rat& tol, int max_depth, long budget) {
  OrderCompareReport r;
  r.ab = bm_verify(A, B, law, m, tol, max_depth, budget);
  r.ba = bm_verify(B, A, law, m, tol, max_depth, budget);
  Rat min_upper = std::min(r.ab.upper, r.ba.upper);
  RhsPower rhs = make_rhs_power(r.ab.vol_a, r.ab.vol_b, m);
  // Falsified only if even the smaller upper bound certifies failure.
  r.min_side_ok = !(min_upper < (rhs.exact ? *rhs.exact : rhs.lo));
  return r;
}

bool recheck_bm(const BMReport& r) {
  if (r.rhs_exact) {
    switch (r.verdict) {
      case Verdict::Holds:
        return r.lower >= *r.rhs_exact;
      case Verdict::Fails:
        return r.upper < *r.rhs_exact;
      case Verdict::Inconclusive:
        return r.lower < *r.rhs_exact && r.upper >= *r.rhs_exact;
    }
  }
  switch (r.verdict) {
    case Verdict::Holds:
      return r.lower >= r.rhs_hi;
    case Verdict::Fails:
      return r.upper < r.rhs_lo;
    case Verdict::Inconclusive:
      return true;  // no claim made
  }
  return false;
}

}  // namespace nilbm
