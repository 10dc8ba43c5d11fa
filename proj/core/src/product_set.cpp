#include "nilbm/product_set.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <unordered_map>

namespace nilbm {

namespace {

Rat rat_mul_2exp(const Rat& x, long e) {
  Rat out;
  if (e >= 0)
    mpq_mul_2exp(out.get_mpq_t(), x.get_mpq_t(), static_cast<mp_bitcnt_t>(e));
  else
    mpq_div_2exp(out.get_mpq_t(), x.get_mpq_t(), static_cast<mp_bitcnt_t>(-e));
  return out;
}

Rat dyadic(long q, long e) {  // q / 2^e
  return rat_mul_2exp(Rat(q), -e);
}

long to_long_checked(const Int& v) {
  if (!v.fits_slong_p() || v > (1L << 40) || v < -(1L << 40))
    throw std::invalid_argument("subdivision index out of supported range");
  return v.get_si();
}

// ------------------------------------------------------------------- cells

struct CellData {
  IntervalBox cell;           // full-dim; free coordinates keep the box interval
  std::vector<Rat> mid;       // midpoints on subdivided coordinates
  std::vector<Interval> sub;  // cell intervals on subdivided coordinates
  std::vector<long> idx;      // grid index per subdivided coordinate (valid iff full)
  std::vector<bool> full;     // cell equals the whole grid cell
};

struct AxisCells {
  std::vector<Interval> cells;
  std::vector<long> idx;
  std::vector<bool> full;
};

AxisCells subdivide_axis(const Interval& iv, long e) {
  AxisCells out;
  if (iv.degenerate()) {
    out.cells.push_back(iv);
    out.idx.push_back(0);
    out.full.push_back(false);
    return out;
  }
  long lo_idx = to_long_checked(rat_floor(rat_mul_2exp(iv.lo, e)));
  long hi_idx = to_long_checked(rat_ceil(rat_mul_2exp(iv.hi, e)));
  for (long q = lo_idx; q < hi_idx; ++q) {
    Rat cl = dyadic(q, e), ch = dyadic(q + 1, e);
    bool full = cl >= iv.lo && ch <= iv.hi;
    out.cells.emplace_back(std::max(cl, iv.lo), std::min(ch, iv.hi));
    out.idx.push_back(q);
    out.full.push_back(full);
  }
  return out;
}

long count_axis(const Interval& iv, long e) {
  if (iv.degenerate()) return 1;
  Int n = rat_ceil(rat_mul_2exp(iv.hi, e)) - rat_floor(rat_mul_2exp(iv.lo, e));
  return to_long_checked(n);
}

long count_box_cells(const Box& b, const CoordScheme& s, int depth, long cap) {
  long n = 1;
  for (int j = 0; j < s.dim; ++j) {
    if (!s.subdivided[j]) continue;
    long c = count_axis(b[j], static_cast<long>(depth) * s.level[j]);
    if (c > cap / std::max(n, 1L)) return cap + 1;
    n *= c;
  }
  return n;
}

long count_union_cells(const BoxUnion& U, const CoordScheme& s, int depth, long cap) {
  long total = 0;
  for (const Box& b : U.boxes()) {
    total += count_box_cells(b, s, depth, cap);
    if (total > cap) return cap + 1;
  }
  return total;
}

std::vector<CellData> enumerate_cells(const BoxUnion& U, const CoordScheme& s, int depth) {
  std::vector<CellData> out;
  std::vector<int> sub_coords;
  for (int j = 0; j < s.dim; ++j)
    if (s.subdivided[j]) sub_coords.push_back(j);

  for (const Box& b : U.boxes()) {
    std::vector<AxisCells> axes;
    axes.reserve(sub_coords.size());
    for (int j : sub_coords) axes.push_back(subdivide_axis(b[j], static_cast<long>(depth) * s.level[j]));
    std::vector<std::size_t> odo(sub_coords.size(), 0);
    while (true) {
      CellData c;
      c.cell = b;
      c.mid.reserve(sub_coords.size());
      c.sub.reserve(sub_coords.size());
      for (std::size_t t = 0; t < sub_coords.size(); ++t) {
        const Interval& iv = axes[t].cells[odo[t]];
        c.cell[sub_coords[t]] = iv;
        c.sub.push_back(iv);
        c.mid.push_back(iv.midpoint());
        c.idx.push_back(axes[t].idx[odo[t]]);
        c.full.push_back(axes[t].full[odo[t]]);
      }
      out.push_back(std::move(c));
      // odometer
      std::size_t t = 0;
      for (; t < sub_coords.size(); ++t) {
        if (++odo[t] < axes[t].cells.size()) break;
        odo[t] = 0;
      }
      if (t == sub_coords.size()) break;
    }
  }
  return out;
}

// --------------------------------------------------------- compiled evals

struct CFactor {
  std::uint8_t side;  // 0 = z, 1 = w
  int slot;           // position in the subdivided-coordinate list
  int exp;
};

struct CTerm {
  Rat coeff;
  std::vector<CFactor> factors;
};

struct CPoly {
  std::vector<CTerm> terms;

  bool empty() const { return terms.empty(); }

  Rat eval_point(const std::vector<Rat>* z, const std::vector<Rat>* w) const {
    Rat acc(0);
    for (const CTerm& t : terms) {
      Rat v = t.coeff;
      for (const CFactor& f : t.factors) {
        const Rat& x = (f.side == 0 ? (*z)[f.slot] : (*w)[f.slot]);
        v *= pow_rat(x, f.exp);
      }
      acc += v;
    }
    return acc;
  }

  Interval eval_box(const std::vector<Interval>* z, const std::vector<Interval>* w) const {
    Interval acc = Interval::point(Rat(0));
    for (const CTerm& t : terms) {
      Interval v = Interval::point(t.coeff);
      for (const CFactor& f : t.factors) {
        const Interval& x = (f.side == 0 ? (*z)[f.slot] : (*w)[f.slot]);
        v = v * pow(x, f.exp);
      }
      acc = acc + v;
    }
    return acc;
  }
};

CPoly compile_poly(const Polynomial& p, const std::vector<int>& slot_of_coord) {
  CPoly out;
  for (const auto& [mono, coeff] : p.terms()) {
    CTerm t;
    t.coeff = coeff;
    for (const auto& [v, e] : mono.factors) {
      CFactor f;
      f.side = (v.kind == Var::Kind::Z) ? 0 : 1;
      f.slot = slot_of_coord[v.index - 1];
      f.exp = e;
      if (f.slot < 0) throw std::logic_error("law variable on a non-subdivided coordinate");
      t.factors.push_back(f);
    }
    out.terms.push_back(std::move(t));
  }
  return out;
}

// -------------------------------------------------------- footprint maps

struct KeyHash {
  std::size_t operator()(const std::vector<long>& k) const {
    std::size_t h = 1469598103934665603ULL;
    for (long v : k) {
      h ^= static_cast<std::size_t>(v);
      h *= 1099511628211ULL;
    }
    return h;
  }
};

/// Fibers per footprint cell: exact interval boxes over the fiber
/// coordinates. The one-dimensional case (by far the hottest) keeps a
/// sorted merged interval list; higher-dimensional fibers are normalized
/// when measured.
struct Fiber {
  std::vector<Interval> merged;       // fiber dim == 1
  std::vector<IntervalBox> boxes;     // fiber dim >= 2
};

class FootMap {
 public:
  FootMap(const CoordScheme& s, int depth) : scheme_(s) {
    for (int j : s.lattice_coords) {
      long e = static_cast<long>(depth) * s.level[j];
      exps_.push_back(e);
      mesh_.push_back(dyadic(1, e));
    }
    sigma_.resize(mesh_.size());
    sigma_half_.assign(mesh_.size(), false);
    sigma_zero_.assign(mesh_.size(), false);
  }

  int nlat() const { return static_cast<int>(mesh_.size()); }
  const Rat& mesh(int t) const { return mesh_[t]; }

  /// Lattice shift, fixed by the first contribution.
  void ensure_sigma(int t, const Rat& sample_lo) {
    if (sigma_[t].has_value()) return;
    Rat scaled = rat_mul_2exp(sample_lo, exps_[t]);
    Rat frac = Rat(scaled - rat_floor(scaled));
    Rat sigma = rat_mul_2exp(frac, -exps_[t]);
    sigma_[t] = sigma;
    sigma_zero_[t] = (sigma == 0);
    sigma_half_[t] = (Rat(sigma * 2) == mesh_[t]);
  }

  bool sigma_half(int t) const { return sigma_half_[t]; }
  bool sigma_zero(int t) const { return sigma_zero_[t]; }

  /// Largest q with sigma + q*mesh <= x (slow path helper).
  long grid_floor(int t, const Rat& x) const {
    return to_long_checked(rat_floor(rat_mul_2exp(Rat(x - *sigma_[t]), exps_[t])));
  }
  long grid_ceil(int t, const Rat& x) const {
    return to_long_checked(rat_ceil(rat_mul_2exp(Rat(x - *sigma_[t]), exps_[t])));
  }

  Rat grid_point(int t, long q) const { return Rat(*sigma_[t] + rat_mul_2exp(Rat(q), -exps_[t])); }

  void insert(std::vector<long> key, IntervalBox fiber) {
    Fiber& f = cells_[std::move(key)];
    if (fiber.size() == 1) {
      merge_interval(f.merged, fiber[0]);
    } else {
      f.boxes.push_back(std::move(fiber));
    }
  }

  BoxUnion materialize(int dim) const {
    std::vector<Box> boxes;
    for (const auto& [key, f] : cells_) {
      Box base(dim);
      for (int t = 0; t < nlat(); ++t) {
        Rat lo = grid_point(t, key[t]);
        base[scheme_.lattice_coords[t]] = {lo, Rat(lo + mesh_[t])};
      }
      auto emit = [&](const IntervalBox& fib) {
        Box full = base;
        for (std::size_t t = 0; t < scheme_.fiber_coords.size(); ++t)
          full[scheme_.fiber_coords[t]] = fib[t];
        boxes.push_back(std::move(full));
      };
      if (scheme_.fiber_coords.size() == 1) {
        for (const Interval& iv : f.merged) emit({iv});
      } else if (!f.boxes.empty()) {
        BoxUnion norm = BoxUnion::normalized(static_cast<int>(scheme_.fiber_coords.size()), f.boxes);
        for (const Box& b : norm.boxes()) emit(b);
      }
    }
    return BoxUnion::from_disjoint(dim, std::move(boxes));
  }

 private:
  static void merge_interval(std::vector<Interval>& list, const Interval& iv) {
    // keep sorted by lo, disjoint, merging touching intervals
    auto it = std::lower_bound(list.begin(), list.end(), iv,
                               [](const Interval& a, const Interval& b) { return a.lo < b.lo; });
    std::size_t pos = static_cast<std::size_t>(it - list.begin());
    if (pos > 0 && list[pos - 1].hi >= iv.lo) --pos;
    Interval acc = iv;
    std::size_t end = pos;
    while (end < list.size() && list[end].lo <= acc.hi) {
      acc.lo = std::min(acc.lo, list[end].lo);
      acc.hi = std::max(acc.hi, list[end].hi);
      ++end;
    }
    if (pos == end) {
      list.insert(list.begin() + pos, acc);
    } else {
      list[pos] = acc;
      list.erase(list.begin() + pos + 1, list.begin() + end);
    }
  }

  Rat fiber_measure(const Fiber& f) const {
    if (scheme_.fiber_coords.size() == 1) {
      Rat m(0);
      for (const Interval& iv : f.merged) m += iv.width();
      return m;
    }
    if (f.boxes.empty()) return Rat(0);
    return BoxUnion::normalized(static_cast<int>(scheme_.fiber_coords.size()), f.boxes).volume();
  }

  const CoordScheme& scheme_;
  std::vector<long> exps_;
  std::vector<Rat> mesh_;
  std::vector<std::optional<Rat>> sigma_;
  std::vector<bool> sigma_half_, sigma_zero_;
  std::unordered_map<std::vector<long>, Fiber, KeyHash> cells_;
};

// ------------------------------------------------------------ depth build

struct DepthBuild {
  Rat inner_vol{0}, outer_vol{0};
  BoxUnion inner, outer;
  long pairs = 0;
};

DepthBuild build_depth(const BoxUnion& A, const BoxUnion& B, const ProductLaw& law,
                       const CoordScheme& s, int depth, long budget, bool want_inner,
                       bool want_outer) {
  DepthBuild out{.inner = BoxUnion(s.dim), .outer = BoxUnion(s.dim)};
  if (A.empty() || B.empty()) return out;

  long ca = count_union_cells(A, s, depth, budget);
  long cb = count_union_cells(B, s, depth, budget);
  if (ca > budget || cb > budget || ca > budget / std::max(cb, 1L))
    throw BudgetExceededError("cell-pair budget exceeded at depth " + std::to_string(depth));
  out.pairs = ca * cb;
  if (out.pairs > budget)
    throw BudgetExceededError("cell-pair budget exceeded at depth " + std::to_string(depth));

  std::vector<CellData> cellsA = enumerate_cells(A, s, depth);
  std::vector<CellData> cellsB = enumerate_cells(B, s, depth);

  std::vector<int> slot_of_coord(s.dim, -1);
  {
    int slot = 0;
    for (int j = 0; j < s.dim; ++j)
      if (s.subdivided[j]) slot_of_coord[j] = slot++;
  }
  std::vector<int> lat_slot;  // slot index of each lattice coordinate
  for (int j : s.lattice_coords) lat_slot.push_back(slot_of_coord[j]);

  // Full interval extension of each nonzero P_i, for the outer enclosure.
  std::vector<CPoly> outer_poly(s.dim);
  for (int i = 0; i < s.dim; ++i)
    if (!law.polys[i].is_zero()) outer_poly[i] = compile_poly(law.polys[i], slot_of_coord);

  FootMap inner_map(s, depth), outer_map(s, depth);
  const int nlat = inner_map.nlat();
  const int nfib = static_cast<int>(s.fiber_coords.size());

  std::vector<long> key(nlat);
  IntervalBox fiber(nfib);
  std::vector<std::pair<long, long>> ranges(nlat);

  std::map<Var, Polynomial> zsub;

  for (const CellData& a : cellsA) {
    // Specialize every nonzero P_i at z* (midpoints of a's subdivided
    // coordinates); the result is a polynomial in subdivided w variables.
    std::vector<CPoly> spec(s.dim);
    if (want_inner) {
      zsub.clear();
      for (int j = 0; j < s.dim; ++j)
        if (s.subdivided[j]) zsub[var_z(j + 1)] = Polynomial(a.mid[slot_of_coord[j]]);
      for (int i = 0; i < s.dim; ++i)
        if (!law.polys[i].is_zero()) spec[i] = compile_poly(law.polys[i].subst(zsub), slot_of_coord);
    }

    for (const CellData& b : cellsB) {
      if (want_inner) {
        bool ok = true;
        // Fiber coordinates first: carried ones use the midpoint +- (h -
        // delta) rule, free ones the shrunk interval sum.
        for (int t = 0; t < nfib && ok; ++t) {
          int j = s.fiber_coords[t];
          Rat fmid(0), delta(0);
          if (!law.polys[j].is_zero()) {
            fmid = spec[j].eval_point(nullptr, &b.mid);
            Interval enc = spec[j].eval_box(nullptr, &b.sub);
            delta = std::max(Rat(enc.hi - fmid), Rat(fmid - enc.lo));
          }
          if (s.subdivided[j]) {
            Rat h = rat_mul_2exp(b.sub[slot_of_coord[j]].width(), -1);
            if (delta >= h) {
              ok = false;
              break;
            }
            Rat c = Rat(a.mid[slot_of_coord[j]] + b.mid[slot_of_coord[j]] + fmid);
            Rat r = Rat(h - delta);
            fiber[t] = {Rat(c - r), Rat(c + r)};
          } else {
            Interval sum = a.cell[j] + b.cell[j];
            Interval sh{Rat(sum.lo + fmid + delta), Rat(sum.hi + fmid - delta)};
            if (!(sh.lo <= sh.hi)) {
              ok = false;
              break;
            }
            fiber[t] = sh;
          }
        }
        // Lattice coordinates: exact translation z*_j + cell, rounded
        // inward onto the map's shifted grid (a no-op for aligned cells).
        for (int t = 0; t < nlat && ok; ++t) {
          int j = s.lattice_coords[t];
          int slot = lat_slot[t];
          Rat lo = Rat(a.mid[slot] + b.sub[slot].lo);
          inner_map.ensure_sigma(t, lo);
          if (a.full[slot] && b.full[slot] && inner_map.sigma_half(t)) {
            key[t] = a.idx[slot] + b.idx[slot];
          } else {
            Rat hi = Rat(a.mid[slot] + b.sub[slot].hi);
            long qlo = inner_map.grid_ceil(t, lo);
            long qhi = inner_map.grid_floor(t, hi);
            if (qlo > qhi - 1) {
              ok = false;
              break;
            }
            key[t] = qlo;
          }
        }
        if (ok) inner_map.insert(key, fiber);
      }

      if (want_outer) {
        // Interval enclosure over the whole cell pair.
        for (int t = 0; t < nfib; ++t) {
          int j = s.fiber_coords[t];
          Interval sum = a.cell[j] + b.cell[j];
          if (!outer_poly[j].empty()) sum = sum + outer_poly[j].eval_box(&a.sub, &b.sub);
          fiber[t] = sum;
        }
        for (int t = 0; t < nlat; ++t) {
          int slot = lat_slot[t];
          Interval sum = a.sub[slot] + b.sub[slot];
          outer_map.ensure_sigma(t, sum.lo);
          if (a.full[slot] && b.full[slot] && outer_map.sigma_zero(t)) {
            ranges[t] = {a.idx[slot] + b.idx[slot], a.idx[slot] + b.idx[slot] + 2};
          } else {
            long qlo = outer_map.grid_floor(t, sum.lo);
            long qhi = outer_map.grid_ceil(t, sum.hi);
            if (qhi == qlo) qhi = qlo + 1;  // degenerate slab still needs cover
            ranges[t] = {qlo, qhi};
          }
        }
        // Mark the cartesian product of the covered index ranges.
        for (int t = 0; t < nlat; ++t) key[t] = ranges[t].first;
        while (true) {
          outer_map.insert(key, fiber);
          int t = 0;
          for (; t < nlat; ++t) {
            if (++key[t] < ranges[t].second) break;
            key[t] = ranges[t].first;
          }
          if (t == nlat) break;
          if (nlat == 0) break;
        }
      }
    }
  }

  if (want_inner) {
    out.inner = inner_map.materialize(s.dim);
    out.inner_vol = out.inner.volume();
  }
  if (want_outer) {
    out.outer = outer_map.materialize(s.dim);
    out.outer_vol = out.outer.volume();
  }
  return out;
}

}  // namespace

CoordScheme coord_scheme(const ProductLaw& law) {
  CoordScheme s;
  s.dim = law.dim;
  s.level.assign(law.dim, 0);
  // Backward pass: a coordinate's level exceeds the level of every
  // coordinate whose F reads it. Well-defined because F_i only reads
  // coordinates below i.
  for (int i = law.dim - 1; i >= 0; --i) {
    for (const Var& v : law.polys[i].vars()) {
      int j = v.index - 1;
      s.level[j] = std::max(s.level[j], s.level[i] + 1);
    }
  }
  s.subdivided.resize(law.dim);
  s.lattice.resize(law.dim);
  for (int j = 0; j < law.dim; ++j) {
    s.subdivided[j] = s.level[j] > 0;
    s.lattice[j] = s.subdivided[j] && law.polys[j].is_zero();
    if (s.lattice[j])
      s.lattice_coords.push_back(j);
    else
      s.fiber_coords.push_back(j);
  }
  return s;
}

std::vector<Box> scheme_cells(const Box& box, const ProductLaw& law, int depth) {
  CoordScheme s = coord_scheme(law);
  BoxUnion single = BoxUnion::from_disjoint(law.dim, {box});
  std::vector<CellData> cells = enumerate_cells(single, s, depth);
  std::vector<Box> out;
  out.reserve(cells.size());
  for (CellData& c : cells) out.push_back(std::move(c.cell));
  return out;
}

BoxUnion outer_product_set(const BoxUnion& A, const BoxUnion& B, const ProductLaw& law, int depth,
                           long budget) {
  if (A.dim() != law.dim || B.dim() != law.dim)
    throw DimensionMismatchError("outer_product_set: set dimension does not match the law");
  CoordScheme s = coord_scheme(law);
  return build_depth(A, B, law, s, depth, budget, false, true).outer;
}

BoxUnion inner_product_set(const BoxUnion& A, const BoxUnion& B, const ProductLaw& law, int depth,
                           long budget) {
  if (A.dim() != law.dim || B.dim() != law.dim)
    throw DimensionMismatchError("inner_product_set: set dimension does not match the law");
  CoordScheme s = coord_scheme(law);
  return build_depth(A, B, law, s, depth, budget, true, false).inner;
}

BoundsRefiner::BoundsRefiner(BoxUnion A, BoxUnion B, const ProductLaw& law, long budget)
    : A_(std::move(A)),
      B_(std::move(B)),
      law_(law),
      scheme_(coord_scheme(law)),
      budget_(budget),
      inner_(A_.dim()),
      outer_(A_.dim()) {
  if (A_.dim() != law.dim || B_.dim() != law.dim)
    throw DimensionMismatchError("bounds refiner: set dimension does not match the law");
}

bool BoundsRefiner::can_step() const {
  if (next_depth_ == 0) return true;
  long ca = count_union_cells(A_, scheme_, next_depth_, budget_);
  long cb = count_union_cells(B_, scheme_, next_depth_, budget_);
  if (ca > budget_ || cb > budget_) return false;
  if (cb != 0 && ca > (budget_ - pairs_used_) / cb) return false;
  return true;
}

void BoundsRefiner::step() {
  long remaining = next_depth_ == 0 ? std::numeric_limits<long>::max() : budget_ - pairs_used_;
  DepthBuild d = build_depth(A_, B_, law_, scheme_, next_depth_, remaining, true, true);
  pairs_used_ += d.pairs;
  if (!computed_ || d.inner_vol > lower_) {
    lower_ = d.inner_vol;
    inner_ = std::move(d.inner);
  }
  if (!computed_ || d.outer_vol < upper_) {
    upper_ = d.outer_vol;
    outer_ = std::move(d.outer);
  }
  computed_ = true;
  ++next_depth_;
}

ProductSetApprox BoundsRefiner::snapshot(BoundsStatus status) const {
  ProductSetApprox out{.inner = inner_, .outer = outer_};
  out.bounds.lower = lower_;
  out.bounds.upper = upper_;
  out.bounds.depth = next_depth_ - 1;
  out.bounds.gap = Rat(upper_ - lower_);
  out.status = status;
  out.cell_pairs = pairs_used_;
  return out;
}

ProductSetApprox product_volume_bounds(const BoxUnion& A, const BoxUnion& B, const ProductLaw& law,
                                       const Rat& tol, int max_depth, long budget) {
  if (tol <= 0) throw std::invalid_argument("product_volume_bounds: tolerance must be positive");
  BoundsRefiner r(A, B, law, budget);
  while (true) {
    if (!r.can_step()) return r.snapshot(BoundsStatus::BudgetExceeded);
    r.step();
    Rat gap = Rat(r.upper() - r.lower());
    if (gap <= Rat(tol * r.upper())) return r.snapshot(BoundsStatus::Converged);
    if (r.next_depth() > max_depth) return r.snapshot(BoundsStatus::MaxDepthReached);
  }
}

}  // namespace nilbm
