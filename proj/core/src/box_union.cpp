#include "nilbm/box_union.hpp"

#include <algorithm>
#include <stdexcept>

#include "nilbm/rational.hpp"

namespace nilbm {

namespace {

bool box_lex_less(const Box& a, const Box& b) {
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].lo != b[i].lo) return a[i].lo < b[i].lo;
    if (a[i].hi != b[i].hi) return a[i].hi < b[i].hi;
  }
  return false;
}

void check_box(const Box& b, int dim) {
  if (static_cast<int>(b.size()) != dim) throw std::invalid_argument("box has wrong dimension");
  for (const Interval& iv : b)
    if (!(iv.lo <= iv.hi)) throw std::invalid_argument("box interval with lo > hi");
}

/// Disjoint decomposition of the positive-volume part. Recursion over
/// coordinates: slice at the distinct endpoints, recurse on the boxes
/// covering each slab, then coalesce adjacent slabs with identical tails so
/// the output is canonical (a function of the point set alone).
std::vector<Box> normalize_rec(const std::vector<Box>& boxes, std::size_t coord) {
  if (boxes.empty()) return {};
  const std::size_t dim = boxes[0].size();
  if (coord == dim) return {Box{}};

  std::vector<Rat> cuts;
  cuts.reserve(boxes.size() * 2);
  for (const Box& b : boxes) {
    cuts.push_back(b[coord].lo);
    cuts.push_back(b[coord].hi);
  }
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

  struct Slab {
    Rat lo, hi;
    std::vector<Box> tails;  // normalized boxes over coords coord+1..
  };
  std::vector<Slab> slabs;
  for (std::size_t s = 0; s + 1 < cuts.size(); ++s) {
    const Rat& x1 = cuts[s];
    const Rat& x2 = cuts[s + 1];
    std::vector<Box> active;
    for (const Box& b : boxes)
      if (b[coord].lo <= x1 && b[coord].hi >= x2) active.push_back(b);
    if (active.empty()) continue;
    std::vector<Box> tails = normalize_rec(active, coord + 1);
    if (tails.empty()) continue;
    std::sort(tails.begin(), tails.end(), box_lex_less);
    if (!slabs.empty() && slabs.back().hi == x1 && slabs.back().tails == tails) {
      slabs.back().hi = x2;
    } else {
      slabs.push_back({x1, x2, std::move(tails)});
    }
  }

  std::vector<Box> out;
  for (const Slab& s : slabs)
    for (const Box& t : s.tails) {
      Box full;
      full.reserve(dim - coord);
      full.emplace_back(s.lo, s.hi);
      for (const Interval& iv : t) full.push_back(iv);
      out.push_back(std::move(full));
    }
  return out;
}

}  // namespace

Rat box_volume(const Box& b) {
  Rat v(1);
  for (const Interval& iv : b) v *= iv.width();
  return v;
}

bool box_is_degenerate(const Box& b) {
  for (const Interval& iv : b)
    if (iv.degenerate()) return true;
  return false;
}

BoxUnion BoxUnion::normalized(int dim, std::vector<Box> boxes) {
  BoxUnion out(dim);
  std::vector<Box> positive, degenerate;
  for (Box& b : boxes) {
    check_box(b, dim);
    if (box_is_degenerate(b))
      degenerate.push_back(std::move(b));
    else
      positive.push_back(std::move(b));
  }
  std::vector<Box> solid = normalize_rec(positive, 0);
  std::sort(solid.begin(), solid.end(), box_lex_less);
  std::sort(degenerate.begin(), degenerate.end(), box_lex_less);
  degenerate.erase(std::unique(degenerate.begin(), degenerate.end()), degenerate.end());
  out.boxes_ = std::move(solid);
  out.boxes_.insert(out.boxes_.end(), degenerate.begin(), degenerate.end());
  return out;
}

BoxUnion BoxUnion::from_disjoint(int dim, std::vector<Box> boxes) {
  BoxUnion out(dim);
  std::vector<Box> positive, degenerate;
  for (Box& b : boxes) {
    check_box(b, dim);
    if (box_is_degenerate(b))
      degenerate.push_back(std::move(b));
    else
      positive.push_back(std::move(b));
  }
  std::sort(positive.begin(), positive.end(), box_lex_less);
  std::sort(degenerate.begin(), degenerate.end(), box_lex_less);
  out.boxes_ = std::move(positive);
  out.boxes_.insert(out.boxes_.end(), degenerate.begin(), degenerate.end());
  return out;
}

Rat BoxUnion::volume() const {
  Rat v(0);
  for (const Box& b : boxes_) v += box_volume(b);
  return v;
}

BoxUnion minkowski_sum(const BoxUnion& A, const BoxUnion& B) {
  if (A.dim() != B.dim()) throw std::invalid_argument("minkowski_sum: dimension mismatch");
  std::vector<Box> sums;
  sums.reserve(A.boxes().size() * B.boxes().size());
  for (const Box& a : A.boxes())
    for (const Box& b : B.boxes()) {
      Box s(A.dim());
      for (int i = 0; i < A.dim(); ++i) s[i] = a[i] + b[i];
      sums.push_back(std::move(s));
    }
  return BoxUnion::normalized(A.dim(), std::move(sums));
}

namespace {

bool interiors_intersect(const Box& a, const Box& b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (std::max(a[i].lo, b[i].lo) >= std::min(a[i].hi, b[i].hi)) return false;
  return true;
}

/// a \ b as up to 2*dim boxes (axis sweep).
void subtract_box(const Box& a, const Box& b, std::vector<Box>& out) {
  if (!interiors_intersect(a, b)) {
    out.push_back(a);
    return;
  }
  Box rest = a;
  for (std::size_t c = 0; c < a.size(); ++c) {
    if (rest[c].lo < b[c].lo) {
      Box piece = rest;
      piece[c] = {rest[c].lo, b[c].lo};
      out.push_back(std::move(piece));
      rest[c].lo = b[c].lo;
    }
    if (b[c].hi < rest[c].hi) {
      Box piece = rest;
      piece[c] = {b[c].hi, rest[c].hi};
      out.push_back(std::move(piece));
      rest[c].hi = b[c].hi;
    }
  }
}

}  // namespace

BoxUnion difference(const BoxUnion& A, const BoxUnion& B) {
  if (A.dim() != B.dim()) throw std::invalid_argument("difference: dimension mismatch");
  std::vector<Box> work;
  for (const Box& a : A.boxes())
    if (!box_is_degenerate(a)) work.push_back(a);
  for (const Box& b : B.boxes()) {
    if (box_is_degenerate(b)) continue;
    std::vector<Box> next;
    for (const Box& a : work) subtract_box(a, b, next);
    work = std::move(next);
    if (work.empty()) break;
  }
  return BoxUnion::normalized(A.dim(), std::move(work));
}

bool subset(const BoxUnion& A, const BoxUnion& B) { return difference(A, B).empty(); }

bool boxes_intersect(const Box& a, const Box& b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (std::max(a[i].lo, b[i].lo) > std::min(a[i].hi, b[i].hi)) return false;
  return true;
}

BoxUnion cross(const BoxUnion& A, const BoxUnion& B) {
  std::vector<Box> boxes;
  boxes.reserve(A.boxes().size() * B.boxes().size());
  for (const Box& a : A.boxes())
    for (const Box& b : B.boxes()) {
      Box c = a;
      c.insert(c.end(), b.begin(), b.end());
      boxes.push_back(std::move(c));
    }
  // Disjointness is preserved by products of disjoint families.
  return BoxUnion::from_disjoint(A.dim() + B.dim(), std::move(boxes));
}

BoxUnion dilate(const BoxUnion& U, const std::vector<int>& weights, const Rat& lambda) {
  if (lambda <= 0) throw std::invalid_argument("dilate: lambda must be positive");
  if (weights.size() != static_cast<std::size_t>(U.dim()))
    throw std::invalid_argument("dilate: weights dimension mismatch");
  std::vector<Box> boxes;
  boxes.reserve(U.boxes().size());
  for (const Box& b : U.boxes()) {
    Box s(U.dim());
    for (int i = 0; i < U.dim(); ++i) {
      Rat f = pow_rat(lambda, weights[i]);
      s[i] = {Rat(b[i].lo * f), Rat(b[i].hi * f)};
    }
    boxes.push_back(std::move(s));
  }
  return BoxUnion::from_disjoint(U.dim(), std::move(boxes));
}

Box bounding_box(const BoxUnion& U) {
  if (U.empty()) throw std::invalid_argument("bounding_box of empty union");
  Box out = U.boxes().front();
  for (const Box& b : U.boxes())
    for (int i = 0; i < U.dim(); ++i) out[i] = hull(out[i], b[i]);
  return out;
}

}  // namespace nilbm
