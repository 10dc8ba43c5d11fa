#pragma once

#include <vector>

#include "nilbm/rational.hpp"

namespace nilbm {

/// Closed interval with exact rational endpoints. With exact arithmetic the
/// usual outward-rounding concerns disappear; enclosures are exact images of
/// the monomial-wise extension.
struct Interval {
  Rat lo, hi;

  Interval() : lo(0), hi(0) {}
  Interval(Rat l, Rat h) : lo(std::move(l)), hi(std::move(h)) {}
  static Interval point(const Rat& x) { return {x, x}; }

  bool valid() const { return lo <= hi; }
  bool degenerate() const { return lo == hi; }
  Rat width() const { return Rat(hi - lo); }
  Rat midpoint() const { return Rat((lo + hi) / 2); }
  bool contains(const Rat& x) const { return lo <= x && x <= hi; }
  bool contains(const Interval& o) const { return lo <= o.lo && o.hi <= hi; }

  bool operator==(const Interval&) const = default;
};

Interval operator+(const Interval& a, const Interval& b);
Interval operator-(const Interval& a, const Interval& b);
Interval operator-(const Interval& a);
Interval operator*(const Interval& a, const Interval& b);
Interval operator*(const Rat& c, const Interval& a);
Interval pow(const Interval& a, int e);
Interval hull(const Interval& a, const Interval& b);

/// Axis-aligned box: one interval per coordinate.
using IntervalBox = std::vector<Interval>;

}  // namespace nilbm
