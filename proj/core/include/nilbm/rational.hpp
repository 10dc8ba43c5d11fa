#pragma once

#include <gmpxx.h>

#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace nilbm {

/// Exact rational scalar used throughout the library. All arithmetic that
/// feeds a certificate stays in this type; doubles never enter a verdict.
using Rat = mpq_class;
using Int = mpz_class;

using RatVec = std::vector<Rat>;

struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Parses "p/q" or "p" (q > 0 after canonicalization). Throws ParseError.
Rat parse_rat(const std::string& text);

/// Canonical "p/q" (or "p" when the denominator is 1).
std::string rat_str(const Rat& q);

/// Decimal rendering to `digits` significant digits. Advisory only; the
/// rational strings are the authoritative values in every report.
std::string rat_decimal(const Rat& q, int digits = 12);

/// x^e for integer e (e < 0 requires x != 0).
Rat pow_rat(const Rat& x, long e);

Rat rat_abs(const Rat& x);

/// floor(x) as an exact integer.
Int rat_floor(const Rat& x);
Int rat_ceil(const Rat& x);

/// Exact rational m-th root when one exists.
std::optional<Rat> rational_mth_root(const Rat& x, unsigned m);

/// Directed bracket lo <= x^(1/m) <= hi with hi - lo <= 1/(den(x)*2^t).
std::pair<Rat, Rat> mth_root_bracket(const Rat& x, unsigned m, unsigned t);

}  // namespace nilbm
