#pragma once

#include <cstdint>

#include "nilbm/rational.hpp"

namespace nilbm {

/// SplitMix64 generator. Hand-rolled so that seeded suites produce the same
/// stream on every platform; std:: distributions are not portable.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  /// Uniform integer in [lo, hi] inclusive.
  std::int64_t uniform(std::int64_t lo, std::int64_t hi) {
    auto span = static_cast<std::uint64_t>(hi - lo) + 1;
    return lo + static_cast<std::int64_t>(next_u64() % span);
  }

  /// Uniform rational k/den with k/den in [lo, hi] and lo, hi integers.
  Rat rat_on_grid(std::int64_t lo, std::int64_t hi, std::int64_t den) {
    Rat out(uniform(lo * den, hi * den), den);
    out.canonicalize();
    return out;
  }

 private:
  std::uint64_t state_;
};

}  // namespace nilbm
