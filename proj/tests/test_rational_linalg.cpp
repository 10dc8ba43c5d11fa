#include <doctest.h>

#include "nilbm/linalg.hpp"
#include "nilbm/rational.hpp"

using namespace nilbm;

TEST_CASE("rational parsing and printing") {
  CHECK(parse_rat("3/6") == Rat(1, 2));
  CHECK(parse_rat("-2/4") == Rat(-1, 2));
  CHECK(parse_rat("7") == 7);
  CHECK(rat_str(Rat(8)) == "8");
  CHECK(rat_str(Rat(-1, 3)) == "-1/3");
  CHECK_THROWS_AS(parse_rat("1/0"), ParseError);
  CHECK_THROWS_AS(parse_rat("a/b"), ParseError);
  CHECK_THROWS_AS(parse_rat(""), ParseError);
  CHECK_THROWS_AS(parse_rat("1.5"), ParseError);
}

TEST_CASE("pow, floor, ceil") {
  CHECK(pow_rat(Rat(1, 2), 4) == Rat(1, 16));
  CHECK(pow_rat(Rat(2), -3) == Rat(1, 8));
  CHECK(pow_rat(Rat(-2, 3), 3) == Rat(-8, 27));
  CHECK(rat_floor(Rat(7, 2)) == 3);
  CHECK(rat_floor(Rat(-7, 2)) == -4);
  CHECK(rat_ceil(Rat(7, 2)) == 4);
  CHECK(rat_ceil(Rat(-7, 2)) == -3);
}

TEST_CASE("rational m-th roots and brackets") {
  CHECK(*rational_mth_root(Rat(8, 27), 3) == Rat(2, 3));
  CHECK(!rational_mth_root(Rat(2), 2).has_value());
  CHECK(*rational_mth_root(Rat(0), 5) == 0);

  auto [lo, hi] = mth_root_bracket(Rat(2), 2, 30);
  CHECK(lo < hi);
  CHECK(Rat(lo * lo) <= 2);
  CHECK(Rat(hi * hi) >= 2);
  CHECK(Rat(hi - lo) <= Rat(1, 1L << 30));

  auto [el, eh] = mth_root_bracket(Rat(8), 3, 10);
  CHECK(el == 2);
  CHECK(eh == 2);
}

TEST_CASE("rref is canonical and deterministic") {
  Mat rows = {{Rat(0), Rat(2), Rat(4)}, {Rat(1), Rat(1), Rat(1)}, {Rat(1), Rat(3), Rat(5)}};
  Rref r = rref(rows);
  CHECK(r.pivots == std::vector<int>{0, 1});
  CHECK(r.basis[0] == RatVec{Rat(1), Rat(0), Rat(-1)});
  CHECK(r.basis[1] == RatVec{Rat(0), Rat(1), Rat(2)});
  CHECK(in_span(r, RatVec{Rat(2), Rat(4), Rat(6)}));
  CHECK(!in_span(r, RatVec{Rat(0), Rat(0), Rat(1)}));
}

TEST_CASE("inverse and products") {
  Mat m = {{Rat(2), Rat(1)}, {Rat(1), Rat(1)}};
  Mat inv = inverse(m);
  CHECK(mat_mul(m, inv) == identity_mat(2));
  CHECK_THROWS_AS(inverse(Mat{{Rat(1), Rat(2)}, {Rat(2), Rat(4)}}), std::domain_error);
  CHECK(mat_vec(m, RatVec{Rat(3), Rat(4)}) == RatVec{Rat(10), Rat(7)});
}
