#include <doctest.h>

#include "nilbm/product_law.hpp"
#include "nilbm/rng.hpp"
#include "oracle.hpp"

using namespace nilbm;

namespace {

ProductLaw heis_law() { return derive_bch(catalog("heisenberg(1)")); }

Polynomial half_z1w2_minus_z2w1() {
  Polynomial p = Polynomial::monomial(Rat(1, 2), Monomial{{{var_z(1), 1}, {var_w(2), 1}}});
  return p + Polynomial::monomial(Rat(-1, 2), Monomial{{{var_z(2), 1}, {var_w(1), 1}}});
}

}  // namespace

TEST_CASE("bch: abelian law is the plain sum") {
  ProductLaw law = derive_bch(catalog("abelian(4)"));
  for (const Polynomial& p : law.polys) CHECK(p.is_zero());
}

TEST_CASE("bch: Heisenberg law is z+w+(0,0,(z1 w2 - z2 w1)/2) exactly") {
  ProductLaw law = heis_law();
  CHECK(law.polys[0].is_zero());
  CHECK(law.polys[1].is_zero());
  CHECK(law.polys[2] == half_z1w2_minus_z2w1());
  CHECK(law.n1 == 1);
}

TEST_CASE("bch: engel matches the independent depth-3 expansion") {
  StructureConstants sc = catalog("engel");
  ProductLaw law = derive_bch(sc);
  ProductLaw expect = oracle::bch_depth3(sc);
  REQUIRE(law.dim == expect.dim);
  for (int i = 0; i < law.dim; ++i) {
    CAPTURE(i);
    CHECK(law.polys[i] == expect.polys[i]);
  }
  // And against the fully hand-written engel coefficients: P4 =
  // (z1 w3 - z3 w1)/2 + (z1 - w1)(z1 w2 - z2 w1)/12.
  Polynomial p4 = Polynomial::monomial(Rat(1, 2), Monomial{{{var_z(1), 1}, {var_w(3), 1}}}) +
                  Polynomial::monomial(Rat(-1, 2), Monomial{{{var_z(3), 1}, {var_w(1), 1}}});
  Polynomial z1 = Polynomial::variable(var_z(1)), w1 = Polynomial::variable(var_w(1));
  p4 = p4 + (z1 - w1) * half_z1w2_minus_z2w1() * Rat(1, 6);
  CHECK(law.polys[3] == p4);
}

TEST_CASE("bch: free23 matches the independent depth-3 expansion") {
  StructureConstants sc = catalog("free23");
  ProductLaw law = derive_bch(sc);
  ProductLaw expect = oracle::bch_depth3(sc);
  for (int i = 0; i < law.dim; ++i) {
    CAPTURE(i);
    CHECK(law.polys[i] == expect.polys[i]);
  }
}

TEST_CASE("bch output is triangular and first-layer flat for every catalog group") {
  for (const char* name : {"abelian(3)", "heisenberg(1)", "heisenberg(2)", "engel", "free23"}) {
    CAPTURE(name);
    StructureConstants sc = catalog(name);
    ProductLaw law = derive_bch(sc);
    CHECK(verify_triangular(law).pass);
    CHECK(verify_first_layer(law, law.n1).pass);
    CHECK(verify_identity_at_zero(law));
  }
}

TEST_CASE("verify_triangular reports the offending variable") {
  std::vector<Polynomial> polys(2);
  polys[0] = Polynomial(Rat(0));
  polys[1] = Polynomial::variable(var_z(2));  // depends on its own coordinate
  CHECK_THROWS_AS(make_custom_law(2, polys), std::invalid_argument);

  ProductLaw law;  // bypass the constructor to exercise the checker
  law.dim = 2;
  law.polys = polys;
  TriangularReport r = verify_triangular(law);
  CHECK(!r.pass);
  CHECK(r.coordinate == 2);
  CHECK(r.variable == "z2");
}

TEST_CASE("verify_first_layer flags a nonzero prefix coordinate") {
  ProductLaw law;
  law.dim = 2;
  law.polys = {Polynomial(Rat(1)), Polynomial()};
  FirstLayerReport r = verify_first_layer(law, 1);
  CHECK(!r.pass);
  CHECK(r.coordinate == 1);
}

TEST_CASE("eval: Heisenberg example and inverses") {
  ProductLaw law = heis_law();
  RatVec p = eval(law, {Rat(1), Rat(0), Rat(0)}, {Rat(0), Rat(1), Rat(0)});
  CHECK(p == RatVec{Rat(1), Rat(1), Rat(1, 2)});

  Rng rng(7);
  for (int t = 0; t < 20; ++t) {
    RatVec z(3), neg(3);
    for (int i = 0; i < 3; ++i) {
      z[i] = rng.rat_on_grid(-2, 2, 8);
      neg[i] = Rat(-z[i]);
    }
    CHECK(eval(law, z, neg) == RatVec{Rat(0), Rat(0), Rat(0)});
  }

  ProductLaw ab = derive_bch(catalog("abelian(2)"));
  CHECK(eval(ab, {Rat(1), Rat(2)}, {Rat(3), Rat(5)}) == RatVec{Rat(4), Rat(7)});
  CHECK_THROWS_AS(eval(ab, {Rat(1)}, {Rat(1), Rat(2)}), DimensionMismatchError);
}

TEST_CASE("eval_interval: degenerate boxes reduce to eval") {
  ProductLaw law = heis_law();
  RatVec z{Rat(1, 3), Rat(-1, 2), Rat(2)}, w{Rat(0), Rat(1, 7), Rat(-1)};
  IntervalBox Z, W;
  for (int i = 0; i < 3; ++i) {
    Z.push_back(Interval::point(z[i]));
    W.push_back(Interval::point(w[i]));
  }
  IntervalBox img = eval_interval(law, Z, W);
  RatVec exact = eval(law, z, w);
  for (int i = 0; i < 3; ++i) {
    CHECK(img[i].lo == exact[i]);
    CHECK(img[i].hi == exact[i]);
  }
}

TEST_CASE("eval_interval: Heisenberg unit cubes enclose [-1/2, 5/2] vertically") {
  ProductLaw law = heis_law();
  IntervalBox Z(3, Interval{Rat(0), Rat(1)}), W = Z;
  IntervalBox img = eval_interval(law, Z, W);
  CHECK(img[0] == Interval{Rat(0), Rat(2)});
  CHECK(img[1] == Interval{Rat(0), Rat(2)});
  CHECK(img[2] == Interval{Rat(-1, 2), Rat(5, 2)});
}

TEST_CASE("eval_interval is a sound enclosure on random points") {
  ProductLaw law = derive_bch(catalog("engel"));
  IntervalBox Z{{Rat(-1), Rat(1)}, {Rat(0), Rat(2)}, {Rat(-1, 2), Rat(1, 2)}, {Rat(0), Rat(1)}};
  IntervalBox W{{Rat(0), Rat(1)}, {Rat(-1), Rat(0)}, {Rat(1), Rat(2)}, {Rat(-1), Rat(1)}};
  IntervalBox img = eval_interval(law, Z, W);
  Rng rng(11);
  for (int t = 0; t < 10000; ++t) {
    RatVec z(4), w(4);
    for (int i = 0; i < 4; ++i) {
      // random rationals inside the boxes (denominator 16 grid)
      Rat zl = Z[i].lo, wl = W[i].lo;
      z[i] = Rat(zl + Rat(rng.uniform(0, 16), 16) * Z[i].width());
      w[i] = Rat(wl + Rat(rng.uniform(0, 16), 16) * W[i].width());
    }
    RatVec p = eval(law, z, w);
    for (int i = 0; i < 4; ++i) {
      CHECK(img[i].contains(p[i]));
    }
  }
}

TEST_CASE("eval_interval: subdividing never enlarges the enclosure") {
  ProductLaw law = heis_law();
  IntervalBox Z(3, Interval{Rat(0), Rat(1)}), W = Z;
  IntervalBox whole = eval_interval(law, Z, W);
  for (int half = 0; half < 2; ++half) {
    IntervalBox Zh = Z;
    Zh[0] = half == 0 ? Interval{Rat(0), Rat(1, 2)} : Interval{Rat(1, 2), Rat(1)};
    IntervalBox img = eval_interval(law, Zh, W);
    for (int i = 0; i < 3; ++i) CHECK(whole[i].contains(img[i]));
  }
}

TEST_CASE("dilate: weights scale coordinates exactly") {
  StratifyResult s = stratify(catalog("heisenberg(1)"));
  DilationSpec spec = dilation_spec(*s.stratification);
  CHECK(dilate(spec, Rat(1), {Rat(5), Rat(-3), Rat(7)}) == RatVec{Rat(5), Rat(-3), Rat(7)});
  CHECK(dilate(spec, Rat(2), {Rat(1), Rat(1), Rat(1)}) == RatVec{Rat(2), Rat(2), Rat(4)});
  CHECK_THROWS_AS(dilate(spec, Rat(0), {Rat(1), Rat(1), Rat(1)}), NonpositiveLambdaError);
  // determinant of the linear map = product of the diagonal = lambda^Q
  Rat det(1);
  for (int w : spec.weights) det *= pow_rat(Rat(2), w);
  CHECK(det == pow_rat(Rat(2), spec.Q));
  CHECK(det == 16);
}

TEST_CASE("dilation automorphism: symbolic identity for catalog groups") {
  for (const char* name : {"abelian(3)", "heisenberg(1)", "heisenberg(2)", "engel", "free23"}) {
    CAPTURE(name);
    StructureConstants sc = catalog(name);
    ProductLaw law = derive_bch(sc);
    StratifyResult s = stratify(sc);
    REQUIRE(s.ok());
    CHECK(verify_dilation_automorphism(law, dilation_spec(*s.stratification)).pass);
  }
}

TEST_CASE("dilation automorphism: non-group law fails with weights (1,1)") {
  std::vector<Polynomial> polys(2);
  polys[1] = Polynomial::monomial(Rat(1), Monomial{{{var_z(1), 1}, {var_w(1), 1}}});
  ProductLaw law = make_custom_law(2, polys);
  DilationSpec spec{{1, 1}, 2};
  DilationAutomorphismReport r = verify_dilation_automorphism(law, spec);
  CHECK(!r.pass);
  CHECK(r.coordinate == 2);
}

TEST_CASE("associativity: symbolic for Heisenberg and abelian") {
  AssociativityReport h = verify_associativity(heis_law(), 0);
  CHECK(h.pass);
  CHECK(h.symbolic);
  AssociativityReport a = verify_associativity(derive_bch(catalog("abelian(3)")), 0);
  CHECK(a.pass);
  CHECK(a.symbolic);
}

TEST_CASE("associativity: sampled triples for engel and free23") {
  for (const char* name : {"engel", "free23"}) {
    CAPTURE(name);
    AssociativityReport r = verify_associativity(derive_bch(catalog(name)), 1000);
    CHECK(r.pass);
    CHECK(!r.symbolic);
    CHECK(r.samples_checked == 1000);
  }
}

TEST_CASE("associativity: truncating engel at depth 2 is caught") {
  // Deliberate fault injection: keep only the degree-2 part of the engel law.
  ProductLaw law = derive_bch(catalog("engel"));
  ProductLaw truncated = law;
  for (Polynomial& p : truncated.polys) {
    Polynomial keep;
    for (const auto& [m, c] : p.terms())
      if (m.total_degree() <= 2) keep = keep + Polynomial::monomial(c, m);
    p = keep;
  }
  AssociativityReport r = verify_associativity(truncated, 1000);
  CHECK(!r.pass);
}

TEST_CASE("translation jacobian is 1 for triangular laws") {
  CHECK(translation_jacobian(heis_law(), {Rat(3), Rat(-2), Rat(9)}) == 1);
  CHECK(translation_jacobian(derive_bch(catalog("abelian(2)")), {Rat(1), Rat(2)}) == 1);
  std::vector<Polynomial> polys(2);
  polys[1] = Polynomial::monomial(Rat(5), Monomial{{{var_z(1), 1}, {var_w(1), 2}}});
  CHECK(translation_jacobian(make_custom_law(2, polys), {Rat(0), Rat(0)}) == 1);
}

TEST_CASE("freeze_first_coordinate produces the shifted-down law") {
  // F3 = z2 w2 in dimension 3 reduces to F'2 = z1 w1 in dimension 2,
  // independently of the frozen values.
  std::vector<Polynomial> polys(3);
  polys[2] = Polynomial::monomial(Rat(1), Monomial{{{var_z(2), 1}, {var_w(2), 1}}});
  ProductLaw law = make_custom_law(3, polys);
  ProductLaw reduced = freeze_first_coordinate(law, Rat(7), Rat(-2));
  CHECK(reduced.dim == 2);
  CHECK(reduced.polys[0].is_zero());
  CHECK(reduced.polys[1] ==
        Polynomial::monomial(Rat(1), Monomial{{{var_z(1), 1}, {var_w(1), 1}}}));

  // Heisenberg reduces to a law with constant F'2 depending on the slice.
  ProductLaw hred = freeze_first_coordinate(heis_law(), Rat(1, 2), Rat(1, 3));
  CHECK(hred.dim == 2);
  CHECK(hred.polys[0].is_zero());
  // F'2 = (z1' w2~ - z2~ w1')/2 with z1 = 1/2, w1 = 1/3 frozen:
  // (1/2) w1~/2 - z1~ (1/3)/2 in the shifted variables.
  Polynomial expect = Polynomial::monomial(Rat(1, 4), Monomial{{{var_w(1), 1}}}) +
                      Polynomial::monomial(Rat(-1, 6), Monomial{{{var_z(1), 1}}});
  CHECK(hred.polys[1] == expect);
}
