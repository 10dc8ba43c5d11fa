#include <doctest.h>

#include "nilbm/io.hpp"

using namespace nilbm;

TEST_CASE("structure constants: round trip and antisymmetric completion") {
  StructureConstants sc = catalog("engel");
  std::string text = sc_to_json_text(sc);
  StructureConstants back = sc_from_json_text(text);
  CHECK(back.dim() == 4);
  CHECK(back.coeff(1, 2, 3) == 1);
  CHECK(back.coeff(2, 1, 3) == -1);  // implied
  CHECK(sc_to_json_text(back) == text);
}

TEST_CASE("structure constants: malformed input throws IoError") {
  CHECK_THROWS_AS(sc_from_json_text("{not json"), IoError);
  CHECK_THROWS_AS(sc_from_json_text("{\"brackets\": []}"), IoError);
  CHECK_THROWS_AS(sc_from_json_text("{\"dim\": 2, \"brackets\": [{\"i\":1}]}"), IoError);
  CHECK_THROWS_AS(
      sc_from_json_text(
          "{\"dim\": 2, \"brackets\": [{\"i\":1,\"j\":2,\"terms\":{\"9\":\"1\"}}]}"),
      IoError);
  CHECK_THROWS_AS(
      sc_from_json_text("{\"dim\": 2, \"brackets\": [{\"i\":1,\"j\":2,\"terms\":{\"1\":\"x\"}}]}"),
      IoError);
}

TEST_CASE("law file: canonical serialization round trips and digests are stable") {
  ProductLaw law = derive_bch(catalog("heisenberg(1)"));
  std::string text = law_to_json_text(law);
  CHECK(text.find("\"kind\": \"custom\"") == std::string::npos);
  ProductLaw back = law_from_json_text(text);
  CHECK(back.dim == 3);
  CHECK(back.kind == ProductLaw::Kind::Group);
  CHECK(back.n1 == 1);
  for (int i = 0; i < 3; ++i) CHECK(back.polys[i] == law.polys[i]);
  CHECK(law_to_json_text(back) == text);
  CHECK(law_digest(back) == law_digest(law));

  // digest distinguishes different laws
  CHECK(law_digest(law) != law_digest(derive_bch(catalog("abelian(3)"))));
}

TEST_CASE("law file: triangularity is enforced on load") {
  std::string bad = R"({"dim": 2, "n1": 0, "kind": "custom", "polys": [[],
      [{"coeff": "1", "monomial": {"z2": 1}}]]})";
  CHECK_THROWS_AS(law_from_json_text(bad), IoError);
}

TEST_CASE("set file: round trip normalizes") {
  std::string text = R"({"dim": 2, "boxes": [[["0","2"],["0","1"]], [["1","3"],["0","1"]]]})";
  BoxUnion u = set_from_json_text(text);
  CHECK(u.volume() == 3);
  BoxUnion back = set_from_json_text(set_to_json_text(u));
  CHECK(back == u);
  CHECK_THROWS_AS(set_from_json_text(R"({"dim": 1, "boxes": [[["1","0"]]]})"), IoError);
}

TEST_CASE("step-function file round trips") {
  std::string text =
      R"({"dim": 1, "pieces": [{"box": [["0","1"]], "value": "2"},
                               {"box": [["1","2"]], "value": "1/2"}]})";
  StepFunction f = step_from_json_text(text);
  CHECK(f.integral() == Rat(5, 2));
  StepFunction back = step_from_json_text(step_to_json_text(f));
  CHECK(back.integral() == f.integral());
  CHECK_THROWS_AS(step_from_json_text(
                      R"({"dim": 1, "pieces": [{"box": [["0","2"]], "value": "1"},
                                               {"box": [["1","3"]], "value": "1"}]})"),
                  IoError);
}

TEST_CASE("report payloads are deterministic byte-for-byte") {
  ProductLaw law = derive_bch(catalog("heisenberg(1)"));
  BoxUnion cube = BoxUnion::from_disjoint(3, {Box(3, Interval{Rat(0), Rat(1)})});
  BMReport r1 = bm_verify(cube, cube, law, 3, Rat(1, 10), 3);
  BMReport r2 = bm_verify(cube, cube, law, 3, Rat(1, 10), 3);
  CHECK(bm_report_json(r1) == bm_report_json(r2));
  CHECK(bm_report_json(r1).find("\"verdict\": \"holds\"") != std::string::npos);
}

TEST_CASE("sharpness csv has the documented columns") {
  StratifyResult s = stratify(catalog("heisenberg(1)"));
  ProductLaw law = derive_bch(catalog("heisenberg(1)"));
  auto rows = sharpness_scan(law, dilation_spec(*s.stratification), {Rat(1, 10)}, Rat(1, 100), 2);
  std::string csv = sharpness_csv(rows);
  CHECK(csv.substr(0, csv.find('\n')) == "eps,lower,upper,rhs_m,verdict");
  CHECK(csv.find("1/10,") != std::string::npos);
}
