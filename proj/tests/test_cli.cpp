#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <string>
#include <sys/wait.h>

#include "nilbm/io.hpp"

using namespace nilbm;
namespace fs = std::filesystem;

namespace {

const char* cli_path() { return NILBM_CLI_PATH; }

struct RunResult {
  int exit_code;
  std::string output;  // stdout only
};

RunResult run_cli(const std::string& args) {
  std::string tmp_out = (fs::temp_directory_path() / "nilbm_cli_stdout.txt").string();
  std::string cmd = std::string(cli_path()) + " " + args + " > " + tmp_out + " 2>/dev/null";
  int status = std::system(cmd.c_str());
  RunResult r;
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  r.output = read_file(tmp_out);
  return r;
}

struct TempDir {
  fs::path dir;
  TempDir() {
    dir = fs::temp_directory_path() / "nilbm_cli_test";
    fs::create_directories(dir);
  }
  std::string file(const std::string& name, const std::string& content) const {
    std::string path = (dir / name).string();
    write_file(path, content);
    return path;
  }
};

std::string cube_json(int dim) {
  std::string box = "[";
  for (int i = 0; i < dim; ++i) box += std::string(i ? "," : "") + "[\"0\",\"1\"]";
  box += "]";
  return "{\"dim\": " + std::to_string(dim) + ", \"boxes\": [" + box + "]}";
}

}  // namespace

TEST_CASE("cli: algebra on catalog groups") {
  RunResult r = run_cli("algebra --group 'heisenberg(1)'");
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("step: 2") != std::string::npos);
  CHECK(r.output.find("Q: 4") != std::string::npos);
}

TEST_CASE("cli: algebra on a constants file") {
  TempDir tmp;
  std::string path = tmp.file("abelian4.json", "{\"dim\": 4, \"brackets\": []}");
  RunResult r = run_cli("algebra --file " + path);
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("step: 1") != std::string::npos);
  CHECK(r.output.find("Q: 4") != std::string::npos);
}

TEST_CASE("cli: malformed JSON exits 3") {
  TempDir tmp;
  std::string path = tmp.file("broken.json", "{not json");
  CHECK(run_cli("algebra --file " + path).exit_code == 3);
  CHECK(run_cli("algebra --group 'nosuch'").exit_code == 3);
  CHECK(run_cli("algebra").exit_code == 3);  // no input given
}

TEST_CASE("cli: invalid algebra exits 2") {
  TempDir tmp;
  // so(3)-style constants: valid algebra but not nilpotent
  std::string path = tmp.file("so3.json",
                              R"({"dim": 3, "brackets": [
        {"i":1,"j":2,"terms":{"3":"1"}},
        {"i":2,"j":3,"terms":{"1":"1"}},
        {"i":3,"j":1,"terms":{"2":"1"}}]})");
  CHECK(run_cli("algebra --file " + path).exit_code == 2);
  // antisymmetry violation
  std::string bad = tmp.file("bad.json",
                             R"({"dim": 3, "brackets": [
        {"i":1,"j":2,"terms":{"3":"1"}},
        {"i":2,"j":1,"terms":{"3":"1"}}]})");
  CHECK(run_cli("algebra --file " + bad).exit_code == 2);
}

TEST_CASE("cli: law files carry the derived polynomials") {
  TempDir tmp;
  std::string out = (tmp.dir / "heis.json").string();
  RunResult r = run_cli("law --group 'heisenberg(1)' --out " + out);
  CHECK(r.exit_code == 0);
  ProductLaw law = law_from_json_text(read_file(out));
  CHECK(law.dim == 3);
  CHECK(law.polys[2].str() == "1/2*z1*w2 - 1/2*z2*w1");

  RunResult ab = run_cli("law --group 'abelian(3)'");
  CHECK(ab.exit_code == 0);
  ProductLaw ablaw = law_from_json_text(ab.output);
  for (const Polynomial& p : ablaw.polys) CHECK(p.is_zero());

  CHECK(run_cli("law --group engel --out " + (tmp.dir / "engel.json").string()).exit_code == 0);
}

TEST_CASE("cli: bm verdict, expectations, and exit codes") {
  TempDir tmp;
  std::string cube = tmp.file("cube.json", cube_json(3));
  std::string out = (tmp.dir / "bm.json").string();
  RunResult holds = run_cli("bm --group 'heisenberg(1)' --A " + cube + " --B " + cube +
                            " --m 3 --tol 1/100 --max-depth 4 --expect holds --out " + out);
  CHECK(holds.exit_code == 0);
  CHECK(read_file(out).find("\"verdict\": \"holds\"") != std::string::npos);

  // wrong expectation exits 1
  CHECK(run_cli("bm --group 'heisenberg(1)' --A " + cube + " --B " + cube +
                " --m 3 --max-depth 4 --expect fails")
            .exit_code == 1);

  // equality-style instance stuck at max_depth 0 is inconclusive: --strict -> 4
  std::string thin = tmp.file("thin.json",
                              R"({"dim": 3, "boxes": [[["0","1/10"],["0","1/10"],["0","1"]]]})");
  CHECK(run_cli("bm --group 'heisenberg(1)' --A " + thin + " --B " + thin +
                " --m 3 --max-depth 0 --strict")
            .exit_code == 4);

  // euclidean check on the same files
  CHECK(run_cli("bm --group 'heisenberg(1)' --euclidean --A " + cube + " --B " + cube +
                " --m 3 --expect holds")
            .exit_code == 0);
}

TEST_CASE("cli: sharpness CSV records the failure at eps = 1/10") {
  TempDir tmp;
  std::string csv_path = (tmp.dir / "sweep.csv").string();
  RunResult r =
      run_cli("sharpness --group 'heisenberg(1)' --eps 1/10,1/4 --max-depth 2 --csv " + csv_path);
  CHECK(r.exit_code == 0);
  std::string csv = read_file(csv_path);
  CHECK(csv.find("eps,lower,upper,rhs_m,verdict") == 0);
  CHECK(csv.find("1/10,") != std::string::npos);
  CHECK(csv.find("fails") != std::string::npos);
}

TEST_CASE("cli: pl equality case holds with margin 0") {
  TempDir tmp;
  std::string unit = tmp.file(
      "unit.json", R"({"dim": 1, "pieces": [{"box": [["0","1"]], "value": "1"}]})");
  std::string dbl = tmp.file(
      "double.json", R"({"dim": 1, "pieces": [{"box": [["0","2"]], "value": "1"}]})");
  std::string out = (tmp.dir / "pl.json").string();
  RunResult r = run_cli("pl --dim 1 --alpha 1/2 --f " + unit + " --g " + unit + " --h " + dbl +
                        " --expect holds --out " + out);
  CHECK(r.exit_code == 0);
  std::string report = read_file(out);
  CHECK(report.find("\"margin_pow\": \"0\"") != std::string::npos);
  CHECK(report.find("\"rhs\": \"2\"") != std::string::npos);
}

TEST_CASE("cli: cylinder and lemma31 and carnot run end to end") {
  TempDir tmp;
  std::string sq = tmp.file("sq.json", cube_json(2));
  std::string seg = tmp.file("seg.json", cube_json(1));
  CHECK(run_cli("cylinder --group 'heisenberg(1)' --A1 " + sq + " --A2 " + seg + " --B1 " + sq +
                " --B2 " + seg + " --max-depth 4 --expect strict")
            .exit_code == 0);

  CHECK(run_cli("lemma31 --group 'heisenberg(1)' --I 0,1 --J 0,1 --Atail " + sq + " --Btail " +
                sq + " --tol 1/20 --grid 2 --max-depth 4 --expect inequality")
            .exit_code == 0);

  std::string cube = tmp.file("cube.json", cube_json(3));
  CHECK(run_cli("carnot --group 'heisenberg(1)' --A " + cube + " --B " + cube +
                " --alpha 1/2 --form 1 --max-depth 4 --expect holds")
            .exit_code == 0);
  CHECK(run_cli("carnot --group 'heisenberg(1)' --A " + cube + " --B " + cube +
                " --alpha 1/2 --form 2 --max-depth 4 --expect holds")
            .exit_code == 0);
}

TEST_CASE("cli: version flag") {
  RunResult r = run_cli("--version");
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("nilbm") != std::string::npos);
}
