// nilbm: derive nilpotent group multiplication laws, compute certified
// product-set volume bounds, and verify multiplicative Brunn-Minkowski /
// Prekopa-Leindler inequalities on box-union sets.
//
// Exit codes: 0 ok / expected verdict; 1 unexpected verdict under --expect;
// 2 invalid algebra or failed structural gate; 3 I/O, parse, or usage error;
// 4 inconclusive verdict under --strict.

#include <chrono>
#include <cstdlib>
#include <iostream>

#include <CLI11.hpp>
#include <json.hpp>

#include "nilbm/io.hpp"

using namespace nilbm;
using ordered_json = nlohmann::ordered_json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUnexpected = 1;
constexpr int kExitInvalidAlgebra = 2;
constexpr int kExitIo = 3;
constexpr int kExitInconclusive = 4;

struct InvalidAlgebra : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct UnexpectedVerdict : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct InconclusiveStrict : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string timestamp_utc() {
  auto now = std::chrono::system_clock::now();
  std::time_t t = std::chrono::system_clock::to_time_t(now);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&t));
  return buf;
}

long budget_from_env(long fallback) {
  if (const char* env = std::getenv("NILBM_BUDGET")) {
    char* end = nullptr;
    long v = std::strtol(env, &end, 10);
    if (end && *end == '\0' && v >= 1) return v;
    throw IoError("NILBM_BUDGET must be a positive integer");
  }
  return fallback;
}

struct LawSource {
  std::string group;     // catalog name
  std::string sc_file;   // structure-constants file
  std::string law_file;  // serialized law

  void add_options(CLI::App* cmd, bool allow_law_file, bool allow_dim_shortcut = false,
                   int* dim_shortcut = nullptr) {
    auto* g = cmd->add_option("--group", group, "catalog group, e.g. heisenberg(1)");
    auto* f = cmd->add_option("--file", sc_file, "structure-constants JSON file");
    g->excludes(f);
    if (allow_law_file) {
      auto* l = cmd->add_option("--law", law_file, "product-law JSON file");
      l->excludes(g);
      l->excludes(f);
    }
    if (allow_dim_shortcut) {
      auto* d = cmd->add_option("--dim", *dim_shortcut, "shortcut: abelian law of this dimension");
      d->excludes(g);
      d->excludes(f);
    }
  }
};

StructureConstants load_constants(const LawSource& src) {
  if (!src.group.empty()) return catalog(src.group);
  if (!src.sc_file.empty()) return sc_from_json_text(read_file(src.sc_file));
  throw IoError("no algebra given: use --group or --file");
}

/// Full pipeline: validate, series, Malcev reorder, derive.
ProductLaw law_from_constants(const StructureConstants& raw) {
  ValidationResult v = validate(raw);
  if (!v.ok()) throw InvalidAlgebra(v.message);
  CentralSeries series = lower_central_series(raw);  // NotNilpotentError on failure
  MalcevBasis basis = malcev_basis(raw, series);
  StructureConstants ordered = change_basis(raw, basis.change);
  return derive_bch(ordered);
}

ProductLaw load_law(const LawSource& src, int dim_shortcut = 0) {
  if (!src.law_file.empty()) return law_from_json_text(read_file(src.law_file));
  if (dim_shortcut > 0 && src.group.empty() && src.sc_file.empty())
    return derive_bch(catalog("abelian(" + std::to_string(dim_shortcut) + ")"));
  return law_from_constants(load_constants(src));
}

void emit(const ordered_json& envelope, const std::string& out_path) {
  std::string text = envelope.dump(2) + "\n";
  if (out_path.empty())
    std::cout << text;
  else
    write_file(out_path, text);
}

ordered_json envelope_for(const std::string& command, const ordered_json& config,
                          const std::string& digest, const ordered_json& results) {
  ordered_json env;
  env["tool"] = {{"name", "nilbm"}, {"version", kVersion}};
  env["command"] = command;
  env["config"] = config;
  if (!digest.empty()) env["law_digest"] = digest;
  env["timestamp"] = timestamp_utc();
  env["results"] = results;
  return env;
}

void apply_expectations(const std::string& got, const std::string& expect, bool strict) {
  if (!expect.empty() && got != expect)
    throw UnexpectedVerdict("verdict '" + got + "' does not match --expect '" + expect + "'");
  if (strict && got == "inconclusive")
    throw InconclusiveStrict("inconclusive verdict with --strict");
}

std::vector<Rat> parse_rat_list(const std::string& csv) {
  std::vector<Rat> out;
  std::size_t pos = 0;
  while (pos <= csv.size()) {
    std::size_t comma = csv.find(',', pos);
    std::string item =
        csv.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
    if (!item.empty()) out.push_back(parse_rat(item));
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  if (out.empty()) throw IoError("empty rational list");
  return out;
}

Interval parse_interval_arg(const std::string& text) {
  std::size_t comma = text.find(',');
  if (comma == std::string::npos) throw IoError("interval must be 'lo,hi'");
  Interval iv{parse_rat(text.substr(0, comma)), parse_rat(text.substr(comma + 1))};
  if (!iv.valid()) throw IoError("interval with lo > hi");
  return iv;
}

// ------------------------------------------------------------- subcommands

struct AlgebraArgs {
  LawSource src;
  std::string out;
};

int run_algebra(const AlgebraArgs& a) {
  StructureConstants raw = load_constants(a.src);
  ValidationResult v = validate(raw);
  if (!v.ok()) {
    std::cerr << "invalid algebra: " << v.message << "\n";
    return kExitInvalidAlgebra;
  }
  CentralSeries series = lower_central_series(raw);
  MalcevBasis basis = malcev_basis(raw, series);
  StructureConstants ordered = change_basis(raw, basis.change);
  StratifyResult strat = stratify(ordered, lower_central_series(ordered));

  std::cout << "dim: " << raw.dim() << "\n";
  std::cout << "step: " << series.step << "\n";
  std::cout << "series dims:";
  for (int n : series.dims) std::cout << " " << n;
  std::cout << "\n";
  if (strat.ok())
    std::cout << "Q: " << strat.stratification->Q << "\n";
  else
    std::cout << "Q: n/a (" << strat.diagnostic << ")\n";
  std::cout << "malcev change matrix:\n";
  for (const RatVec& row : basis.change) {
    for (const Rat& x : row) std::cout << " " << rat_str(x);
    std::cout << "\n";
  }

  if (!a.out.empty()) {
    ordered_json results;
    results["dim"] = raw.dim();
    results["step"] = series.step;
    results["series_dims"] = series.dims;
    if (strat.ok()) {
      results["Q"] = strat.stratification->Q;
      results["weights"] = strat.stratification->weights;
    } else {
      results["stratification"] = strat.diagnostic;
    }
    ordered_json change = ordered_json::array();
    for (const RatVec& row : basis.change) {
      ordered_json r = ordered_json::array();
      for (const Rat& x : row) r.push_back(rat_str(x));
      change.push_back(r);
    }
    results["malcev_change"] = change;
    ordered_json config;
    config["group"] = a.src.group;
    config["file"] = a.src.sc_file;
    emit(envelope_for("algebra", config, "", results), a.out);
  }
  return kExitOk;
}

struct LawArgs {
  LawSource src;
  std::string out;
  long assoc_samples = 1000;
};

int run_law(const LawArgs& a) {
  StructureConstants raw = load_constants(a.src);
  ValidationResult v = validate(raw);
  if (!v.ok()) {
    std::cerr << "invalid algebra: " << v.message << "\n";
    return kExitInvalidAlgebra;
  }
  CentralSeries series = lower_central_series(raw);
  MalcevBasis basis = malcev_basis(raw, series);
  StructureConstants ordered = change_basis(raw, basis.change);
  ProductLaw law = derive_bch(ordered);

  // Structural gates; any failure is a hard error.
  TriangularReport tri = verify_triangular(law);
  if (!tri.pass) {
    std::cerr << "triangularity gate failed at coordinate " << tri.coordinate << "\n";
    return kExitInvalidAlgebra;
  }
  FirstLayerReport fl = verify_first_layer(law, law.n1);
  if (!fl.pass) {
    std::cerr << "first-layer gate failed at coordinate " << fl.coordinate << "\n";
    return kExitInvalidAlgebra;
  }
  if (!verify_identity_at_zero(law)) {
    std::cerr << "identity-at-zero gate failed\n";
    return kExitInvalidAlgebra;
  }
  AssociativityReport assoc = verify_associativity(law, a.assoc_samples);
  if (!assoc.pass) {
    std::cerr << "associativity gate failed: " << assoc.counterexample << "\n";
    return kExitInvalidAlgebra;
  }
  StratifyResult strat = stratify(ordered, lower_central_series(ordered));
  if (strat.ok()) {
    DilationAutomorphismReport dil =
        verify_dilation_automorphism(law, dilation_spec(*strat.stratification));
    if (!dil.pass) {
      std::cerr << "dilation automorphism gate failed at coordinate " << dil.coordinate << "\n";
      return kExitInvalidAlgebra;
    }
  }

  std::string text = law_to_json_text(law);
  if (a.out.empty())
    std::cout << text << "\n";
  else
    write_file(a.out, text + "\n");
  std::cerr << "law digest: " << law_digest(law) << " (associativity "
            << (assoc.symbolic ? "symbolic" : "sampled") << ")\n";
  return kExitOk;
}

struct BmArgs {
  LawSource src;
  std::string a_file, b_file, out, expect, tol = "1/100";
  unsigned m = 0;
  int max_depth = 6;
  long budget = 0;
  long seed = 0;
  bool euclidean = false, both_orders = false, strict = false;
};

int run_bm(const BmArgs& a) {
  ProductLaw law = load_law(a.src);
  BoxUnion A = set_from_json_text(read_file(a.a_file));
  BoxUnion B = set_from_json_text(read_file(a.b_file));
  unsigned m = a.m == 0 ? static_cast<unsigned>(law.dim) : a.m;
  Rat tol = parse_rat(a.tol);
  long budget = budget_from_env(a.budget > 0 ? a.budget : kDefaultCellPairBudget);

  ordered_json config;
  config["group"] = a.src.group;
  config["law"] = a.src.law_file;
  config["A"] = a.a_file;
  config["B"] = a.b_file;
  config["m"] = m;
  config["tol"] = a.tol;
  config["max_depth"] = a.max_depth;
  config["budget"] = budget;
  config["seed"] = a.seed;
  config["euclidean"] = a.euclidean;
  config["both_orders"] = a.both_orders;

  std::string verdict;
  ordered_json results;
  if (a.euclidean) {
    BMReport r = bm_euclidean_check(A, B, m);
    verdict = verdict_str(r.verdict);
    results = ordered_json::parse(bm_report_json(r));
  } else if (a.both_orders) {
    OrderCompareReport r = bm_order_compare(A, B, law, m, tol, a.max_depth, budget);
    verdict = verdict_str(r.ab.verdict);
    results = ordered_json::parse(order_compare_json(r));
  } else {
    BMReport r = bm_verify(A, B, law, m, tol, a.max_depth, budget);
    verdict = verdict_str(r.verdict);
    results = ordered_json::parse(bm_report_json(r));
  }
  emit(envelope_for("bm", config, law_digest(law), results), a.out);
  std::cerr << "verdict: " << verdict << "\n";
  apply_expectations(verdict, a.expect, a.strict);
  return kExitOk;
}

struct CylinderArgs {
  LawSource src;
  std::string a1, a2, b1, b2, out, expect;
  int max_depth = 5;
  long budget = 0;
};

int run_cylinder(const CylinderArgs& a) {
  ProductLaw law = load_law(a.src);
  BoxUnion A1 = set_from_json_text(read_file(a.a1));
  BoxUnion A2 = set_from_json_text(read_file(a.a2));
  BoxUnion B1 = set_from_json_text(read_file(a.b1));
  BoxUnion B2 = set_from_json_text(read_file(a.b2));
  long budget = budget_from_env(a.budget > 0 ? a.budget : kDefaultCellPairBudget);
  CylinderReport r = cylinder_strict(A1, A2, B1, B2, law, a.max_depth, budget);

  ordered_json config;
  config["group"] = a.src.group;
  config["A1"] = a.a1;
  config["A2"] = a.a2;
  config["B1"] = a.b1;
  config["B2"] = a.b2;
  config["max_depth"] = a.max_depth;
  config["budget"] = budget;
  emit(envelope_for("cylinder", config, law_digest(law),
                    ordered_json::parse(cylinder_report_json(r))),
       a.out);
  std::string status = r.status == CylinderReport::Status::StrictCertified ? "strict"
                       : r.status == CylinderReport::Status::Undecided
                           ? "undecided"
                           : "out-of-theorem-scope";
  std::cerr << "status: " << status << "\n";
  apply_expectations(status, a.expect, false);
  return kExitOk;
}

struct SharpnessArgs {
  LawSource src;
  std::string eps = "1/10,1/4,1/2,1";
  std::string csv, out, tol = "1/100";
  int max_depth = 4;
  long budget = 0;
};

int run_sharpness(const SharpnessArgs& a) {
  StructureConstants raw = load_constants(a.src);
  ValidationResult v = validate(raw);
  if (!v.ok()) {
    std::cerr << "invalid algebra: " << v.message << "\n";
    return kExitInvalidAlgebra;
  }
  CentralSeries series = lower_central_series(raw);
  StructureConstants ordered = change_basis(raw, malcev_basis(raw, series).change);
  ProductLaw law = derive_bch(ordered);
  StratifyResult strat = stratify(ordered, lower_central_series(ordered));
  if (!strat.ok()) {
    std::cerr << "not stratifiable: " << strat.diagnostic << "\n";
    return kExitInvalidAlgebra;
  }
  long budget = budget_from_env(a.budget > 0 ? a.budget : kDefaultCellPairBudget);
  auto rows = sharpness_scan(law, dilation_spec(*strat.stratification), parse_rat_list(a.eps),
                             parse_rat(a.tol), a.max_depth, budget);
  std::string csv = sharpness_csv(rows);
  if (!a.csv.empty())
    write_file(a.csv, csv);
  else
    std::cout << csv;

  ordered_json config;
  config["group"] = a.src.group;
  config["eps"] = a.eps;
  config["tol"] = a.tol;
  config["max_depth"] = a.max_depth;
  config["budget"] = budget;
  if (!a.out.empty())
    emit(envelope_for("sharpness", config, law_digest(law),
                      ordered_json::parse(sharpness_rows_json(rows))),
         a.out);
  return kExitOk;
}

struct Lemma31Args {
  LawSource src;
  std::string I, J, a_tail, b_tail, out, expect, tol = "1/50";
  int grid = 8;
  int max_depth = 7;
  long budget = 0;
};

int run_lemma31(const Lemma31Args& a) {
  ProductLaw law = load_law(a.src);
  Interval I = parse_interval_arg(a.I);
  Interval J = parse_interval_arg(a.J);
  BoxUnion At = set_from_json_text(read_file(a.a_tail));
  BoxUnion Bt = set_from_json_text(read_file(a.b_tail));
  long budget = budget_from_env(a.budget > 0 ? a.budget : kDefaultCellPairBudget);
  ReductionReport r =
      lemma31_verify(I, J, At, Bt, law, parse_rat(a.tol), a.grid, a.max_depth, budget);

  ordered_json config;
  config["group"] = a.src.group;
  config["law"] = a.src.law_file;
  config["I"] = a.I;
  config["J"] = a.J;
  config["Atail"] = a.a_tail;
  config["Btail"] = a.b_tail;
  config["tol"] = a.tol;
  config["grid"] = a.grid;
  config["max_depth"] = a.max_depth;
  config["budget"] = budget;
  emit(envelope_for("lemma31", config, law_digest(law),
                    ordered_json::parse(reduction_report_json(r))),
       a.out);
  std::string got = r.equality_applicable ? (r.equality_ok ? "equality" : "no-equality")
                                          : (r.inequality_ok ? "inequality" : "undecided");
  std::cerr << "result: " << got << "\n";
  apply_expectations(got, a.expect, false);
  return kExitOk;
}

struct PlArgs {
  LawSource src;
  int dim = 0;
  std::string alpha, f_file, g_file, h_file, out, expect;
  int max_depth = 4;
  long budget = 0;
  bool strict = false;
};

int run_pl(const PlArgs& a) {
  ProductLaw law = load_law(a.src, a.dim);
  StepFunction f = step_from_json_text(read_file(a.f_file));
  StepFunction g = step_from_json_text(read_file(a.g_file));
  StepFunction h = step_from_json_text(read_file(a.h_file));
  long budget = budget_from_env(a.budget > 0 ? a.budget : kDefaultCellPairBudget);
  PLReport r = pl_verify(f, g, h, parse_rat(a.alpha), law, a.max_depth, budget);

  ordered_json config;
  config["group"] = a.src.group;
  config["law"] = a.src.law_file;
  config["dim"] = a.dim;
  config["alpha"] = a.alpha;
  config["f"] = a.f_file;
  config["g"] = a.g_file;
  config["h"] = a.h_file;
  config["max_depth"] = a.max_depth;
  config["budget"] = budget;
  emit(envelope_for("pl", config, law_digest(law), ordered_json::parse(pl_report_json(r))),
       a.out);
  std::string verdict = verdict_str(r.verdict);
  std::cerr << "verdict: " << verdict << "\n";
  apply_expectations(verdict, a.expect, a.strict);
  return kExitOk;
}

struct CarnotArgs {
  LawSource src;
  std::string a_file, b_file, alpha, out, expect, tol = "1/100";
  int form = 1;
  int max_depth = 5;
  long budget = 0;
  bool strict = false;
};

int run_carnot(const CarnotArgs& a) {
  StructureConstants raw = load_constants(a.src);
  ValidationResult v = validate(raw);
  if (!v.ok()) {
    std::cerr << "invalid algebra: " << v.message << "\n";
    return kExitInvalidAlgebra;
  }
  CentralSeries series = lower_central_series(raw);
  StructureConstants ordered = change_basis(raw, malcev_basis(raw, series).change);
  ProductLaw law = derive_bch(ordered);
  StratifyResult strat = stratify(ordered, lower_central_series(ordered));
  if (!strat.ok()) {
    std::cerr << "not stratifiable: " << strat.diagnostic << "\n";
    return kExitInvalidAlgebra;
  }
  BoxUnion A = set_from_json_text(read_file(a.a_file));
  BoxUnion B = set_from_json_text(read_file(a.b_file));
  long budget = budget_from_env(a.budget > 0 ? a.budget : kDefaultCellPairBudget);
  CarnotReport r =
      carnot_bm(A, B, parse_rat(a.alpha), law, dilation_spec(*strat.stratification),
                a.form == 1 ? CarnotForm::Root : CarnotForm::Product, parse_rat(a.tol),
                a.max_depth, budget);

  ordered_json config;
  config["group"] = a.src.group;
  config["A"] = a.a_file;
  config["B"] = a.b_file;
  config["alpha"] = a.alpha;
  config["form"] = a.form;
  config["tol"] = a.tol;
  config["max_depth"] = a.max_depth;
  config["budget"] = budget;
  emit(envelope_for("carnot", config, law_digest(law),
                    ordered_json::parse(carnot_report_json(r))),
       a.out);
  std::string verdict = verdict_str(r.report.verdict);
  std::cerr << "verdict: " << verdict << "\n";
  apply_expectations(verdict, a.expect, a.strict);
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"certified Brunn-Minkowski verification on nilpotent groups"};
  app.set_version_flag("--version", std::string("nilbm ") + kVersion);
  app.require_subcommand(1);

  AlgebraArgs alg;
  auto* c_alg = app.add_subcommand("algebra", "validate an algebra; print series, Malcev basis, Q");
  alg.src.add_options(c_alg, false);
  c_alg->add_option("--out", alg.out, "write a JSON report");

  LawArgs lawa;
  auto* c_law = app.add_subcommand("law", "derive the product law and run structural gates");
  lawa.src.add_options(c_law, false);
  c_law->add_option("--out", lawa.out, "write the law file (default: stdout)");
  c_law->add_option("--assoc-samples", lawa.assoc_samples, "sample count when not symbolic");

  BmArgs bm;
  auto* c_bm = app.add_subcommand("bm", "Brunn-Minkowski verdict on two sets");
  bm.src.add_options(c_bm, true);
  c_bm->add_option("--A", bm.a_file, "set file")->required();
  c_bm->add_option("--B", bm.b_file, "set file")->required();
  c_bm->add_option("--m", bm.m, "exponent (default: topological dimension)");
  c_bm->add_option("--tol", bm.tol, "relative gap tolerance, rational");
  c_bm->add_option("--max-depth", bm.max_depth, "refinement cap");
  c_bm->add_option("--budget", bm.budget, "cell-pair budget (or NILBM_BUDGET)");
  c_bm->add_option("--seed", bm.seed, "seed echoed into the report");
  c_bm->add_flag("--euclidean", bm.euclidean, "check the Minkowski-sum inequality instead");
  c_bm->add_flag("--both-orders", bm.both_orders, "bound |A*B| and |B*A|");
  c_bm->add_option("--expect", bm.expect, "holds|fails|inconclusive");
  c_bm->add_flag("--strict", bm.strict, "exit 4 on inconclusive");
  c_bm->add_option("--out", bm.out, "write the report envelope");

  CylinderArgs cyl;
  auto* c_cyl = app.add_subcommand("cylinder", "strictness |A*B| > |A+B| for cylinders");
  cyl.src.add_options(c_cyl, true);
  c_cyl->add_option("--A1", cyl.a1, "horizontal factor of A")->required();
  c_cyl->add_option("--A2", cyl.a2, "vertical factor of A")->required();
  c_cyl->add_option("--B1", cyl.b1, "horizontal factor of B")->required();
  c_cyl->add_option("--B2", cyl.b2, "vertical factor of B")->required();
  c_cyl->add_option("--max-depth", cyl.max_depth, "refinement cap");
  c_cyl->add_option("--budget", cyl.budget, "cell-pair budget");
  c_cyl->add_option("--expect", cyl.expect, "strict|undecided|out-of-theorem-scope");
  c_cyl->add_option("--out", cyl.out, "write the report envelope");

  SharpnessArgs sh;
  auto* c_sh = app.add_subcommand(
      "sharpness", "exponent sweep on thin slabs [0,eps]^(d-1) x [0,1] at m = Q; CSV columns: "
                   "eps,lower,upper,rhs_m,verdict (rational strings)");
  sh.src.add_options(c_sh, false);
  c_sh->add_option("--eps", sh.eps, "comma-separated eps list");
  c_sh->add_option("--tol", sh.tol, "relative gap tolerance");
  c_sh->add_option("--max-depth", sh.max_depth, "refinement cap");
  c_sh->add_option("--budget", sh.budget, "cell-pair budget");
  c_sh->add_option("--csv", sh.csv, "write the CSV (default: stdout)");
  c_sh->add_option("--out", sh.out, "write a JSON report too");

  Lemma31Args lem;
  auto* c_lem = app.add_subcommand("lemma31", "first-coordinate reduction check on I x At, J x Bt");
  lem.src.add_options(c_lem, true);
  c_lem->add_option("--I", lem.I, "interval 'lo,hi'")->required();
  c_lem->add_option("--J", lem.J, "interval 'lo,hi'")->required();
  c_lem->add_option("--Atail", lem.a_tail, "tail set file")->required();
  c_lem->add_option("--Btail", lem.b_tail, "tail set file")->required();
  c_lem->add_option("--tol", lem.tol, "relative tolerance");
  c_lem->add_option("--grid", lem.grid, "s1 grid points");
  c_lem->add_option("--max-depth", lem.max_depth, "refinement cap");
  c_lem->add_option("--budget", lem.budget, "cell-pair budget");
  c_lem->add_option("--expect", lem.expect, "equality|inequality");
  c_lem->add_option("--out", lem.out, "write the report envelope");

  PlArgs pl;
  auto* c_pl = app.add_subcommand("pl", "functional (Prekopa-Leindler style) verdict");
  pl.src.add_options(c_pl, true, true, &pl.dim);
  c_pl->add_option("--alpha", pl.alpha, "rational in (0,1)")->required();
  c_pl->add_option("--f", pl.f_file, "step-function file")->required();
  c_pl->add_option("--g", pl.g_file, "step-function file")->required();
  c_pl->add_option("--h", pl.h_file, "step-function file")->required();
  c_pl->add_option("--max-depth", pl.max_depth, "hypothesis refinement cap");
  c_pl->add_option("--budget", pl.budget, "cell-pair budget");
  c_pl->add_option("--expect", pl.expect, "holds|fails|inconclusive");
  c_pl->add_flag("--strict", pl.strict, "exit 4 on inconclusive");
  c_pl->add_option("--out", pl.out, "write the report envelope");

  CarnotArgs car;
  auto* c_car = app.add_subcommand("carnot", "dilated Brunn-Minkowski variants");
  car.src.add_options(c_car, false);
  c_car->add_option("--A", car.a_file, "set file")->required();
  c_car->add_option("--B", car.b_file, "set file")->required();
  c_car->add_option("--alpha", car.alpha, "rational in (0,1)")->required();
  c_car->add_option("--form", car.form, "1 = root form, 2 = product form")
      ->check(CLI::IsMember({1, 2}));
  c_car->add_option("--tol", car.tol, "relative gap tolerance");
  c_car->add_option("--max-depth", car.max_depth, "refinement cap");
  c_car->add_option("--budget", car.budget, "cell-pair budget");
  c_car->add_option("--expect", car.expect, "holds|fails|inconclusive");
  c_car->add_flag("--strict", car.strict, "exit 4 on inconclusive");
  c_car->add_option("--out", car.out, "write the report envelope");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitIo;
  }

  try {
    if (c_alg->parsed()) return run_algebra(alg);
    if (c_law->parsed()) return run_law(lawa);
    if (c_bm->parsed()) return run_bm(bm);
    if (c_cyl->parsed()) return run_cylinder(cyl);
    if (c_sh->parsed()) return run_sharpness(sh);
    if (c_lem->parsed()) return run_lemma31(lem);
    if (c_pl->parsed()) return run_pl(pl);
    if (c_car->parsed()) return run_carnot(car);
  } catch (const UnexpectedVerdict& e) {
    std::cerr << e.what() << "\n";
    return kExitUnexpected;
  } catch (const InconclusiveStrict& e) {
    std::cerr << e.what() << "\n";
    return kExitInconclusive;
  } catch (const InvalidAlgebra& e) {
    std::cerr << "invalid algebra: " << e.what() << "\n";
    return kExitInvalidAlgebra;
  } catch (const NotNilpotentError& e) {
    std::cerr << "invalid algebra: " << e.what() << "\n";
    return kExitInvalidAlgebra;
  } catch (const IoError& e) {
    std::cerr << "io error: " << e.what() << "\n";
    return kExitIo;
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kExitIo;
  } catch (const UnknownGroupError& e) {
    std::cerr << "io error: " << e.what() << "\n";
    return kExitIo;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInvalidAlgebra;
  }
  return kExitOk;
}
