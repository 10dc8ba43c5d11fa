#include "nilbm/io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace nilbm {

using json = nlohmann::ordered_json;

namespace {

json parse(const std::string& text) {
  json j = json::parse(text, nullptr, false);
  if (j.is_discarded()) throw IoError("malformed JSON");
  return j;
}

Rat rat_field(const json& j) {
  if (j.is_number_integer()) return Rat(j.get<long>());
  if (!j.is_string()) throw IoError("expected a rational string");
  try {
    return parse_rat(j.get<std::string>());
  } catch (const ParseError& e) {
    throw IoError(e.what());
  }
}

json interval_json(const Interval& iv) {
  return json::array({rat_str(iv.lo), rat_str(iv.hi)});
}

Interval interval_from(const json& j) {
  if (!j.is_array() || j.size() != 2) throw IoError("interval must be [lo, hi]");
  Interval iv{rat_field(j[0]), rat_field(j[1])};
  if (!iv.valid()) throw IoError("interval with lo > hi");
  return iv;
}

json box_json(const Box& b) {
  json out = json::array();
  for (const Interval& iv : b) out.push_back(interval_json(iv));
  return out;
}

Box box_from(const json& j, int dim) {
  if (!j.is_array() || static_cast<int>(j.size()) != dim) throw IoError("box with wrong dimension");
  Box out;
  out.reserve(dim);
  for (const auto& iv : j) out.push_back(interval_from(iv));
  return out;
}

json bounds_fields(const Rat& lower, const Rat& upper) {
  json out;
  out["lower"] = rat_str(lower);
  out["upper"] = rat_str(upper);
  out["lower_dec"] = rat_decimal(lower);
  out["upper_dec"] = rat_decimal(upper);
  return out;
}

std::string bounds_status_str(BoundsStatus s) {
  switch (s) {
    case BoundsStatus::Converged:
      return "converged";
    case BoundsStatus::MaxDepthReached:
      return "max-depth";
    case BoundsStatus::BudgetExceeded:
      return "budget-exceeded";
  }
  return "?";
}

json bm_report_fields(const BMReport& r) {
  json out;
  out["clause"] = r.clause;
  out["m"] = r.m;
  out["vol_a"] = rat_str(r.vol_a);
  out["vol_b"] = rat_str(r.vol_b);
  json b = bounds_fields(r.lower, r.upper);
  for (auto& [k, v] : b.items()) out[k] = v;
  out["depth"] = r.depth;
  out["cell_pairs"] = r.cell_pairs;
  out["bounds_status"] = bounds_status_str(r.bounds_status);
  if (r.rhs_exact) out["rhs"] = rat_str(*r.rhs_exact);
  out["rhs_lo"] = rat_str(r.rhs_lo);
  out["rhs_hi"] = rat_str(r.rhs_hi);
  out["rhs_dec"] = rat_decimal(r.rhs_exact ? *r.rhs_exact : r.rhs_hi);
  out["verdict"] = verdict_str(r.verdict);
  out["margin"] = rat_str(r.margin);
  return out;
}

}  // namespace

StructureConstants sc_from_json_text(const std::string& text) {
  json j = parse(text);
  if (!j.contains("dim") || !j["dim"].is_number_integer()) throw IoError("missing integer 'dim'");
  int dim = j["dim"].get<int>();
  if (dim < 1) throw IoError("'dim' must be positive");
  StructureConstants sc(dim);
  if (j.contains("brackets")) {
    if (!j["brackets"].is_array()) throw IoError("'brackets' must be an array");
    for (const auto& e : j["brackets"]) {
      if (!e.contains("i") || !e.contains("j") || !e.contains("terms"))
        throw IoError("bracket entry needs i, j, terms");
      int i = e["i"].get<int>(), jj = e["j"].get<int>();
      for (const auto& [k, v] : e["terms"].items()) {
        int kk = 0;
        try {
          kk = std::stoi(k);
        } catch (...) {
          throw IoError("bad coordinate key '" + k + "'");
        }
        try {
          sc.set(i, jj, kk, rat_field(v));
        } catch (const std::out_of_range& ex) {
          throw IoError(ex.what());
        }
      }
    }
  }
  return sc;
}

std::string sc_to_json_text(const StructureConstants& sc) {
  json j;
  j["dim"] = sc.dim();
  json arr = json::array();
  for (const auto& [ij, terms] : sc.entries()) {
    json e;
    e["i"] = ij.first;
    e["j"] = ij.second;
    json t;
    for (const auto& [k, c] : terms) t[std::to_string(k)] = rat_str(c);
    e["terms"] = t;
    arr.push_back(e);
  }
  j["brackets"] = arr;
  return j.dump(2);
}

namespace {

json poly_json(const Polynomial& p) {
  json arr = json::array();
  for (const auto& [m, c] : p.terms()) {
    json term;
    term["coeff"] = rat_str(c);
    json mono;
    for (const auto& [v, e] : m.factors) mono[var_name(v)] = e;
    term["monomial"] = mono;
    arr.push_back(term);
  }
  return arr;
}

Polynomial poly_from(const json& arr, int dim) {
  Polynomial out;
  if (!arr.is_array()) throw IoError("'polys' entries must be arrays of terms");
  for (const auto& term : arr) {
    if (!term.contains("coeff") || !term.contains("monomial"))
      throw IoError("law term needs coeff and monomial");
    Monomial m;
    for (const auto& [name, e] : term["monomial"].items()) {
      if (name.size() < 2 || (name[0] != 'z' && name[0] != 'w'))
        throw IoError("bad law variable '" + name + "'");
      int idx = 0;
      try {
        idx = std::stoi(name.substr(1));
      } catch (...) {
        throw IoError("bad law variable '" + name + "'");
      }
      if (idx < 1 || idx > dim) throw IoError("law variable index out of range: " + name);
      if (!e.is_number_integer() || e.get<int>() < 1)
        throw IoError("monomial exponents must be positive integers");
      Var v = name[0] == 'z' ? var_z(idx) : var_w(idx);
      m.factors.emplace_back(v, e.get<int>());
    }
    std::sort(m.factors.begin(), m.factors.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    out = out + Polynomial::monomial(rat_field(term["coeff"]), m);
  }
  return out;
}

}  // namespace

ProductLaw law_from_json_text(const std::string& text) {
  json j = parse(text);
  if (!j.contains("dim") || !j.contains("kind") || !j.contains("polys"))
    throw IoError("law file needs dim, n1, kind, polys");
  int dim = j["dim"].get<int>();
  std::string kind = j["kind"].get<std::string>();
  if (!j["polys"].is_array() || static_cast<int>(j["polys"].size()) != dim)
    throw IoError("'polys' must list one entry per coordinate");
  std::vector<Polynomial> polys;
  polys.reserve(dim);
  for (const auto& arr : j["polys"]) polys.push_back(poly_from(arr, dim));
  ProductLaw law;
  try {
    law = make_custom_law(dim, std::move(polys));
  } catch (const std::invalid_argument& e) {
    throw IoError(e.what());
  }
  if (kind == "group") {
    law.kind = ProductLaw::Kind::Group;
    law.n1 = j.value("n1", 0);
  } else if (kind == "custom") {
    law.kind = ProductLaw::Kind::Custom;
    law.n1 = j.value("n1", 0);
  } else {
    throw IoError("law kind must be 'group' or 'custom'");
  }
  return law;
}

std::string law_to_json_text(const ProductLaw& law) {
  json j;
  j["dim"] = law.dim;
  j["n1"] = law.n1;
  j["kind"] = law.kind == ProductLaw::Kind::Group ? "group" : "custom";
  json polys = json::array();
  for (const Polynomial& p : law.polys) polys.push_back(poly_json(p));
  j["polys"] = polys;
  return j.dump(2);
}

std::string law_digest(const ProductLaw& law) {
  std::string text = law_to_json_text(law);
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

BoxUnion set_from_json_text(const std::string& text) {
  json j = parse(text);
  if (!j.contains("dim")) throw IoError("set file needs 'dim'");
  int dim = j["dim"].get<int>();
  if (dim < 1) throw IoError("'dim' must be positive");
  std::vector<Box> boxes;
  if (j.contains("boxes")) {
    if (!j["boxes"].is_array()) throw IoError("'boxes' must be an array");
    for (const auto& b : j["boxes"]) boxes.push_back(box_from(b, dim));
  }
  try {
    return BoxUnion::normalized(dim, std::move(boxes));
  } catch (const std::invalid_argument& e) {
    throw IoError(e.what());
  }
}

std::string set_to_json_text(const BoxUnion& u) {
  json j;
  j["dim"] = u.dim();
  json arr = json::array();
  for (const Box& b : u.boxes()) arr.push_back(box_json(b));
  j["boxes"] = arr;
  return j.dump(2);
}

StepFunction step_from_json_text(const std::string& text) {
  json j = parse(text);
  if (!j.contains("dim")) throw IoError("step-function file needs 'dim'");
  int dim = j["dim"].get<int>();
  std::vector<StepFunction::Piece> pieces;
  if (j.contains("pieces")) {
    for (const auto& p : j["pieces"]) {
      if (!p.contains("box") || !p.contains("value")) throw IoError("piece needs box and value");
      pieces.push_back({box_from(p["box"], dim), rat_field(p["value"])});
    }
  }
  try {
    return StepFunction::make(dim, std::move(pieces));
  } catch (const std::invalid_argument& e) {
    throw IoError(e.what());
  } catch (const OverlappingPiecesError& e) {
    throw IoError(e.what());
  }
}

std::string step_to_json_text(const StepFunction& f) {
  json j;
  j["dim"] = f.dim();
  json arr = json::array();
  for (const auto& p : f.pieces()) {
    json e;
    e["box"] = box_json(p.box);
    e["value"] = rat_str(p.value);
    arr.push_back(e);
  }
  j["pieces"] = arr;
  return j.dump(2);
}

std::string bm_report_json(const BMReport& r) { return bm_report_fields(r).dump(2); }

std::string cylinder_report_json(const CylinderReport& r) {
  json j;
  j["clause"] = "cylinder-strict";
  switch (r.status) {
    case CylinderReport::Status::StrictCertified:
      j["status"] = "strict";
      break;
    case CylinderReport::Status::Undecided:
      j["status"] = "undecided";
      break;
    case CylinderReport::Status::OutOfTheoremScope:
      j["status"] = "out-of-theorem-scope";
      break;
  }
  j["product_lower"] = rat_str(r.product_lower);
  j["product_upper"] = rat_str(r.product_upper);
  j["product_lower_dec"] = rat_decimal(r.product_lower);
  j["sum_volume"] = rat_str(r.sum_volume);
  j["depth"] = r.depth;
  j["cell_pairs"] = r.cell_pairs;
  j["note"] = r.note;
  return j.dump(2);
}

std::string reduction_report_json(const ReductionReport& r) {
  json j;
  j["clause"] = "reduction-first-coordinate";
  j["lhs_lower"] = rat_str(r.lhs_lower);
  j["lhs_upper"] = rat_str(r.lhs_upper);
  j["tail_lower"] = rat_str(r.tail_lower);
  j["tail_upper"] = rat_str(r.tail_upper);
  j["len_sum"] = rat_str(r.len_sum);
  j["s1"] = rat_str(r.s1);
  j["z1"] = rat_str(r.z1);
  j["w1"] = rat_str(r.w1);
  j["grid_points"] = r.grid_points;
  j["inequality_ok"] = r.inequality_ok;
  j["equality_applicable"] = r.equality_applicable;
  j["equality_ok"] = r.equality_ok;
  j["note"] = r.note;
  return j.dump(2);
}

std::string pl_report_json(const PLReport& r) {
  json j;
  j["clause"] = "pl-nilpotent";
  j["hypothesis"] = r.hypothesis_verified ? "verified" : "unverified";
  if (!r.hypothesis_verified) j["failing_pair"] = r.failing_pair;
  j["hypothesis_depth"] = r.hypothesis_depth;
  j["integral_h"] = rat_str(r.integral_h);
  j["integral_f"] = rat_str(r.integral_f);
  j["integral_g"] = rat_str(r.integral_g);
  j["alpha"] = rat_str(r.alpha);
  if (r.rhs_exact) j["rhs"] = rat_str(*r.rhs_exact);
  j["margin_pow"] = rat_str(r.margin_pow);
  j["verdict"] = verdict_str(r.verdict);
  return j.dump(2);
}

std::string carnot_report_json(const CarnotReport& r) {
  json j;
  j["clause"] = r.form == CarnotForm::Root ? "carnot-bm-root" : "carnot-bm-product";
  j["alpha"] = rat_str(r.alpha);
  j["vol_a_dilated"] = rat_str(r.vol_a_dilated);
  j["vol_b_dilated"] = rat_str(r.vol_b_dilated);
  j["report"] = bm_report_fields(r.report);
  if (r.form == CarnotForm::Product) {
    j["lhs_pow"] = rat_str(r.lhs_pow);
    j["rhs_pow"] = rat_str(r.rhs_pow);
  }
  return j.dump(2);
}

std::string order_compare_json(const OrderCompareReport& r) {
  json j;
  j["clause"] = "bm-order-compare";
  j["ab"] = bm_report_fields(r.ab);
  j["ba"] = bm_report_fields(r.ba);
  j["min_side_ok"] = r.min_side_ok;
  return j.dump(2);
}

std::string sharpness_csv(const std::vector<SharpnessRow>& rows) {
  std::ostringstream os;
  os << "eps,lower,upper,rhs_m,verdict\n";
  for (const SharpnessRow& row : rows) {
    const BMReport& r = row.report;
    os << rat_str(row.eps) << "," << rat_str(r.lower) << "," << rat_str(r.upper) << ","
       << rat_str(r.rhs_exact ? *r.rhs_exact : r.rhs_hi) << "," << verdict_str(r.verdict) << "\n";
  }
  return os.str();
}

std::string sharpness_rows_json(const std::vector<SharpnessRow>& rows) {
  json arr = json::array();
  for (const SharpnessRow& row : rows) {
    json e;
    e["eps"] = rat_str(row.eps);
    e["report"] = bm_report_fields(row.report);
    arr.push_back(e);
  }
  return arr.dump(2);
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write '" + path + "'");
  out << content;
}

}  // namespace nilbm
