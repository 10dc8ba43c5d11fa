#pragma once

#include <string>

#include "nilbm/step_function.hpp"
#include "nilbm/verify.hpp"

namespace nilbm {

inline constexpr const char* kVersion = "0.1.0";

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Structure-constants file:
///   {"dim": d, "brackets": [{"i": 1, "j": 2, "terms": {"3": "1/2"}}, ...]}
/// 1-based indices, rational strings, antisymmetric completion implied for
/// pairs stored one way.
StructureConstants sc_from_json_text(const std::string& text);
std::string sc_to_json_text(const StructureConstants& sc);

/// Law file:
///   {"dim": d, "n1": k, "kind": "group"|"custom",
///    "polys": [[{"coeff": "1/2", "monomial": {"z1": 1, "w2": 1}}, ...], ...]}
/// Monomials appear in graded-lex order; serialization is deterministic.
ProductLaw law_from_json_text(const std::string& text);
std::string law_to_json_text(const ProductLaw& law);

/// Content digest of the canonical law serialization (FNV-1a 64, hex).
std::string law_digest(const ProductLaw& law);

/// Set file: {"dim": d, "boxes": [[["lo","hi"], ...], ...]}.
BoxUnion set_from_json_text(const std::string& text);
std::string set_to_json_text(const BoxUnion& u);

/// Step-function file:
///   {"dim": d, "pieces": [{"box": [["lo","hi"], ...], "value": "p/q"}, ...]}
StepFunction step_from_json_text(const std::string& text);
std::string step_to_json_text(const StepFunction& f);

/// Report payloads (canonical, deterministic; decimal fields advisory).
std::string bm_report_json(const BMReport& r);
std::string cylinder_report_json(const CylinderReport& r);
std::string reduction_report_json(const ReductionReport& r);
std::string pl_report_json(const PLReport& r);
std::string carnot_report_json(const CarnotReport& r);
std::string order_compare_json(const OrderCompareReport& r);

/// CSV table for sharpness sweeps: eps,lower,upper,rhs_m,verdict.
std::string sharpness_csv(const std::vector<SharpnessRow>& rows);
std::string sharpness_rows_json(const std::vector<SharpnessRow>& rows);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

}  // namespace nilbm
