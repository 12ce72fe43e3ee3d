#pragma once

// JSON (de)serialization for the external interfaces: bases, QAffineReal
// values, expression trees, class parameters, witnesses, and systems.
// Schema version tag: "nilseq/1".

#include <string>

#include "nilseq/classify.hpp"
#include "nilseq/seq.hpp"

// The vendored single header defines the library in namespace nlohmann.
#include "json.hpp"

namespace nilseq {

inline constexpr const char* kSchemaTag = "nilseq/1";

using Json = nlohmann::json;

Json basis_to_json(const BasisPtr& basis);
BasisPtr basis_from_json(const Json& j);

Json qaffine_to_json(const QAffineReal& v);

// Accepts the object form {"const":"p/q","coeffs":{"xi1":"r/s"}} or the
// string shorthand "1/2 + 3/4*xi1".
QAffineReal qaffine_from_json(const Json& j, const BasisPtr& basis);
QAffineReal parse_qaffine(const std::string& text, const BasisPtr& basis);

Json expr_to_json(const ExprPtr& e);
ExprPtr expr_from_json(const Json& j, const BasisPtr& basis);

// Whole-file helpers: {"schema":"nilseq/1","basis":{...},"expr":{...}}.
struct ExprFile {
  BasisPtr basis;
  ExprPtr expr;
};
ExprFile load_expr_file(const std::string& path, BasisPtr fallback_basis = nullptr);

Json class_params_to_json(const ClassParams& p);
ClassParams class_params_from_json(const Json& j, const BasisPtr& basis);
struct ClassParamsFile {
  BasisPtr basis;
  ClassParams params;
};
ClassParamsFile load_class_params_file(const std::string& path,
                                       BasisPtr fallback_basis = nullptr);

Json witness_to_json(const ClassWitness& w);
ClassWitness witness_from_json(const Json& j);
ClassWitness load_witness_file(const std::string& path);

Json ratmatrix_to_json(const RatMatrix& m);
RatMatrix ratmatrix_from_json(const Json& j);

struct PolarizedFile {
  BasisPtr basis;
  PolarizedSystem system;
};
PolarizedFile load_polarized_file(const std::string& path,
                                  BasisPtr fallback_basis = nullptr);

Json heisenberg_system_to_json(const HeisenbergSystem& sys);

Json load_json_file(const std::string& path);

}  // namespace nilseq
