#pragma once

#include "formcount/counting.hpp"
#include "formcount/expansion.hpp"
#include "formcount/forms.hpp"
#include "formcount/local.hpp"

#include <json.hpp>  // vendored nlohmann/json single header

#include <complex>
#include <optional>
#include <string>

namespace formcount {

inline constexpr const char* kVersion = "0.1.0";

// Parses and validates the input document:
//   {"degree": d, "num_vars": s,
//    "forms": [{"name": ..., "terms": [{"exps": [...], "coeff": c}]}],
//    "target": {"m": ..., "psis": [{"terms": [...]}]}}   (optional)
// Unknown fields are rejected.
FormSystem parse_form_system(const nlohmann::json& doc);

// m recorded in the optional target block, if any.
std::optional<int> document_target_m(const nlohmann::json& doc);

// Builds the target system for block count m; absent targets are zero.
// Requires one psi per form and t-monomials of full degree.
TargetSystem target_from_document(const nlohmann::json& doc, int m, int num_forms,
                                  int degree);

nlohmann::json parse_json_text(const std::string& text);
// path "-" reads standard input.
nlohmann::json load_document(const std::string& path);

nlohmann::json bigint_json(const BigInt& v);
BigInt bigint_from_json(const nlohmann::json& v);
nlohmann::json rational_json(const BigRat& v);
nlohmann::json complex_json(std::complex<double> z);

nlohmann::json output_envelope(const std::string& command, nlohmann::json params,
                               nlohmann::json result, nlohmann::json diagnostics);

// Flattened coordinate name "x<i>_<k>" for block i >= 1, component k >= 1.
std::string coordinate_name(int flat_index, int s);

nlohmann::json count_result_json(const CountResult& r);
nlohmann::json local_density_json(const LocalDensity& d);

}  // namespace formcount
