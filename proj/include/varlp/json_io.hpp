#pragma once

#include <variant>

#include <json.hpp>

#include "varlp/exponents.hpp"
#include "varlp/operators.hpp"
#include "varlp/set_iso.hpp"
#include "varlp/sparse.hpp"

// Interchange encodings used by every CLI subcommand:
//   ExponentSequence  {"prefix":[...], "tail":{"kind":"constant","value":v}}
//                     {"prefix":[...], "tail":{"kind":"periodic","pattern":[...]}}
//   SparseSequence    {"entries":[[index, re, im], ...]} ascending, no zeros
//   RegularSetIso     {"images":[[k,[n1,n2,...]], ...]} ascending
//   operators         {"kind":"lamperti"|"injection"|"matrix", ...}
namespace varlp::io {

using json = nlohmann::ordered_json;

json to_json(const ExponentSequence& p);
ExponentSequence exponent_sequence_from_json(const json& j);

json to_json(const SparseSequence& a);
SparseSequence sparse_from_json(const json& j);

json to_json(const RegularSetIso& t);
RegularSetIso set_iso_from_json(const json& j);

json to_json(const InjectionMap& theta);
InjectionMap injection_from_json(const json& j);

json to_json(const LampertiOperator& op);
LampertiOperator lamperti_from_json(const json& j);

json to_json(const MatrixOperator& m);
MatrixOperator matrix_from_json(const json& j);

using AnyOperator = std::variant<LampertiOperator, InjectionMap, MatrixOperator>;

json operator_to_json(const AnyOperator& op);
AnyOperator operator_from_json(const json& j);

json to_json(const IsomodularCertificate& cert);
json to_json(const IsometryCheckResult& result);
json to_json(const ThetaDecision& decision);
json to_json(const RecoveredStructure& structure);

}  // namespace varlp::io
