#include "varlp/json_io.hpp"

#include <string>
#include <utility>
#include <vector>

#include "varlp/errors.hpp"

namespace varlp::io {

namespace {

const json& require_field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) {
    fail(Errc::BadInput, std::string("missing field \"") + key + "\"");
  }
  return j.at(key);
}

double require_number(const json& j, const char* what) {
  if (!j.is_number()) fail(Errc::BadInput, std::string(what) + " must be a number");
  return j.get<double>();
}

Index require_index(const json& j, const char* what) {
  if (!j.is_number_unsigned() || j.get<std::uint64_t>() == 0) {
    fail(Errc::BadInput, std::string(what) + " must be a positive integer");
  }
  return j.get<std::uint64_t>();
}

json entries_to_json(const SparseSequence& a) {
  json entries = json::array();
  for (const auto& [n, v] : a.entries()) {
    entries.push_back(json::array({n, v.real(), v.imag()}));
  }
  return entries;
}

SparseSequence entries_from_json(const json& j, const char* what) {
  if (!j.is_array()) fail(Errc::BadInput, std::string(what) + " must be an array");
  std::vector<SparseSequence::Entry> entries;
  for (const json& e : j) {
    if (!e.is_array() || e.size() != 3) {
      fail(Errc::BadInput, std::string(what) + " entries must be [index, re, im]");
    }
    entries.emplace_back(require_index(e.at(0), "entry index"),
                         Complex(require_number(e.at(1), "entry re"),
                                 require_number(e.at(2), "entry im")));
  }
  return SparseSequence::from_entries(std::move(entries));
}

}  // namespace

json to_json(const ExponentSequence& p) {
  json tail;
  if (const auto* c = std::get_if<ExponentSequence::ConstantTail>(&p.tail())) {
    tail = {{"kind", "constant"}, {"value", c->value}};
  } else {
    tail = {{"kind", "periodic"},
            {"pattern", std::get<ExponentSequence::PeriodicTail>(p.tail()).pattern}};
  }
  return {{"prefix", p.prefix()}, {"tail", tail}};
}

ExponentSequence exponent_sequence_from_json(const json& j) {
  const json& prefix_json = require_field(j, "prefix");
  if (!prefix_json.is_array()) fail(Errc::BadInput, "prefix must be an array");
  std::vector<double> prefix;
  for (const json& v : prefix_json) prefix.push_back(require_number(v, "prefix value"));

  const json& tail = require_field(j, "tail");
  std::string kind = require_field(tail, "kind").get<std::string>();
  if (kind == "constant") {
    return ExponentSequence(
        std::move(prefix),
        ExponentSequence::ConstantTail{require_number(require_field(tail, "value"), "value")});
  }
  if (kind == "periodic") {
    const json& pattern_json = require_field(tail, "pattern");
    if (!pattern_json.is_array()) fail(Errc::BadInput, "pattern must be an array");
    std::vector<double> pattern;
    for (const json& v : pattern_json) pattern.push_back(require_number(v, "pattern value"));
    return ExponentSequence(std::move(prefix),
                            ExponentSequence::PeriodicTail{std::move(pattern)});
  }
  fail(Errc::BadInput, "tail kind must be \"constant\" or \"periodic\"");
}

json to_json(const SparseSequence& a) { return {{"entries", entries_to_json(a)}}; }

SparseSequence sparse_from_json(const json& j) {
  return entries_from_json(require_field(j, "entries"), "entries");
}

json to_json(const RegularSetIso& t) {
  json images = json::array();
  for (Index k = 1; k <= t.domain_bound(); ++k) {
    images.push_back(json::array({k, t.image_of(k)}));
  }
  return {{"images", images}};
}

RegularSetIso set_iso_from_json(const json& j) {
  const json& images_json = require_field(j, "images");
  if (!images_json.is_array()) fail(Errc::BadInput, "images must be an array");
  std::vector<std::vector<Index>> images;
  Index expected = 1;
  for (const json& item : images_json) {
    if (!item.is_array() || item.size() != 2) {
      fail(Errc::BadInput, "images entries must be [k, [n...]]");
    }
    if (require_index(item.at(0), "image key") != expected) {
      fail(Errc::BadInput, "image keys must be 1..K in order");
    }
    ++expected;
    if (!item.at(1).is_array()) fail(Errc::BadInput, "image must be an array");
    std::vector<Index> image;
    for (const json& n : item.at(1)) image.push_back(require_index(n, "image element"));
    images.push_back(std::move(image));
  }
  return RegularSetIso::from_family(std::move(images));
}

json to_json(const InjectionMap& theta) {
  json rule;
  if (const auto* s = std::get_if<InjectionMap::Shift>(&theta.rule())) {
    rule = {{"kind", "shift"}, {"offset", s->offset}};
  } else if (const auto* perm = std::get_if<InjectionMap::Permutation>(&theta.rule())) {
    rule = {{"kind", "permutation"}, {"map", perm->images}};
  } else {
    const auto& entries = std::get<InjectionMap::Table>(theta.rule()).entries;
    json map = json::array();
    for (const auto& [src, dst] : entries) map.push_back(json::array({src, dst}));
    rule = {{"kind", "table"}, {"map", map}};
  }
  return {{"kind", "injection"}, {"rule", rule}};
}

InjectionMap injection_from_json(const json& j) {
  const json& rule = require_field(j, "rule");
  std::string kind = require_field(rule, "kind").get<std::string>();
  if (kind == "shift") {
    return InjectionMap::shift(require_index(require_field(rule, "offset"), "offset"));
  }
  if (kind == "permutation") {
    const json& map = require_field(rule, "map");
    if (!map.is_array()) fail(Errc::BadInput, "permutation map must be an array");
    std::vector<Index> images;
    for (const json& v : map) images.push_back(require_index(v, "permutation image"));
    return InjectionMap::permutation(std::move(images));
  }
  if (kind == "table") {
    const json& map = require_field(rule, "map");
    if (!map.is_array()) fail(Errc::BadInput, "table map must be an array");
    std::vector<std::pair<Index, Index>> entries;
    for (const json& e : map) {
      if (!e.is_array() || e.size() != 2) {
        fail(Errc::BadInput, "table entries must be [n, theta(n)]");
      }
      entries.emplace_back(require_index(e.at(0), "table source"),
                           require_index(e.at(1), "table target"));
    }
    return InjectionMap::table(std::move(entries));
  }
  fail(Errc::BadInput, "injection rule kind must be shift, permutation or table");
}

json to_json(const LampertiOperator& op) {
  return {{"kind", "lamperti"},
          {"h", entries_to_json(op.multiplier())},
          {"iso", to_json(op.set_iso())}};
}

LampertiOperator lamperti_from_json(const json& j) {
  return LampertiOperator(entries_from_json(require_field(j, "h"), "h"),
                          set_iso_from_json(require_field(j, "iso")));
}

json to_json(const MatrixOperator& m) {
  json columns = json::array();
  for (const auto& [k, col] : m.columns()) {
    columns.push_back(json::array({k, entries_to_json(col)}));
  }
  return {{"kind", "matrix"}, {"n", m.dimension()}, {"columns", columns}};
}

MatrixOperator matrix_from_json(const json& j) {
  std::uint64_t n = require_index(require_field(j, "n"), "dimension");
  const json& columns_json = require_field(j, "columns");
  if (!columns_json.is_array()) fail(Errc::BadInput, "columns must be an array");
  std::vector<MatrixOperator::Column> columns;
  for (const json& item : columns_json) {
    if (!item.is_array() || item.size() != 2) {
      fail(Errc::BadInput, "columns entries must be [k, entries]");
    }
    columns.emplace_back(require_index(item.at(0), "column key"),
                         entries_from_json(item.at(1), "column"));
  }
  return MatrixOperator(n, std::move(columns));
}

json operator_to_json(const AnyOperator& op) {
  return std::visit([](const auto& inner) { return to_json(inner); }, op);
}

AnyOperator operator_from_json(const json& j) {
  std::string kind = require_field(j, "kind").get<std::string>();
  if (kind == "lamperti") return lamperti_from_json(j);
  if (kind == "injection") return injection_from_json(j);
  if (kind == "matrix") return matrix_from_json(j);
  fail(Errc::BadInput, "operator kind must be lamperti, injection or matrix");
}

json to_json(const IsomodularCertificate& cert) {
  json columns = json::array();
  for (const ColumnReport& report : cert.columns) {
    columns.push_back({{"k", report.column},
                       {"support", report.support},
                       {"exponent_match", report.exponent_match},
                       {"column_modular", report.column_modular}});
  }
  json j;
  j["verdict"] = isomodular_verdict_name(cert.verdict);
  j["structural_pass"] = cert.structural_pass;
  j["columns_disjoint"] = cert.columns_disjoint;
  j["witness"] = cert.witness ? to_json(*cert.witness) : json(nullptr);
  j["witness_gap"] = cert.witness_gap;
  j["columns"] = columns;
  return j;
}

json to_json(const IsometryCheckResult& result) {
  json j;
  j["pass"] = result.pass;
  j["samples"] = result.samples;
  j["witness"] = result.witness ? to_json(*result.witness) : json(nullptr);
  if (result.witness) {
    j["witness_input_norm"] = result.witness_input_norm;
    j["witness_output_norm"] = result.witness_output_norm;
  }
  return j;
}

json to_json(const ThetaDecision& decision) {
  json j;
  j["verdict"] = decision.isometric ? "isometric" : "not_isometric";
  if (!decision.isometric) {
    j["witness_index"] = decision.violating_index;
    j["witness"] = to_json(*decision.witness);
  }
  return j;
}

json to_json(const RecoveredStructure& structure) {
  return {{"iso", to_json(structure.iso)}, {"h", entries_to_json(structure.multiplier)}};
}

}  // namespace varlp::io
