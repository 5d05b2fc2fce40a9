//
// Copyright 2026 The anonarray Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//

// File formats and machine-readable reports.
//
//   schema       JSON  {"attributes": [{"name": ..., "values": [...]}, ...]}
//   array        CSV   header = attribute names in schema order, optionally
//                      preceded by an "id" column; one access profile per line
//   constraints  JSON  {"hard": [credential...], "soft": [...],
//                       "dont_care": [...], "allowed_column_sets": [[name...]]}
//                      where a credential is [[attribute, value], ...]
//
// Every report carries "format_version": 1.

#ifndef ANONARRAY_IO_HPP_
#define ANONARRAY_IO_HPP_

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <fstream>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <tuple>
#include <utility>
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

#include "anonarray/constraints.hpp"
#include "anonarray/construct.hpp"
#include "anonarray/core_model.hpp"
#include "anonarray/error.hpp"
#include "anonarray/homogeneity.hpp"
#include "anonarray/rational.hpp"
#include "anonarray/verify.hpp"

namespace anonarray::io {

using Json = nlohmann::ordered_json;

inline constexpr int kFormatVersion = 1;

namespace detail {

using PathElement = std::variant<std::string, std::size_t>;
using JsonPath = std::vector<PathElement>;

inline std::string pointer(const JsonPath& path) {
  std::string out;
  for (const PathElement& e : path) {
    out += "/";
    if (const auto* key = std::get_if<std::string>(&e)) {
      out += *key;
    } else {
      out += std::to_string(std::get<std::size_t>(e));
    }
  }
  return out.empty() ? "/" : out;
}

inline std::pair<std::size_t, std::size_t> line_column(std::string_view text,
                                                       std::size_t offset) {
  std::size_t line = 1;
  std::size_t column = 1;
  for (std::size_t i = 0; i < offset && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      column = 1;
    } else {
      ++column;
    }
  }
  return {line, column};
}

// Finds where the value at a JSON path starts in already-validated text, so
// semantic errors can name a line and column. nlohmann keeps no positions.
class JsonLocator {
 public:
  explicit JsonLocator(std::string_view text) : text_(text) {}

  std::optional<std::size_t> find(const JsonPath& path) {
    pos_ = 0;
    SkipSpace();
    for (const PathElement& e : path) {
      if (pos_ >= text_.size()) return std::nullopt;
      if (const auto* key = std::get_if<std::string>(&e)) {
        if (!EnterMember(*key)) return std::nullopt;
      } else if (!EnterElement(std::get<std::size_t>(e))) {
        return std::nullopt;
      }
    }
    return pos_;
  }

 private:
  void SkipSpace() {
    while (pos_ < text_.size() &&
           (text_[pos_] == ' ' || text_[pos_] == '\t' || text_[pos_] == '\n' ||
            text_[pos_] == '\r')) {
      ++pos_;
    }
  }

  std::string_view ReadString() {
    const std::size_t start = ++pos_;
    while (pos_ < text_.size() && text_[pos_] != '"') {
      if (text_[pos_] == '\\') ++pos_;
      ++pos_;
    }
    std::string_view raw = text_.substr(start, pos_ - start);
    ++pos_;
    return raw;
  }

  void SkipValue() {
    if (pos_ >= text_.size()) return;
    const char c = text_[pos_];
    if (c == '"') {
      ReadString();
    } else if (c == '{' || c == '[') {
      const char close = c == '{' ? '}' : ']';
      ++pos_;
      SkipSpace();
      while (pos_ < text_.size() && text_[pos_] != close) {
        if (c == '{') {
          ReadString();
          SkipSpace();
          ++pos_;  // ':'
          SkipSpace();
        }
        SkipValue();
        SkipSpace();
        if (pos_ < text_.size() && text_[pos_] == ',') ++pos_;
        SkipSpace();
      }
      ++pos_;
    } else {
      while (pos_ < text_.size() && text_[pos_] != ',' && text_[pos_] != '}' &&
             text_[pos_] != ']' && text_[pos_] != ' ' && text_[pos_] != '\n' &&
             text_[pos_] != '\r' && text_[pos_] != '\t') {
        ++pos_;
      }
    }
  }

  bool EnterMember(const std::string& key) {
    if (text_[pos_] != '{') return false;
    ++pos_;
    SkipSpace();
    while (pos_ < text_.size() && text_[pos_] != '}') {
      const std::string_view name = ReadString();
      SkipSpace();
      ++pos_;  // ':'
      SkipSpace();
      if (name == key) return true;
      SkipValue();
      SkipSpace();
      if (pos_ < text_.size() && text_[pos_] == ',') ++pos_;
      SkipSpace();
    }
    return false;
  }

  bool EnterElement(std::size_t index) {
    if (text_[pos_] != '[') return false;
    ++pos_;
    SkipSpace();
    for (std::size_t i = 0; pos_ < text_.size() && text_[pos_] != ']'; ++i) {
      if (i == index) return true;
      SkipValue();
      SkipSpace();
      if (pos_ < text_.size() && text_[pos_] == ',') ++pos_;
      SkipSpace();
    }
    return false;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

class JsonDocument {
 public:
  JsonDocument(std::string_view text, std::string source)
      : text_(text), source_(std::move(source)) {
    try {
      root_ = Json::parse(text_);
    } catch (const Json::parse_error& e) {
      const auto [line, column] =
          line_column(text_, e.byte > 0 ? e.byte - 1 : 0);
      throw ParseError(source_, line, column, "malformed JSON");
    }
  }

  const Json& root() const { return root_; }

  [[noreturn]] void Fail(const JsonPath& path,
                         const std::string& message) const {
    std::size_t line = 0;
    std::size_t column = 0;
    if (auto offset = JsonLocator(text_).find(path)) {
      std::tie(line, column) = line_column(text_, *offset);
    }
    throw ParseError(source_, line, column,
                     message + " (at " + pointer(path) + ")");
  }

  const std::string& source() const { return source_; }

 private:
  std::string_view text_;
  std::string source_;
  Json root_;
};

inline void check_format_version(const JsonDocument& doc) {
  const Json& root = doc.root();
  if (root.contains("format_version") &&
      root["format_version"] != Json(kFormatVersion)) {
    doc.Fail({"format_version"}, "unsupported format_version (expected " +
                                     std::to_string(kFormatVersion) + ")");
  }
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError(path, 0, 0, "cannot open file");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

struct CsvField {
  std::string text;
  std::size_t column;  // 1-based character position of the field start
};

// Splits one CSV line. Quoted fields may contain commas and doubled quotes.
inline std::vector<CsvField> split_csv_line(std::string_view line,
                                            const std::string& source,
                                            std::size_t line_number) {
  std::vector<CsvField> fields;
  std::size_t i = 0;
  while (true) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
    CsvField field{"", i + 1};
    if (i < line.size() && line[i] == '"') {
      ++i;
      while (true) {
        if (i >= line.size()) {
          throw ParseError(source, line_number, field.column,
                           "unterminated quoted field");
        }
        if (line[i] == '"') {
          if (i + 1 < line.size() && line[i + 1] == '"') {
            field.text += '"';
            i += 2;
            continue;
          }
          ++i;
          break;
        }
        field.text += line[i++];
      }
      while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
      if (i < line.size() && line[i] != ',') {
        throw ParseError(source, line_number, i + 1,
                         "unexpected text after quoted field");
      }
    } else {
      const std::size_t start = i;
      while (i < line.size() && line[i] != ',') ++i;
      std::string_view raw = line.substr(start, i - start);
      while (!raw.empty() && (raw.back() == ' ' || raw.back() == '\t')) {
        raw.remove_suffix(1);
      }
      field.text = std::string(raw);
    }
    fields.push_back(std::move(field));
    if (i >= line.size()) break;
    ++i;  // ','
  }
  return fields;
}

inline std::string quote_csv(const std::string& text) {
  if (text.find_first_of(",\"\n\r") == std::string::npos &&
      (text.empty() || (text.front() != ' ' && text.back() != ' '))) {
    return text;
  }
  std::string out = "\"";
  for (char c : text) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Schema documents

inline AttributeSchema parse_schema(std::string_view text,
                                    const std::string& source = "") {
  detail::JsonDocument doc(text, source);
  const Json& root = doc.root();
  if (!root.is_object()) doc.Fail({}, "schema must be a JSON object");
  for (const auto& item : root.items()) {
    if (item.key() != "attributes" && item.key() != "format_version") {
      doc.Fail({item.key()}, "unknown field '" + item.key() + "'");
    }
  }
  detail::check_format_version(doc);
  if (!root.contains("attributes") || !root["attributes"].is_array()) {
    doc.Fail({}, "schema needs an \"attributes\" array");
  }
  std::vector<AttributeDef> defs;
  std::set<std::string> names;
  const Json& attrs = root["attributes"];
  for (std::size_t i = 0; i < attrs.size(); ++i) {
    const Json& a = attrs[i];
    detail::JsonPath at{"attributes", i};
    if (!a.is_object() || !a.contains("name") || !a["name"].is_string()) {
      doc.Fail(at, "attribute needs a string \"name\"");
    }
    AttributeDef def;
    def.name = a["name"].get<std::string>();
    if (def.name.empty()) {
      doc.Fail({"attributes", i, "name"}, "attribute name is empty");
    }
    if (!names.insert(def.name).second) {
      doc.Fail({"attributes", i, "name"},
               "duplicate attribute name '" + def.name + "'");
    }
    if (!a.contains("values") || !a["values"].is_array() ||
        a["values"].empty()) {
      doc.Fail(at, "attribute '" + def.name +
                       "' needs a non-empty \"values\" array");
    }
    std::set<std::string> seen;
    for (std::size_t v = 0; v < a["values"].size(); ++v) {
      const Json& value = a["values"][v];
      if (!value.is_string()) {
        doc.Fail({"attributes", i, "values", v}, "value must be a string");
      }
      std::string label = value.get<std::string>();
      if (!seen.insert(label).second) {
        doc.Fail({"attributes", i, "values", v},
                 "duplicate value '" + label + "'");
      }
      def.values.push_back(std::move(label));
    }
    defs.push_back(std::move(def));
  }
  if (defs.empty()) doc.Fail({"attributes"}, "schema has no attributes");
  return AttributeSchema(std::move(defs));
}

inline std::string serialize_schema(const AttributeSchema& schema) {
  Json doc;
  doc["attributes"] = Json::array();
  for (const AttributeDef& def : schema.attributes()) {
    doc["attributes"].push_back({{"name", def.name}, {"values", def.values}});
  }
  return doc.dump(2) + "\n";
}

inline AttributeSchema load_schema(const std::string& path) {
  return parse_schema(detail::read_file(path), path);
}

// ---------------------------------------------------------------------------
// Array documents

inline AccessProfileArray parse_array(std::string_view text,
                                      const AttributeSchema& schema,
                                      const std::string& source = "") {
  std::vector<ValueTuple> rows;
  std::vector<std::string> labels;
  bool header_seen = false;
  bool has_id = false;
  std::size_t line_number = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    start = end + 1;
    ++line_number;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.find_first_not_of(" \t") == std::string_view::npos) {
      if (end == text.size()) break;
      continue;
    }
    const auto fields = detail::split_csv_line(line, source, line_number);
    if (!header_seen) {
      header_seen = true;
      has_id = fields.size() == schema.size() + 1 && fields[0].text == "id";
      const std::size_t offset = has_id ? 1 : 0;
      if (fields.size() != schema.size() + offset) {
        throw ParseError(source, line_number, 1,
                         "header has " + std::to_string(fields.size()) +
                             " columns, schema has " +
                             std::to_string(schema.size()) + " attributes");
      }
      for (std::size_t j = 0; j < schema.size(); ++j) {
        const auto& f = fields[j + offset];
        if (f.text != schema.name(j)) {
          throw ParseError(source, line_number, f.column,
                           "column " + std::to_string(j + offset + 1) +
                               " is '" + f.text + "', schema order expects '" +
                               schema.name(j) + "'");
        }
      }
      continue;
    }
    const std::size_t offset = has_id ? 1 : 0;
    if (fields.size() != schema.size() + offset) {
      throw ParseError(source, line_number, 1,
                       "row has " + std::to_string(fields.size()) +
                           " fields, expected " +
                           std::to_string(schema.size() + offset));
    }
    ValueTuple row(schema.size());
    for (std::size_t j = 0; j < schema.size(); ++j) {
      const auto& f = fields[j + offset];
      auto value = schema.find_value(j, f.text);
      if (!value) {
        throw ParseError(source, line_number, f.column,
                         "'" + f.text + "' is not a value of attribute '" +
                             schema.name(j) + "'");
      }
      row[j] = *value;
    }
    rows.push_back(std::move(row));
    if (has_id) labels.push_back(fields[0].text);
    if (end == text.size()) break;
  }
  if (!header_seen) throw ParseError(source, 1, 1, "missing header line");
  return AccessProfileArray(schema, rows, std::move(labels));
}

inline std::string serialize_array(const AccessProfileArray& array) {
  const AttributeSchema& schema = array.schema();
  std::string out;
  if (array.has_row_labels()) out += "id,";
  for (std::size_t j = 0; j < schema.size(); ++j) {
    if (j > 0) out += ",";
    out += detail::quote_csv(schema.name(j));
  }
  out += "\n";
  for (std::size_t i = 0; i < array.num_rows(); ++i) {
    if (array.has_row_labels()) {
      out += detail::quote_csv(array.row_labels()[i]) + ",";
    }
    for (std::size_t j = 0; j < schema.size(); ++j) {
      if (j > 0) out += ",";
      out += detail::quote_csv(schema.label(j, array.at(i, j)));
    }
    out += "\n";
  }
  return out;
}

inline AccessProfileArray load_array(const std::string& path,
                                     const AttributeSchema& schema) {
  return parse_array(detail::read_file(path), schema, path);
}

// ---------------------------------------------------------------------------
// Constraint documents

inline ConstraintSet parse_constraints(std::string_view text,
                                       const AttributeSchema& schema,
                                       const std::string& source = "") {
  detail::JsonDocument doc(text, source);
  const Json& root = doc.root();
  if (!root.is_object()) doc.Fail({}, "constraints must be a JSON object");
  for (const auto& item : root.items()) {
    const std::string& key = item.key();
    if (key != "hard" && key != "soft" && key != "dont_care" &&
        key != "allowed_column_sets" && key != "format_version") {
      doc.Fail({key}, "unknown field '" + key + "'");
    }
  }
  detail::check_format_version(doc);

  auto attribute_at = [&](const Json& name, const detail::JsonPath& path) {
    if (!name.is_string()) doc.Fail(path, "attribute name must be a string");
    auto index = schema.find_attribute(name.get<std::string>());
    if (!index) {
      doc.Fail(path, "unknown attribute '" + name.get<std::string>() + "'");
    }
    return *index;
  };

  auto read_kind = [&](const std::string& kind) {
    std::vector<Credential> out;
    if (!root.contains(kind)) return out;
    const Json& list = root[kind];
    if (!list.is_array()) doc.Fail({kind}, "\"" + kind + "\" must be a list");
    for (std::size_t c = 0; c < list.size(); ++c) {
      const Json& credential = list[c];
      if (!credential.is_array() || credential.empty()) {
        doc.Fail({kind, c}, "a credential is a non-empty list of "
                            "[attribute, value] pairs");
      }
      std::vector<AttributeValue> pairs;
      std::set<std::size_t> attributes;
      for (std::size_t p = 0; p < credential.size(); ++p) {
        const Json& pair = credential[p];
        if (!pair.is_array() || pair.size() != 2) {
          doc.Fail({kind, c, p}, "expected an [attribute, value] pair");
        }
        const std::size_t a = attribute_at(pair[0], {kind, c, p, std::size_t{0}});
        if (!pair[1].is_string()) {
          doc.Fail({kind, c, p, std::size_t{1}}, "value must be a string");
        }
        auto v = schema.find_value(a, pair[1].get<std::string>());
        if (!v) {
          doc.Fail({kind, c, p, std::size_t{1}}, "'" + pair[1].get<std::string>() +
                                        "' is not a value of attribute '" +
                                        schema.name(a) + "'");
        }
        if (!attributes.insert(a).second) {
          doc.Fail({kind, c, p}, "attribute '" + schema.name(a) +
                                     "' appears twice in one credential");
        }
        pairs.push_back({a, *v});
      }
      out.emplace_back(std::move(pairs));
    }
    return out;
  };

  std::vector<Credential> hard = read_kind("hard");
  std::vector<Credential> soft = read_kind("soft");
  std::vector<Credential> dont_care = read_kind("dont_care");

  std::optional<std::vector<ColumnSet>> allowed;
  if (root.contains("allowed_column_sets")) {
    const Json& list = root["allowed_column_sets"];
    if (!list.is_array()) {
      doc.Fail({"allowed_column_sets"}, "must be a list of attribute lists");
    }
    allowed.emplace();
    for (std::size_t s = 0; s < list.size(); ++s) {
      if (!list[s].is_array() || list[s].empty()) {
        doc.Fail({"allowed_column_sets", s},
                 "must be a non-empty list of attribute names");
      }
      ColumnSet columns;
      for (std::size_t i = 0; i < list[s].size(); ++i) {
        columns.push_back(
            attribute_at(list[s][i], {"allowed_column_sets", s, i}));
      }
      std::sort(columns.begin(), columns.end());
      if (std::adjacent_find(columns.begin(), columns.end()) !=
          columns.end()) {
        doc.Fail({"allowed_column_sets", s}, "repeated attribute");
      }
      allowed->push_back(std::move(columns));
    }
  }

  try {
    return ConstraintSet(schema, std::move(hard), std::move(soft),
                         std::move(dont_care), std::move(allowed));
  } catch (const InvalidParameter& e) {
    doc.Fail({}, e.what());
  }
}

inline Json credential_to_json(const Credential& c,
                               const AttributeSchema& schema) {
  Json pairs = Json::array();
  for (const AttributeValue& p : c.pairs()) {
    pairs.push_back(
        Json::array({schema.name(p.attribute), schema.label(p.attribute, p.value)}));
  }
  return pairs;
}

inline std::string serialize_constraints(const ConstraintSet& constraints,
                                         const AttributeSchema& schema) {
  Json doc;
  auto dump_kind = [&](const char* key, const std::vector<Credential>& list) {
    doc[key] = Json::array();
    for (const Credential& c : list) {
      doc[key].push_back(credential_to_json(c, schema));
    }
  };
  dump_kind("hard", constraints.hard());
  dump_kind("soft", constraints.soft());
  dump_kind("dont_care", constraints.dont_care());
  if (constraints.allowed_column_sets()) {
    doc["allowed_column_sets"] = Json::array();
    for (const ColumnSet& columns : *constraints.allowed_column_sets()) {
      Json names = Json::array();
      for (std::size_t c : columns) names.push_back(schema.name(c));
      doc["allowed_column_sets"].push_back(std::move(names));
    }
  }
  return doc.dump(2) + "\n";
}

inline ConstraintSet load_constraints(const std::string& path,
                                      const AttributeSchema& schema) {
  return parse_constraints(detail::read_file(path), schema, path);
}

// ---------------------------------------------------------------------------
// Reports

inline Json rational_to_json(const Rational& value) {
  return Json{{"exact", format_exact(value)}, {"value", to_double(value)}};
}

inline Json credential_count_to_json(const CredentialCount& cc,
                                     const AttributeSchema& schema) {
  return Json{{"credential", credential_to_json(cc.credential, schema)},
              {"count", cc.count}};
}

inline Json guarantee_to_json(const GuaranteeReport& report,
                              const AttributeSchema& schema) {
  Json doc;
  doc["format_version"] = kFormatVersion;
  doc["t"] = report.t;
  doc["r"] = report.r;
  doc["min_witness"] = report.min_witness
                           ? credential_count_to_json(*report.min_witness, schema)
                           : Json(nullptr);
  doc["hard_violations"] = Json::array();
  for (const HardViolation& v : report.hard_violations) {
    doc["hard_violations"].push_back(
        {{"row", v.row}, {"constraint", credential_to_json(v.constraint, schema)}});
  }
  doc["soft_appearances"] = Json::array();
  for (const CredentialCount& cc : report.soft_appearances) {
    doc["soft_appearances"].push_back(credential_count_to_json(cc, schema));
  }
  doc["inert_constraints"] = Json::array();
  for (const Credential& c : report.inert_constraints) {
    doc["inert_constraints"].push_back(credential_to_json(c, schema));
  }
  doc["trivial_attributes"] = Json::array();
  for (std::size_t a : schema.trivial_attributes()) {
    doc["trivial_attributes"].push_back(schema.name(a));
  }
  return doc;
}

inline Json validation_to_json(const ValidationResult& result,
                               std::int64_t r_target,
                               const AttributeSchema& schema) {
  Json doc = guarantee_to_json(result.report, schema);
  doc["r_target"] = r_target;
  doc["valid"] = result.valid;
  doc["violations"] = Json::array();
  for (const Violation& v : result.violations) {
    doc["violations"].push_back(
        {{"credential", credential_to_json(v.credential, schema)},
         {"count", v.count},
         {"kind", std::string(to_string(v.kind))}});
  }
  return doc;
}

inline Json profile_to_json(const AnonymityProfile& profile,
                            const AttributeSchema& schema) {
  Json doc;
  doc["format_version"] = kFormatVersion;
  doc["entries"] = Json::array();
  for (const ProfileEntry& e : profile.entries) {
    doc["entries"].push_back(
        {{"t", e.t},
         {"r", e.r},
         {"witness", e.witness ? credential_count_to_json(*e.witness, schema)
                               : Json(nullptr)}});
  }
  doc["hard_violations"] = Json::array();
  for (const HardViolation& v : profile.hard_violations) {
    doc["hard_violations"].push_back(
        {{"row", v.row}, {"constraint", credential_to_json(v.constraint, schema)}});
  }
  return doc;
}

inline Json homogeneity_to_json(const HomogeneityReport& report,
                                const AccessProfileArray& array) {
  Json doc;
  doc["format_version"] = kFormatVersion;
  doc["t"] = report.t;
  doc["min"] = rational_to_json(report.min);
  doc["max"] = rational_to_json(report.max);
  doc["global"] = rational_to_json(report.global);
  doc["local"] = Json::array();
  for (std::size_t i = 0; i < report.local.size(); ++i) {
    Json row = rational_to_json(report.local[i]);
    row["row"] = i;
    row["label"] = vertex_label(array, i);
    row["neighbors"] = report.neighbor_counts[i];
    doc["local"].push_back(std::move(row));
  }
  doc["isolated"] = report.isolated;
  return doc;
}

inline Json closeness_to_json(const ClosenessMatrix& matrix) {
  Json doc;
  doc["format_version"] = kFormatVersion;
  doc["matrix"] = Json::array();
  for (std::size_t i = 0; i < matrix.size(); ++i) {
    Json row = Json::array();
    for (std::size_t j = 0; j < matrix.size(); ++j) {
      row.push_back(format_exact(matrix.at(i, j)));
    }
    doc["matrix"].push_back(std::move(row));
  }
  doc["histograms"] = Json::array();
  for (std::size_t i = 0; i < matrix.size(); ++i) {
    Json bins = Json::array();
    for (const auto& [value, count] : closeness_histogram(matrix, i)) {
      bins.push_back({{"closeness", format_exact(value)}, {"rows", count}});
    }
    doc["histograms"].push_back({{"row", i}, {"bins", std::move(bins)}});
  }
  return doc;
}

inline Json feasibility_to_json(const FeasibilityReport& report,
                                std::size_t t, const AttributeSchema& schema) {
  Json doc;
  doc["format_version"] = kFormatVersion;
  doc["t"] = t;
  doc["feasible"] = report.feasible;
  doc["implicit_hard"] = Json::array();
  for (const Credential& c : report.implicit_hard) {
    doc["implicit_hard"].push_back(credential_to_json(c, schema));
  }
  doc["witnesses"] = Json::array();
  for (const InfeasibilityWitness& w : report.witnesses) {
    doc["witnesses"].push_back(
        {{"credential", credential_to_json(w.credential, schema)},
         {"reason", w.reason}});
  }
  doc["inert_constraints"] = Json::array();
  for (const Credential& c : report.inert) {
    doc["inert_constraints"].push_back(credential_to_json(c, schema));
  }
  return doc;
}

inline Json deficiency_to_json(const Deficiency& deficiency,
                               const AttributeSchema& schema) {
  Json out = Json::array();
  for (const auto& [credential, need] : deficiency) {
    out.push_back({{"credential", credential_to_json(credential, schema)},
                   {"shortfall", need}});
  }
  return out;
}

}  // namespace anonarray::io

#endif  // ANONARRAY_IO_HPP_
