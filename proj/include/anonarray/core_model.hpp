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

// Schema, access-profile array and credential types shared by every other
// module, plus the column-set enumeration and credential counting primitives
// the anonymity and homogeneity computations are built on.
//
// Values are stored as integer indices into each attribute's domain; string
// labels only matter at the I/O boundary.

#ifndef ANONARRAY_CORE_MODEL_HPP_
#define ANONARRAY_CORE_MODEL_HPP_

#include <algorithm>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "anonarray/error.hpp"

namespace anonarray {

// A sorted set of attribute (column) indices.
using ColumnSet = std::vector<std::size_t>;

// Value indices of one credential, aligned with a ColumnSet.
using ValueTuple = std::vector<std::uint32_t>;

struct AttributeDef {
  std::string name;
  std::vector<std::string> values;

  friend bool operator==(const AttributeDef&, const AttributeDef&) = default;
};

class AttributeSchema {
 public:
  AttributeSchema() = default;

  explicit AttributeSchema(std::vector<AttributeDef> attributes)
      : attributes_(std::move(attributes)) {
    for (std::size_t i = 0; i < attributes_.size(); ++i) {
      const AttributeDef& def = attributes_[i];
      if (def.name.empty()) {
        throw InvalidParameter("attribute " + std::to_string(i) +
                               " has an empty name");
      }
      if (def.values.empty()) {
        throw InvalidParameter("attribute '" + def.name + "' has no values");
      }
      for (std::size_t j = 0; j < i; ++j) {
        if (attributes_[j].name == def.name) {
          throw InvalidParameter("duplicate attribute name '" + def.name + "'");
        }
      }
      for (std::size_t a = 0; a < def.values.size(); ++a) {
        for (std::size_t b = 0; b < a; ++b) {
          if (def.values[a] == def.values[b]) {
            throw InvalidParameter("attribute '" + def.name +
                                   "' has duplicate value '" + def.values[a] +
                                   "'");
          }
        }
      }
    }
  }

  std::size_t size() const { return attributes_.size(); }
  const std::vector<AttributeDef>& attributes() const { return attributes_; }
  const AttributeDef& attribute(std::size_t index) const {
    return attributes_.at(index);
  }
  std::size_t domain_size(std::size_t index) const {
    return attributes_.at(index).values.size();
  }
  const std::string& name(std::size_t index) const {
    return attributes_.at(index).name;
  }
  const std::string& label(std::size_t attribute, std::uint32_t value) const {
    return attributes_.at(attribute).values.at(value);
  }

  std::optional<std::size_t> find_attribute(std::string_view name) const {
    for (std::size_t i = 0; i < attributes_.size(); ++i) {
      if (attributes_[i].name == name) return i;
    }
    return std::nullopt;
  }

  std::optional<std::uint32_t> find_value(std::size_t attribute,
                                          std::string_view label) const {
    const auto& values = attributes_.at(attribute).values;
    for (std::size_t v = 0; v < values.size(); ++v) {
      if (values[v] == label) return static_cast<std::uint32_t>(v);
    }
    return std::nullopt;
  }

  // Attributes with a single value. Every row carries that value, so they
  // can never help anonymity; reports flag them.
  std::vector<std::size_t> trivial_attributes() const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < attributes_.size(); ++i) {
      if (attributes_[i].values.size() == 1) out.push_back(i);
    }
    return out;
  }

  friend bool operator==(const AttributeSchema&,
                         const AttributeSchema&) = default;

 private:
  std::vector<AttributeDef> attributes_;
};

struct AttributeValue {
  std::size_t attribute;
  std::uint32_t value;

  friend auto operator<=>(const AttributeValue&,
                          const AttributeValue&) = default;
};

// A set of 1..k attribute-value pairs with distinct attributes, kept sorted
// by attribute index.
//
// Ordering compares the attribute lists first and the values second, so a
// sorted sequence of credentials is grouped by column set and lexicographic
// within each group.
class Credential {
 public:
  explicit Credential(std::vector<AttributeValue> pairs)
      : pairs_(std::move(pairs)) {
    std::sort(pairs_.begin(), pairs_.end());
    if (pairs_.empty()) {
      throw InvalidParameter("a credential needs at least one attribute");
    }
    for (std::size_t i = 1; i < pairs_.size(); ++i) {
      if (pairs_[i].attribute == pairs_[i - 1].attribute) {
        throw InvalidParameter("credential repeats attribute " +
                               std::to_string(pairs_[i].attribute));
      }
    }
  }

  Credential(const AttributeSchema& schema, std::vector<AttributeValue> pairs)
      : Credential(std::move(pairs)) {
    CheckAgainst(schema);
  }

  static Credential FromTuple(const ColumnSet& columns,
                              std::span<const std::uint32_t> values) {
    if (columns.size() != values.size()) {
      throw InvalidParameter("column set and value tuple differ in length");
    }
    std::vector<AttributeValue> pairs;
    pairs.reserve(columns.size());
    for (std::size_t i = 0; i < columns.size(); ++i) {
      pairs.push_back({columns[i], values[i]});
    }
    return Credential(std::move(pairs));
  }

  void CheckAgainst(const AttributeSchema& schema) const {
    for (const AttributeValue& p : pairs_) {
      if (p.attribute >= schema.size()) {
        throw InvalidParameter("credential attribute " +
                               std::to_string(p.attribute) +
                               " is outside the schema");
      }
      if (p.value >= schema.domain_size(p.attribute)) {
        throw InvalidParameter("credential value " + std::to_string(p.value) +
                               " is outside the domain of '" +
                               schema.name(p.attribute) + "'");
      }
    }
  }

  std::span<const AttributeValue> pairs() const { return pairs_; }
  std::size_t size() const { return pairs_.size(); }

  ColumnSet attributes() const {
    ColumnSet out;
    out.reserve(pairs_.size());
    for (const auto& p : pairs_) out.push_back(p.attribute);
    return out;
  }

  ValueTuple values() const {
    ValueTuple out;
    out.reserve(pairs_.size());
    for (const auto& p : pairs_) out.push_back(p.value);
    return out;
  }

  std::optional<std::uint32_t> value_of(std::size_t attribute) const {
    for (const auto& p : pairs_) {
      if (p.attribute == attribute) return p.value;
    }
    return std::nullopt;
  }

  // True when every pair of `other` is also a pair of this credential.
  bool contains(const Credential& other) const {
    return std::includes(pairs_.begin(), pairs_.end(), other.pairs_.begin(),
                         other.pairs_.end());
  }

  // True when a full access profile possesses this credential.
  bool matches_row(std::span<const std::uint32_t> row) const {
    for (const auto& p : pairs_) {
      if (p.attribute >= row.size() || row[p.attribute] != p.value) {
        return false;
      }
    }
    return true;
  }

  std::string describe(const AttributeSchema& schema) const {
    std::string out = "{";
    for (std::size_t i = 0; i < pairs_.size(); ++i) {
      if (i > 0) out += ",";
      out += "(" + schema.name(pairs_[i].attribute) + "," +
             schema.label(pairs_[i].attribute, pairs_[i].value) + ")";
    }
    return out + "}";
  }

  friend bool operator==(const Credential&, const Credential&) = default;

  friend std::strong_ordering operator<=>(const Credential& a,
                                          const Credential& b) {
    const std::size_t n = std::min(a.pairs_.size(), b.pairs_.size());
    for (std::size_t i = 0; i < n; ++i) {
      if (auto c = a.pairs_[i].attribute <=> b.pairs_[i].attribute; c != 0) {
        return c;
      }
    }
    if (auto c = a.pairs_.size() <=> b.pairs_.size(); c != 0) return c;
    for (std::size_t i = 0; i < n; ++i) {
      if (auto c = a.pairs_[i].value <=> b.pairs_[i].value; c != 0) return c;
    }
    return std::strong_ordering::equal;
  }

 private:
  std::vector<AttributeValue> pairs_;
};

// An N x k matrix of value indices over a schema. Rows are access profiles;
// duplicates are allowed. N = 0 is permitted so an empty base can be padded.
class AccessProfileArray {
 public:
  explicit AccessProfileArray(AttributeSchema schema)
      : schema_(std::move(schema)) {}

  AccessProfileArray(AttributeSchema schema,
                     const std::vector<ValueTuple>& rows,
                     std::vector<std::string> row_labels = {})
      : schema_(std::move(schema)), row_labels_(std::move(row_labels)) {
    const std::size_t k = schema_.size();
    cells_.reserve(rows.size() * k);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != k) {
        throw InvalidParameter("row " + std::to_string(i) + " has " +
                               std::to_string(rows[i].size()) +
                               " cells, expected " + std::to_string(k));
      }
      for (std::size_t j = 0; j < k; ++j) {
        if (rows[i][j] >= schema_.domain_size(j)) {
          throw InvalidParameter(
              "row " + std::to_string(i) + ", attribute '" + schema_.name(j) +
              "': value index " + std::to_string(rows[i][j]) +
              " is outside the domain");
        }
      }
      cells_.insert(cells_.end(), rows[i].begin(), rows[i].end());
    }
    num_rows_ = rows.size();
    if (!row_labels_.empty() && row_labels_.size() != num_rows_) {
      throw InvalidParameter("row label count does not match row count");
    }
  }

  const AttributeSchema& schema() const { return schema_; }
  std::size_t num_rows() const { return num_rows_; }
  std::size_t num_columns() const { return schema_.size(); }

  std::span<const std::uint32_t> row(std::size_t i) const {
    if (i >= num_rows_) {
      throw InvalidParameter("row " + std::to_string(i) + " out of range");
    }
    return {cells_.data() + i * schema_.size(), schema_.size()};
  }

  std::uint32_t at(std::size_t i, std::size_t j) const {
    return cells_[i * schema_.size() + j];
  }

  bool has_row_labels() const { return !row_labels_.empty(); }
  const std::vector<std::string>& row_labels() const { return row_labels_; }

  std::vector<ValueTuple> rows() const {
    std::vector<ValueTuple> out;
    out.reserve(num_rows_);
    for (std::size_t i = 0; i < num_rows_; ++i) {
      auto r = row(i);
      out.emplace_back(r.begin(), r.end());
    }
    return out;
  }

  friend bool operator==(const AccessProfileArray&,
                         const AccessProfileArray&) = default;

 private:
  AttributeSchema schema_;
  std::vector<std::uint32_t> cells_;
  std::size_t num_rows_ = 0;
  std::vector<std::string> row_labels_;
};

// C(n, k), exact while the result fits in 64 bits.
inline std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  std::uint64_t result = 1;
  for (std::uint64_t i = 0; i < k; ++i) {
    result = result * (n - i) / (i + 1);
  }
  return result;
}

inline void check_credential_size(std::size_t k, std::size_t t) {
  if (t < 1 || t > k) {
    throw InvalidParameter("credential size t=" + std::to_string(t) +
                           " must lie in [1, " + std::to_string(k) + "]");
  }
}

inline void check_column_set(const AttributeSchema& schema,
                             const ColumnSet& columns) {
  if (columns.empty()) throw InvalidParameter("empty column set");
  for (std::size_t i = 0; i < columns.size(); ++i) {
    if (columns[i] >= schema.size()) {
      throw InvalidParameter("column index " + std::to_string(columns[i]) +
                             " is outside the schema");
    }
    if (i > 0 && columns[i] <= columns[i - 1]) {
      throw InvalidParameter("column set must be strictly increasing");
    }
  }
}

// All t-subsets of [0, k) in lexicographic order.
inline std::vector<ColumnSet> enumerate_column_sets(std::size_t k,
                                                    std::size_t t) {
  check_credential_size(k, t);
  std::vector<ColumnSet> out;
  out.reserve(static_cast<std::size_t>(binomial(k, t)));
  ColumnSet current(t);
  for (std::size_t i = 0; i < t; ++i) current[i] = i;
  while (true) {
    out.push_back(current);
    // Advance the rightmost index that still has room.
    std::size_t i = t;
    while (i > 0 && current[i - 1] == k - t + (i - 1)) --i;
    if (i == 0) break;
    ++current[i - 1];
    for (std::size_t j = i; j < t; ++j) current[j] = current[j - 1] + 1;
  }
  return out;
}

// Calls fn(const ValueTuple&) for every assignment of values to `columns`,
// in lexicographic order.
template <typename Fn>
void for_each_assignment(const AttributeSchema& schema,
                         const ColumnSet& columns, Fn&& fn) {
  ValueTuple tuple(columns.size(), 0);
  while (true) {
    fn(static_cast<const ValueTuple&>(tuple));
    std::size_t i = columns.size();
    while (true) {
      if (i == 0) return;
      --i;
      if (++tuple[i] < schema.domain_size(columns[i])) break;
      tuple[i] = 0;
    }
  }
}

inline ValueTuple project_row(std::span<const std::uint32_t> row,
                              const ColumnSet& columns) {
  ValueTuple out;
  out.reserve(columns.size());
  for (std::size_t c : columns) out.push_back(row[c]);
  return out;
}

// Occurrence counts of the credentials appearing on one column set. Only
// tuples that occur are stored, so memory is bounded by N rather than the
// product of the domain sizes.
class CredentialCountTable {
 public:
  CredentialCountTable(ColumnSet columns,
                       std::map<ValueTuple, std::int64_t> counts)
      : columns_(std::move(columns)), counts_(std::move(counts)) {}

  const ColumnSet& column_set() const { return columns_; }
  const std::map<ValueTuple, std::int64_t>& counts() const { return counts_; }

  std::int64_t count_of(const ValueTuple& tuple) const {
    auto it = counts_.find(tuple);
    return it == counts_.end() ? 0 : it->second;
  }

  std::int64_t total() const {
    std::int64_t sum = 0;
    for (const auto& [tuple, count] : counts_) sum += count;
    return sum;
  }

 private:
  ColumnSet columns_;
  std::map<ValueTuple, std::int64_t> counts_;
};

inline CredentialCountTable count_credentials(const AccessProfileArray& array,
                                              const ColumnSet& columns) {
  check_column_set(array.schema(), columns);
  std::map<ValueTuple, std::int64_t> counts;
  for (std::size_t i = 0; i < array.num_rows(); ++i) {
    ++counts[project_row(array.row(i), columns)];
  }
  return CredentialCountTable(columns, std::move(counts));
}

// Row indices grouped by the credential they possess on `columns`.
inline std::map<ValueTuple, std::vector<std::size_t>> group_rows(
    const AccessProfileArray& array, const ColumnSet& columns) {
  check_column_set(array.schema(), columns);
  std::map<ValueTuple, std::vector<std::size_t>> groups;
  for (std::size_t i = 0; i < array.num_rows(); ++i) {
    groups[project_row(array.row(i), columns)].push_back(i);
  }
  return groups;
}

inline Credential credential_of_row(const AccessProfileArray& array,
                                    std::size_t row,
                                    const ColumnSet& columns) {
  check_column_set(array.schema(), columns);
  if (row >= array.num_rows()) {
    throw InvalidParameter("row " + std::to_string(row) + " out of range");
  }
  return Credential::FromTuple(columns, project_row(array.row(row), columns));
}

}  // namespace anonarray

#endif  // ANONARRAY_CORE_MODEL_HPP_
