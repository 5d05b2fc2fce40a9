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

// Homogeneity metrics over the multi-hypergraph view of an array.
//
// Every row is a vertex. For each t-column set, the rows sharing a credential
// form one hyperedge (its neighborhood). Two rows sharing a neighborhood of
// size s get weight 1/s from it; closeness is the sum over all size-t
// credentials. A row's local homogeneity is its total closeness averaged over
// its distinct neighbors, so rows that keep meeting the same few profiles
// score high and rows spread over large or varied groups score low.

#ifndef ANONARRAY_HOMOGENEITY_HPP_
#define ANONARRAY_HOMOGENEITY_HPP_

#include <algorithm>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "anonarray/core_model.hpp"
#include "anonarray/error.hpp"
#include "anonarray/parallel.hpp"
#include "anonarray/rational.hpp"
#include "anonarray/verify.hpp"

namespace anonarray {

struct Neighborhood {
  ColumnSet column_set;
  Credential credential;
  std::vector<std::size_t> members;  // rows possessing `credential`
};

// One neighborhood per appearing credential of every t-column set, ordered by
// column set and then credential. Neighborhoods with equal member sets stay
// separate (multi-edges).
inline std::vector<Neighborhood> neighborhoods(const AccessProfileArray& array,
                                               std::size_t t,
                                               const Execution& exec = {}) {
  check_credential_size(array.num_columns(), t);
  const auto column_sets = enumerate_column_sets(array.num_columns(), t);
  std::vector<std::vector<Neighborhood>> per_set(column_sets.size());
  parallel_for(column_sets.size(), exec, [&](std::size_t i) {
    for (auto& [tuple, members] : group_rows(array, column_sets[i])) {
      per_set[i].push_back({column_sets[i],
                            Credential::FromTuple(column_sets[i], tuple),
                            std::move(members)});
    }
  });
  std::vector<Neighborhood> out;
  for (auto& group : per_set) {
    std::move(group.begin(), group.end(), std::back_inserter(out));
  }
  return out;
}

inline Rational weight(std::size_t i, std::size_t j,
                       const Neighborhood& neighborhood) {
  if (i == j) {
    throw InvalidParameter("weight of a row with itself is undefined");
  }
  const auto& m = neighborhood.members;
  const bool has_i = std::find(m.begin(), m.end(), i) != m.end();
  const bool has_j = std::find(m.begin(), m.end(), j) != m.end();
  if (!has_i || !has_j) return Rational(0);
  return Rational(1, static_cast<long long>(m.size()));
}

inline Rational closeness(std::size_t i, std::size_t j,
                          const AccessProfileArray& array, std::size_t t) {
  check_credential_size(array.num_columns(), t);
  if (i >= array.num_rows() || j >= array.num_rows()) {
    throw InvalidParameter("row index out of range");
  }
  if (i == j) {
    throw InvalidParameter("closeness of a row with itself is undefined");
  }
  Rational sum = 0;
  for (const ColumnSet& columns :
       enumerate_column_sets(array.num_columns(), t)) {
    const ValueTuple tuple = project_row(array.row(i), columns);
    if (tuple != project_row(array.row(j), columns)) continue;
    const auto size = count_credentials(array, columns).count_of(tuple);
    sum += Rational(1, size);
  }
  return sum;
}

// Symmetric N x N closeness scores with a zero diagonal.
class ClosenessMatrix {
 public:
  explicit ClosenessMatrix(std::size_t n) : n_(n), cells_(n * n) {}

  std::size_t size() const { return n_; }
  const Rational& at(std::size_t i, std::size_t j) const {
    return cells_.at(i * n_ + j);
  }
  void add(std::size_t i, std::size_t j, const Rational& value) {
    cells_[i * n_ + j] += value;
    cells_[j * n_ + i] += value;
  }

 private:
  std::size_t n_;
  std::vector<Rational> cells_;
};

inline ClosenessMatrix closeness_matrix(const AccessProfileArray& array,
                                        std::size_t t,
                                        const Execution& exec = {}) {
  ClosenessMatrix matrix(array.num_rows());
  for (const Neighborhood& nb : neighborhoods(array, t, exec)) {
    const Rational w(1, static_cast<long long>(nb.members.size()));
    for (std::size_t a = 0; a < nb.members.size(); ++a) {
      for (std::size_t b = a + 1; b < nb.members.size(); ++b) {
        matrix.add(nb.members[a], nb.members[b], w);
      }
    }
  }
  return matrix;
}

// Distribution of closeness(row, j) over j != row, zeros included. High
// homogeneity rows tend to be bimodal.
inline std::map<Rational, std::size_t> closeness_histogram(
    const ClosenessMatrix& matrix, std::size_t row) {
  if (row >= matrix.size()) throw InvalidParameter("row index out of range");
  std::map<Rational, std::size_t> histogram;
  for (std::size_t j = 0; j < matrix.size(); ++j) {
    if (j != row) ++histogram[matrix.at(row, j)];
  }
  return histogram;
}

struct HomogeneityReport {
  std::size_t t = 0;
  std::vector<Rational> local;
  Rational min;
  Rational max;
  Rational global;
  // Rows without any neighbor; their local score is the sentinel C(k,t).
  std::vector<std::size_t> isolated;
  std::vector<std::size_t> neighbor_counts;
};

// Local homogeneity without materializing closeness: each credential of row
// i with neighborhood size s contributes (s - 1) neighbors at weight 1/s.
// Neighborhood-size tallies are integers, so the per-column-set merge is
// exact and order-independent.
inline HomogeneityReport local_homogeneity(const AccessProfileArray& array,
                                           std::size_t t,
                                           const Execution& exec = {}) {
  check_credential_size(array.num_columns(), t);
  detail::check_nonempty(array);
  const std::size_t n = array.num_rows();
  const std::size_t words = (n + 63) / 64;

  const auto column_sets = enumerate_column_sets(array.num_columns(), t);
  std::vector<std::vector<std::vector<std::size_t>>> groups(
      column_sets.size());
  parallel_for(column_sets.size(), exec, [&](std::size_t i) {
    for (auto& [tuple, members] : group_rows(array, column_sets[i])) {
      groups[i].push_back(std::move(members));
    }
  });

  std::vector<std::map<std::size_t, std::int64_t>> size_tally(n);
  std::vector<std::uint64_t> neighbors(n * words, 0);
  for (const auto& per_set : groups) {
    for (const auto& members : per_set) {
      for (std::size_t u : members) {
        ++size_tally[u][members.size()];
        if (members.size() == 1) continue;
        std::uint64_t* bits = &neighbors[u * words];
        for (std::size_t v : members) {
          if (v != u) bits[v / 64] |= std::uint64_t{1} << (v % 64);
        }
      }
    }
  }

  HomogeneityReport report;
  report.t = t;
  report.local.resize(n);
  report.neighbor_counts.resize(n);
  const Rational sentinel(
      static_cast<long long>(binomial(array.num_columns(), t)));
  for (std::size_t u = 0; u < n; ++u) {
    std::size_t count = 0;
    for (std::size_t w = 0; w < words; ++w) {
      count += static_cast<std::size_t>(std::popcount(neighbors[u * words + w]));
    }
    report.neighbor_counts[u] = count;
    if (count == 0) {
      report.local[u] = sentinel;
      report.isolated.push_back(u);
      continue;
    }
    Rational total = 0;
    for (const auto& [size, times] : size_tally[u]) {
      const auto s = static_cast<long long>(size);
      total += Rational(times * (s - 1), s);
    }
    report.local[u] = total / static_cast<long long>(count);
  }
  report.min = *std::min_element(report.local.begin(), report.local.end());
  report.max = *std::max_element(report.local.begin(), report.local.end());
  Rational sum = 0;
  for (const Rational& v : report.local) sum += v;
  report.global = sum / static_cast<long long>(n);
  return report;
}

inline Rational global_homogeneity(const AccessProfileArray& array,
                                   std::size_t t, const Execution& exec = {}) {
  return local_homogeneity(array, t, exec).global;
}

enum class HypergraphFormat { kText, kJson };

inline HypergraphFormat parse_hypergraph_format(std::string_view name) {
  if (name == "text") return HypergraphFormat::kText;
  if (name == "json") return HypergraphFormat::kJson;
  throw InvalidParameter("unknown hypergraph format '" + std::string(name) +
                         "' (expected json or text)");
}

inline std::string vertex_label(const AccessProfileArray& array,
                                std::size_t row) {
  return array.has_row_labels() ? array.row_labels()[row]
                                : std::to_string(row + 1);
}

inline std::string export_hypergraph(const AccessProfileArray& array,
                                     std::size_t t, HypergraphFormat format,
                                     const Execution& exec = {}) {
  const auto edges = neighborhoods(array, t, exec);
  const AttributeSchema& schema = array.schema();
  if (format == HypergraphFormat::kJson) {
    nlohmann::ordered_json doc;
    doc["format_version"] = 1;
    doc["t"] = t;
    doc["vertices"] = nlohmann::ordered_json::array();
    for (std::size_t i = 0; i < array.num_rows(); ++i) {
      doc["vertices"].push_back({{"id", i}, {"label", vertex_label(array, i)}});
    }
    doc["edges"] = nlohmann::ordered_json::array();
    for (std::size_t e = 0; e < edges.size(); ++e) {
      nlohmann::ordered_json edge;
      edge["id"] = e;
      edge["columns"] = nlohmann::ordered_json::array();
      edge["values"] = nlohmann::ordered_json::array();
      for (const AttributeValue& p : edges[e].credential.pairs()) {
        edge["columns"].push_back(schema.name(p.attribute));
        edge["values"].push_back(schema.label(p.attribute, p.value));
      }
      edge["members"] = edges[e].members;
      doc["edges"].push_back(std::move(edge));
    }
    return doc.dump(2) + "\n";
  }
  std::string out = "# hypergraph t=" + std::to_string(t) +
                    " vertices=" + std::to_string(array.num_rows()) +
                    " edges=" + std::to_string(edges.size()) + "\n";
  for (std::size_t i = 0; i < array.num_rows(); ++i) {
    out += "vertex " + std::to_string(i) + ": " + vertex_label(array, i) + "\n";
  }
  for (std::size_t e = 0; e < edges.size(); ++e) {
    out += "edge " + std::to_string(e) + ": {";
    for (std::size_t m = 0; m < edges[e].members.size(); ++m) {
      if (m > 0) out += ",";
      out += std::to_string(edges[e].members[m]);
    }
    out += "} columns=";
    std::string values;
    const auto pairs = edges[e].credential.pairs();
    for (std::size_t p = 0; p < pairs.size(); ++p) {
      if (p > 0) {
        out += ",";
        values += ",";
      }
      out += schema.name(pairs[p].attribute);
      values += schema.label(pairs[p].attribute, pairs[p].value);
    }
    out += " values=" + values + "\n";
  }
  return out;
}

}  // namespace anonarray

#endif  // ANONARRAY_HOMOGENEITY_HPP_
