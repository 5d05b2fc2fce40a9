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

// Property checks over random instances, shared by the property suite and
// the acceptance runner. Each returns an empty string on success and a
// description of the first mismatch otherwise.

#ifndef ANONARRAY_TESTS_SUPPORT_PROPERTIES_HPP_
#define ANONARRAY_TESTS_SUPPORT_PROPERTIES_HPP_

#include <numeric>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "anonarray/anonarray.hpp"
#include "support/oracles.hpp"

namespace anonarray::testing {

inline std::string describe_instance(const RandomInstance& instance,
                                     std::size_t t) {
  std::ostringstream out;
  out << "N=" << instance.array.num_rows() << " k="
      << instance.array.num_columns() << " t=" << t << "\n"
      << io::serialize_array(instance.array)
      << io::serialize_constraints(instance.constraints, instance.array.schema());
  return out.str();
}

inline std::string check_guarantee_oracle(const RandomInstance& instance) {
  for (std::size_t t = 1; t <= instance.array.num_columns(); ++t) {
    const std::int64_t got =
        compute_guarantee(instance.array, t, instance.constraints).r;
    const std::int64_t want =
        oracle_guarantee(instance.array, t, instance.constraints);
    if (got != want) {
      return "r " + std::to_string(got) + " != oracle " + std::to_string(want) +
             " for " + describe_instance(instance, t);
    }
  }
  return {};
}

inline std::string check_homogeneity_oracle(const RandomInstance& instance,
                                             std::size_t t) {
  if (local_homogeneity(instance.array, t).local !=
      oracle_local_homogeneity(instance.array, t)) {
    return "local homogeneity differs from oracle for " +
           describe_instance(instance, t);
  }
  return {};
}

// The per-neighborhood accumulation agrees with averaging the closeness
// matrix over each row's neighbors.
inline std::string check_shortcut(const RandomInstance& instance,
                                  std::size_t t) {
  const HomogeneityReport report = local_homogeneity(instance.array, t);
  const ClosenessMatrix matrix = closeness_matrix(instance.array, t);
  for (std::size_t i = 0; i < matrix.size(); ++i) {
    Rational total = 0;
    std::size_t neighbors = 0;
    for (std::size_t j = 0; j < matrix.size(); ++j) {
      if (matrix.at(i, j) > 0) {
        total += matrix.at(i, j);
        ++neighbors;
      }
    }
    if (neighbors != report.neighbor_counts[i]) {
      return "neighbor count mismatch at row " + std::to_string(i) + " for " +
             describe_instance(instance, t);
    }
    if (neighbors > 0 && total / neighbors != report.local[i]) {
      return "shortcut mismatch at row " + std::to_string(i) + " for " +
             describe_instance(instance, t);
    }
  }
  return {};
}

// Local scores of non-isolated rows are at most C(k,t)/r.
inline std::string check_score_bound(const RandomInstance& instance,
                                     std::size_t t) {
  const std::int64_t r = compute_guarantee(instance.array, t).r;
  if (r < 2) return {};
  const HomogeneityReport report = local_homogeneity(instance.array, t);
  const Rational bound(
      static_cast<std::int64_t>(binomial(instance.array.num_columns(), t)), r);
  for (std::size_t i = 0; i < report.local.size(); ++i) {
    if (report.neighbor_counts[i] > 0 && report.local[i] > bound) {
      return "score above C(k,t)/r at row " + std::to_string(i) + " for " +
             describe_instance(instance, t);
    }
  }
  return {};
}

// Monotonicity and downward closure hold for hard and soft constraints; a
// don't-care set or an allow-list can exempt every extension of a witness,
// so those parts are dropped for these two checks.
inline ConstraintSet without_exemptions(const ConstraintSet& cs,
                                        const AttributeSchema& schema) {
  return ConstraintSet(schema, cs.hard(), cs.soft(), {});
}

inline std::string check_monotone(const RandomInstance& instance) {
  const ConstraintSet cs =
      without_exemptions(instance.constraints, instance.array.schema());
  std::int64_t previous = 0;
  for (std::size_t t = 1; t <= instance.array.num_columns(); ++t) {
    const std::int64_t r = compute_guarantee(instance.array, t, cs).r;
    if (t > 1 && r >= 1 && previous >= 1 && r > previous) {
      return "r increased from " + std::to_string(previous) + " to " +
             std::to_string(r) + " for " + describe_instance(instance, t);
    }
    previous = r;
  }
  return {};
}

inline std::string check_downward_closure(const RandomInstance& instance) {
  const ConstraintSet cs =
      without_exemptions(instance.constraints, instance.array.schema());
  const std::size_t k = instance.array.num_columns();
  for (std::int64_t r = 1; r <= 4; ++r) {
    for (std::size_t t = 2; t <= k; ++t) {
      if (!validate(instance.array, r, t, cs).valid) continue;
      for (std::size_t lower = 1; lower < t; ++lower) {
        if (!validate(instance.array, r, lower, cs).valid) {
          return "valid at t=" + std::to_string(t) + " but not at t=" +
                 std::to_string(lower) + ", r=" + std::to_string(r) + " for " +
                 describe_instance(instance, t);
        }
      }
    }
  }
  return {};
}

inline RandomInstance permute(const RandomInstance& instance,
                              const std::vector<std::size_t>& row_order,
                              const std::vector<std::size_t>& column_order) {
  const AttributeSchema& schema = instance.array.schema();
  // column_order[new] = old
  std::vector<std::size_t> new_of_old(column_order.size());
  std::vector<AttributeDef> defs;
  for (std::size_t c = 0; c < column_order.size(); ++c) {
    new_of_old[column_order[c]] = c;
    defs.push_back(schema.attribute(column_order[c]));
  }
  AttributeSchema permuted(std::move(defs));
  std::vector<ValueTuple> rows;
  for (std::size_t i : row_order) {
    auto row = instance.array.row(i);
    ValueTuple out(column_order.size());
    for (std::size_t c = 0; c < column_order.size(); ++c) out[c] = row[column_order[c]];
    rows.push_back(std::move(out));
  }
  auto remap = [&](const std::vector<Credential>& list) {
    std::vector<Credential> out;
    for (const Credential& cred : list) {
      std::vector<AttributeValue> pairs;
      for (const AttributeValue& p : cred.pairs()) {
        pairs.push_back({new_of_old[p.attribute], p.value});
      }
      out.emplace_back(std::move(pairs));
    }
    return out;
  };
  std::optional<std::vector<ColumnSet>> allowed;
  if (instance.constraints.allowed_column_sets()) {
    allowed.emplace();
    for (const ColumnSet& s : *instance.constraints.allowed_column_sets()) {
      ColumnSet mapped;
      for (std::size_t c : s) mapped.push_back(new_of_old[c]);
      allowed->push_back(std::move(mapped));
    }
  }
  ConstraintSet cs(permuted, remap(instance.constraints.hard()),
                   remap(instance.constraints.soft()),
                   remap(instance.constraints.dont_care()), allowed);
  return {AccessProfileArray(permuted, rows), std::move(cs)};
}

inline std::string check_permutation_invariance(const RandomInstance& instance,
                                                std::mt19937_64& rng) {
  std::vector<std::size_t> rows(instance.array.num_rows());
  std::vector<std::size_t> columns(instance.array.num_columns());
  std::iota(rows.begin(), rows.end(), 0);
  std::iota(columns.begin(), columns.end(), 0);
  std::shuffle(rows.begin(), rows.end(), rng);
  std::shuffle(columns.begin(), columns.end(), rng);
  const RandomInstance shuffled = permute(instance, rows, columns);
  for (std::size_t t = 1; t <= instance.array.num_columns(); ++t) {
    if (compute_guarantee(instance.array, t, instance.constraints).r !=
        compute_guarantee(shuffled.array, t, shuffled.constraints).r) {
      return "r changed under permutation for " + describe_instance(instance, t);
    }
    const HomogeneityReport before = local_homogeneity(instance.array, t);
    const HomogeneityReport after = local_homogeneity(shuffled.array, t);
    if (before.global != after.global) {
      return "global homogeneity changed under permutation for " +
             describe_instance(instance, t);
    }
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (after.local[i] != before.local[rows[i]]) {
        return "local scores did not permute with rows for " +
               describe_instance(instance, t);
      }
    }
  }
  return {};
}

inline std::string check_duplication(const RandomInstance& instance) {
  std::vector<ValueTuple> rows = instance.array.rows();
  const std::vector<ValueTuple> copy = rows;
  rows.insert(rows.end(), copy.begin(), copy.end());
  const AccessProfileArray doubled(instance.array.schema(), rows);
  for (std::size_t t = 1; t <= instance.array.num_columns(); ++t) {
    const std::int64_t r = compute_guarantee(instance.array, t, instance.constraints).r;
    if (compute_guarantee(doubled, t, instance.constraints).r != 2 * r) {
      return "duplication did not double r for " + describe_instance(instance, t);
    }
  }
  return {};
}

}  // namespace anonarray::testing

#endif  // ANONARRAY_TESTS_SUPPORT_PROPERTIES_HPP_
