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

// Anonymity guarantee computation and (r,t) validation.

#ifndef ANONARRAY_VERIFY_HPP_
#define ANONARRAY_VERIFY_HPP_

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "anonarray/constraints.hpp"
#include "anonarray/core_model.hpp"
#include "anonarray/error.hpp"
#include "anonarray/parallel.hpp"

namespace anonarray {

struct CredentialCount {
  Credential credential;
  std::int64_t count;

  friend bool operator==(const CredentialCount&,
                         const CredentialCount&) = default;
};

struct HardViolation {
  std::size_t row;
  Credential constraint;

  friend bool operator==(const HardViolation&, const HardViolation&) = default;
};

struct GuaranteeReport {
  std::size_t t = 0;
  // Largest r for which the array is (r,t)-anonymous; 0 on a hard violation.
  std::int64_t r = 0;
  // Lexicographically first credential achieving the minimum. Absent when r
  // is 0 or when no credential participates in the minimum.
  std::optional<CredentialCount> min_witness;
  std::vector<HardViolation> hard_violations;
  // Every soft constraint of size <= t inside the policy column sets that
  // appears, with its count, so the zero-or-at-least-r rule can be checked
  // against any target.
  std::vector<CredentialCount> soft_appearances;
  // Constraints larger than t, inert at this t.
  std::vector<Credential> inert_constraints;
};

namespace detail {

inline void check_nonempty(const AccessProfileArray& array) {
  if (array.num_rows() == 0) {
    throw InvalidParameter("array has no rows");
  }
}

inline std::vector<HardViolation> find_hard_violations(
    const AccessProfileArray& array, const ConstraintSet& constraints,
    std::size_t t) {
  std::vector<HardViolation> out;
  for (std::size_t i = 0; i < array.num_rows(); ++i) {
    for (const Credential& h : constraints.hard()) {
      if (h.size() <= t && h.matches_row(array.row(i))) {
        out.push_back({i, h});
      }
    }
  }
  return out;
}

inline std::vector<CredentialCount> count_soft(
    const AccessProfileArray& array, const ConstraintSet& constraints,
    std::size_t t) {
  std::vector<CredentialCount> out;
  for (const Credential& s : constraints.soft()) {
    if (!within_policy(s, t, constraints)) continue;
    std::int64_t count = 0;
    for (std::size_t i = 0; i < array.num_rows(); ++i) {
      if (s.matches_row(array.row(i))) ++count;
    }
    if (count > 0) out.push_back({s, count});
  }
  return out;
}

// Per-column-set scan: the first (lexicographic) minimum among credentials
// that take part in the guarantee, i.e. everything except don't-care.
struct ColumnSetScan {
  std::optional<CredentialCount> minimum;
};

inline ColumnSetScan scan_column_set(const AccessProfileArray& array,
                                     const ColumnSet& columns,
                                     const ConstraintSet& constraints) {
  ColumnSetScan scan;
  const CredentialCountTable table = count_credentials(array, columns);
  for (const auto& [tuple, count] : table.counts()) {
    Credential c = Credential::FromTuple(columns, tuple);
    if (classify(c, constraints) == ConstraintKind::kDontCare) continue;
    if (!scan.minimum || count < scan.minimum->count) {
      scan.minimum = CredentialCount{std::move(c), count};
    }
  }
  return scan;
}

}  // namespace detail

// Scans every policy t-column set once and returns the smallest non-zero
// credential count, or 0 if any row carries a hard constraint. Column sets
// may be scanned in parallel; the reduction runs in lexicographic order so
// the report does not depend on the thread count.
inline GuaranteeReport compute_guarantee(const AccessProfileArray& array,
                                         std::size_t t,
                                         const ConstraintSet& constraints = {},
                                         const Execution& exec = {}) {
  check_credential_size(array.num_columns(), t);
  constraints.check_schema(array.schema());
  detail::check_nonempty(array);

  GuaranteeReport report;
  report.t = t;
  report.inert_constraints = constraints.oversized(t);
  report.soft_appearances = detail::count_soft(array, constraints, t);
  report.hard_violations =
      detail::find_hard_violations(array, constraints, t);
  if (!report.hard_violations.empty()) {
    report.r = 0;
    return report;
  }

  const auto column_sets =
      policy_column_sets(array.num_columns(), t, constraints);
  std::vector<detail::ColumnSetScan> scans(column_sets.size());
  parallel_for(column_sets.size(), exec, [&](std::size_t i) {
    scans[i] = detail::scan_column_set(array, column_sets[i], constraints);
  });
  for (auto& scan : scans) {
    if (scan.minimum &&
        (!report.min_witness || scan.minimum->count < report.min_witness->count)) {
      report.min_witness = std::move(scan.minimum);
    }
  }
  report.r = report.min_witness
                 ? report.min_witness->count
                 : static_cast<std::int64_t>(array.num_rows());
  return report;
}

struct Violation {
  Credential credential;
  std::int64_t count;
  ConstraintKind kind;  // kUnconstrained or kSoft
};

struct ValidationResult {
  bool valid = false;
  GuaranteeReport report;
  // Every appearing credential with 0 < count < r_target, soft ones marked.
  std::vector<Violation> violations;
};

inline ValidationResult validate(const AccessProfileArray& array,
                                 std::int64_t r_target, std::size_t t,
                                 const ConstraintSet& constraints = {},
                                 const Execution& exec = {}) {
  if (r_target < 1) throw InvalidParameter("r_target must be at least 1");
  ValidationResult result;
  result.report = compute_guarantee(array, t, constraints, exec);
  if (result.report.hard_violations.empty() &&
      result.report.r < r_target) {
    for (const ColumnSet& columns :
         policy_column_sets(array.num_columns(), t, constraints)) {
      const CredentialCountTable table = count_credentials(array, columns);
      for (const auto& [tuple, count] : table.counts()) {
        if (count >= r_target) continue;
        Credential c = Credential::FromTuple(columns, tuple);
        const ConstraintKind kind = classify(c, constraints);
        if (kind == ConstraintKind::kDontCare) continue;
        result.violations.push_back({std::move(c), count, kind});
      }
    }
  }
  // Soft constraints smaller than t are not size-t credentials themselves,
  // so their zero-or-at-least-r rule is checked separately.
  for (const CredentialCount& soft : result.report.soft_appearances) {
    if (soft.credential.size() < t && soft.count < r_target) {
      result.violations.push_back(
          {soft.credential, soft.count, ConstraintKind::kSoft});
    }
  }
  result.valid =
      result.report.hard_violations.empty() && result.violations.empty();
  return result;
}

// True iff `extended` contains every row of `base` with at least its
// multiplicity and is (r,t)-anonymous.
inline bool is_anonymizing_for(const AccessProfileArray& base,
                               const AccessProfileArray& extended,
                               std::int64_t r, std::size_t t,
                               const ConstraintSet& constraints = {},
                               const Execution& exec = {}) {
  if (!(base.schema() == extended.schema())) {
    throw InvalidParameter("base and extended arrays use different schemas");
  }
  std::map<ValueTuple, std::int64_t> available;
  for (std::size_t i = 0; i < extended.num_rows(); ++i) {
    auto row = extended.row(i);
    ++available[ValueTuple(row.begin(), row.end())];
  }
  for (std::size_t i = 0; i < base.num_rows(); ++i) {
    auto row = base.row(i);
    auto it = available.find(ValueTuple(row.begin(), row.end()));
    if (it == available.end() || it->second == 0) return false;
    --it->second;
  }
  return validate(extended, r, t, constraints, exec).valid;
}

struct ProfileEntry {
  std::size_t t;
  std::int64_t r;
  std::optional<CredentialCount> witness;
};

struct AnonymityProfile {
  std::vector<ProfileEntry> entries;
  // Set when the profile stopped on a hard violation (final entry has r = 0).
  std::vector<HardViolation> hard_violations;
};

// (t, r) pairs for t = 1, 2, ... until r drops to 1 or below, or t reaches
// t_max (default k). r is non-increasing in t.
inline AnonymityProfile anonymity_profile(
    const AccessProfileArray& array, const ConstraintSet& constraints = {},
    std::optional<std::size_t> t_max = std::nullopt,
    const Execution& exec = {}) {
  const std::size_t k = array.num_columns();
  const std::size_t last = t_max.value_or(k);
  if (last < 1 || last > k) {
    throw InvalidParameter("t_max must lie in [1, " + std::to_string(k) + "]");
  }
  AnonymityProfile profile;
  for (std::size_t t = 1; t <= last; ++t) {
    GuaranteeReport report = compute_guarantee(array, t, constraints, exec);
    profile.entries.push_back({t, report.r, report.min_witness});
    if (report.r == 0) {
      profile.hard_violations = std::move(report.hard_violations);
      break;
    }
    if (report.r <= 1) break;
  }
  return profile;
}

}  // namespace anonarray

#endif  // ANONARRAY_VERIFY_HPP_
