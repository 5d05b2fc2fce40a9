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

// Padding construction: append rows to a base array until every
// unconstrained t-credential appears at least r times and every appearing
// soft credential reaches r as well.
//
// The search is an AETG-style greedy. Each candidate row starts from a
// credential that is still short, then fills the remaining attributes one at
// a time (random order) with the admissible value that completes the most
// deficient credentials. The best of `candidates_per_row` candidates is
// appended. Independent restarts use seed-derived streams and the result with
// the fewest rows wins.

#ifndef ANONARRAY_CONSTRUCT_HPP_
#define ANONARRAY_CONSTRUCT_HPP_

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "anonarray/constraints.hpp"
#include "anonarray/core_model.hpp"
#include "anonarray/error.hpp"
#include "anonarray/parallel.hpp"
#include "anonarray/verify.hpp"

namespace anonarray {

struct ConstructionConfig {
  std::int64_t r_target = 2;
  std::size_t t = 2;
  std::uint64_t seed = 0;
  // Cap on the total number of rows (base + padding).
  std::optional<std::size_t> max_rows;
  std::size_t candidates_per_row = 64;
  // Extra attempts after the first one.
  std::size_t restarts = 3;
  // In [0, 1]. Penalizes candidates by the closeness they add to existing
  // rows; 0 is pure coverage greed.
  double homogeneity_weight = 0.0;

  void check() const {
    if (r_target < 2) throw InvalidParameter("r_target must be at least 2");
    if (candidates_per_row < 1) {
      throw InvalidParameter("candidates_per_row must be at least 1");
    }
    if (!(homogeneity_weight >= 0.0 && homogeneity_weight <= 1.0)) {
      throw InvalidParameter("homogeneity_weight must lie in [0, 1]");
    }
  }
};

// Credential -> how many more appearances it needs. The credential carries
// its own column set.
using Deficiency = std::map<Credential, std::int64_t>;

struct TraceEntry {
  std::size_t rows;  // rows after the append
  std::size_t deficient_credentials;
  std::int64_t total_shortfall;
  std::int64_t gain;  // shortfall removed by the appended row
};

struct ConstructionResult {
  AccessProfileArray array;
  std::size_t padding_count = 0;
  GuaranteeReport achieved;
  std::uint64_t lower_bound = 0;
  bool meets_lower_bound = false;
  std::vector<TraceEntry> trace;
  std::size_t attempt = 0;  // which restart produced the result
};

// The base array already contains a hard-constrained credential.
class BaseHardViolation : public InvalidParameter {
 public:
  explicit BaseHardViolation(std::vector<HardViolation> violations)
      : InvalidParameter("base array contains a hard-constrained credential"),
        violations_(std::move(violations)) {}

  const std::vector<HardViolation>& violations() const { return violations_; }

 private:
  std::vector<HardViolation> violations_;
};

class BudgetExceeded : public Error {
 public:
  BudgetExceeded(const std::string& message, AccessProfileArray partial,
                 Deficiency remaining)
      : Error(message),
        partial_(std::move(partial)),
        remaining_(std::move(remaining)) {}

  const AccessProfileArray& partial() const { return partial_; }
  const Deficiency& remaining() const { return remaining_; }

 private:
  AccessProfileArray partial_;
  Deficiency remaining_;
};

namespace detail {

inline std::int64_t shortfall(ConstraintKind kind, std::int64_t count,
                              std::int64_t r) {
  switch (kind) {
    case ConstraintKind::kHard:
    case ConstraintKind::kDontCare:
      return 0;
    case ConstraintKind::kSoft:
      return count == 0 ? 0 : std::max<std::int64_t>(0, r - count);
    case ConstraintKind::kUnconstrained:
      return std::max<std::int64_t>(0, r - count);
  }
  return 0;
}

inline void require_feasible(const AttributeSchema& schema,
                             const ConstraintSet& constraints, std::size_t t) {
  FeasibilityReport report = check_feasibility(schema, constraints, t);
  if (!report.feasible) throw FeasibilityError(std::move(report));
}

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

// Platform-independent bounded draw (std distributions are not).
inline std::size_t draw(std::mt19937_64& rng, std::size_t n) {
  return static_cast<std::size_t>(rng() % n);
}

struct Attempt {
  bool success = false;
  std::vector<ValueTuple> padding;
  std::vector<TraceEntry> trace;
  Deficiency remaining;
  std::int64_t remaining_shortfall = 0;
};

class PaddingSearch {
 public:
  PaddingSearch(const AccessProfileArray& base,
                const ConstraintSet& constraints,
                const ConstructionConfig& config)
      : schema_(base.schema()),
        constraints_(constraints),
        config_(config),
        column_sets_(policy_column_sets(schema_.size(), config.t,
                                        constraints)),
        forbidden_(forbidden_closure(schema_, constraints.hard(), config.t)),
        counts_(column_sets_.size()),
        kinds_(column_sets_.size()),
        sets_by_attribute_(schema_.size()) {
    for (std::size_t s = 0; s < column_sets_.size(); ++s) {
      for (std::size_t a : column_sets_[s]) sets_by_attribute_[a].push_back(s);
    }
    for (const Credential& soft : constraints.soft()) {
      if (soft.size() < config.t && within_policy(soft, config.t, constraints)) {
        small_soft_.push_back({soft, 0});
      }
    }
    for (std::size_t i = 0; i < base.num_rows(); ++i) {
      auto row = base.row(i);
      Count(ValueTuple(row.begin(), row.end()));
    }
    Rebuild();
  }

  const Deficiency& deficiency() const { return deficiency_; }
  std::int64_t total_shortfall() const { return total_shortfall_; }

  Attempt Run(std::uint64_t seed, std::size_t row_cap, std::size_t base_rows) {
    std::mt19937_64 rng(seed);
    Attempt attempt;
    std::size_t rows = base_rows;
    while (!deficiency_.empty()) {
      if (rows >= row_cap) break;
      std::optional<ValueTuple> best;
      double best_score = -std::numeric_limits<double>::infinity();
      std::int64_t best_gain = 0;
      std::size_t tries = 0;
      std::size_t produced = 0;
      const std::size_t max_tries = 8 * config_.candidates_per_row;
      while (produced < config_.candidates_per_row && tries < max_tries) {
        ++tries;
        std::optional<ValueTuple> candidate = Generate(rng);
        if (!candidate) continue;
        ++produced;
        const std::int64_t gain = Gain(*candidate);
        double score = static_cast<double>(gain);
        if (config_.homogeneity_weight > 0.0) {
          score -= config_.homogeneity_weight * ClosenessIncrease(*candidate);
        }
        if (!best || score > best_score ||
            (score == best_score && *candidate < *best)) {
          best = std::move(candidate);
          best_score = score;
          best_gain = gain;
        }
      }
      if (!best) break;  // no admissible row extends any short credential
      Count(*best);
      ApplyRow(*best);
      attempt.padding.push_back(std::move(*best));
      ++rows;
      attempt.trace.push_back(
          {rows, deficiency_.size(), total_shortfall_, best_gain});
    }
    attempt.success = deficiency_.empty();
    attempt.remaining = deficiency_;
    attempt.remaining_shortfall = total_shortfall_;
    return attempt;
  }

 private:
  ConstraintKind KindOf(std::size_t s, const ValueTuple& tuple) {
    auto [it, inserted] = kinds_[s].try_emplace(tuple, ConstraintKind::kHard);
    if (inserted) {
      it->second = classify(Credential::FromTuple(column_sets_[s], tuple),
                            constraints_);
    }
    return it->second;
  }

  void Count(const ValueTuple& row) {
    for (std::size_t s = 0; s < column_sets_.size(); ++s) {
      ++counts_[s][project_row(row, column_sets_[s])];
    }
    for (auto& [soft, count] : small_soft_) {
      if (soft.matches_row(row)) ++count;
    }
  }

  // Full recomputation of the deficiency map from the counts.
  void Rebuild() {
    deficiency_.clear();
    total_shortfall_ = 0;
    const std::int64_t r = config_.r_target;
    for (std::size_t s = 0; s < column_sets_.size(); ++s) {
      for_each_assignment(schema_, column_sets_[s], [&](const ValueTuple& v) {
        auto it = counts_[s].find(v);
        const std::int64_t count = it == counts_[s].end() ? 0 : it->second;
        const std::int64_t need = shortfall(KindOf(s, v), count, r);
        if (need > 0) {
          deficiency_.emplace(Credential::FromTuple(column_sets_[s], v), need);
          total_shortfall_ += need;
        }
      });
    }
    for (const auto& [soft, count] : small_soft_) {
      const std::int64_t need = shortfall(ConstraintKind::kSoft, count, r);
      if (need > 0) {
        deficiency_.emplace(soft, need);
        total_shortfall_ += need;
      }
    }
  }

  // Updates the deficiency map for a row whose counts were just added.
  void ApplyRow(const ValueTuple& row) {
    const std::int64_t r = config_.r_target;
    auto update = [&](Credential credential, std::int64_t need_before,
                      std::int64_t need_after) {
      total_shortfall_ += need_after - need_before;
      if (need_after > 0) {
        deficiency_.insert_or_assign(std::move(credential), need_after);
      } else {
        deficiency_.erase(credential);
      }
    };
    for (std::size_t s = 0; s < column_sets_.size(); ++s) {
      const ValueTuple tuple = project_row(row, column_sets_[s]);
      const std::int64_t after = counts_[s][tuple];
      const ConstraintKind kind = KindOf(s, tuple);
      update(Credential::FromTuple(column_sets_[s], tuple),
             shortfall(kind, after - 1, r), shortfall(kind, after, r));
    }
    for (const auto& [soft, count] : small_soft_) {
      if (!soft.matches_row(row)) continue;
      update(soft, shortfall(ConstraintKind::kSoft, count - 1, r),
             shortfall(ConstraintKind::kSoft, count, r));
    }
  }

  // Shortfall removed by appending `row`; negative when the row introduces
  // a soft credential that then needs r - 1 more appearances.
  std::int64_t Gain(const ValueTuple& row) {
    const std::int64_t r = config_.r_target;
    std::int64_t gain = 0;
    for (std::size_t s = 0; s < column_sets_.size(); ++s) {
      gain += TupleGain(s, project_row(row, column_sets_[s]), r);
    }
    for (const auto& [soft, count] : small_soft_) {
      if (!soft.matches_row(row)) continue;
      gain += shortfall(ConstraintKind::kSoft, count, r) -
              shortfall(ConstraintKind::kSoft, count + 1, r);
    }
    return gain;
  }

  std::int64_t TupleGain(std::size_t s, const ValueTuple& tuple,
                         std::int64_t r) {
    auto it = counts_[s].find(tuple);
    const std::int64_t count = it == counts_[s].end() ? 0 : it->second;
    const ConstraintKind kind = KindOf(s, tuple);
    return shortfall(kind, count, r) - shortfall(kind, count + 1, r);
  }

  // The row's own local-homogeneity contribution: sum of m/(m+1) over its
  // credentials, where m rows already share the credential.
  double ClosenessIncrease(const ValueTuple& row) const {
    double total = 0.0;
    for (std::size_t s = 0; s < column_sets_.size(); ++s) {
      auto it = counts_[s].find(project_row(row, column_sets_[s]));
      const double m = it == counts_[s].end() ? 0.0
                                              : static_cast<double>(it->second);
      total += m / (m + 1.0);
    }
    return total;
  }

  bool Admissible(const std::vector<std::optional<std::uint32_t>>& partial,
                  std::size_t attribute, std::uint32_t value) const {
    for (const Assignment& f : forbidden_) {
      bool mentions = false;
      bool all_set = true;
      for (const AttributeValue& p : f) {
        if (p.attribute == attribute) {
          if (p.value != value) {
            all_set = false;
            break;
          }
          mentions = true;
        } else if (!partial[p.attribute] || *partial[p.attribute] != p.value) {
          all_set = false;
          break;
        }
      }
      if (all_set && (mentions || f.empty())) return false;
    }
    return true;
  }

  std::optional<ValueTuple> Generate(std::mt19937_64& rng) {
    const std::size_t k = schema_.size();
    std::vector<std::optional<std::uint32_t>> partial(k);
    std::vector<std::size_t> order;

    auto seed_it = deficiency_.begin();
    std::advance(seed_it, static_cast<std::ptrdiff_t>(
                              draw(rng, deficiency_.size())));
    for (const AttributeValue& p : seed_it->first.pairs()) {
      if (!Admissible(partial, p.attribute, p.value)) return std::nullopt;
      partial[p.attribute] = p.value;
    }
    for (std::size_t a = 0; a < k; ++a) {
      if (!partial[a]) order.push_back(a);
    }
    for (std::size_t i = order.size(); i > 1; --i) {
      std::swap(order[i - 1], order[draw(rng, i)]);
    }

    const std::int64_t r = config_.r_target;
    for (std::size_t a : order) {
      std::int64_t best_gain = std::numeric_limits<std::int64_t>::min();
      std::uint32_t best_value = 0;
      std::size_t ties = 0;
      for (std::uint32_t x = 0; x < schema_.domain_size(a); ++x) {
        if (!Admissible(partial, a, x)) continue;
        partial[a] = x;
        std::int64_t gain = 0;
        for (std::size_t s : sets_by_attribute_[a]) {
          const ColumnSet& columns = column_sets_[s];
          ValueTuple tuple;
          tuple.reserve(columns.size());
          bool complete = true;
          for (std::size_t c : columns) {
            if (!partial[c]) {
              complete = false;
              break;
            }
            tuple.push_back(*partial[c]);
          }
          if (complete) gain += TupleGain(s, tuple, r);
        }
        partial[a].reset();
        if (gain > best_gain) {
          best_gain = gain;
          best_value = x;
          ties = 1;
        } else if (gain == best_gain && draw(rng, ++ties) == 0) {
          best_value = x;
        }
      }
      if (ties == 0) return std::nullopt;  // dead end
      partial[a] = best_value;
    }
    ValueTuple row(k);
    for (std::size_t a = 0; a < k; ++a) row[a] = *partial[a];
    return row;
  }

  AttributeSchema schema_;
  const ConstraintSet& constraints_;
  ConstructionConfig config_;
  std::vector<ColumnSet> column_sets_;
  std::vector<Assignment> forbidden_;
  std::vector<std::map<ValueTuple, std::int64_t>> counts_;
  std::vector<std::map<ValueTuple, ConstraintKind>> kinds_;
  std::vector<std::vector<std::size_t>> sets_by_attribute_;
  std::vector<std::pair<Credential, std::int64_t>> small_soft_;
  Deficiency deficiency_;
  std::int64_t total_shortfall_ = 0;
};

inline std::vector<std::string> padding_labels(const AccessProfileArray& base,
                                               std::size_t padding) {
  std::set<std::string> used(base.row_labels().begin(),
                             base.row_labels().end());
  std::vector<std::string> out = base.row_labels();
  for (std::size_t i = 0; i < padding; ++i) {
    std::string label = std::to_string(base.num_rows() + i + 1);
    while (used.count(label)) label += "_";
    used.insert(label);
    out.push_back(std::move(label));
  }
  return out;
}

}  // namespace detail

// Shortfall of every credential that still needs appearances for the array
// to be (r,t)-anonymizing under `constraints`:
//   - appearing non-don't-care credentials with 0 < count < r: r - count;
//   - unconstrained credentials with count 0: r;
//   - soft credentials with count 0 need nothing.
inline Deficiency deficiency(const AccessProfileArray& array,
                             std::int64_t r_target, std::size_t t,
                             const ConstraintSet& constraints = {}) {
  if (r_target < 1) throw InvalidParameter("r_target must be at least 1");
  check_credential_size(array.num_columns(), t);
  constraints.check_schema(array.schema());
  detail::require_feasible(array.schema(), constraints, t);
  ConstructionConfig config;
  config.r_target = r_target;
  config.t = t;
  return detail::PaddingSearch(array, constraints, config).deficiency();
}

inline ConstructionResult construct_padding(const AccessProfileArray& base,
                                            const ConstraintSet& constraints,
                                            const ConstructionConfig& config,
                                            const Execution& exec = {}) {
  config.check();
  const AttributeSchema& schema = base.schema();
  check_credential_size(schema.size(), config.t);
  constraints.check_schema(schema);
  detail::require_feasible(schema, constraints, config.t);
  if (auto violations =
          detail::find_hard_violations(base, constraints, config.t);
      !violations.empty()) {
    throw BaseHardViolation(std::move(violations));
  }
  if (config.max_rows && *config.max_rows < base.num_rows()) {
    throw InvalidParameter("max_rows is smaller than the base array");
  }

  const std::uint64_t lower_bound =
      row_lower_bound(schema, constraints, config.r_target, config.t);
  const detail::PaddingSearch initial(base, constraints, config);
  // Every appended row removes at least one unit of shortfall; introducing a
  // soft credential adds at most r - 1, once per soft credential.
  const std::size_t natural_cap =
      base.num_rows() + static_cast<std::size_t>(initial.total_shortfall()) +
      static_cast<std::size_t>(config.r_target - 1) *
          constraints.soft().size();
  const std::size_t row_cap =
      config.max_rows ? std::min(*config.max_rows, natural_cap) : natural_cap;

  const std::size_t attempts = config.restarts + 1;
  std::vector<detail::Attempt> results(attempts);
  parallel_for(attempts, exec, [&](std::size_t i) {
    detail::PaddingSearch search = initial;
    results[i] =
        search.Run(detail::splitmix64(config.seed + 0x632BE59BD9B4E019ULL * i),
                   row_cap, base.num_rows());
  });

  std::optional<std::size_t> chosen;
  for (std::size_t i = 0; i < attempts; ++i) {
    if (!results[i].success) continue;
    if (!chosen || results[i].padding.size() < results[*chosen].padding.size() ||
        (results[i].padding.size() == results[*chosen].padding.size() &&
         results[i].padding < results[*chosen].padding)) {
      chosen = i;
    }
  }

  std::vector<ValueTuple> rows = base.rows();
  if (!chosen) {
    std::size_t closest = 0;
    for (std::size_t i = 1; i < attempts; ++i) {
      if (results[i].remaining_shortfall <
          results[closest].remaining_shortfall) {
        closest = i;
      }
    }
    const auto& failed = results[closest];
    rows.insert(rows.end(), failed.padding.begin(), failed.padding.end());
    std::vector<std::string> labels =
        base.has_row_labels()
            ? detail::padding_labels(base, failed.padding.size())
            : std::vector<std::string>{};
    throw BudgetExceeded(
        "row budget exhausted with " +
            std::to_string(failed.remaining.size()) +
            " credential(s) still short of r",
        AccessProfileArray(schema, rows, std::move(labels)), failed.remaining);
  }

  detail::Attempt& best = results[*chosen];
  rows.insert(rows.end(), best.padding.begin(), best.padding.end());
  std::vector<std::string> labels =
      base.has_row_labels() ? detail::padding_labels(base, best.padding.size())
                            : std::vector<std::string>{};
  ConstructionResult result{
      AccessProfileArray(schema, rows, std::move(labels)), best.padding.size(),
      GuaranteeReport{}, lower_bound, false, std::move(best.trace), *chosen};
  result.meets_lower_bound =
      result.array.num_rows() == static_cast<std::size_t>(lower_bound);
  if (result.array.num_rows() > 0) {
    const ValidationResult check =
        validate(result.array, config.r_target, config.t, constraints, exec);
    if (!check.valid) {
      throw std::logic_error("padding search produced an invalid array");
    }
    result.achieved = check.report;
  } else {
    result.achieved.t = config.t;
  }
  return result;
}

struct CredentialSizeSuggestion {
  // Largest t reaching r_target within the budget; 0 if none does.
  std::size_t t = 0;
  std::optional<ConstructionResult> result;
};

inline CredentialSizeSuggestion suggest_credential_size(
    const AccessProfileArray& base, const ConstraintSet& constraints,
    std::int64_t r_target, std::size_t row_budget,
    ConstructionConfig config = {}, const Execution& exec = {}) {
  if (row_budget < base.num_rows()) {
    throw InvalidParameter("row budget is smaller than the base array");
  }
  config.r_target = r_target;
  config.max_rows = row_budget;
  for (std::size_t t = base.num_columns(); t >= 1; --t) {
    if (!check_feasibility(base.schema(), constraints, t).feasible) continue;
    if (row_lower_bound(base.schema(), constraints, r_target, t) >
        row_budget) {
      continue;
    }
    config.t = t;
    try {
      return {t, construct_padding(base, constraints, config, exec)};
    } catch (const BudgetExceeded&) {
    } catch (const InvalidParameter&) {
      // The base carries a hard constraint at this t.
    }
  }
  return {};
}

}  // namespace anonarray

#endif  // ANONARRAY_CONSTRUCT_HPP_
