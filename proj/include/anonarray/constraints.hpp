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

// Hard, soft and don't-care constraints.
//
// A hard constraint is an assignment that may never occur in any row, so it
// also forbids every credential containing it. Soft and don't-care
// constraints govern the appearance count of the credential they name: a soft
// credential may appear zero times or at least r times, a don't-care
// credential (one that crosses attribute-authority boundaries) may appear any
// number of times. Credentials matching none of these are unconstrained and
// must appear at least r times.

#ifndef ANONARRAY_CONSTRAINTS_HPP_
#define ANONARRAY_CONSTRAINTS_HPP_

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "anonarray/core_model.hpp"
#include "anonarray/error.hpp"

namespace anonarray {

enum class ConstraintKind { kHard, kSoft, kDontCare, kUnconstrained };

inline std::string_view to_string(ConstraintKind kind) {
  switch (kind) {
    case ConstraintKind::kHard:
      return "hard";
    case ConstraintKind::kSoft:
      return "soft";
    case ConstraintKind::kDontCare:
      return "dont_care";
    case ConstraintKind::kUnconstrained:
      return "unconstrained";
  }
  return "unknown";
}

class ConstraintSet {
 public:
  // No constraints; compatible with every schema.
  ConstraintSet() = default;

  ConstraintSet(AttributeSchema schema, std::vector<Credential> hard,
                std::vector<Credential> soft, std::vector<Credential> dont_care,
                std::optional<std::vector<ColumnSet>> allowed_column_sets =
                    std::nullopt)
      : schema_(std::move(schema)),
        hard_(Normalize(std::move(hard))),
        soft_(Normalize(std::move(soft))),
        dont_care_(Normalize(std::move(dont_care))),
        allowed_(std::move(allowed_column_sets)) {
    for (const auto* set : {&hard_, &soft_, &dont_care_}) {
      for (const Credential& c : *set) c.CheckAgainst(*schema_);
    }
    CheckDisjoint(hard_, soft_, "hard", "soft");
    CheckDisjoint(hard_, dont_care_, "hard", "dont_care");
    CheckDisjoint(soft_, dont_care_, "soft", "dont_care");
    if (allowed_) {
      for (ColumnSet& columns : *allowed_) {
        std::sort(columns.begin(), columns.end());
        check_column_set(*schema_, columns);
      }
      std::sort(allowed_->begin(), allowed_->end());
      allowed_->erase(std::unique(allowed_->begin(), allowed_->end()),
                      allowed_->end());
    }
  }

  const std::vector<Credential>& hard() const { return hard_; }
  const std::vector<Credential>& soft() const { return soft_; }
  const std::vector<Credential>& dont_care() const { return dont_care_; }
  const std::optional<std::vector<ColumnSet>>& allowed_column_sets() const {
    return allowed_;
  }
  const std::optional<AttributeSchema>& schema() const { return schema_; }

  bool empty() const {
    return hard_.empty() && soft_.empty() && dont_care_.empty() && !allowed_;
  }

  void check_schema(const AttributeSchema& schema) const {
    if (schema_ && !(*schema_ == schema)) {
      throw InvalidParameter(
          "constraint set was built for a different schema");
    }
  }

  // Constraints with more than t pairs can never match a size-t credential;
  // they are kept but have no effect at this t.
  std::vector<Credential> oversized(std::size_t t) const {
    std::vector<Credential> out;
    for (const auto* set : {&hard_, &soft_, &dont_care_}) {
      for (const Credential& c : *set) {
        if (c.size() > t) out.push_back(c);
      }
    }
    std::sort(out.begin(), out.end());
    return out;
  }

 private:
  static std::vector<Credential> Normalize(std::vector<Credential> v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
    return v;
  }

  void CheckDisjoint(const std::vector<Credential>& a,
                     const std::vector<Credential>& b, std::string_view a_name,
                     std::string_view b_name) const {
    for (const Credential& c : a) {
      if (std::binary_search(b.begin(), b.end(), c)) {
        throw InvalidParameter("credential " + c.describe(*schema_) +
                               " is both " + std::string(a_name) + " and " +
                               std::string(b_name));
      }
    }
  }

  std::optional<AttributeSchema> schema_;
  std::vector<Credential> hard_;
  std::vector<Credential> soft_;
  std::vector<Credential> dont_care_;
  std::optional<std::vector<ColumnSet>> allowed_;
};

// Hard dominates: any superset of a hard constraint is hard. Soft and
// don't-care match by equality, then supersets of don't-care constraints are
// don't-care. A credential strictly containing a soft constraint is governed
// by its own classification.
inline ConstraintKind classify(const Credential& credential,
                               const ConstraintSet& constraints) {
  for (const Credential& h : constraints.hard()) {
    if (h.size() <= credential.size() && credential.contains(h)) {
      return ConstraintKind::kHard;
    }
  }
  if (std::binary_search(constraints.soft().begin(), constraints.soft().end(),
                         credential)) {
    return ConstraintKind::kSoft;
  }
  for (const Credential& d : constraints.dont_care()) {
    if (d.size() <= credential.size() && credential.contains(d)) {
      return ConstraintKind::kDontCare;
    }
  }
  return ConstraintKind::kUnconstrained;
}

// The t-column sets a policy may use. Without an explicit allow-list that is
// every t-subset; otherwise every t-subset of an allowed set.
inline std::vector<ColumnSet> policy_column_sets(
    std::size_t k, std::size_t t, const ConstraintSet& constraints) {
  check_credential_size(k, t);
  if (!constraints.allowed_column_sets()) return enumerate_column_sets(k, t);
  std::set<ColumnSet> out;
  for (const ColumnSet& allowed : *constraints.allowed_column_sets()) {
    if (allowed.size() < t) continue;
    for (const ColumnSet& pick : enumerate_column_sets(allowed.size(), t)) {
      ColumnSet columns;
      columns.reserve(t);
      for (std::size_t i : pick) columns.push_back(allowed[i]);
      out.insert(std::move(columns));
    }
  }
  return {out.begin(), out.end()};
}

// True if some policy t-column set covers every attribute of `credential`.
// Credentials outside every policy column set are never presented.
inline bool within_policy(const Credential& credential, std::size_t t,
                          const ConstraintSet& constraints) {
  if (credential.size() > t) return false;
  if (!constraints.allowed_column_sets()) return true;
  const ColumnSet attributes = credential.attributes();
  for (const ColumnSet& allowed : *constraints.allowed_column_sets()) {
    if (allowed.size() >= t &&
        std::includes(allowed.begin(), allowed.end(), attributes.begin(),
                      attributes.end())) {
      return true;
    }
  }
  return false;
}

namespace detail {

// Sorted attribute-value pairs; unlike Credential it may be empty.
using Assignment = std::vector<AttributeValue>;

inline bool is_subset(const Assignment& small, const Assignment& big) {
  return small.size() <= big.size() &&
         std::includes(big.begin(), big.end(), small.begin(), small.end());
}

inline Assignment to_assignment(const Credential& c) {
  return {c.pairs().begin(), c.pairs().end()};
}

// Union of two assignments, or nullopt when they disagree on an attribute.
inline std::optional<Assignment> merge(const Assignment& a,
                                       const Assignment& b) {
  Assignment out;
  out.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && a[i].attribute < b[j].attribute)) {
      out.push_back(a[i++]);
    } else if (i == a.size() || b[j].attribute < a[i].attribute) {
      out.push_back(b[j++]);
    } else {
      if (a[i].value != b[j].value) return std::nullopt;
      out.push_back(a[i]);
      ++i;
      ++j;
    }
  }
  return out;
}

inline bool is_forbidden(const Assignment& a,
                         const std::vector<Assignment>& forbidden) {
  for (const Assignment& f : forbidden) {
    if (is_subset(f, a)) return true;
  }
  return false;
}

// Minimal forbidden partial assignments: the explicit hard constraints plus
// everything derivable by value elimination. An assignment c of at most
// max_size pairs is forbidden when, for some attribute a outside c, every
// extension c + (a, x) is forbidden. Each derivation step is a
// hyper-resolution over one forbidden assignment per value of a.
//
// The rule is sound but not complete: exact infeasibility of a partial
// assignment under arbitrary forbidden tuples is NP-hard.
inline std::vector<Assignment> forbidden_closure(
    const AttributeSchema& schema, const std::vector<Credential>& hard,
    std::size_t max_size) {
  std::vector<Assignment> forbidden;
  auto insert_minimal = [&forbidden](Assignment c) {
    if (is_forbidden(c, forbidden)) return false;
    std::erase_if(forbidden,
                  [&c](const Assignment& f) { return is_subset(c, f); });
    forbidden.push_back(std::move(c));
    return true;
  };
  for (const Credential& h : hard) insert_minimal(to_assignment(h));

  bool changed = true;
  while (changed) {
    changed = false;
    std::vector<Assignment> derived;
    for (std::size_t a = 0; a < schema.size(); ++a) {
      const std::size_t domain = schema.domain_size(a);
      std::vector<std::vector<Assignment>> options(domain);
      for (const Assignment& f : forbidden) {
        for (const AttributeValue& p : f) {
          if (p.attribute != a) continue;
          Assignment rest;
          for (const AttributeValue& q : f) {
            if (q.attribute != a) rest.push_back(q);
          }
          options[p.value].push_back(std::move(rest));
        }
      }
      if (std::any_of(options.begin(), options.end(),
                      [](const auto& o) { return o.empty(); })) {
        continue;
      }
      // Depth-first over one choice per value, pruning conflicting, oversized
      // and already-forbidden partial unions.
      auto recurse = [&](auto& self, std::size_t x, const Assignment& acc) {
        if (x == domain) {
          derived.push_back(acc);
          return;
        }
        for (const Assignment& option : options[x]) {
          auto merged = merge(acc, option);
          if (!merged || merged->size() > max_size) continue;
          if (is_forbidden(*merged, forbidden)) continue;
          self(self, x + 1, *merged);
        }
      };
      recurse(recurse, 0, Assignment{});
    }
    std::sort(derived.begin(), derived.end(),
              [](const Assignment& l, const Assignment& r) {
                return l.size() != r.size() ? l.size() < r.size() : l < r;
              });
    for (Assignment& c : derived) {
      if (insert_minimal(std::move(c))) changed = true;
    }
  }
  std::sort(forbidden.begin(), forbidden.end());
  return forbidden;
}

}  // namespace detail

// Credentials of size <= t that are unrealizable because of the explicit hard
// constraints, in minimal form ({(a1,0)} rather than its extensions). Only
// newly derived credentials are returned, never supersets of explicit or
// other returned constraints.
inline std::vector<Credential> derive_implicit_hard(
    const AttributeSchema& schema, const ConstraintSet& constraints,
    std::size_t t) {
  check_credential_size(schema.size(), t);
  constraints.check_schema(schema);
  const auto closure =
      detail::forbidden_closure(schema, constraints.hard(), t);
  std::set<Credential> out;
  for (const detail::Assignment& f : closure) {
    if (f.empty()) {
      // No admissible row exists at all; every single pair is unrealizable.
      for (std::size_t a = 0; a < schema.size(); ++a) {
        for (std::uint32_t v = 0; v < schema.domain_size(a); ++v) {
          Credential c({{a, v}});
          if (!std::binary_search(constraints.hard().begin(),
                                  constraints.hard().end(), c)) {
            out.insert(std::move(c));
          }
        }
      }
      continue;
    }
    Credential c(f);
    if (!std::binary_search(constraints.hard().begin(),
                            constraints.hard().end(), c)) {
      out.insert(std::move(c));
    }
  }
  return {out.begin(), out.end()};
}

struct InfeasibilityWitness {
  Credential credential;
  std::string reason;
};

struct FeasibilityReport {
  bool feasible = true;
  std::vector<Credential> implicit_hard;
  std::vector<InfeasibilityWitness> witnesses;
  // Constraints larger than t; accepted but inert at this t.
  std::vector<Credential> inert;
};

// Infeasible iff some unconstrained size-t credential on a policy column set
// contains an implicitly forbidden assignment: it must appear r times but no
// admissible row can carry it.
inline FeasibilityReport check_feasibility(const AttributeSchema& schema,
                                           const ConstraintSet& constraints,
                                           std::size_t t) {
  check_credential_size(schema.size(), t);
  constraints.check_schema(schema);
  FeasibilityReport report;
  report.inert = constraints.oversized(t);

  const auto closure =
      detail::forbidden_closure(schema, constraints.hard(), t);
  std::vector<detail::Assignment> implicit;
  for (const detail::Assignment& f : closure) {
    if (f.empty() || !std::binary_search(constraints.hard().begin(),
                                         constraints.hard().end(),
                                         Credential(f))) {
      implicit.push_back(f);
    }
  }

  for (const Credential& c : derive_implicit_hard(schema, constraints, t)) {
    if (std::binary_search(constraints.soft().begin(),
                           constraints.soft().end(), c) ||
        std::binary_search(constraints.dont_care().begin(),
                           constraints.dont_care().end(), c)) {
      continue;
    }
    report.implicit_hard.push_back(c);
  }

  std::map<Credential, std::string> witnesses;
  const auto column_sets = policy_column_sets(schema.size(), t, constraints);
  for (const detail::Assignment& f : implicit) {
    const std::string source =
        f.empty() ? std::string("{}") : Credential(f).describe(schema);
    for (const ColumnSet& columns : column_sets) {
      ColumnSet free;
      bool covers = true;
      for (const AttributeValue& p : f) {
        if (!std::binary_search(columns.begin(), columns.end(),
                                p.attribute)) {
          covers = false;
          break;
        }
      }
      if (!covers) continue;
      for (std::size_t c : columns) {
        bool fixed = std::any_of(f.begin(), f.end(), [c](const auto& p) {
          return p.attribute == c;
        });
        if (!fixed) free.push_back(c);
      }
      for_each_assignment(schema, free, [&](const ValueTuple& values) {
        detail::Assignment full = f;
        for (std::size_t i = 0; i < free.size(); ++i) {
          full.push_back({free[i], values[i]});
        }
        Credential credential(std::move(full));
        if (classify(credential, constraints) !=
            ConstraintKind::kUnconstrained) {
          return;
        }
        witnesses.try_emplace(
            credential, "unconstrained but contains implicitly forbidden " +
                            source);
      });
    }
  }
  for (auto& [credential, reason] : witnesses) {
    report.witnesses.push_back({credential, std::move(reason)});
  }
  report.feasible = report.witnesses.empty();
  return report;
}

// r times the largest number of unconstrained size-t credentials on any one
// policy column set. Each of them must appear r times in disjoint rows of
// that column set, so no (r,t)-anonymous array covering them is smaller.
inline std::uint64_t row_lower_bound(const AttributeSchema& schema,
                                     const ConstraintSet& constraints,
                                     std::int64_t r, std::size_t t) {
  if (r < 1) throw InvalidParameter("r must be at least 1");
  check_credential_size(schema.size(), t);
  constraints.check_schema(schema);
  std::uint64_t widest = 0;
  for (const ColumnSet& columns :
       policy_column_sets(schema.size(), t, constraints)) {
    std::uint64_t unconstrained = 0;
    for_each_assignment(schema, columns, [&](const ValueTuple& values) {
      if (classify(Credential::FromTuple(columns, values), constraints) ==
          ConstraintKind::kUnconstrained) {
        ++unconstrained;
      }
    });
    widest = std::max(widest, unconstrained);
  }
  return widest * static_cast<std::uint64_t>(r);
}

// Thrown by operations that need a feasible constraint system.
class FeasibilityError : public Error {
 public:
  explicit FeasibilityError(FeasibilityReport report)
      : Error("constraint system is infeasible: " +
              std::to_string(report.witnesses.size()) +
              " unconstrained credential(s) cannot be realized"),
        report_(std::move(report)) {}

  const FeasibilityReport& report() const { return report_; }

 private:
  FeasibilityReport report_;
};

}  // namespace anonarray

#endif  // ANONARRAY_CONSTRAINTS_HPP_
