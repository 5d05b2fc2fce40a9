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

// Randomized invariants over a corpus of small arrays (N <= 32, k <= 6,
// two or three values per attribute, random constraint sets).

#include <gtest/gtest.h>

#include <random>

#include "support/oracles.hpp"
#include "support/properties.hpp"

namespace anonarray::testing {
namespace {

constexpr int kInstances = 200;

class CorpusTest : public ::testing::Test {
 protected:
  void SetUp() override {
    std::mt19937_64 rng(20261018);
    for (int i = 0; i < kInstances; ++i) corpus_.push_back(random_instance(rng));
  }
  std::vector<RandomInstance> corpus_;
};

TEST_F(CorpusTest, GuaranteeMatchesBruteForce) {
  for (const auto& instance : corpus_) {
    EXPECT_EQ(check_guarantee_oracle(instance), "");
  }
}

TEST_F(CorpusTest, LocalHomogeneityMatchesBruteForce) {
  for (const auto& instance : corpus_) {
    for (std::size_t t = 1; t <= std::min<std::size_t>(3, instance.array.num_columns()); ++t) {
      EXPECT_EQ(check_homogeneity_oracle(instance, t), "");
    }
  }
}

TEST_F(CorpusTest, ShortcutEqualsClosenessAverage) {
  for (const auto& instance : corpus_) {
    for (std::size_t t = 1; t <= instance.array.num_columns(); ++t) {
      EXPECT_EQ(check_shortcut(instance, t), "");
    }
  }
}

TEST_F(CorpusTest, ScoresBoundedByBinomialOverR) {
  for (const auto& instance : corpus_) {
    for (std::size_t t = 1; t <= instance.array.num_columns(); ++t) {
      EXPECT_EQ(check_score_bound(instance, t), "");
    }
  }
}

TEST_F(CorpusTest, GuaranteeNonIncreasingInT) {
  for (const auto& instance : corpus_) EXPECT_EQ(check_monotone(instance), "");
}

TEST_F(CorpusTest, ValidityIsDownwardClosed) {
  for (const auto& instance : corpus_) {
    EXPECT_EQ(check_downward_closure(instance), "");
  }
}

TEST_F(CorpusTest, RowAndColumnPermutationInvariance) {
  std::mt19937_64 rng(8);
  for (const auto& instance : corpus_) {
    EXPECT_EQ(check_permutation_invariance(instance, rng), "");
  }
}

TEST_F(CorpusTest, DuplicationDoublesR) {
  for (const auto& instance : corpus_) EXPECT_EQ(check_duplication(instance), "");
}

TEST_F(CorpusTest, ReportInvariants) {
  for (const auto& instance : corpus_) {
    for (std::size_t t = 1; t <= instance.array.num_columns(); ++t) {
      const GuaranteeReport report =
          compute_guarantee(instance.array, t, instance.constraints);
      EXPECT_EQ(report.r == 0, !report.hard_violations.empty());
      if (report.r >= 1 && report.min_witness) {
        EXPECT_EQ(report.min_witness->count, report.r);
      }
      const HomogeneityReport h = local_homogeneity(instance.array, t);
      const Rational cap(static_cast<std::int64_t>(
          binomial(instance.array.num_columns(), t)));
      for (std::size_t i = 0; i < h.local.size(); ++i) {
        EXPECT_GE(h.local[i], 0);
        EXPECT_LE(h.local[i], cap);
        const bool isolated =
            std::find(h.isolated.begin(), h.isolated.end(), i) != h.isolated.end();
        if (isolated) {
          EXPECT_EQ(h.local[i], cap);
        }
      }
    }
  }
}

TEST_F(CorpusTest, ProfileIsNonIncreasingAndStopsAtOne) {
  for (const auto& instance : corpus_) {
    const ConstraintSet cs =
        without_exemptions(instance.constraints, instance.array.schema());
    const AnonymityProfile p = anonymity_profile(instance.array, cs);
    ASSERT_FALSE(p.entries.empty());
    for (std::size_t i = 1; i < p.entries.size(); ++i) {
      if (p.entries[i].r >= 1) {
        EXPECT_LE(p.entries[i].r, p.entries[i - 1].r);
      }
      EXPECT_GT(p.entries[i - 1].r, 1);
    }
  }
}

}  // namespace
}  // namespace anonarray::testing
