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

#include "anonarray/core_model.hpp"

#include <gtest/gtest.h>

#include <random>

#include "support/fixtures.hpp"
#include "support/oracles.hpp"

namespace anonarray {
namespace {

using ::anonarray::testing::array_a;
using ::anonarray::testing::array_b;
using ::anonarray::testing::binary3_array;
using ::anonarray::testing::cred;
using ::anonarray::testing::university_schema;

TEST(AttributeSchemaTest, RejectsInvalidDefinitions) {
  using Defs = std::vector<AttributeDef>;
  EXPECT_THROW(AttributeSchema(Defs{{"", {"x"}}}), InvalidParameter);
  EXPECT_THROW(AttributeSchema(Defs{{"a", {}}}), InvalidParameter);
  EXPECT_THROW(AttributeSchema(Defs{{"a", {"x"}}, {"a", {"y"}}}),
               InvalidParameter);
  EXPECT_THROW(AttributeSchema(Defs{{"a", {"x", "x"}}}), InvalidParameter);
}

TEST(AttributeSchemaTest, FlagsSingleValuedAttributes) {
  AttributeSchema schema({{"a", {"x", "y"}}, {"b", {"only"}}});
  EXPECT_EQ(schema.trivial_attributes(), std::vector<std::size_t>{1});
}

TEST(CredentialTest, Validation) {
  const AttributeSchema schema = university_schema();
  EXPECT_THROW(Credential(std::vector<AttributeValue>{}), InvalidParameter);
  EXPECT_THROW(Credential({{0, 0}, {0, 1}}), InvalidParameter);
  EXPECT_THROW(Credential(schema, {{0, 3}}), InvalidParameter);
  EXPECT_THROW(Credential(schema, {{9, 0}}), InvalidParameter);
}

TEST(CredentialTest, ContainmentAndDescription) {
  const AttributeSchema schema = university_schema();
  const Credential big =
      cred(schema, {{"Role", "faculty"}, {"Job", "grader"}, {"Semester", "Fall"}});
  const Credential small = cred(schema, {{"Semester", "Fall"}, {"Role", "faculty"}});
  EXPECT_TRUE(big.contains(small));
  EXPECT_FALSE(small.contains(big));
  EXPECT_EQ(small.describe(schema), "{(Role,faculty),(Semester,Fall)}");
}

TEST(AccessProfileArrayTest, RejectsOutOfDomainCells) {
  EXPECT_THROW(AccessProfileArray(university_schema(), {{0, 0, 0, 2}}),
               InvalidParameter);
  EXPECT_THROW(AccessProfileArray(university_schema(), {{0, 0, 0}}),
               InvalidParameter);
}

TEST(EnumerateColumnSetsTest, Examples) {
  EXPECT_EQ(enumerate_column_sets(3, 2),
            (std::vector<ColumnSet>{{0, 1}, {0, 2}, {1, 2}}));
  EXPECT_EQ(enumerate_column_sets(4, 2).size(), 6u);
  EXPECT_EQ(enumerate_column_sets(5, 5),
            (std::vector<ColumnSet>{{0, 1, 2, 3, 4}}));
  EXPECT_THROW(enumerate_column_sets(3, 0), InvalidParameter);
  EXPECT_THROW(enumerate_column_sets(3, 4), InvalidParameter);
}

TEST(EnumerateColumnSetsTest, SizeMatchesRecursiveBinomial) {
  for (std::size_t k = 1; k <= 12; ++k) {
    for (std::size_t t = 1; t <= k; ++t) {
      const auto sets = enumerate_column_sets(k, t);
      EXPECT_EQ(static_cast<std::int64_t>(sets.size()),
                testing::oracle_binomial(k, t))
          << k << " choose " << t;
      EXPECT_TRUE(std::is_sorted(sets.begin(), sets.end()));
    }
  }
}

TEST(CountCredentialsTest, ArrayBRoleJob) {
  const AccessProfileArray b = array_b();
  const CredentialCountTable table = count_credentials(b, {0, 1});
  EXPECT_EQ(table.count_of({0, 0}), 4);  // faculty, instructor
  EXPECT_EQ(table.count_of({1, 0}), 2);  // graduate, instructor
  EXPECT_EQ(table.count_of({1, 1}), 2);  // graduate, grader
  EXPECT_EQ(table.count_of({2, 1}), 4);  // undergraduate, grader
  EXPECT_EQ(table.counts().size(), 4u);
}

TEST(CountCredentialsTest, ArrayADepartmentJob) {
  const CredentialCountTable table = count_credentials(array_a(), {1, 2});
  EXPECT_EQ(table.count_of({1, 0}), 1);  // grader, CS
}

TEST(CountCredentialsTest, SingleValuedColumnTotalsN) {
  AttributeSchema schema({{"a", {"x", "y"}}, {"b", {"only"}}});
  AccessProfileArray array(schema, {{0, 0}, {1, 0}, {1, 0}});
  const CredentialCountTable table = count_credentials(array, {1});
  EXPECT_EQ(table.count_of({0}), 3);
}

TEST(CredentialOfRowTest, Examples) {
  const AttributeSchema schema = university_schema();
  EXPECT_EQ(credential_of_row(array_a(), 0, {0, 2}),
            cred(schema, {{"Role", "faculty"}, {"Department", "CS"}}));
  const AccessProfileArray medium = binary3_array("medium");
  EXPECT_EQ(credential_of_row(medium, 0, {0, 1}), Credential({{0, 0}, {1, 0}}));
  const Credential full = credential_of_row(array_b(), 5, {0, 1, 2, 3});
  EXPECT_EQ(full.values(), (ValueTuple{2, 1, 1, 0}));
}

TEST(CountCredentialsTest, RandomArraysPreserveTotalsAndRowMembership) {
  std::mt19937_64 rng(7);
  for (int round = 0; round < 100; ++round) {
    const auto instance = testing::random_instance(rng);
    const AccessProfileArray& array = instance.array;
    for (std::size_t t = 1; t <= array.num_columns(); ++t) {
      for (const ColumnSet& columns : enumerate_column_sets(array.num_columns(), t)) {
        const CredentialCountTable table = count_credentials(array, columns);
        EXPECT_EQ(table.total(), static_cast<std::int64_t>(array.num_rows()));
        for (const auto& [tuple, count] : table.counts()) EXPECT_GE(count, 1);
        for (std::size_t i = 0; i < array.num_rows(); ++i) {
          EXPECT_GE(table.count_of(credential_of_row(array, i, columns).values()), 1);
        }
      }
    }
  }
}

}  // namespace
}  // namespace anonarray
