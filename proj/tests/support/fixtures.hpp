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

#ifndef ANONARRAY_TESTS_SUPPORT_FIXTURES_HPP_
#define ANONARRAY_TESTS_SUPPORT_FIXTURES_HPP_

#include <string>

#include "anonarray/anonarray.hpp"

namespace anonarray::testing {

inline std::string data_path(const std::string& relative) {
  return std::string(ANONARRAY_DATA_DIR) + "/" + relative;
}

inline AttributeSchema university_schema() {
  return io::load_schema(data_path("university/schema.json"));
}
inline ConstraintSet university_constraints() {
  return io::load_constraints(data_path("university/constraints.json"),
                              university_schema());
}
inline AccessProfileArray array_a() {
  return io::load_array(data_path("university/array_a.csv"),
                        university_schema());
}
inline AccessProfileArray array_b() {
  return io::load_array(data_path("university/array_b.csv"),
                        university_schema());
}

inline AttributeSchema binary3_schema() {
  return io::load_schema(data_path("binary3/schema.json"));
}
inline ConstraintSet binary3_constraints(const std::string& name) {
  return io::load_constraints(data_path("binary3/" + name + ".json"),
                              binary3_schema());
}
inline AccessProfileArray binary3_array(const std::string& name) {
  return io::load_array(data_path("binary3/" + name + ".csv"),
                        binary3_schema());
}

// Credential from (attribute name, value label) pairs.
inline Credential cred(
    const AttributeSchema& schema,
    std::initializer_list<std::pair<std::string, std::string>> pairs) {
  std::vector<AttributeValue> out;
  for (const auto& [name, label] : pairs) {
    const std::size_t a = schema.find_attribute(name).value();
    out.push_back({a, schema.find_value(a, label).value()});
  }
  return Credential(schema, std::move(out));
}

}  // namespace anonarray::testing

#endif  // ANONARRAY_TESTS_SUPPORT_FIXTURES_HPP_
