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

#ifndef ANONARRAY_RATIONAL_HPP_
#define ANONARRAY_RATIONAL_HPP_

#include <cstdio>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace anonarray {

// Exact rational used by the homogeneity metrics. Denominators grow like
// lcm(1..N), so a fixed-width type is not enough.
using Rational = boost::multiprecision::cpp_rational;

inline double to_double(const Rational& value) {
  return value.convert_to<double>();
}

// Decimal rendering at six significant digits ("0.583333" for 7/12).
inline std::string format_decimal(const Rational& value) {
  char buffer[64];
  std::snprintf(buffer, sizeof(buffer), "%.6g", to_double(value));
  return buffer;
}

// Exact "p/q" (or "p" for integers).
inline std::string format_exact(const Rational& value) {
  const auto num = boost::multiprecision::numerator(value);
  const auto den = boost::multiprecision::denominator(value);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

}  // namespace anonarray

#endif  // ANONARRAY_RATIONAL_HPP_
