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

// Umbrella header.

#ifndef ANONARRAY_ANONARRAY_HPP_
#define ANONARRAY_ANONARRAY_HPP_

#include "anonarray/constraints.hpp"
#include "anonarray/construct.hpp"
#include "anonarray/core_model.hpp"
#include "anonarray/error.hpp"
#include "anonarray/homogeneity.hpp"
#include "anonarray/io.hpp"
#include "anonarray/parallel.hpp"
#include "anonarray/rational.hpp"
#include "anonarray/verify.hpp"

#endif  // ANONARRAY_ANONARRAY_HPP_
