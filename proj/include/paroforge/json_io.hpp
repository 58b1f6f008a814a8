// Copyright 2026 The paroforge Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// JSON problem format. Matrices are row-major nested arrays; "A", "R" and
// "integrality" may be omitted (zero / false).

#ifndef PAROFORGE_JSON_IO_HPP_
#define PAROFORGE_JSON_IO_HPP_

#include <string>

#include "paroforge/model.hpp"

namespace paro {

// Throws Error(kSchema) naming the offending field path. Unless
// `run_validation` is false, a problem failing validate() is rejected with
// kInvalidArgument.
TwoStageProblem parse_problem(const std::string& text, bool run_validation = true);

std::string serialize_problem(const TwoStageProblem& problem, int indent = 2);

// The document with defaults filled in and keys in schema order.
std::string canonical_form(const std::string& text, int indent = 2);

TwoStageProblem load_problem(const std::string& path, bool run_validation = true);
void save_problem(const std::string& path, const TwoStageProblem& problem);

}  // namespace paro

#endif  // PAROFORGE_JSON_IO_HPP_
