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

#include "paroforge/error.hpp"

namespace paro {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kDimensionMismatch: return "dimension mismatch";
    case ErrorKind::kInvalidArgument: return "invalid argument";
    case ErrorKind::kSchema: return "schema error";
    case ErrorKind::kInfeasible: return "infeasible";
    case ErrorKind::kUnbounded: return "unbounded";
    case ErrorKind::kIterationLimit: return "iteration limit";
    case ErrorKind::kGuardExceeded: return "guard exceeded";
    case ErrorKind::kPrecondition: return "precondition violated";
    case ErrorKind::kEmptyInterval: return "empty interval";
    case ErrorKind::kNoStructure: return "no applicable structure";
  }
  return "unknown";
}

}  // namespace paro
