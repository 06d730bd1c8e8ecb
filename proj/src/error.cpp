// Copyright 2026 The gridsep Authors
//
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

#include "gridsep/error.hpp"

namespace gridsep {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kDimensionTooSmall: return "dimension-too-small";
    case ErrorKind::kNotACycle: return "not-a-cycle";
    case ErrorKind::kInfeasiblePartition: return "infeasible-partition";
    case ErrorKind::kTooLarge: return "too-large";
    case ErrorKind::kVertexNotOnLoop: return "vertex-not-on-loop";
    case ErrorKind::kBudgetExceeded: return "budget-exceeded";
    case ErrorKind::kWindowViolation: return "window-violation";
    case ErrorKind::kErasureMismatch: return "erasure-mismatch";
    case ErrorKind::kNotInImage: return "not-in-image";
    case ErrorKind::kCrossStructurePresent: return "cross-structure-present";
    case ErrorKind::kNotAnIsland: return "not-an-island";
    case ErrorKind::kPatternMismatch: return "pattern-mismatch";
    case ErrorKind::kNoCandidateFound: return "no-candidate-found";
    case ErrorKind::kParseError: return "parse-error";
    case ErrorKind::kDisconnectedGraph: return "disconnected-graph";
    case ErrorKind::kStepFailed: return "step-failed";
    case ErrorKind::kEmptyStats: return "empty-stats";
    case ErrorKind::kInvalidArgument: return "invalid-argument";
  }
  return "unknown";
}

Error::Error(ErrorKind kind, const std::string& what)
    : std::runtime_error(std::string(to_string(kind)) + ": " + what),
      kind_(kind) {}

}  // namespace gridsep
