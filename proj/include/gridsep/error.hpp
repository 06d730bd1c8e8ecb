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

#ifndef GRIDSEP_ERROR_HPP_
#define GRIDSEP_ERROR_HPP_

#include <stdexcept>
#include <string>

namespace gridsep {

enum class ErrorKind {
  kDimensionTooSmall,
  kNotACycle,
  kInfeasiblePartition,
  kTooLarge,
  kVertexNotOnLoop,
  kBudgetExceeded,
  kWindowViolation,
  kErasureMismatch,
  kNotInImage,
  kCrossStructurePresent,
  kNotAnIsland,
  kPatternMismatch,
  kNoCandidateFound,
  kParseError,
  kDisconnectedGraph,
  kStepFailed,
  kEmptyStats,
  kInvalidArgument,
};

const char* to_string(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what);
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace gridsep

#endif  // GRIDSEP_ERROR_HPP_
