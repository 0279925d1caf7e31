// Copyright 2026 The h3width Authors.
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

#pragma once

#include <stdexcept>
#include <string>

namespace h3w {

enum class ErrorKind {
  kPrecondition,
  kDomain,
  kDegeneratePair,
  kEmptyIntersection,
  kUnboundedIntersection,
  kSearchRadiusExhausted,
  kInconsistentThinPart,
  kBallNotEmbedded,
  kNonGenericField,
  kDegeneracy,
  kNonRegular,
  kCappingFailure,
  kConfig,
  kTheoremViolation,
  kIo,
};

const char* ErrorKindName(ErrorKind kind);

/// Structured error carrying a machine-readable kind and the pipeline stage
/// that raised it. Stage is empty for errors raised outside a pipeline run.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what, std::string stage = {})
      : std::runtime_error(what), kind_(kind), stage_(std::move(stage)) {}

  ErrorKind kind() const { return kind_; }
  const std::string& stage() const { return stage_; }

  Error WithStage(const std::string& stage) const {
    return Error(kind_, what(), stage);
  }

 private:
  ErrorKind kind_;
  std::string stage_;
};

// Process exit codes used by the CLI.
constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitDegeneracy = 3;
constexpr int kExitTheorem = 4;

int ExitCodeFor(ErrorKind kind);

}  // namespace h3w
