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

#include "h3w/errors.h"

namespace h3w {

const char* ErrorKindName(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kPrecondition: return "precondition";
    case ErrorKind::kDomain: return "domain";
    case ErrorKind::kDegeneratePair: return "degenerate-pair";
    case ErrorKind::kEmptyIntersection: return "empty-intersection";
    case ErrorKind::kUnboundedIntersection: return "unbounded-intersection";
    case ErrorKind::kSearchRadiusExhausted: return "search-radius-exhausted";
    case ErrorKind::kInconsistentThinPart: return "inconsistent-thin-part";
    case ErrorKind::kBallNotEmbedded: return "ball-not-embedded";
    case ErrorKind::kNonGenericField: return "non-generic-field";
    case ErrorKind::kDegeneracy: return "degeneracy";
    case ErrorKind::kNonRegular: return "non-regular";
    case ErrorKind::kCappingFailure: return "capping-failure";
    case ErrorKind::kConfig: return "config";
    case ErrorKind::kTheoremViolation: return "theorem-violation";
    case ErrorKind::kIo: return "io";
  }
  return "unknown";
}

int ExitCodeFor(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kConfig:
    case ErrorKind::kIo:
      return kExitConfig;
    case ErrorKind::kTheoremViolation:
      return kExitTheorem;
    default:
      return kExitDegeneracy;
  }
}

}  // namespace h3w
