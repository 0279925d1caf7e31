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

#include <cstdint>
#include <string>
#include <vector>

#include "h3w/geometry.h"
#include "h3w/width.h"

namespace h3w {

struct McEstimate {
  double estimate = 0;
  double sigma = 0;
  int64_t samples = 0;
};

/// Hyperbolic ball volume by rejection sampling: uniform points in the
/// Klein ball of radius tanh r, accepted with probability proportional to
/// the hyperbolic volume density.
McEstimate McBallVolume(double r, int64_t n, uint64_t seed);

struct NormalCheck {
  int markings = 0;
  int pairs = 0;
  int failures = 0;
  std::vector<std::string> messages;
  bool pass() const { return failures == 0; }
};

/// All 16 vertex markings of a tetrahedron and all 16 x 16 gluings across
/// a shared face (every vertex bijection).
NormalCheck ExhaustiveNormalCheck();

struct FlatCase {
  std::string name;
  RunConfig config;
  std::vector<int> expected_genus;  // hand enumeration
};

/// Small flat-torus configurations with hand-enumerated genus sequences.
std::vector<FlatCase> FlatCases();

struct FlatCheck {
  std::string name;
  std::vector<int> genus;
  std::vector<int> expected;
  double volume = 0;           // sum of cell volumes
  double expected_volume = 0;  // torus volume
  int cells = 0;
  bool surfaces_ok = true;     // closed, oriented, even chi
  bool pass() const;
};

FlatCheck FlatPipelineCheck(const FlatCase& c);

}  // namespace h3w
