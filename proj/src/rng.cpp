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

#include "h3w/rng.h"

#include <cmath>
#include <numbers>

namespace h3w {

uint64_t MixSeed(uint64_t a, uint64_t b, uint64_t c) {
  uint64_t z = a;
  for (uint64_t x : {b, c}) {
    z += 0x9e3779b97f4a7c15ULL + x;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    z ^= z >> 31;
  }
  return z;
}

Vec3 Rng::UnitVector() {
  const double z = Uniform(-1.0, 1.0);
  const double phi = 2.0 * std::numbers::pi * Uniform();
  const double s = std::sqrt(std::max(0.0, 1.0 - z * z));
  return Vec3(s * std::cos(phi), s * std::sin(phi), z);
}

}  // namespace h3w
