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

#include <vector>

#include "h3w/quotient.h"

namespace h3w {

/// Seifert-Weber dodecahedral space: the regular dodecahedron with dihedral
/// angle 2 pi / 5, opposite faces glued with a 3 pi / 5 twist.
ManifoldData SeifertWeberData();

struct ClosedGeodesic {
  Mat4 generator;
  double length;
  double twist;
  Vec4 core_a, core_b;  // two points on the axis, core_a nearest the origin
};

/// One representative per closed geodesic of length at most
/// `max_length` (up to orientation), with a lift meeting the domain.
std::vector<ClosedGeodesic> ShortGeodesics(const ManifoldModel& m,
                                           double max_length);

/// Translation length and rotation angle of a loxodromic element.
void LoxodromicInvariants(const Mat4& g, double* length, double* twist);

}  // namespace h3w
