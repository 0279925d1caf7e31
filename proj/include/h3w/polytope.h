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

#include <array>
#include <vector>

#include "h3w/hkernel.h"

namespace h3w {

/// Convex polytope in a Euclidean chart, clipped one tagged half-space at a
/// time. Face vertex cycles are counter-clockwise seen from outside.
class ChartPolytope {
 public:
  struct Face {
    int tag;
    Vec3 normal;  // face plane: normal . k = offset
    double offset;
    std::vector<int> vertices;
  };
  struct Edge {
    int v0, v1;  // v0 -> v1 runs counter-clockwise around f0
    int f0, f1;
  };
  enum class ClipStatus { kCut, kRedundant, kEmpty, kDegenerate };

  /// Axis-aligned box with the given half-sides; its faces carry tags
  /// -1 .. -6. Unequal sides avoid coincidences with symmetric cuts.
  static ChartPolytope Box(const Vec3& half_sides);
  /// Box containing the cube [-h, h]^3 with slightly unequal sides.
  static ChartPolytope Box(double h) {
    return Box(Vec3(1.0625 * h, 1.125 * h, 1.1875 * h));
  }

  /// Intersection of the box with all half-spaces {k : n_i . k <= c_i} at
  /// once, by vertex enumeration. Order-independent and tolerant of
  /// vertices on several planes. Planes that carry no face are dropped.
  static ChartPolytope FromHalfspaces(const Vec3& box,
                                      const std::vector<Vec3>& normals,
                                      const std::vector<double>& offsets,
                                      const std::vector<int>& tags,
                                      double tol);

  /// Intersects with {k : normal . k <= offset}. Vertices within `tol` of
  /// the plane make the cut degenerate and leave the polytope unchanged.
  ClipStatus Clip(const Vec3& normal, double offset, int tag, double tol);

  const std::vector<Vec3>& vertices() const { return vertices_; }
  const std::vector<Face>& faces() const { return faces_; }
  bool empty() const { return faces_.empty(); }

  std::vector<Edge> Edges() const;
  /// Faces incident to each vertex, in order of face index.
  std::vector<std::vector<int>> VertexFaces() const;
  /// Every vertex has degree 3 and no edge is shorter than `min_edge`.
  bool IsSimple(double min_edge) const;
  bool HasNegativeTag() const;
  bool Contains(const Vec3& k, double tol) const;
  double MaxRadius() const;

 private:
  std::vector<Vec3> vertices_;
  std::vector<Face> faces_;
};

}  // namespace h3w
