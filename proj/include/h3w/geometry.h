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

#include <memory>

#include "h3w/hkernel.h"
#include "h3w/rng.h"

namespace h3w {

/// Metric policy shared by the hyperbolic pipeline and the flat validation
/// analogue. Points are 4-vectors: hyperboloid coordinates, or homogeneous
/// (1, x, y, z) in the Euclidean case. Isometries are 4x4 matrices in both.
/// The chart is Beltrami-Klein or the identity; in either, geodesic planes
/// are affine planes.
class Geometry {
 public:
  virtual ~Geometry() = default;

  virtual bool hyperbolic() const = 0;
  virtual double Distance(const Vec4& p, const Vec4& q) const = 0;
  virtual Vec4 Normalize(const Vec4& x) const = 0;
  virtual Mat4 Invert(const Mat4& g) const = 0;
  /// An isometry carrying the origin onto `p`.
  virtual Mat4 CarryOriginTo(const Vec4& p) const = 0;
  virtual Vec3 ToChart(const Vec4& x) const = 0;
  virtual Vec4 FromChart(const Vec3& k) const = 0;
  /// Chart half-space {k : n . k <= c} of points closer to the origin than
  /// to `q`.
  virtual void OriginBisector(const Vec4& q, Vec3* n, double* c) const = 0;
  /// Chart half-space {k : a . k <= c} of a stored plane 4-vector: the
  /// Minkowski normal n (<x,n> <= 0), or (n0, a) with n0 + a . x <= 0.
  virtual void ChartHalfspace(const Vec4& n, Vec3* a, double* c) const = 0;
  /// Chart radius of the metric ball of radius r about the origin.
  virtual double ChartRadius(double r) const = 0;
  virtual double BallVolume(double r) const = 0;
  /// Volume-uniform point in the ball of radius r about the origin.
  virtual Vec4 SampleBall(double r, Rng& rng) const = 0;
  /// Point at distance `dist` from the origin in direction `dir`.
  virtual Vec4 Polar(const Vec3& dir, double dist) const = 0;
  virtual double TriangleArea(const Vec4& a, const Vec4& b,
                              const Vec4& c) const = 0;
  /// Distance from x to the complete geodesic through a and b.
  virtual double DistanceToLine(const Vec4& x, const Vec4& a,
                                const Vec4& b) const = 0;
  /// Foot of the perpendicular from the origin to the line through a, b.
  Vec4 LineFoot(const Vec4& a, const Vec4& b) const;
  /// Bound on the coordinate displacement of the spatial part under a move
  /// of length r starting at p.
  virtual double SpatialReach(const Vec4& p, double r) const = 0;

  Vec4 Origin() const { return Vec4(1, 0, 0, 0); }
  Vec4 Apply(const Mat4& g, const Vec4& x) const { return Normalize(g * x); }
};

std::shared_ptr<const Geometry> HyperbolicGeometry();
std::shared_ptr<const Geometry> EuclideanGeometry();

}  // namespace h3w
