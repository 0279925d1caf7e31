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

#include <Eigen/Dense>
#include <span>
#include <vector>

namespace h3w {

using Vec3 = Eigen::Vector3d;
using Vec4 = Eigen::Vector4d;
using Mat4 = Eigen::Matrix4d;

// Incidence tolerance at unit scale.
inline constexpr double kTauGeom = 1e-9;
// Allowed drift of <x,x> = -1, relative to x0^2.
inline constexpr double kTauNorm = 1e-12;
// Allowed drift of M^T eta M - eta, relative to the largest entry of M^2.
inline constexpr double kTauIso = 1e-9;

/// Lorentzian form  -a0 b0 + a1 b1 + a2 b2 + a3 b3.
double MinkowskiDot(const Vec4& a, const Vec4& b);

/// diag(-1, 1, 1, 1).
Mat4 MinkowskiMetric();

/// Point on the upper sheet of the hyperboloid <x,x> = -1.
class HPoint {
 public:
  /// The basepoint (1, 0, 0, 0).
  HPoint();

  /// Validates normalization and sheet; throws kPrecondition otherwise.
  static HPoint FromCoords(const Vec4& x);
  /// Rescales any future-pointing timelike vector onto the hyperboloid.
  static HPoint Project(const Vec4& x);
  /// From Beltrami-Klein coordinates (|k| < 1).
  static HPoint FromKlein(const Vec3& k);
  /// Point at distance `dist` from the basepoint in direction `dir`.
  static HPoint FromPolar(const Vec3& dir, double dist);

  const Vec4& coords() const { return x_; }
  double operator[](int i) const { return x_[i]; }
  Vec3 Klein() const { return x_.tail<3>() / x_[0]; }
  Vec3 Poincare() const { return x_.tail<3>() / (1.0 + x_[0]); }

 private:
  explicit HPoint(const Vec4& x) : x_(x) {}
  Vec4 x_;
};

/// Orientation-agnostic isometry of H^3 in SO+(3,1) or O+(3,1).
class Isometry {
 public:
  Isometry() : m_(Mat4::Identity()) {}

  /// Validates that `m` preserves the form and the upper sheet.
  static Isometry FromMatrix(const Mat4& m);
  /// Hyperbolic translation by `dist` along unit direction `dir` through the
  /// basepoint.
  static Isometry Translation(const Vec3& dir, double dist);
  /// Rotation about the axis through the basepoint.
  static Isometry Rotation(const Vec3& axis, double angle);
  /// The translation along the geodesic from the basepoint to `p` that
  /// carries the basepoint onto `p`.
  static Isometry CarryOriginTo(const HPoint& p);

  const Mat4& matrix() const { return m_; }

  /// Applies and renormalizes.
  HPoint operator()(const HPoint& p) const;
  Isometry operator*(const Isometry& o) const { return Isometry(m_ * o.m_); }
  Isometry Inverse() const;

 private:
  explicit Isometry(const Mat4& m) : m_(m) {}
  Mat4 m_;
};

/// Plane {x : <x,n> = 0} with unit spacelike normal; the associated closed
/// half-space is <x,n> <= 0.
class GeodesicPlane {
 public:
  static GeodesicPlane FromNormal(const Vec4& n);

  const Vec4& normal() const { return n_; }
  /// <x,n>; equals sinh of the signed distance from x to the plane.
  double Evaluate(const HPoint& p) const { return MinkowskiDot(p.coords(), n_); }
  bool Contains(const HPoint& p, double tol = kTauGeom) const;
  bool InHalfspace(const HPoint& p, double tol = kTauGeom) const;

  /// Klein-chart form: the half-space is {k : KleinNormal().dot(k) <= KleinOffset()}.
  Vec3 KleinNormal() const { return n_.tail<3>(); }
  double KleinOffset() const { return n_[0]; }

 private:
  explicit GeodesicPlane(const Vec4& n) : n_(n) {}
  Vec4 n_;
};

double Distance(const HPoint& p, const HPoint& q);

/// Perpendicular bisector of [p, q]; its half-space contains p.
/// Throws kDegeneratePair when p and q coincide within kTauGeom.
GeodesicPlane Bisector(const HPoint& p, const HPoint& q);

/// Point at fraction s of the geodesic from p to q.
HPoint PointAlong(const HPoint& p, const HPoint& q, double s);
HPoint Midpoint(const HPoint& p, const HPoint& q);

/// pi (sinh 2r - 2r).
double BallVolume(double r);
/// 2 pi (cosh r - 1).
double EquatorialDiscArea(double r);
/// 4 pi sinh^2 r.
double SphereArea(double r);

/// Area of the geodesic triangle with hyperboloid vertices a, b, c.
double TriangleArea(const Vec4& a, const Vec4& b, const Vec4& c);

/// Bounded convex polyhedron with its face lattice. Face vertex cycles are
/// counter-clockwise when seen from outside.
struct ConvexPolyhedron {
  struct Face {
    int plane;  // index into `halfspaces`
    std::vector<int> vertices;
  };
  struct Edge {
    int v0, v1;
    int f0, f1;
  };

  std::vector<GeodesicPlane> halfspaces;
  std::vector<HPoint> vertices;
  std::vector<Face> faces;
  std::vector<Edge> edges;

  int EulerCharacteristic() const {
    return static_cast<int>(vertices.size()) - static_cast<int>(edges.size()) +
           static_cast<int>(faces.size());
  }
  bool Contains(const HPoint& p, double tol = kTauGeom) const;
};

/// Intersection of closed half-spaces. Throws kEmptyIntersection or
/// kUnboundedIntersection, and kDegeneracy when four or more planes meet at a
/// vertex.
ConvexPolyhedron IntersectHalfspaces(std::span<const GeodesicPlane> planes);

}  // namespace h3w
