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

#include "h3w/hkernel.h"

#include <cmath>
#include <map>
#include <numbers>

#include "h3w/errors.h"
#include "h3w/polytope.h"

namespace h3w {

double MinkowskiDot(const Vec4& a, const Vec4& b) {
  return -a[0] * b[0] + a[1] * b[1] + a[2] * b[2] + a[3] * b[3];
}

Mat4 MinkowskiMetric() {
  Mat4 eta = Mat4::Identity();
  eta(0, 0) = -1;
  return eta;
}

HPoint::HPoint() : x_(1, 0, 0, 0) {}

HPoint HPoint::FromCoords(const Vec4& x) {
  if (!x.allFinite() || x[0] < 1.0 - kTauGeom) {
    throw Error(ErrorKind::kPrecondition, "point is not on the upper sheet");
  }
  const double drift = std::abs(MinkowskiDot(x, x) + 1.0);
  if (drift > kTauNorm * x[0] * x[0] * 16) {
    throw Error(ErrorKind::kPrecondition, "point is not normalized");
  }
  return HPoint(x);
}

HPoint HPoint::Project(const Vec4& x) {
  const double q = -MinkowskiDot(x, x);
  if (!(q > 0) || x[0] <= 0) {
    throw Error(ErrorKind::kPrecondition,
                "vector is not future-pointing timelike");
  }
  Vec4 y = x / std::sqrt(q);
  // Recompute x0 from the spatial part; this is stable for large x0.
  y[0] = std::sqrt(1.0 + y.tail<3>().squaredNorm());
  return HPoint(y);
}

HPoint HPoint::FromKlein(const Vec3& k) {
  const double s = 1.0 - k.squaredNorm();
  if (!(s > 0)) throw Error(ErrorKind::kDomain, "Klein point outside ball");
  const double x0 = 1.0 / std::sqrt(s);
  Vec4 x;
  x << x0, x0 * k;
  return HPoint(x);
}

HPoint HPoint::FromPolar(const Vec3& dir, double dist) {
  const Vec3 u = dir.normalized();
  Vec4 x;
  x << std::cosh(dist), std::sinh(dist) * u;
  return HPoint(x);
}

Isometry Isometry::FromMatrix(const Mat4& m) {
  if (!m.allFinite()) {
    throw Error(ErrorKind::kPrecondition, "non-finite isometry matrix");
  }
  const Mat4 eta = MinkowskiMetric();
  const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
  const double err = (m.transpose() * eta * m - eta).cwiseAbs().maxCoeff();
  if (err > kTauIso * scale * scale) {
    throw Error(ErrorKind::kPrecondition,
                "matrix does not preserve the Minkowski form");
  }
  if (m(0, 0) < 1.0 - kTauGeom) {
    throw Error(ErrorKind::kPrecondition, "matrix swaps hyperboloid sheets");
  }
  return Isometry(m);
}

Isometry Isometry::Translation(const Vec3& dir, double dist) {
  const Vec3 u = dir.normalized();
  const double c = std::cosh(dist), s = std::sinh(dist);
  Mat4 m;
  m(0, 0) = c;
  m.block<1, 3>(0, 1) = s * u.transpose();
  m.block<3, 1>(1, 0) = s * u;
  m.block<3, 3>(1, 1) =
      Eigen::Matrix3d::Identity() + (c - 1.0) * u * u.transpose();
  return Isometry(m);
}

Isometry Isometry::Rotation(const Vec3& axis, double angle) {
  Mat4 m = Mat4::Identity();
  m.block<3, 3>(1, 1) =
      Eigen::AngleAxisd(angle, axis.normalized()).toRotationMatrix();
  return Isometry(m);
}

Isometry Isometry::CarryOriginTo(const HPoint& p) {
  const Vec3 s = p.coords().tail<3>();
  const double n = s.norm();
  if (n == 0) return Isometry();
  return Translation(s / n, std::asinh(n));
}

HPoint Isometry::operator()(const HPoint& p) const {
  return HPoint::Project(m_ * p.coords());
}

Isometry Isometry::Inverse() const {
  const Mat4 eta = MinkowskiMetric();
  return Isometry(eta * m_.transpose() * eta);
}

GeodesicPlane GeodesicPlane::FromNormal(const Vec4& n) {
  const double q = MinkowskiDot(n, n);
  if (!(q > 0)) {
    throw Error(ErrorKind::kPrecondition, "plane normal is not spacelike");
  }
  return GeodesicPlane(n / std::sqrt(q));
}

bool GeodesicPlane::Contains(const HPoint& p, double tol) const {
  return std::abs(Evaluate(p)) <= tol;
}

bool GeodesicPlane::InHalfspace(const HPoint& p, double tol) const {
  return Evaluate(p) <= tol;
}

double Distance(const HPoint& p, const HPoint& q) {
  const Vec4 d = p.coords() - q.coords();
  const double chord2 = std::max(0.0, MinkowskiDot(d, d));
  return 2.0 * std::asinh(0.5 * std::sqrt(chord2));
}

GeodesicPlane Bisector(const HPoint& p, const HPoint& q) {
  if (Distance(p, q) <= kTauGeom) {
    throw Error(ErrorKind::kDegeneratePair, "bisector of coincident points");
  }
  // <x, q - p> = 0 is the equidistant set; p lies on the negative side.
  return GeodesicPlane::FromNormal(q.coords() - p.coords());
}

HPoint PointAlong(const HPoint& p, const HPoint& q, double s) {
  const double d = Distance(p, q);
  if (d == 0) return p;
  const double a = std::sinh((1.0 - s) * d) / std::sinh(d);
  const double b = std::sinh(s * d) / std::sinh(d);
  return HPoint::Project(a * p.coords() + b * q.coords());
}

HPoint Midpoint(const HPoint& p, const HPoint& q) {
  return HPoint::Project(p.coords() + q.coords());
}

double BallVolume(double r) {
  if (r < 0) throw Error(ErrorKind::kDomain, "negative radius");
  if (r < 1e-3) {
    // Series: pi (sinh 2r - 2r) = (4/3) pi r^3 (1 + r^2/5 + ...).
    const double r2 = r * r;
    return 4.0 / 3.0 * std::numbers::pi * r2 * r *
           (1.0 + r2 / 5.0 + 2.0 * r2 * r2 / 105.0);
  }
  return std::numbers::pi * (std::sinh(2 * r) - 2 * r);
}

double EquatorialDiscArea(double r) {
  if (r < 0) throw Error(ErrorKind::kDomain, "negative radius");
  const double s = std::sinh(0.5 * r);
  return 4.0 * std::numbers::pi * s * s;  // 2 pi (cosh r - 1)
}

double SphereArea(double r) {
  if (r < 0) throw Error(ErrorKind::kDomain, "negative radius");
  const double s = std::sinh(r);
  return 4.0 * std::numbers::pi * s * s;
}

double TriangleArea(const Vec4& a, const Vec4& b, const Vec4& c) {
  // Gram determinant of (a, b - a, c - a) equals that of (a, b, c) but keeps
  // the small entries of thin triangles accurate.
  const Vec4 u = b - a, w = c - a;
  const double aa = MinkowskiDot(a, a), au = MinkowskiDot(a, u),
               aw = MinkowskiDot(a, w), uu = MinkowskiDot(u, u),
               uw = MinkowskiDot(u, w), ww = MinkowskiDot(w, w);
  const double det = aa * (uu * ww - uw * uw) - au * (au * ww - uw * aw) +
                     aw * (au * uw - uu * aw);
  const double num = std::sqrt(std::max(0.0, -det));
  const double cab = -MinkowskiDot(a, b), cbc = -MinkowskiDot(b, c),
               cca = -MinkowskiDot(c, a);
  return 2.0 * std::atan2(num, 1.0 + cab + cbc + cca);
}

bool ConvexPolyhedron::Contains(const HPoint& p, double tol) const {
  for (const GeodesicPlane& h : halfspaces) {
    if (!h.InHalfspace(p, tol)) return false;
  }
  return true;
}

ConvexPolyhedron IntersectHalfspaces(std::span<const GeodesicPlane> planes) {
  ChartPolytope poly = ChartPolytope::Box(1.0);
  for (int i = 0; i < static_cast<int>(planes.size()); ++i) {
    const auto status = poly.Clip(planes[i].KleinNormal(),
                                  planes[i].KleinOffset(), i, kTauGeom);
    if (status == ChartPolytope::ClipStatus::kEmpty) {
      throw Error(ErrorKind::kEmptyIntersection,
                  "half-space intersection is empty");
    }
    if (status == ChartPolytope::ClipStatus::kDegenerate) {
      throw Error(ErrorKind::kDegeneracy,
                  "half-space intersection is not in general position");
    }
  }
  if (poly.HasNegativeTag() || poly.MaxRadius() >= 1.0 - 1e-12) {
    throw Error(ErrorKind::kUnboundedIntersection,
                "half-space intersection is unbounded");
  }
  if (!poly.IsSimple(kTauGeom)) {
    throw Error(ErrorKind::kDegeneracy,
                "half-space intersection has a vertex of degree above 3");
  }

  ConvexPolyhedron out;
  out.halfspaces.assign(planes.begin(), planes.end());
  for (const Vec3& k : poly.vertices()) {
    out.vertices.push_back(HPoint::FromKlein(k));
  }
  for (const auto& f : poly.faces()) out.faces.push_back({f.tag, f.vertices});
  for (const auto& e : poly.Edges()) {
    out.edges.push_back({e.v0, e.v1, e.f0, e.f1});
  }
  return out;
}

}  // namespace h3w
