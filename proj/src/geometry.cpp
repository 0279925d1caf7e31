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

#include "h3w/geometry.h"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "h3w/errors.h"

namespace h3w {
namespace {

class Hyperbolic final : public Geometry {
 public:
  bool hyperbolic() const override { return true; }

  double Distance(const Vec4& p, const Vec4& q) const override {
    const Vec4 d = p - q;
    return 2.0 * std::asinh(0.5 * std::sqrt(std::max(0.0, MinkowskiDot(d, d))));
  }

  Vec4 Normalize(const Vec4& x) const override {
    return HPoint::Project(x).coords();
  }

  Mat4 Invert(const Mat4& g) const override {
    const Mat4 eta = MinkowskiMetric();
    return eta * g.transpose() * eta;
  }

  Mat4 CarryOriginTo(const Vec4& p) const override {
    return Isometry::CarryOriginTo(HPoint::Project(p)).matrix();
  }

  Vec3 ToChart(const Vec4& x) const override {
    return x.tail<3>() / x[0];
  }

  Vec4 FromChart(const Vec3& k) const override {
    return HPoint::FromKlein(k).coords();
  }

  void OriginBisector(const Vec4& q, Vec3* n, double* c) const override {
    // <x, q - o> <= 0  <=>  k . q_s <= q0 - 1.
    *n = q.tail<3>();
    *c = q[0] - 1.0;
  }

  void ChartHalfspace(const Vec4& n, Vec3* a, double* c) const override {
    *a = n.tail<3>();
    *c = n[0];
  }

  double ChartRadius(double r) const override { return std::tanh(r); }

  double BallVolume(double r) const override { return h3w::BallVolume(r); }

  Vec4 SampleBall(double r, Rng& rng) const override {
    const double top = std::sinh(r) / r;
    for (;;) {
      const double s = r * std::cbrt(rng.Uniform());
      const double ratio = s > 0 ? std::sinh(s) / s / top : 1.0 / top;
      const double accept = ratio * ratio;
      const Vec3 u = rng.UnitVector();
      if (rng.Uniform() < accept) return Polar(u, s);
    }
  }

  Vec4 Polar(const Vec3& dir, double dist) const override {
    return HPoint::FromPolar(dir, dist).coords();
  }

  double TriangleArea(const Vec4& a, const Vec4& b,
                      const Vec4& c) const override {
    return h3w::TriangleArea(a, b, c);
  }

  double DistanceToLine(const Vec4& x, const Vec4& a,
                        const Vec4& b) const override {
    Vec4 v = b + MinkowskiDot(a, b) * a;
    v /= std::sqrt(MinkowskiDot(v, v));
    const double xa = MinkowskiDot(x, a), xv = MinkowskiDot(x, v);
    return std::asinh(std::sqrt(std::max(0.0, xa * xa - xv * xv - 1.0)));
  }

  double SpatialReach(const Vec4& p, double r) const override {
    // |dx| <= cosh(rho) ds for the spatial part x = sinh(rho) w.
    return r * std::cosh(std::acosh(std::max(1.0, p[0])) + r);
  }
};

class Euclidean final : public Geometry {
 public:
  bool hyperbolic() const override { return false; }

  double Distance(const Vec4& p, const Vec4& q) const override {
    return (p.tail<3>() - q.tail<3>()).norm();
  }

  Vec4 Normalize(const Vec4& x) const override {
    if (!(std::abs(x[0]) > 0)) {
      throw Error(ErrorKind::kPrecondition, "point at infinity");
    }
    return x / x[0];
  }

  Mat4 Invert(const Mat4& g) const override { return g.inverse(); }

  Mat4 CarryOriginTo(const Vec4& p) const override {
    Mat4 m = Mat4::Identity();
    m.block<3, 1>(1, 0) = p.tail<3>() / p[0];
    return m;
  }

  Vec3 ToChart(const Vec4& x) const override { return x.tail<3>() / x[0]; }

  Vec4 FromChart(const Vec3& k) const override {
    Vec4 x;
    x << 1.0, k;
    return x;
  }

  void OriginBisector(const Vec4& q, Vec3* n, double* c) const override {
    const Vec3 s = q.tail<3>() / q[0];
    *n = s;
    *c = 0.5 * s.squaredNorm();
  }

  void ChartHalfspace(const Vec4& n, Vec3* a, double* c) const override {
    *a = n.tail<3>();
    *c = -n[0];
  }

  double ChartRadius(double r) const override { return r; }

  double BallVolume(double r) const override {
    return 4.0 / 3.0 * std::numbers::pi * r * r * r;
  }

  Vec4 SampleBall(double r, Rng& rng) const override {
    const double s = r * std::cbrt(rng.Uniform());
    return Polar(rng.UnitVector(), s);
  }

  Vec4 Polar(const Vec3& dir, double dist) const override {
    Vec4 x;
    x << 1.0, dist * dir.normalized();
    return x;
  }

  double TriangleArea(const Vec4& a, const Vec4& b,
                      const Vec4& c) const override {
    const Vec3 u = b.tail<3>() - a.tail<3>(), w = c.tail<3>() - a.tail<3>();
    return 0.5 * u.cross(w).norm();
  }

  double DistanceToLine(const Vec4& x, const Vec4& a,
                        const Vec4& b) const override {
    const Vec3 d = (b.tail<3>() - a.tail<3>()).normalized();
    const Vec3 r = x.tail<3>() - a.tail<3>();
    return (r - r.dot(d) * d).norm();
  }

  double SpatialReach(const Vec4&, double r) const override { return r; }
};

}  // namespace

Vec4 Geometry::LineFoot(const Vec4& a, const Vec4& b) const {
  if (hyperbolic()) {
    Vec4 v = b + MinkowskiDot(a, b) * a;
    v /= std::sqrt(MinkowskiDot(v, v));
    // Along x(s) = cosh(s) a + sinh(s) v, x0 is minimal where tanh s = -v0/a0.
    const double s = std::atanh(std::clamp(-v[0] / a[0], -1.0 + 1e-15, 1.0 - 1e-15));
    return Normalize(std::cosh(s) * a + std::sinh(s) * v);
  }
  const Vec3 pa = a.tail<3>() / a[0];
  const Vec3 d = (b.tail<3>() / b[0] - pa).normalized();
  Vec4 f;
  f << 1.0, pa - pa.dot(d) * d;
  return f;
}

std::shared_ptr<const Geometry> HyperbolicGeometry() {
  static const auto g = std::make_shared<const Hyperbolic>();
  return g;
}

std::shared_ptr<const Geometry> EuclideanGeometry() {
  static const auto g = std::make_shared<const Euclidean>();
  return g;
}

}  // namespace h3w
