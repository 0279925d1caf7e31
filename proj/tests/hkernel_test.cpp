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

#include <cmath>
#include <numbers>

#include "doctest.h"
#include "h3w/errors.h"
#include "h3w/hkernel.h"
#include "h3w/rng.h"

namespace h3w {
namespace {

HPoint RandomPoint(Rng& rng, double r) {
  return HPoint::FromPolar(rng.UnitVector(), r * rng.Uniform());
}

Isometry RandomIsometry(Rng& rng) {
  return Isometry::Translation(rng.UnitVector(), 2 * rng.Uniform()) *
         Isometry::Rotation(rng.UnitVector(), 6 * rng.Uniform());
}

TEST_CASE("distance basics") {
  const HPoint o;
  CHECK(Distance(o, o) == 0);
  const HPoint q = HPoint::FromCoords(Vec4(std::cosh(1.0), std::sinh(1.0), 0, 0));
  CHECK(Distance(o, q) == doctest::Approx(1.0).epsilon(1e-14));
  Rng rng(7);
  for (int i = 0; i < 100; ++i) {
    const HPoint a = RandomPoint(rng, 3), b = RandomPoint(rng, 3);
    CHECK(std::abs(Distance(a, b) - Distance(b, a)) <= kTauGeom);
    const double ch = -MinkowskiDot(a.coords(), b.coords());
    CHECK(Distance(a, b) == doctest::Approx(std::acosh(std::max(1.0, ch))).epsilon(1e-7));
  }
}

TEST_CASE("unnormalized input is rejected") {
  CHECK_THROWS_AS(HPoint::FromCoords(Vec4(1, 0.5, 0, 0)), Error);
  CHECK_THROWS_AS(HPoint::FromCoords(Vec4(-1, 0, 0, 0)), Error);
}

TEST_CASE("isometries preserve distance") {
  Rng rng(11);
  for (int i = 0; i < 100; ++i) {
    const Isometry g = RandomIsometry(rng);
    const HPoint a = RandomPoint(rng, 2), b = RandomPoint(rng, 2);
    CHECK(std::abs(Distance(g(a), g(b)) - Distance(a, b)) <= kTauGeom);
    const HPoint back = g.Inverse()(g(a));
    CHECK(Distance(back, a) <= 1e-9);
    CHECK_NOTHROW(Isometry::FromMatrix(g.matrix()));
  }
  Mat4 bad = Mat4::Identity();
  bad(1, 2) = 0.1;
  CHECK_THROWS_AS(Isometry::FromMatrix(bad), Error);
}

TEST_CASE("bisector") {
  const HPoint p = HPoint::FromCoords(Vec4(std::cosh(1.0), std::sinh(1.0), 0, 0));
  const HPoint q = HPoint::FromCoords(Vec4(std::cosh(1.0), -std::sinh(1.0), 0, 0));
  const GeodesicPlane b = Bisector(p, q);
  CHECK(b.Contains(HPoint()));
  CHECK(std::abs(std::abs(b.normal()[1]) - 1.0) < 1e-12);
  CHECK(b.InHalfspace(p));
  CHECK_FALSE(b.InHalfspace(q));
  CHECK(b.Contains(Midpoint(p, q)));
  CHECK_THROWS_AS(Bisector(p, p), Error);

  // Rejection-sample points near the plane and project onto it.
  Rng rng(3);
  int checked = 0;
  for (int i = 0; i < 2000 && checked < 200; ++i) {
    const HPoint a = RandomPoint(rng, 2), c = RandomPoint(rng, 2);
    const GeodesicPlane pl = Bisector(a, c);
    const HPoint x = RandomPoint(rng, 2);
    const Vec4 n = pl.normal();
    const Vec4 y = x.coords() - MinkowskiDot(x.coords(), n) * n;
    if (MinkowskiDot(y, y) >= 0 || y[0] <= 0) continue;
    const HPoint on = HPoint::Project(y);
    CHECK(std::abs(Distance(on, a) - Distance(on, c)) <= 1e-9);
    ++checked;
  }
  CHECK(checked == 200);
}

TEST_CASE("closed forms") {
  CHECK(BallVolume(0) == 0);
  CHECK(BallVolume(1.0) == doctest::Approx(5.1109327057082890).epsilon(1e-13));
  const double r = 0.01;
  CHECK(BallVolume(r) / (4.0 / 3.0 * std::numbers::pi * r * r * r) ==
        doctest::Approx(1.0).epsilon(1e-4));
  CHECK(BallVolume(0.1) == doctest::Approx(4.0 / 3.0 * std::numbers::pi * 1e-3).epsilon(0.02));
  double prev = 0;
  for (double s = 0.01; s < 5; s += 0.01) {
    CHECK(BallVolume(s) > prev);
    prev = BallVolume(s);
    const double h = 1e-5;
    CHECK((BallVolume(s + h) - BallVolume(s - h)) / (2 * h) ==
          doctest::Approx(SphereArea(s)).epsilon(1e-6));
  }
  CHECK(EquatorialDiscArea(0.5) == doctest::Approx(0.80189758939934487).epsilon(1e-13));
  CHECK(EquatorialDiscArea(1.0) == doctest::Approx(3.4122762652849023).epsilon(1e-13));
  CHECK(SphereArea(1.0) == doctest::Approx(17.355387381771437).epsilon(1e-13));
  CHECK(SphereArea(0) == 0);
  CHECK_THROWS_AS(BallVolume(-1), Error);
  CHECK_THROWS_AS(EquatorialDiscArea(-1), Error);
  CHECK_THROWS_AS(SphereArea(-1), Error);
}

TEST_CASE("equatorial disc area by quadrature") {
  // Area element of a totally geodesic disc in polar coordinates: sinh(s).
  for (double r : {0.5, 1.0}) {
    const int n = 20000;
    double sum = 0;
    for (int i = 0; i < n; ++i) sum += std::sinh((i + 0.5) * r / n) * r / n;
    CHECK(2 * std::numbers::pi * sum == doctest::Approx(EquatorialDiscArea(r)).epsilon(1e-8));
  }
}

TEST_CASE("triangle area matches angle deficit") {
  Rng rng(5);
  for (int i = 0; i < 50; ++i) {
    const HPoint a = RandomPoint(rng, 2), b = RandomPoint(rng, 2),
                 c = RandomPoint(rng, 2);
    auto angle = [](const HPoint& p, const HPoint& q, const HPoint& r) {
      const Vec4 x = p.coords();
      Vec4 u = q.coords() + MinkowskiDot(x, q.coords()) * x;
      Vec4 v = r.coords() + MinkowskiDot(x, r.coords()) * x;
      return std::acos(std::clamp(
          MinkowskiDot(u, v) / std::sqrt(MinkowskiDot(u, u) * MinkowskiDot(v, v)),
          -1.0, 1.0));
    };
    const double deficit =
        std::numbers::pi - angle(a, b, c) - angle(b, c, a) - angle(c, a, b);
    CHECK(TriangleArea(a.coords(), b.coords(), c.coords()) ==
          doctest::Approx(deficit).epsilon(1e-8));
  }
  // Tiny triangles approach the Euclidean area.
  const double h = 1e-4;
  const Vec4 p0 = HPoint().coords();
  const Vec4 p1 = HPoint::FromPolar(Vec3::UnitX(), h).coords();
  const Vec4 p2 = HPoint::FromPolar(Vec3::UnitY(), h).coords();
  CHECK(TriangleArea(p0, p1, p2) == doctest::Approx(0.5 * h * h).epsilon(1e-6));
}

TEST_CASE("intersect halfspaces: cube from axis bisectors") {
  std::vector<GeodesicPlane> planes;
  for (int axis = 0; axis < 3; ++axis) {
    for (double s : {1.0, -1.0}) {
      Vec3 d = Vec3::Zero();
      d[axis] = s;
      planes.push_back(Bisector(HPoint(), HPoint::FromPolar(d, 1.0)));
    }
  }
  const ConvexPolyhedron cube = IntersectHalfspaces(planes);
  CHECK(cube.faces.size() == 6);
  CHECK(cube.edges.size() == 12);
  CHECK(cube.vertices.size() == 8);
  CHECK(cube.EulerCharacteristic() == 2);
  for (const HPoint& v : cube.vertices) CHECK(cube.Contains(v));
  for (const auto& e : cube.edges) CHECK(e.f1 >= 0);
}

TEST_CASE("intersect halfspaces: tetrahedron, empty, unbounded") {
  const double s = 1.0 / std::sqrt(3.0);
  const Vec3 dirs[4] = {Vec3(s, s, s), Vec3(s, -s, -s), Vec3(-s, s, -s),
                        Vec3(-s, -s, s)};
  std::vector<GeodesicPlane> planes;
  for (const Vec3& d : dirs) {
    planes.push_back(Bisector(HPoint(), HPoint::FromPolar(d, 0.5)));
  }
  const ConvexPolyhedron tet = IntersectHalfspaces(planes);
  CHECK(tet.faces.size() == 4);
  CHECK(tet.edges.size() == 6);
  CHECK(tet.vertices.size() == 4);
  CHECK(tet.EulerCharacteristic() == 2);

  const GeodesicPlane a = Bisector(HPoint::FromPolar(Vec3::UnitX(), -0.5),
                                   HPoint::FromPolar(Vec3::UnitX(), 0.5));
  const GeodesicPlane b =
      GeodesicPlane::FromNormal(-Bisector(HPoint::FromPolar(Vec3::UnitX(), 0.5),
                                          HPoint::FromPolar(Vec3::UnitX(), 1.5))
                                     .normal());
  std::vector<GeodesicPlane> empty = {a, b};
  try {
    IntersectHalfspaces(empty);
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::kEmptyIntersection);
  }
  std::vector<GeodesicPlane> open = {planes[0], planes[1]};
  try {
    IntersectHalfspaces(open);
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::kUnboundedIntersection);
  }
}

}  // namespace
}  // namespace h3w
