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
#include "h3w/fixtures.h"
#include "h3w/level_area.h"
#include "h3w/morse.h"
#include "h3w/rng.h"

namespace h3w {
namespace {

const ManifoldModel& SeifertWeber() {
  static const ManifoldModel m = ManifoldModel::FromData(SeifertWeberData());
  return m;
}

Vec4 DomainPoint(const ManifoldModel& m, Rng& rng) {
  for (;;) {
    const Vec4 p = m.geometry().SampleBall(m.circumradius(), rng);
    if (m.InDomain(p)) return p;
  }
}

FieldSpec DistanceTo(const Vec4& p) {
  FieldSpec s;
  s.kind = FieldKind::kDistanceToPoint;
  s.points = {p};
  return s;
}

ErrorKind KindOf(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("no error raised");
  return ErrorKind::kPrecondition;
}

// Root of pi (sinh 2t - 2t) = pi (sinh 1 - 1) / 2 by bisection.
double HalfBallRoot() {
  auto vol = [](double t) { return std::numbers::pi * (std::sinh(2 * t) - 2 * t); };
  const double target = 0.5 * vol(0.5);
  double lo = 0, hi = 0.5;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    (vol(mid) < target ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

TEST_CASE("field kind names round trip") {
  for (FieldKind k : {FieldKind::kDistanceToPoint, FieldKind::kRadialBumpSum,
                      FieldKind::kAxisSweep}) {
    CHECK(ParseFieldKind(FieldKindName(k)) == k);
  }
  CHECK(KindOf([] { ParseFieldKind("height"); }) == ErrorKind::kConfig);
}

TEST_CASE("distance field is the quotient distance and deck invariant") {
  const ManifoldModel& m = SeifertWeber();
  const Geometry& geo = m.geometry();
  Rng rng(3);
  const Vec4 p = DomainPoint(m, rng);
  const MorseField f(m, DistanceTo(p));
  CHECK(f.Lipschitz() == doctest::Approx(1.0));
  for (int k = 0; k < 50; ++k) {
    const Vec4 x = DomainPoint(m, rng);
    CHECK(f(x) == doctest::Approx(m.QuotientDistance(x, p)).epsilon(1e-9));
    const Mat4& g = m.group().element(1 + k % (m.group().size() - 1));
    if (m.group().displacement(1 + k % (m.group().size() - 1)) < 3.0) {
      CHECK(f(geo.Apply(g, x)) == doctest::Approx(f(x)).epsilon(1e-8));
    }
  }
}

TEST_CASE("bump field respects its Lipschitz constant") {
  const ManifoldModel& m = SeifertWeber();
  const Geometry& geo = m.geometry();
  FieldSpec s;
  s.kind = FieldKind::kRadialBumpSum;
  s.points = {geo.Origin(), geo.FromChart(Vec3(0.3, 0.1, -0.2))};
  s.weights = {-1.0, 0.7};
  s.profile_radius = 1.6;
  const MorseField f(m, s);
  Rng rng(5);
  double worst = 0;
  for (int k = 0; k < 400; ++k) {
    const Vec4 x = DomainPoint(m, rng);
    const Vec4 y = geo.Apply(geo.CarryOriginTo(x), geo.SampleBall(0.05, rng));
    const double d = geo.Distance(x, y);
    if (d > 1e-6) worst = std::max(worst, std::abs(f(x) - f(y)) / d);
  }
  CHECK(worst <= f.Lipschitz());
  CHECK(worst > 0.1);
  // Localized evaluation agrees with the global one.
  const Vec4 a = DomainPoint(m, rng);
  const LocalField local = f.Localize(a, 0.3);
  for (int k = 0; k < 20; ++k) {
    const Vec4 y = geo.Apply(geo.CarryOriginTo(a), geo.SampleBall(0.3, rng));
    CHECK(local(y) == doctest::Approx(f(y)).epsilon(1e-12));
  }
}

TEST_CASE("radial sampler inverts the ball volume") {
  const auto geo = HyperbolicGeometry();
  const RadialSampler rs(*geo, 0.8);
  CHECK(rs.Radius(0) == doctest::Approx(0.0));
  CHECK(rs.Radius(1) == doctest::Approx(0.8));
  for (double u : {0.1, 0.25, 0.5, 0.9}) {
    CHECK(geo->BallVolume(rs.Radius(u)) ==
          doctest::Approx(u * geo->BallVolume(0.8)).epsilon(1e-6));
  }
}

TEST_CASE("sublevel volume of a concentric ball") {
  const ManifoldModel& m = SeifertWeber();
  const Geometry& geo = m.geometry();
  const MorseField f(m, DistanceTo(geo.Origin()));
  const double v = SublevelBallVolume(f, geo.Origin(), 0.5, 0.3, 40000, 1);
  CHECK(v == doctest::Approx(geo.BallVolume(0.3)).epsilon(2e-3));
  CHECK(KindOf([&] { SublevelBallVolume(f, geo.Origin(), 1.2, 0.3, 1000, 1); }) ==
        ErrorKind::kBallNotEmbedded);
}

TEST_CASE("splitters match the concentric half-volume root at epsilon 1") {
  const ManifoldModel& m = SeifertWeber();
  const SampleSet s = SampleMaximal(m, 1.0, 1);
  const VoronoiComplex v = BuildVoronoi(m, s);
  REQUIRE(v.IsRegular());
  const double root = HalfBallRoot();
  CHECK(root == doctest::Approx(0.39925).epsilon(1e-4));
  SplitterOptions opt;
  opt.samples = 200000;
  for (size_t i = 0; i < v.cells.size(); ++i) {
    const MorseField f(m, DistanceTo(v.centers[i]));
    const CellSplitter c = ComputeSplitter(f, v, static_cast<int>(i), opt);
    CHECK(std::abs(c.t - root) < 1e-3);
    CHECK(c.residual <= opt.tau_split * m.geometry().BallVolume(0.5));
  }
}

TEST_CASE("flat field is rejected as non-generic") {
  Eigen::Matrix3d basis;
  basis << -0.5, 0.5, 0.5, 0.5, -0.5, 0.5, 0.5, 0.5, -0.5;
  const ManifoldModel m = ManifoldModel::FlatLattice(basis);
  FieldSpec s;
  s.kind = FieldKind::kRadialBumpSum;
  s.points = {Vec4(1, 0.4, 0.1, 0)};
  s.weights = {1.0};
  s.profile_radius = 0.05;
  const MorseField f(m, s);
  SampleSet ss;
  ss.epsilon = 0.6;
  ss.centers = {Vec4(1, 0, 0, 0)};
  const VoronoiComplex v = BuildVoronoi(m, ss);
  CHECK(KindOf([&] { ComputeSplitter(f, v, 0); }) == ErrorKind::kNonGenericField);
}

TEST_CASE("cell order and genericity") {
  std::vector<CellSplitter> sp(4);
  const double t[] = {0.3, 0.1, 0.3, 0.2};
  for (int i = 0; i < 4; ++i) {
    sp[i].cell = i;
    sp[i].t = t[i];
  }
  const CellOrder o = OrderCells(sp);
  CHECK(o.cells == std::vector<int>{1, 3, 0, 2});
  REQUIRE(o.ties.size() == 1);
  CHECK(o.ties[0] == std::pair<int, int>{0, 2});
  CHECK(IsGeneric(0.15, o.t, 1e-9));
  CHECK_FALSE(IsGeneric(0.2, o.t, 1e-9));
}

TEST_CASE("sphere level areas on the fixture") {
  const ManifoldModel& m = SeifertWeber();
  const MorseField f(m, DistanceTo(m.geometry().Origin()));
  const auto ls = LevelAreas(f, {0.5}, 0.1);
  const double exact = 4 * std::numbers::pi * std::pow(std::sinh(0.5), 2);
  CHECK(ls[0].area == doctest::Approx(exact).epsilon(0.02));
  CHECK(ls[0].error < 0.02 * exact);
}

TEST_CASE("flat cylinder areas") {
  const ManifoldModel m = ManifoldModel::FlatTorus(Vec3(1, 1, 1));
  FieldSpec s;
  s.kind = FieldKind::kAxisSweep;
  s.axis_a = Vec4(1, 0, 0.1, 0.2);
  s.axis_b = Vec4(1, 1, 0.1, 0.2);
  s.generator = Mat4::Identity();
  s.generator(1, 0) = 1.0;
  const MorseField f(m, s);
  SampledField sf(f, 0.05);
  CHECK(sf.MeshVolume() == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(sf.min() == doctest::Approx(0.0).epsilon(1e-9));
  const auto a = sf.Areas({0.1, 0.3});
  CHECK(a[0] == doctest::Approx(2 * std::numbers::pi * 0.1).epsilon(0.02));
  CHECK(a[1] == doctest::Approx(2 * std::numbers::pi * 0.3).epsilon(0.02));
}

}  // namespace
}  // namespace h3w
