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
#include "h3w/rng.h"
#include "h3w/voronoi.h"
#include "h3w/width.h"

namespace h3w {
namespace {

const ManifoldModel& SeifertWeber() {
  static const ManifoldModel m = ManifoldModel::FromData(SeifertWeberData());
  return m;
}

struct Built {
  SampleSet s;
  VoronoiComplex v;
  DualComplex d;
};

const Built& SwComplex() {
  static const Built b = [] {
    Built out;
    out.s = SampleMaximal(SeifertWeber(), 0.3, 3);
    out.v = BuildVoronoi(SeifertWeber(), out.s);
    out.d = BuildDual(out.v);
    return out;
  }();
  return b;
}

TEST_CASE("derived constants") {
  const DerivedConstants a = DeriveConstants(0.1);
  CHECK(a.j1 == 127);
  CHECK(a.l == 352);
  const DerivedConstants b = DeriveConstants(0.2);
  CHECK(b.j1 == 132);
  CHECK(b.j == 132 * 132 + 2);
  CHECK(b.l == 378);
  CHECK(b.g == 3 * b.j);
  CHECK(b.a == doctest::Approx(0.0314421).epsilon(1e-6));
  CHECK(b.k == doctest::Approx(378 / b.a));
  CHECK(DeriveConstants(1.0).a == doctest::Approx(0.8018976).epsilon(1e-6));
  // Small-ball limit: the ratios tend to the Euclidean 5^3 and 7^3.
  const DerivedConstants z = DeriveConstants(1e-4);
  CHECK(z.j1 == 126);
  CHECK(z.l == 344);
  CHECK_THROWS_AS(DeriveConstants(0), Error);
}

TEST_CASE("seifert-weber sample is maximal and separated") {
  const Built& b = SwComplex();
  const ManifoldModel& m = SeifertWeber();
  const int n = static_cast<int>(b.s.centers.size());
  REQUIRE(n > 10);
  double closest = 1e9;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      closest = std::min(closest, m.QuotientDistance(b.s.centers[i], b.s.centers[j]));
    }
  }
  CHECK(closest >= 0.3 - 1e-6);
  for (const VoronoiCell& c : b.v.cells) CHECK(c.max_vertex_distance <= 0.3 + 1e-9);
}

TEST_CASE("seifert-weber complex is regular with matching dual") {
  const Built& b = SwComplex();
  std::string why;
  CHECK_MESSAGE(b.v.IsRegular(&why), why);
  CHECK(b.v.EulerCharacteristic() == 0);
  CHECK(b.d.tetrahedra.size() == b.v.vertices.size());
  CHECK(b.d.triangles.size() == b.v.edges.size());
  CHECK(b.d.edges.size() == b.v.faces.size());
  const DerivedConstants c = DeriveConstants(0.3);
  CHECK(b.d.MaxDeepValence() <= c.j);
  CHECK(MaxCentersIn3Eps(SeifertWeber(), b.v) <= c.l);
}

TEST_CASE("half-radius balls sit inside their cells") {
  const Built& b = SwComplex();
  const ManifoldModel& m = SeifertWeber();
  Rng rng(11);
  int violations = 0;
  const Geometry& geo = m.geometry();
  for (const VoronoiCell& cell : b.v.cells) {
    const Mat4 frame = geo.CarryOriginTo(cell.position);
    for (int k = 0; k < 200; ++k) {
      const Vec4 y = geo.Apply(frame, geo.SampleBall(0.15, rng));
      const double own = geo.Distance(y, cell.position);
      for (const LiftedCenter& n : cell.neighbors) {
        const Vec4 z = geo.Apply(m.group().element(n.elem), b.v.centers[n.center]);
        if (geo.Distance(y, z) < own) ++violations;
      }
    }
  }
  CHECK(violations == 0);
}

TEST_CASE("sampling and decomposition are deterministic") {
  const SampleSet s = SampleMaximal(SeifertWeber(), 0.3, 3);
  const VoronoiComplex v = BuildVoronoi(SeifertWeber(), s);
  const DerivedConstants c = DeriveConstants(0.3);
  CHECK(DumpComplexJson(v, c) == DumpComplexJson(SwComplex().v, c));
}

TEST_CASE("a lattice torus smaller than epsilon is one cell") {
  Eigen::Matrix3d basis;
  basis << -0.5, 0.5, 0.5, 0.5, -0.5, 0.5, 0.5, 0.5, -0.5;
  const ManifoldModel m = ManifoldModel::FlatLattice(basis);
  CHECK(m.volume() == doctest::Approx(0.5));
  CHECK(m.num_faces() == 14);
  const SampleSet s = SampleMaximal(m, 0.6, 1);
  REQUIRE(s.centers.size() == 1);
  const VoronoiComplex v = BuildVoronoi(m, s);
  CHECK(v.faces.size() == 7);
  CHECK(v.edges.size() == 12);
  CHECK(v.vertices.size() == 6);
  CHECK(v.EulerCharacteristic() == 0);
  CHECK(v.IsRegular());
}

}  // namespace
}  // namespace h3w
