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
#include <algorithm>

#include "doctest.h"
#include "h3w/errors.h"
#include "h3w/sweep.h"

namespace h3w {
namespace {

struct Flat {
  ManifoldModel m;
  VoronoiComplex v;
  DualComplex d;
  CellOrder order;
};

// 2x1x1 torus with four body-centered cells, swept along the x axis.
const Flat& Slab() {
  static const Flat f = [] {
    Flat out{ManifoldModel::FlatTorus(Vec3(2, 1, 1)), {}, {}, {}};
    SampleSet s;
    s.epsilon = 0.6;
    s.centers = {Vec4(1, 0, 0, 0), Vec4(1, 0.5, 0.5, 0.5), Vec4(1, 1, 0, 0),
                 Vec4(1, -0.5, 0.5, 0.5)};
    out.v = BuildVoronoi(out.m, s);
    out.d = BuildDual(out.v);
    FieldSpec fs;
    fs.kind = FieldKind::kAxisSweep;
    fs.axis_a = Vec4(1, 0.1, 0.13, 0.07);
    fs.axis_b = Vec4(1, 1.1, 0.13, 0.07);
    fs.generator = Mat4::Identity();
    fs.generator(1, 0) = 1.0;
    const MorseField field(out.m, fs);
    SplitterOptions opt;
    opt.samples = 20000;
    out.order = OrderCells(ComputeSplitters(field, out.v, opt));
    return out;
  }();
  return f;
}

TEST_CASE("normal piece by marked count") {
  CHECK(PieceForMarking(0) == Piece::kEmpty);
  CHECK(PieceForMarking(1) == Piece::kTriangle);
  CHECK(PieceForMarking(2) == Piece::kQuad);
  CHECK(PieceForMarking(3) == Piece::kTriangle);
  CHECK(PieceForMarking(4) == Piece::kEmpty);
}

TEST_CASE("handle bounds") {
  CHECK(HandleBoundAttach(0, 1) == 2);
  CHECK(HandleBoundAttach(3, 2) == 16);
  CHECK_THROWS_AS(HandleBoundAttach(-1, 0), Error);
  DerivedConstants c;
  c.j = 5;
  CHECK(HandleBoundStep(false, c, 7, 9).handles == 10);
  c.j = 2;
  const StepBound b = HandleBoundStep(true, c, 10, 10);
  CHECK(b.handles == 336);
  CHECK(b.cap == 2400);
  CHECK(b.handles <= b.cap);
}

TEST_CASE("nested schedule") {
  CellOrder o;
  o.cells = {0, 1, 2, 3};
  o.t = {0.1, 0.2, 0.2, 0.5};
  const Schedule s = NestedSchedule(o);
  REQUIRE(s.u.size() == 4);
  CHECK(s.u[0] == doctest::Approx(0.0));
  CHECK(s.u[1] == doctest::Approx(0.15));
  CHECK(s.u[2] == doctest::Approx(0.35));
  CHECK(s.u[3] == doctest::Approx(0.6));
  CHECK(s.prefix == std::vector<int>{0, 1, 3, 4});
  CHECK(s.depth.back() == doctest::Approx(1.0));
  const Region r = BuildRegion(o, 0.35, 4);
  CHECK(r.count == 3);
  CHECK_THROWS_AS(BuildRegion(o, 0.2, 4, 1e-9), Error);
  CHECK(BuildRegion(o, 0.2, 4).count == 3);
}

TEST_CASE("slab sweep surfaces match hand enumeration") {
  const Flat& f = Slab();
  REQUIRE(f.v.IsRegular());
  const Schedule s = NestedSchedule(f.order);
  REQUIRE(s.u.size() == 5);
  const std::vector<int> want_genus = {0, 2, 5, 2, 0};
  const std::vector<int> want_faces = {0, 10, 16, 10, 0};
  for (size_t i = 0; i < s.u.size(); ++i) {
    const Region r = BuildRegion(f.order, s.u[i], 4);
    const PolyhedralSurface ps = ExtractSurface(f.v, f.d, r);
    const SurfaceStats st = ComputeStats(f.v, ps, Restriction::kAll, NoThinPart(f.v));
    CHECK(st.topology.genus == want_genus[i]);
    CHECK(st.topology.faces == want_faces[i]);
    CHECK(st.topology.boundary == 0);
    CHECK(st.topology.oriented);
    CHECK(ps.triangles + ps.quads == st.topology.vertices);
    Region rc = r;
    for (char& x : rc.inside) x = !x;
    CHECK(ExtractSurface(f.v, f.d, rc).faces == ps.faces);
  }
}

TEST_CASE("faces around an edge are not a surface") {
  const Flat& f = Slab();
  const std::vector<int> around = f.v.edges[0].faces;
  REQUIRE(around.size() == 3);
  try {
    AnalyzeFaces(f.v, around, {});
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::kNonRegular);
  }
}

TEST_CASE("capping against a thin cell") {
  const Flat& f = Slab();
  ThinPart thin = NoThinPart(f.v);
  const int t = f.order.cells[1];
  thin.thin[t] = 1;
  thin.near_tube[t] = 1;
  const Schedule s = NestedSchedule(f.order);
  const int n = static_cast<int>(s.u.size());
  for (int i = 0; i < n; ++i) {
    const Region r = BuildRegion(f.order, s.u[i], 4);
    const PolyhedralSurface ps = ExtractSurface(f.v, f.d, r);
    const CappedSurface c = CapSurface(f.v, ps, r, thin, i, n - 1);
    CHECK(c.topology.boundary == 0);
    CHECK(c.topology.oriented);
    CHECK(c.depth == doctest::Approx(static_cast<double>(i) / (n - 1)));
    for (int face : c.base) {
      CHECK(std::binary_search(ps.faces.begin(), ps.faces.end(), face));
    }
  }
  // Everything inside: the thin cell's boundary closes up on its own and
  // is left out.
  const Region all = BuildRegion(f.order, s.u.back(), 4);
  const CappedSurface last =
      CapSurface(f.v, ExtractSurface(f.v, f.d, all), all, thin, n - 1, n - 1);
  CHECK(last.caps.empty());
  CHECK(last.closed_caps == 1);
  CHECK(last.topology.faces == 0);
}

}  // namespace
}  // namespace h3w
