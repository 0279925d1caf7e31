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
#include <cstdio>
#include <filesystem>
#include <numbers>

#include "doctest.h"
#include "h3w/errors.h"
#include "h3w/fixtures.h"
#include "h3w/quotient.h"
#include "h3w/rng.h"

namespace h3w {
namespace {

const ManifoldModel& SeifertWeber() {
  static const ManifoldModel m = ManifoldModel::FromData(SeifertWeberData());
  return m;
}

Vec4 RandomDomainPoint(const ManifoldModel& m, Rng& rng) {
  for (;;) {
    const Vec4 p = m.geometry().SampleBall(m.circumradius(), rng);
    if (m.InDomain(p)) return p;
  }
}

TEST_CASE("Seifert-Weber domain") {
  const ManifoldModel& m = SeifertWeber();
  CHECK(m.num_faces() == 12);
  CHECK(m.domain().vertices().size() == 20);
  CHECK(m.domain().Edges().size() == 30);
  CHECK(m.inradius() == doctest::Approx(0.9963844978473162).epsilon(1e-12));
  CHECK(m.circumradius() == doctest::Approx(1.9028473445956107).epsilon(1e-10));
  CHECK(m.pairings().size() == 6);
  for (int f = 0; f < m.num_faces(); ++f) {
    CHECK(m.group().displacement(m.face_element(f)) ==
          doctest::Approx(2 * 0.9963844978473162).epsilon(1e-12));
  }
  std::vector<Mat4> gens;
  for (int f = 0; f < m.num_faces(); ++f) gens.push_back(m.group().element(m.face_element(f)));
  std::string why;
  CHECK(m.group().ValidateClosure(gens, &why));
  CHECK(m.group().element(0).isIdentity());
}

TEST_CASE("group ball counts match orbit enumeration") {
  // Frozen from an independent breadth-first enumeration of the orbit of o.
  const ManifoldModel& m = SeifertWeber();
  int n45 = 0, n6 = 0;
  for (int id = 0; id < m.group().size(); ++id) {
    n45 += m.group().displacement(id) <= 4.5;
    n6 += m.group().displacement(id) <= 6.0;
  }
  CHECK(n45 == 825);
  CHECK(n6 == 22977);
}

TEST_CASE("quotient distance") {
  const ManifoldModel& m = SeifertWeber();
  Rng rng(21);
  for (int i = 0; i < 100; ++i) {
    const Vec4 p = RandomDomainPoint(m, rng), q = RandomDomainPoint(m, rng);
    CHECK(m.QuotientDistance(p, p) <= 1e-12);
    CHECK(std::abs(m.QuotientDistance(p, q) - m.QuotientDistance(q, p)) <= kTauGeom);
    const Vec4 r = RandomDomainPoint(m, rng);
    CHECK(m.QuotientDistance(p, r) <=
          m.QuotientDistance(p, q) + m.QuotientDistance(q, r) + 3 * kTauGeom);
    for (int f = 0; f < m.num_faces(); ++f) {
      const Vec4 gq = m.geometry().Apply(m.group().element(m.face_element(f)), q);
      CHECK(std::abs(m.QuotientDistance(p, gq) - m.QuotientDistance(p, q)) <= 1e-9);
    }
  }
  // A point on a face and its image under the pairing are identified.
  const auto& face = m.domain().faces()[0];
  Vec3 c = Vec3::Zero();
  for (int v : face.vertices) c += m.domain().vertices()[v];
  c /= face.vertices.size();
  const Vec4 x = m.geometry().FromChart(c);
  for (const FacePairing& p : m.pairings()) {
    if (p.source_face != face.tag) continue;
    CHECK(m.QuotientDistance(x, m.geometry().Apply(p.matrix, x)) <= 1e-9);
  }
}

TEST_CASE("injectivity radius") {
  const ManifoldModel& m = SeifertWeber();
  // Frozen from brute-force orbit enumeration: inj(o) is the inradius.
  CHECK(m.InjectivityRadius(m.geometry().Origin()) ==
        doctest::Approx(0.9963844978473162).epsilon(1e-10));
  Rng rng(4);
  double lo = 1e9;
  for (int i = 0; i < 300; ++i) {
    const Vec4 p = RandomDomainPoint(m, rng);
    const double inj = m.InjectivityRadius(p);
    lo = std::min(lo, inj);
    for (int f = 0; f < m.num_faces(); ++f) {
      const Vec4 gp = m.geometry().Apply(m.group().element(m.face_element(f)), p);
      CHECK(inj <= 0.5 * m.geometry().Distance(p, gp) + 1e-12);
    }
  }
  // Half the systole bounds inj(M) from below.
  CHECK(lo >= 0.5 * 1.7457795380461965 - 1e-9);

  const ManifoldModel torus = ManifoldModel::FlatTorus(Vec3(1.0, 1.0, 1.0));
  CHECK(torus.InjectivityRadius(Vec4(1, 0.1, -0.2, 0.3)) == doctest::Approx(0.5));
  const ManifoldModel box = ManifoldModel::FlatTorus(Vec3(2.0, 1.5, 3.0));
  CHECK(box.InjectivityRadius(Vec4(1, 0.4, 0.2, -1.0)) == doctest::Approx(0.75));
  CHECK(box.QuotientDistance(Vec4(1, 0.9, 0, 0), Vec4(1, -0.9, 0, 0)) ==
        doctest::Approx(0.2));
}

TEST_CASE("reduce to domain") {
  const ManifoldModel& m = SeifertWeber();
  Rng rng(9);
  for (int i = 0; i < 100; ++i) {
    const Vec4 p = m.geometry().SampleBall(4.0, rng);
    Mat4 g;
    const Vec4 q = m.ReduceToDomain(p, &g);
    CHECK(m.InDomain(q, 1e-9));
    CHECK(m.geometry().Distance(m.geometry().Apply(g, p), q) < 1e-8);
    CHECK(m.QuotientDistance(q, RandomDomainPoint(m, rng)) >= 0);
  }
}

TEST_CASE("systolic geodesics") {
  const ManifoldModel& m = SeifertWeber();
  const auto geos = ShortGeodesics(m, 1.7457795380461965 + 1e-6);
  REQUIRE(!geos.empty());
  for (const auto& g : geos) {
    CHECK(g.length == doctest::Approx(1.7457795380461965).epsilon(1e-9));
    CHECK(m.geometry().Distance(m.geometry().Apply(g.generator, g.core_a), g.core_a) ==
          doctest::Approx(g.length).epsilon(1e-9));
  }
  MESSAGE("systolic classes: " << geos.size());
}

TEST_CASE("manifold file round trip") {
  ManifoldData d = SeifertWeberData();
  const auto path = std::filesystem::temp_directory_path() / "h3w_sw_roundtrip.json";
  SaveManifoldJson(d, path.string());
  const ManifoldData e = LoadManifoldJson(path.string());
  CHECK(e.name == d.name);
  REQUIRE(e.halfspaces.size() == d.halfspaces.size());
  for (size_t i = 0; i < d.halfspaces.size(); ++i) CHECK(e.halfspaces[i] == d.halfspaces[i]);
  REQUIRE(e.pairings.size() == d.pairings.size());
  for (size_t i = 0; i < d.pairings.size(); ++i) CHECK(e.pairings[i].matrix == d.pairings[i].matrix);
  for (size_t i = 0; i < d.vertices.size(); ++i) CHECK(e.vertices[i] == d.vertices[i]);
  CHECK(e.volume == d.volume);
  std::filesystem::remove(path);
  CHECK_THROWS_AS(LoadManifoldJson("/nonexistent/file.json"), Error);
}

TEST_CASE("bad pairings are rejected") {
  ManifoldData d = SeifertWeberData();
  d.pairings[0].matrix = (Isometry::Rotation(Vec3(1, 2, 3), 0.3).matrix() * d.pairings[0].matrix).eval();
  CHECK_THROWS_AS(ManifoldModel::FromData(d), Error);
}

}  // namespace
}  // namespace h3w
