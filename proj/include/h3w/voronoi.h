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
#include <cstdint>
#include <string>
#include <vector>

#include "h3w/lift_index.h"
#include "h3w/polytope.h"
#include "h3w/quotient.h"

namespace h3w {

struct DerivedConstants {
  double epsilon = 0;
  int64_t j1 = 0;
  int64_t j = 0;
  int64_t l = 0;
  double a = 0;
  double k = 0;
  int64_t g = 0;
};

/// J1 = ceil(V(5e/2) / V(e/2)), J = J1^2 + 2, L = ceil(V(7e/2) / V(e/2)),
/// A = 2 pi (cosh(e/2) - 1), K = L / A, G = 3 J.
DerivedConstants DeriveConstants(double epsilon);

struct SampleOptions {
  /// Random greedy phase stops after this many consecutive rejections.
  int max_rejections = 400;
  /// Probe lattice spacing as a fraction of epsilon.
  double probe_spacing = 0.25;
  int max_repair_rounds = 64;
};

struct SampleSet {
  double epsilon = 0;
  uint64_t seed = 0;
  std::vector<Vec4> centers;
  int random_accepted = 0;
  int probe_added = 0;
  int repair_added = 0;
  int probes = 0;
};

/// Maximal epsilon-separated set: greedy random phase, a jittered probe
/// lattice, then Voronoi vertices at distance >= epsilon become centers
/// until none remain.
SampleSet SampleMaximal(const ManifoldModel& m, double epsilon, uint64_t seed,
                        const SampleOptions& options = {});

/// A center translated by a deck element: element(elem) . x_center.
struct LiftedCenter {
  int center;
  int elem;
  auto operator<=>(const LiftedCenter&) const = default;
};

struct VoronoiCell {
  int center = 0;
  Vec4 position;
  Mat4 frame;  // carries the origin onto `position`
  /// Cell in the chart about the origin after pulling back by `frame`.
  /// Face tags index `neighbors`.
  ChartPolytope polytope;
  std::vector<LiftedCenter> neighbors;
  std::vector<ChartPolytope::Edge> edges;
  std::vector<int> face_ids;    // per polytope face
  std::vector<int> edge_ids;    // per entry of `edges`
  std::vector<int> vertex_ids;  // per polytope vertex
  double inj = 0;
  bool deep = false;
  double max_vertex_distance = 0;
};

struct VoronoiFace {
  std::array<int, 2> cells;
  std::array<int, 2> local;  // polytope face index in each cell
  int elem;                  // cells[1] center lifted into cells[0]'s frame
  std::vector<int> vertices;  // cyclic, as seen from cells[0]
  std::vector<int> edges;     // edges[k] joins vertices[k], vertices[k + 1]
  double length = 0;          // distance between the two lifted centers
};

struct VoronoiEdge {
  std::vector<std::pair<int, int>> incidences;  // (cell, local edge)
  std::array<int, 2> vertices;
  std::vector<int> faces;
};

struct VoronoiVertex {
  std::vector<std::pair<int, int>> incidences;  // (cell, local vertex)
  std::array<int, 4> centers;
};

struct VoronoiOptions {
  int max_retries = 8;
  double perturbation = 10 * kTauGeom;
  double min_edge = 1e-8;
};

struct VoronoiComplex {
  double epsilon = 0;
  std::vector<Vec4> centers;
  std::vector<VoronoiCell> cells;
  std::vector<VoronoiFace> faces;
  std::vector<VoronoiEdge> edges;
  std::vector<VoronoiVertex> vertices;
  int retries = 0;

  int EulerCharacteristic() const {
    return static_cast<int>(vertices.size()) - static_cast<int>(edges.size()) +
           static_cast<int>(faces.size()) - static_cast<int>(cells.size());
  }
  int DeepCount() const;
  /// Every face in 2 cells, edge in 3, vertex in 4.
  bool IsRegular(std::string* why = nullptr) const;
  /// Chart coordinates of a point in the frame of a cell.
  Vec3 LocalChart(const Geometry& geo, int cell, const Vec4& x) const;
};

/// Voronoi decomposition of the quotient by the given centers. Degenerate
/// configurations are perturbed and rebuilt up to `max_retries` times.
VoronoiComplex BuildVoronoi(const ManifoldModel& m, const SampleSet& s,
                            const VoronoiOptions& options = {});

struct DualEdge {
  int face;
  std::array<int, 2> centers;
  double length;
  bool deep;
};

struct DualComplex {
  int num_vertices = 0;
  std::vector<DualEdge> edges;                   // one per Voronoi face
  std::vector<std::array<int, 3>> triangles;     // dual edges, per Voronoi edge
  std::vector<std::array<int, 4>> tetrahedra;    // centers, per Voronoi vertex
  std::vector<int> deep_valence;                 // per center; 0 if shallow
  int MaxDeepValence() const;
};

DualComplex BuildDual(const VoronoiComplex& v);

/// Combinatorial dump of a complex (no coordinates) for regression files.
std::string DumpComplexJson(const VoronoiComplex& v, const DerivedConstants& c);

}  // namespace h3w
