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

#include <cstdint>
#include <string>
#include <vector>

#include "h3w/morse.h"
#include "h3w/voronoi.h"

namespace h3w {

/// Cells with splitter t_i <= t.
struct Region {
  double t = 0;
  std::vector<char> inside;  // per cell
  int count = 0;             // prefix length in the order
};

/// Prefix of the order below t. Values within `tol` of a splitter are
/// rejected as non-generic.
Region BuildRegion(const CellOrder& order, double t, int num_cells,
                   double tol = 0);

enum class Piece : uint8_t { kEmpty, kTriangle, kQuad };

/// Normal piece in a tetrahedron with `marked` of its 4 vertices inside.
Piece PieceForMarking(int marked);

/// Topology of a set of Voronoi faces viewed as a surface. Vertices where
/// the faces meet in several fans are split, one copy per fan.
struct SurfaceTopology {
  int vertices = 0;
  int edges = 0;
  int faces = 0;
  int chi = 0;
  int components = 0;
  int boundary = 0;  // boundary curves
  int genus = 0;     // after capping every boundary curve with a disc
  bool oriented = true;
};

/// `inside` orients each face as part of the boundary of the marked cells;
/// pass an empty vector to skip the orientation check.
SurfaceTopology AnalyzeFaces(const VoronoiComplex& v,
                             const std::vector<int>& faces,
                             const std::vector<char>& inside);

/// Boundary of a region: a closed normal surface in the dual triangulation.
struct PolyhedralSurface {
  double t = 0;
  std::vector<char> inside;     // region marking per cell
  std::vector<int> faces;       // Voronoi faces between inside and outside
  std::vector<uint8_t> marked;  // per dual tetrahedron: marked vertices
  std::vector<Piece> pieces;    // per dual tetrahedron
  int triangles = 0;
  int quads = 0;
};

PolyhedralSurface ExtractSurface(const VoronoiComplex& v, const DualComplex& d,
                                 const Region& r);

/// Thin part of the manifold seen by the cells.
struct ThinPart {
  double mu = 0;
  std::vector<char> thin;       // center inside a declared tube
  std::vector<char> near_tube;  // cell may meet a declared tube
  bool empty() const;
};

/// Classifies the centers against the declared tubes. Throws if a center
/// with injectivity radius below mu lies outside every tube.
ThinPart ClassifyCells(const ManifoldModel& m, const VoronoiComplex& v,
                       double mu);
/// No tubes: every cell thick.
ThinPart NoThinPart(const VoronoiComplex& v);

enum class Restriction { kAll, kDeep, kThick };

struct SurfaceStats {
  int faces_in_w = 0;  // faces meeting a deep cell
  SurfaceTopology topology;
};

/// A face lies in W when one of its cells is deep.
bool FaceInW(const VoronoiComplex& v, int face);

SurfaceStats ComputeStats(const VoronoiComplex& v, const PolyhedralSurface& s,
                          Restriction restriction, const ThinPart& thin);

struct FaceBoundCheck {
  int faces_in_w = 0;
  double area = 0;
  double bound = 0;  // (L / A) area
  bool pass = true;
  double slack = 0;  // bound / faces, infinite for an empty surface
};

FaceBoundCheck CheckFaceBound(const SurfaceStats& stats, double area,
                              const DerivedConstants& c);

/// S+ = the part of S in the thick cells together with the pieces of the
/// tube boundary inside the region that meet it. Closed tube boundaries
/// disjoint from S bound solid tori and are left out.
struct CappedSurface {
  std::vector<int> base;  // faces of S between thick cells
  std::vector<int> caps;  // faces between inside thick cells and thin cells
  double depth = 0;       // collar depth i / n of the caps
  int closed_caps = 0;    // omitted closed cap components
  SurfaceTopology topology;
};

CappedSurface CapSurface(const VoronoiComplex& v, const PolyhedralSurface& s,
                         const Region& r, const ThinPart& thin, int index,
                         int count);

/// 1- and 2-handles for attaching along a surface of genus g with b
/// boundary curves: 4g + 2b.
int64_t HandleBoundAttach(int64_t g, int64_t b);

struct StepBound {
  int64_t handles = 0;
  int64_t cap = 0;  // 60 J^2 max(s1, s2)
  bool thin = false;
};

/// Handles for adding one cell between surfaces with s1 and s2 faces in W.
StepBound HandleBoundStep(bool near_thin, const DerivedConstants& c,
                          int64_t s1, int64_t s2);

struct Schedule {
  std::vector<double> u;       // generic levels, ascending
  std::vector<int> prefix;     // cells below each level
  std::vector<double> depth;   // cap depth i / n
};

/// One level below the first splitter, one per gap, one above the last.
Schedule NestedSchedule(const CellOrder& order);

}  // namespace h3w
