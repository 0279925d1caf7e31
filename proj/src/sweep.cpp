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
#include "h3w/sweep.h"

#include <algorithm>
#include <limits>
#include <numeric>
#include <unordered_map>

#include "h3w/errors.h"

namespace h3w {
namespace {

class UnionFind {
 public:
  explicit UnionFind(int n) : parent_(n) {
    std::iota(parent_.begin(), parent_.end(), 0);
  }
  int Find(int x) {
    while (parent_[x] != x) x = parent_[x] = parent_[parent_[x]];
    return x;
  }
  void Union(int a, int b) { parent_[Find(a)] = Find(b); }

 private:
  std::vector<int> parent_;
};

struct Use {
  int face;  // position in the selected list
  int k;     // edge position in the face
};

}  // namespace

Region BuildRegion(const CellOrder& order, double t, int num_cells,
                   double tol) {
  if (tol > 0 && !IsGeneric(t, order.t, tol)) {
    throw Error(ErrorKind::kPrecondition, "region level is not generic");
  }
  Region r;
  r.t = t;
  r.inside.assign(num_cells, 0);
  r.count = static_cast<int>(
      std::upper_bound(order.t.begin(), order.t.end(), t) - order.t.begin());
  for (int k = 0; k < r.count; ++k) r.inside[order.cells[k]] = 1;
  return r;
}

Piece PieceForMarking(int marked) {
  switch (marked) {
    case 1:
    case 3:
      return Piece::kTriangle;
    case 2:
      return Piece::kQuad;
    default:
      return Piece::kEmpty;
  }
}

SurfaceTopology AnalyzeFaces(const VoronoiComplex& v,
                             const std::vector<int>& faces,
                             const std::vector<char>& inside) {
  SurfaceTopology out;
  out.faces = static_cast<int>(faces.size());
  if (faces.empty()) return out;

  std::vector<int> offset(faces.size() + 1, 0);
  for (size_t i = 0; i < faces.size(); ++i) {
    offset[i + 1] = offset[i] + static_cast<int>(v.faces[faces[i]].vertices.size());
  }
  std::unordered_map<int, std::vector<Use>> uses;
  for (size_t i = 0; i < faces.size(); ++i) {
    const VoronoiFace& f = v.faces[faces[i]];
    for (size_t k = 0; k < f.edges.size(); ++k) {
      uses[f.edges[k]].push_back({static_cast<int>(i), static_cast<int>(k)});
    }
  }

  UnionFind corners(offset.back());
  UnionFind comps(out.faces);
  // Corner ids at the two ends of an edge use, matched to the edge's
  // stored endpoints; `forward` when the face runs from end 0 to end 1.
  auto ends = [&](const Use& u, int* end0, int* end1, bool* forward) {
    const VoronoiFace& f = v.faces[faces[u.face]];
    const int n = static_cast<int>(f.vertices.size());
    const int a = offset[u.face] + u.k;
    const int b = offset[u.face] + (u.k + 1) % n;
    *forward = f.vertices[u.k] == v.edges[f.edges[u.k]].vertices[0];
    *end0 = *forward ? a : b;
    *end1 = *forward ? b : a;
  };
  auto orientation = [&](const Use& u, bool forward) {
    if (inside.empty()) return forward;
    const bool outward = inside[v.faces[faces[u.face]].cells[0]] != 0;
    return forward == outward;
  };

  std::vector<std::pair<int, int>> boundary;
  for (const auto& [edge, list] : uses) {
    if (list.size() > 2) {
      throw Error(ErrorKind::kNonRegular, "surface edge in more than 2 faces");
    }
    int a0, a1;
    bool fa;
    ends(list[0], &a0, &a1, &fa);
    if (list.size() == 1) {
      boundary.push_back({a0, a1});
      continue;
    }
    int b0, b1;
    bool fb;
    ends(list[1], &b0, &b1, &fb);
    corners.Union(a0, b0);
    corners.Union(a1, b1);
    comps.Union(list[0].face, list[1].face);
    if (!inside.empty() && orientation(list[0], fa) == orientation(list[1], fb)) {
      out.oriented = false;
    }
  }
  out.edges = static_cast<int>(uses.size());

  std::vector<int> root_id(offset.back(), -1);
  for (int c = 0; c < offset.back(); ++c) {
    const int r = corners.Find(c);
    if (root_id[r] < 0) root_id[r] = out.vertices++;
  }
  for (int i = 0; i < out.faces; ++i) out.components += comps.Find(i) == i;

  UnionFind curves(out.vertices);
  std::vector<char> on_curve(out.vertices, 0);
  for (const auto& [a, b] : boundary) {
    const int ra = root_id[corners.Find(a)], rb = root_id[corners.Find(b)];
    on_curve[ra] = on_curve[rb] = 1;
    curves.Union(ra, rb);
  }
  for (int x = 0; x < out.vertices; ++x) {
    out.boundary += on_curve[x] && curves.Find(x) == x;
  }
  out.chi = out.vertices - out.edges + out.faces;
  if ((out.chi + out.boundary) % 2 != 0) {
    throw Error(ErrorKind::kNonRegular, "surface is not orientable");
  }
  out.genus = out.components - (out.chi + out.boundary) / 2;
  return out;
}

PolyhedralSurface ExtractSurface(const VoronoiComplex& v, const DualComplex& d,
                                 const Region& r) {
  PolyhedralSurface s;
  s.t = r.t;
  s.inside = r.inside;
  for (size_t f = 0; f < v.faces.size(); ++f) {
    const auto& c = v.faces[f].cells;
    if (r.inside[c[0]] != r.inside[c[1]]) s.faces.push_back(static_cast<int>(f));
  }
  s.marked.resize(d.tetrahedra.size());
  s.pieces.resize(d.tetrahedra.size());
  for (size_t i = 0; i < d.tetrahedra.size(); ++i) {
    int k = 0;
    for (int c : d.tetrahedra[i]) k += r.inside[c] != 0;
    s.marked[i] = static_cast<uint8_t>(k);
    s.pieces[i] = PieceForMarking(k);
    s.triangles += s.pieces[i] == Piece::kTriangle;
    s.quads += s.pieces[i] == Piece::kQuad;
  }
  return s;
}

bool ThinPart::empty() const {
  return std::none_of(thin.begin(), thin.end(), [](char c) { return c; });
}

ThinPart NoThinPart(const VoronoiComplex& v) {
  ThinPart t;
  t.thin.assign(v.cells.size(), 0);
  t.near_tube.assign(v.cells.size(), 0);
  return t;
}

ThinPart ClassifyCells(const ManifoldModel& m, const VoronoiComplex& v,
                       double mu) {
  ThinPart t = NoThinPart(v);
  t.mu = mu;
  for (size_t i = 0; i < v.cells.size(); ++i) {
    const ThickThin c = m.Classify(v.centers[i], mu);
    const int tube =
        c.kind == Thickness::kThin ? c.tube : m.TubeContaining(v.centers[i]);
    t.thin[i] = tube >= 0;
    for (int k = 0; k < static_cast<int>(m.tubes().size()); ++k) {
      if (m.DistanceToCore(v.centers[i], k) <
          m.tubes()[k].spec.radius + v.cells[i].max_vertex_distance) {
        t.near_tube[i] = 1;
      }
    }
  }
  return t;
}

bool FaceInW(const VoronoiComplex& v, int face) {
  const auto& c = v.faces[face].cells;
  return v.cells[c[0]].deep || v.cells[c[1]].deep;
}

SurfaceStats ComputeStats(const VoronoiComplex& v, const PolyhedralSurface& s,
                          Restriction restriction, const ThinPart& thin) {
  SurfaceStats out;
  std::vector<int> kept;
  for (int f : s.faces) {
    const bool in_w = FaceInW(v, f);
    out.faces_in_w += in_w;
    const auto& c = v.faces[f].cells;
    switch (restriction) {
      case Restriction::kAll:
        kept.push_back(f);
        break;
      case Restriction::kDeep:
        if (in_w) kept.push_back(f);
        break;
      case Restriction::kThick:
        if (!thin.thin[c[0]] && !thin.thin[c[1]]) kept.push_back(f);
        break;
    }
  }
  out.topology = AnalyzeFaces(v, kept, s.inside);
  return out;
}

FaceBoundCheck CheckFaceBound(const SurfaceStats& stats, double area,
                              const DerivedConstants& c) {
  FaceBoundCheck out;
  out.faces_in_w = stats.faces_in_w;
  out.area = area;
  out.bound = c.l / c.a * area;
  out.pass = out.faces_in_w <= out.bound;
  out.slack = out.faces_in_w > 0 ? out.bound / out.faces_in_w
                                 : std::numeric_limits<double>::infinity();
  return out;
}

CappedSurface CapSurface(const VoronoiComplex& v, const PolyhedralSurface& s,
                         const Region& r, const ThinPart& thin, int index,
                         int count) {
  CappedSurface out;
  out.depth = count > 0 ? static_cast<double>(index) / count : 0.0;
  std::vector<char> marking(v.cells.size());
  for (size_t i = 0; i < v.cells.size(); ++i) {
    marking[i] = r.inside[i] && !thin.thin[i];
  }
  if (thin.empty()) {
    out.base = s.faces;
    out.topology = AnalyzeFaces(v, s.faces, marking);
    return out;
  }
  std::vector<int> all;
  for (size_t f = 0; f < v.faces.size(); ++f) {
    const auto& c = v.faces[f].cells;
    if (marking[c[0]] == marking[c[1]]) continue;
    all.push_back(static_cast<int>(f));
    if (thin.thin[c[0]] || thin.thin[c[1]]) {
      out.caps.push_back(static_cast<int>(f));
    } else {
      out.base.push_back(static_cast<int>(f));
    }
  }
  // The curves where S leaves the thick part must be the cap boundary.
  auto boundary = [&](const std::vector<int>& faces) {
    std::unordered_map<int, int> parity;
    for (int f : faces) {
      for (int e : v.faces[f].edges) parity[e] ^= 1;
    }
    std::vector<int> out_edges;
    for (const auto& [e, p] : parity) {
      if (p) out_edges.push_back(e);
    }
    std::sort(out_edges.begin(), out_edges.end());
    return out_edges;
  };
  // Cap components that never reach S are whole tube boundaries inside the
  // region; they bound solid tori and are omitted.
  const std::vector<int> rim = boundary(out.base);
  std::vector<int> parent(out.caps.size());
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  std::unordered_map<int, int> owner;
  for (size_t i = 0; i < out.caps.size(); ++i) {
    for (int e : v.faces[out.caps[i]].edges) {
      const auto [it, fresh] = owner.emplace(e, static_cast<int>(i));
      if (!fresh) parent[find(static_cast<int>(i))] = find(it->second);
    }
  }
  std::vector<char> reaches(out.caps.size(), 0);
  for (int e : rim) {
    const auto it = owner.find(e);
    if (it != owner.end()) reaches[find(it->second)] = 1;
  }
  std::vector<int> kept;
  std::vector<char> seen(out.caps.size(), 0);
  for (size_t i = 0; i < out.caps.size(); ++i) {
    const int root = find(static_cast<int>(i));
    if (reaches[root]) {
      kept.push_back(out.caps[i]);
    } else if (!seen[root]) {
      seen[root] = 1;
      ++out.closed_caps;
    }
  }
  out.caps = std::move(kept);
  if (rim != boundary(out.caps)) {
    throw Error(ErrorKind::kCappingFailure,
                "cap boundary does not match the thick part of the surface");
  }
  all = out.base;
  all.insert(all.end(), out.caps.begin(), out.caps.end());
  std::sort(all.begin(), all.end());
  out.topology = AnalyzeFaces(v, all, marking);
  return out;
}

int64_t HandleBoundAttach(int64_t g, int64_t b) {
  if (g < 0 || b < 0) {
    throw Error(ErrorKind::kPrecondition, "negative genus or boundary count");
  }
  return 4 * g + 2 * b;
}

StepBound HandleBoundStep(bool near_thin, const DerivedConstants& c,
                          int64_t s1, int64_t s2) {
  StepBound out;
  const int64_t j = c.j;
  out.thin = near_thin;
  out.handles = near_thin ? 54 * j * j + 4 * j * s2 + 2 * j * s1 : 2 * j;
  out.cap = 60 * j * j * std::max(s1, s2);
  return out;
}

Schedule NestedSchedule(const CellOrder& order) {
  Schedule s;
  const std::vector<double>& t = order.t;
  if (t.empty()) return s;
  const double span = t.back() - t.front();
  const double pad = std::max(1e-3, span / static_cast<double>(t.size()));
  s.u.push_back(t.front() - pad);
  s.prefix.push_back(0);
  for (size_t k = 1; k < t.size(); ++k) {
    if (t[k] == t[k - 1]) continue;  // tied splitters share a gap
    s.u.push_back(0.5 * (t[k - 1] + t[k]));
    s.prefix.push_back(static_cast<int>(k));
  }
  s.u.push_back(t.back() + pad);
  s.prefix.push_back(static_cast<int>(t.size()));
  const int n = static_cast<int>(s.u.size()) - 1;
  for (int i = 0; i <= n; ++i) {
    s.depth.push_back(n > 0 ? static_cast<double>(i) / n : 0.0);
  }
  return s;
}

}  // namespace h3w
