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

#include "h3w/voronoi.h"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include <nlohmann/json.hpp>

#include "h3w/errors.h"
#include "h3w/rng.h"

namespace h3w {
namespace {

using Key = std::vector<std::pair<int, int>>;

// Cells reach at most this far from their centers once the sample is
// maximal or covers the manifold.
double NeighborRadius(const ManifoldModel& m, double eps) {
  return 2.0 * std::min(eps, 1.05 * m.circumradius());
}

struct CellBuild {
  ChartPolytope poly;
  std::vector<LiftedCenter> nbrs;
  Mat4 frame;
  bool degenerate = false;
};

CellBuild ComputeCell(const ManifoldModel& m, const LiftIndex& idx,
                      const std::vector<Vec4>& centers, int i, double radius,
                      bool strict) {
  const Geometry& geo = m.geometry();
  CellBuild cb;
  cb.frame = geo.CarryOriginTo(centers[i]);
  const Mat4 inv = geo.Invert(cb.frame);
  cb.poly = ChartPolytope::Box(geo.ChartRadius(radius));
  // A plane through a vertex of the partial cell is retried once the other
  // planes have been applied; the vertex may have been cut away by then.
  struct Plane {
    Vec3 n;
    double c;
    int tag;
  };
  std::vector<Plane> pending;
  for (const LiftIndex::Hit& h : idx.Within(centers[i], radius)) {
    if (h.label == i && h.elem == 0) continue;
    const Vec4 y = geo.Apply(inv, h.point);
    Plane p;
    geo.OriginBisector(y, &p.n, &p.c);
    p.tag = static_cast<int>(cb.nbrs.size());
    cb.nbrs.push_back({h.label, h.elem});
    pending.push_back(p);
  }
  const std::vector<Plane> planes = pending;
  while (!pending.empty()) {
    std::vector<Plane> deferred;
    for (const Plane& p : pending) {
      const auto st = cb.poly.Clip(p.n, p.c, p.tag, kTauGeom);
      if (st == ChartPolytope::ClipStatus::kDegenerate) {
        deferred.push_back(p);
      } else if (st == ChartPolytope::ClipStatus::kEmpty) {
        throw Error(ErrorKind::kDegeneracy, "Voronoi cell became empty");
      }
    }
    if (deferred.size() == pending.size()) break;
    pending = std::move(deferred);
  }
  if (!pending.empty()) {
    // Coincidences of the partial cell; build from all planes at once and
    // require general position of the result instead.
    std::vector<Vec3> normals;
    std::vector<double> offsets;
    std::vector<int> tags;
    for (const Plane& p : planes) {
      normals.push_back(p.n);
      offsets.push_back(p.c);
      tags.push_back(p.tag);
    }
    const double h = geo.ChartRadius(radius);
    const Vec3 box(1.0625 * h, 1.125 * h, 1.1875 * h);
    cb.poly = ChartPolytope::FromHalfspaces(box, normals, offsets, tags,
                                            kTauGeom);
    for (const Vec3& x : cb.poly.vertices()) {
      int on = 0;
      for (const Plane& p : planes) {
        on += std::abs(p.n.dot(x) - p.c) <= kTauGeom * p.n.norm();
      }
      for (int a = 0; a < 3; ++a) {
        on += std::abs(std::abs(x[a]) - box[a]) <= kTauGeom;
      }
      if (on != 3) {
        cb.degenerate = true;
        if (strict) return cb;
      }
    }
  }
  return cb;
}

Key Canonical(const GroupBall& ball, const std::vector<LiftedCenter>& members) {
  Key best;
  for (const LiftedCenter& base : members) {
    const int binv = ball.inverse(base.elem);
    Key k;
    for (const LiftedCenter& x : members) {
      const int e = ball.Compose(binv, x.elem);
      if (e < 0) {
        throw Error(ErrorKind::kSearchRadiusExhausted,
                    "Voronoi incidence element outside the group ball");
      }
      k.emplace_back(x.center, e);
    }
    std::sort(k.begin(), k.end());
    if (best.empty() || k < best) best = std::move(k);
  }
  return best;
}

struct Attempt {
  VoronoiComplex complex;
  bool ok = false;
  std::string why;
};

Attempt TryBuild(const ManifoldModel& m, const std::vector<Vec4>& centers,
                 double eps, const VoronoiOptions& opt) {
  const Geometry& geo = m.geometry();
  const GroupBall& ball = m.group();
  const double radius = NeighborRadius(m, eps);
  LiftIndex idx(m, radius);
  for (int i = 0; i < static_cast<int>(centers.size()); ++i) {
    idx.Insert(i, centers[i]);
  }

  Attempt at;
  VoronoiComplex& v = at.complex;
  v.epsilon = eps;
  v.centers = centers;
  std::map<Key, int> face_key, edge_key, vertex_key;
  for (int i = 0; i < static_cast<int>(centers.size()); ++i) {
    CellBuild cb = ComputeCell(m, idx, centers, i, radius, true);
    if (cb.degenerate || !cb.poly.IsSimple(opt.min_edge)) {
      at.why = "degenerate cell " + std::to_string(i) + (cb.degenerate ? " (position)" : " (shape)");
      return at;
    }
    if (cb.poly.HasNegativeTag()) {
      throw Error(ErrorKind::kPrecondition,
                  "sample set is not maximal: cell " + std::to_string(i) +
                      " is not closed by its neighbors");
    }
    VoronoiCell cell;
    cell.center = i;
    cell.position = centers[i];
    cell.frame = cb.frame;
    cell.polytope = std::move(cb.poly);
    cell.neighbors = std::move(cb.nbrs);
    cell.edges = cell.polytope.Edges();
    const auto& faces = cell.polytope.faces();
    const LiftedCenter self{i, 0};
    for (const auto& f : faces) {
      const Key k = Canonical(ball, {self, cell.neighbors[f.tag]});
      cell.face_ids.push_back(face_key.try_emplace(k, face_key.size()).first->second);
    }
    for (const auto& e : cell.edges) {
      const Key k = Canonical(ball, {self, cell.neighbors[faces[e.f0].tag],
                                     cell.neighbors[faces[e.f1].tag]});
      cell.edge_ids.push_back(edge_key.try_emplace(k, edge_key.size()).first->second);
    }
    const auto vf = cell.polytope.VertexFaces();
    for (size_t vi = 0; vi < vf.size(); ++vi) {
      std::vector<LiftedCenter> members = {self};
      for (int f : vf[vi]) members.push_back(cell.neighbors[faces[f].tag]);
      const Key k = Canonical(ball, members);
      cell.vertex_ids.push_back(
          vertex_key.try_emplace(k, vertex_key.size()).first->second);
      cell.max_vertex_distance = std::max(
          cell.max_vertex_distance,
          geo.Distance(geo.Origin(),
                       geo.FromChart(cell.polytope.vertices()[vi])));
    }
    v.cells.push_back(std::move(cell));
  }

  v.faces.assign(face_key.size(), {});
  v.edges.assign(edge_key.size(), {});
  v.vertices.assign(vertex_key.size(), {});
  std::vector<int> face_count(v.faces.size(), 0);
  for (const VoronoiCell& c : v.cells) {
    const auto& faces = c.polytope.faces();
    std::map<std::pair<int, int>, int> local_edge;
    for (size_t e = 0; e < c.edges.size(); ++e) {
      local_edge[{c.edges[e].v0, c.edges[e].v1}] = static_cast<int>(e);
      local_edge[{c.edges[e].v1, c.edges[e].v0}] = static_cast<int>(e);
    }
    for (size_t f = 0; f < faces.size(); ++f) {
      VoronoiFace& gf = v.faces[c.face_ids[f]];
      const int slot = face_count[c.face_ids[f]]++;
      if (slot >= 2) continue;
      gf.cells[slot] = c.center;
      gf.local[slot] = static_cast<int>(f);
      if (slot == 0) {
        const LiftedCenter& n = c.neighbors[faces[f].tag];
        gf.elem = n.elem;
        const Vec4 y = geo.Apply(ball.element(n.elem), v.centers[n.center]);
        gf.length = geo.Distance(c.position, y);
        const auto& cyc = faces[f].vertices;
        for (size_t k = 0; k < cyc.size(); ++k) {
          gf.vertices.push_back(c.vertex_ids[cyc[k]]);
          gf.edges.push_back(
              c.edge_ids[local_edge.at({cyc[k], cyc[(k + 1) % cyc.size()]})]);
        }
      }
    }
    for (size_t e = 0; e < c.edges.size(); ++e) {
      VoronoiEdge& ge = v.edges[c.edge_ids[e]];
      if (ge.incidences.empty()) {
        ge.vertices = {c.vertex_ids[c.edges[e].v0], c.vertex_ids[c.edges[e].v1]};
      }
      ge.incidences.emplace_back(c.center, static_cast<int>(e));
      for (int f : {c.edges[e].f0, c.edges[e].f1}) {
        const int gf = c.face_ids[f];
        if (std::find(ge.faces.begin(), ge.faces.end(), gf) == ge.faces.end()) {
          ge.faces.push_back(gf);
        }
      }
    }
    for (size_t vi = 0; vi < c.vertex_ids.size(); ++vi) {
      VoronoiVertex& gv = v.vertices[c.vertex_ids[vi]];
      gv.incidences.emplace_back(c.center, static_cast<int>(vi));
    }
  }
  for (auto& [k, id] : vertex_key) {
    for (int a = 0; a < 4 && a < static_cast<int>(k.size()); ++a) {
      v.vertices[id].centers[a] = k[a].first;
    }
  }
  std::string why;
  for (size_t f = 0; f < v.faces.size(); ++f) {
    if (face_count[f] != 2) {
      at.why = "face with " + std::to_string(face_count[f]) + " incidences";
      return at;
    }
  }
  if (!v.IsRegular(&why)) {
    at.why = why;
    return at;
  }
  at.ok = true;
  return at;
}

}  // namespace

DerivedConstants DeriveConstants(double eps) {
  if (!(eps > 0)) throw Error(ErrorKind::kDomain, "epsilon must be positive");
  DerivedConstants c;
  c.epsilon = eps;
  const double base = BallVolume(0.5 * eps);
  c.j1 = static_cast<int64_t>(std::ceil(BallVolume(2.5 * eps) / base));
  c.j = c.j1 * c.j1 + 2;
  c.l = static_cast<int64_t>(std::ceil(BallVolume(3.5 * eps) / base));
  c.a = EquatorialDiscArea(0.5 * eps);
  c.k = static_cast<double>(c.l) / c.a;
  c.g = 3 * c.j;
  return c;
}

SampleSet SampleMaximal(const ManifoldModel& m, double eps, uint64_t seed,
                        const SampleOptions& opt) {
  if (!(eps > 0)) throw Error(ErrorKind::kDomain, "epsilon must be positive");
  const Geometry& geo = m.geometry();
  const double query = std::min(eps, 1.05 * m.circumradius());
  const double radius = NeighborRadius(m, eps);
  LiftIndex idx(m, radius);
  SampleSet s;
  s.epsilon = eps;
  s.seed = seed;
  auto add = [&](const Vec4& p) {
    idx.Insert(static_cast<int>(s.centers.size()), p);
    s.centers.push_back(p);
  };

  Rng rng(MixSeed(seed, 1));
  for (int fails = 0; fails < opt.max_rejections;) {
    Vec4 p;
    do {
      p = geo.SampleBall(m.circumradius(), rng);
    } while (!m.InDomain(p));
    if (idx.AnyCloser(p, query)) {
      ++fails;
    } else {
      add(p);
      ++s.random_accepted;
      fails = 0;
    }
  }

  // Jittered lattice in the spatial coordinates, whose metric dominates the
  // hyperbolic one, so lattice spacing bounds probe spacing.
  const double h = opt.probe_spacing * eps;
  const double ext = geo.hyperbolic() ? std::sinh(m.circumradius())
                                      : m.circumradius();
  const int n = static_cast<int>(std::ceil(ext / h));
  Rng jitter(MixSeed(seed, 2));
  for (int i = -n; i <= n; ++i) {
    for (int j = -n; j <= n; ++j) {
      for (int k = -n; k <= n; ++k) {
        Vec3 x(i * h, j * h, k * h);
        for (int a = 0; a < 3; ++a) x[a] += jitter.Uniform(-0.25, 0.25) * h;
        Vec4 p;
        p << (geo.hyperbolic() ? std::sqrt(1.0 + x.squaredNorm()) : 1.0), x;
        if (!m.InDomain(p)) continue;
        ++s.probes;
        if (!idx.AnyCloser(p, query)) {
          add(p);
          ++s.probe_added;
        }
      }
    }
  }

  // Cell vertices at distance >= eps from their center are at distance
  // >= eps from every center.
  for (int round = 0; round < opt.max_repair_rounds; ++round) {
    int added = 0;
    const int count = static_cast<int>(s.centers.size());
    for (int i = 0; i < count; ++i) {
      CellBuild cb = ComputeCell(m, idx, s.centers, i, radius, false);
      std::vector<std::pair<double, int>> far;
      for (int vi = 0; vi < static_cast<int>(cb.poly.vertices().size()); ++vi) {
        const Vec4 w = geo.FromChart(cb.poly.vertices()[vi]);
        const double d = geo.Distance(geo.Origin(), w);
        if (d > eps * (1.0 + 1e-12)) far.emplace_back(-d, vi);
      }
      std::sort(far.begin(), far.end());
      for (const auto& [negd, vi] : far) {
        const Vec4 w = geo.Apply(cb.frame, geo.FromChart(cb.poly.vertices()[vi]));
        const Vec4 p = m.ReduceToDomain(w);
        if (!idx.AnyCloser(p, query)) {
          add(p);
          ++added;
        }
      }
    }
    s.repair_added += added;
    if (added == 0) return s;
  }
  throw Error(ErrorKind::kDegeneracy, "maximality repair did not converge");
}

int VoronoiComplex::DeepCount() const {
  return static_cast<int>(std::count_if(cells.begin(), cells.end(),
                                        [](const VoronoiCell& c) { return c.deep; }));
}

bool VoronoiComplex::IsRegular(std::string* why) const {
  for (size_t e = 0; e < edges.size(); ++e) {
    if (edges[e].incidences.size() != 3 || edges[e].faces.size() != 3) {
      if (why) *why = "edge " + std::to_string(e) + " is not in exactly 3 cells";
      return false;
    }
  }
  for (size_t v = 0; v < vertices.size(); ++v) {
    if (vertices[v].incidences.size() != 4) {
      if (why) *why = "vertex " + std::to_string(v) + " is not in exactly 4 cells";
      return false;
    }
  }
  if (EulerCharacteristic() != 0) {
    if (why) *why = "Euler characteristic of the complex is not zero";
    return false;
  }
  return true;
}

Vec3 VoronoiComplex::LocalChart(const Geometry& geo, int cell,
                                const Vec4& x) const {
  return geo.ToChart(geo.Apply(geo.Invert(cells[cell].frame), x));
}

VoronoiComplex BuildVoronoi(const ManifoldModel& m, const SampleSet& s,
                            const VoronoiOptions& opt) {
  const Geometry& geo = m.geometry();
  std::vector<Vec4> centers = s.centers;
  std::string last;
  for (int attempt = 0; attempt <= opt.max_retries; ++attempt) {
    Attempt at = TryBuild(m, centers, s.epsilon, opt);
    if (at.ok) {
      VoronoiComplex v = std::move(at.complex);
      v.retries = attempt;
      for (VoronoiCell& c : v.cells) {
        c.inj = m.InjectivityRadius(c.position);
        c.deep = c.inj >= 4.0 * s.epsilon;
      }
      return v;
    }
    last = at.why;
    Rng rng(MixSeed(s.seed, 3, attempt));
    for (Vec4& c : centers) {
      const Mat4 f = geo.CarryOriginTo(c);
      const Vec4 moved =
          geo.Apply(f, geo.Polar(rng.UnitVector(), opt.perturbation));
      c = m.ReduceToDomain(moved);
    }
  }
  throw Error(ErrorKind::kDegeneracy,
              "Voronoi complex not regular after retries: " + last);
}

int DualComplex::MaxDeepValence() const {
  return deep_valence.empty()
             ? 0
             : *std::max_element(deep_valence.begin(), deep_valence.end());
}

DualComplex BuildDual(const VoronoiComplex& v) {
  std::string why;
  if (!v.IsRegular(&why)) {
    throw Error(ErrorKind::kNonRegular, "dual of a non-regular complex: " + why);
  }
  DualComplex d;
  d.num_vertices = static_cast<int>(v.cells.size());
  d.deep_valence.assign(v.cells.size(), 0);
  for (size_t f = 0; f < v.faces.size(); ++f) {
    const VoronoiFace& gf = v.faces[f];
    const bool deep = v.cells[gf.cells[0]].deep && v.cells[gf.cells[1]].deep;
    d.edges.push_back({static_cast<int>(f), gf.cells, gf.length, deep});
    if (deep) {
      ++d.deep_valence[gf.cells[0]];
      ++d.deep_valence[gf.cells[1]];
    }
  }
  for (const VoronoiEdge& e : v.edges) {
    d.triangles.push_back({e.faces[0], e.faces[1], e.faces[2]});
  }
  for (const VoronoiVertex& vx : v.vertices) d.tetrahedra.push_back(vx.centers);
  return d;
}

std::string DumpComplexJson(const VoronoiComplex& v, const DerivedConstants& c) {
  nlohmann::json j;
  j["constants"] = {{"epsilon", c.epsilon}, {"J1", c.j1}, {"J", c.j},
                    {"L", c.l},             {"A", c.a},   {"K", c.k},
                    {"G", c.g}};
  j["counts"] = {{"cells", v.cells.size()},
                 {"faces", v.faces.size()},
                 {"edges", v.edges.size()},
                 {"vertices", v.vertices.size()},
                 {"deep", v.DeepCount()}};
  j["cells"] = nlohmann::json::array();
  for (const VoronoiCell& cell : v.cells) {
    j["cells"].push_back({{"center", cell.center},
                          {"deep", cell.deep},
                          {"faces", cell.face_ids}});
  }
  j["faces"] = nlohmann::json::array();
  for (const VoronoiFace& f : v.faces) {
    j["faces"].push_back({{"cells", f.cells}, {"element", f.elem},
                          {"vertices", f.vertices}});
  }
  return j.dump(1);
}

}  // namespace h3w
