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

#include "h3w/polytope.h"

#include <algorithm>
#include <cmath>
#include <map>
#include <unordered_map>

namespace h3w {

ChartPolytope ChartPolytope::Box(const Vec3& h) {
  ChartPolytope p;
  for (int i = 0; i < 8; ++i) {
    p.vertices_.emplace_back((i & 1) ? h[0] : -h[0], (i & 2) ? h[1] : -h[1],
                             (i & 4) ? h[2] : -h[2]);
  }
  // Cycles ordered counter-clockwise about the outward normal.
  const int cycles[6][4] = {{0, 4, 6, 2}, {1, 3, 7, 5}, {0, 1, 5, 4},
                            {2, 6, 7, 3}, {0, 2, 3, 1}, {4, 5, 7, 6}};
  for (int f = 0; f < 6; ++f) {
    Vec3 n = Vec3::Zero();
    n[f / 2] = (f % 2) ? 1.0 : -1.0;
    p.faces_.push_back({-(f + 1), n, h[f / 2], {cycles[f], cycles[f] + 4}});
  }
  return p;
}

ChartPolytope ChartPolytope::FromHalfspaces(const Vec3& box,
                                            const std::vector<Vec3>& normals,
                                            const std::vector<double>& offsets,
                                            const std::vector<int>& tags,
                                            double tol) {
  std::vector<Vec3> n;
  std::vector<double> c;
  std::vector<int> tag;
  for (int a = 0; a < 3; ++a) {
    for (int sgn : {-1, 1}) {
      Vec3 e = Vec3::Zero();
      e[a] = sgn;
      n.push_back(e);
      c.push_back(box[a]);
      tag.push_back(-(2 * a + (sgn > 0 ? 2 : 1)));
    }
  }
  for (size_t i = 0; i < normals.size(); ++i) {
    const double s = normals[i].norm();
    n.push_back(normals[i] / s);
    c.push_back(offsets[i] / s);
    tag.push_back(tags[i]);
  }
  const int m = static_cast<int>(n.size());
  ChartPolytope p;
  for (int i = 0; i < m; ++i) {
    for (int j = i + 1; j < m; ++j) {
      for (int k = j + 1; k < m; ++k) {
        Eigen::Matrix3d a;
        a.row(0) = n[i];
        a.row(1) = n[j];
        a.row(2) = n[k];
        if (std::abs(a.determinant()) < 1e-12) continue;
        const Vec3 x = a.fullPivLu().solve(Vec3(c[i], c[j], c[k]));
        bool ok = true;
        for (int q = 0; q < m && ok; ++q) ok = n[q].dot(x) <= c[q] + tol;
        if (!ok) continue;
        bool dup = false;
        for (const Vec3& y : p.vertices_) dup |= (y - x).norm() <= 4 * tol;
        if (!dup) p.vertices_.push_back(x);
      }
    }
  }
  for (int q = 0; q < m; ++q) {
    std::vector<int> on;
    Vec3 centroid = Vec3::Zero();
    for (int v = 0; v < static_cast<int>(p.vertices_.size()); ++v) {
      if (std::abs(n[q].dot(p.vertices_[v]) - c[q]) <= 4 * tol) {
        on.push_back(v);
        centroid += p.vertices_[v];
      }
    }
    if (on.size() < 3) continue;
    centroid /= static_cast<double>(on.size());
    // Counter-clockwise about the outward normal.
    const Vec3 u = (p.vertices_[on[0]] - centroid).normalized();
    const Vec3 w = n[q].cross(u);
    std::vector<std::pair<double, int>> ang;
    for (int v : on) {
      const Vec3 r = p.vertices_[v] - centroid;
      ang.push_back({std::atan2(r.dot(w), r.dot(u)), v});
    }
    std::sort(ang.begin(), ang.end());
    Face f{tag[q], n[q], c[q], {}};
    for (const auto& [t, v] : ang) f.vertices.push_back(v);
    p.faces_.push_back(std::move(f));
  }
  return p;
}

ChartPolytope::ClipStatus ChartPolytope::Clip(const Vec3& normal,
                                              double offset, int tag,
                                              double tol) {
  const int m = static_cast<int>(vertices_.size());
  if (m == 0) return ClipStatus::kEmpty;
  const double scale = normal.norm();
  std::vector<double> d(m);
  bool any_out = false, any_in = false, any_on = false;
  for (int k = 0; k < m; ++k) {
    d[k] = (normal.dot(vertices_[k]) - offset) / scale;
    if (d[k] > tol) {
      any_out = true;
    } else if (d[k] < -tol) {
      any_in = true;
    } else {
      any_on = true;
    }
  }
  if (!any_out && !any_on) return ClipStatus::kRedundant;
  if (!any_in && !any_on) {
    vertices_.clear();
    faces_.clear();
    return ClipStatus::kEmpty;
  }
  if (any_on) return ClipStatus::kDegenerate;

  std::vector<Vec3> verts = vertices_;
  std::map<std::pair<int, int>, int> crossings;
  auto cross = [&](int a, int b) {
    const auto key = std::minmax(a, b);
    auto it = crossings.find(key);
    if (it != crossings.end()) return it->second;
    const double lam = d[a] / (d[a] - d[b]);
    verts.push_back(vertices_[a] + lam * (vertices_[b] - vertices_[a]));
    const int id = static_cast<int>(verts.size()) - 1;
    crossings.emplace(key, id);
    return id;
  };

  std::vector<Face> kept;
  std::unordered_map<int, int> cap_next;
  int cut_faces = 0;
  for (const Face& f : faces_) {
    const int k = static_cast<int>(f.vertices.size());
    Face g{f.tag, f.normal, f.offset, {}};
    int exit = -1, entry = -1;
    for (int i = 0; i < k; ++i) {
      const int a = f.vertices[i];
      const int b = f.vertices[(i + 1) % k];
      const bool ain = d[a] < 0, bin = d[b] < 0;
      if (ain) g.vertices.push_back(a);
      if (ain != bin) {
        const int x = cross(a, b);
        g.vertices.push_back(x);
        (ain ? exit : entry) = x;
      }
    }
    if (g.vertices.empty()) continue;
    if (exit >= 0) {
      if (entry < 0) return ClipStatus::kDegenerate;
      cap_next[entry] = exit;
      ++cut_faces;
    }
    kept.push_back(std::move(g));
  }

  Face cap{tag, normal / scale, offset / scale, {}};
  if (cap_next.empty()) return ClipStatus::kDegenerate;
  int start = cap_next.begin()->first;
  for (int v = start;;) {
    cap.vertices.push_back(v);
    auto it = cap_next.find(v);
    if (it == cap_next.end()) return ClipStatus::kDegenerate;
    v = it->second;
    if (v == start) break;
    if (static_cast<int>(cap.vertices.size()) > cut_faces) {
      return ClipStatus::kDegenerate;
    }
  }
  if (static_cast<int>(cap.vertices.size()) != cut_faces) {
    return ClipStatus::kDegenerate;
  }
  kept.push_back(std::move(cap));

  // Compact away vertices outside the half-space.
  std::vector<int> remap(verts.size(), -1);
  std::vector<Vec3> out;
  for (Face& f : kept) {
    for (int& v : f.vertices) {
      if (remap[v] < 0) {
        remap[v] = static_cast<int>(out.size());
        out.push_back(verts[v]);
      }
      v = remap[v];
    }
  }
  vertices_ = std::move(out);
  faces_ = std::move(kept);
  return ClipStatus::kCut;
}

std::vector<ChartPolytope::Edge> ChartPolytope::Edges() const {
  std::map<std::pair<int, int>, int> forward;
  for (int f = 0; f < static_cast<int>(faces_.size()); ++f) {
    const auto& c = faces_[f].vertices;
    for (size_t i = 0; i < c.size(); ++i) {
      forward[{c[i], c[(i + 1) % c.size()]}] = f;
    }
  }
  std::vector<Edge> edges;
  for (const auto& [key, f] : forward) {
    if (key.first > key.second) continue;
    auto it = forward.find({key.second, key.first});
    edges.push_back({key.first, key.second, f,
                     it == forward.end() ? -1 : it->second});
  }
  return edges;
}

std::vector<std::vector<int>> ChartPolytope::VertexFaces() const {
  std::vector<std::vector<int>> vf(vertices_.size());
  for (int f = 0; f < static_cast<int>(faces_.size()); ++f) {
    for (int v : faces_[f].vertices) vf[v].push_back(f);
  }
  return vf;
}

bool ChartPolytope::IsSimple(double min_edge) const {
  for (const auto& fs : VertexFaces()) {
    if (fs.size() != 3) return false;
  }
  for (const Edge& e : Edges()) {
    if (e.f1 < 0) return false;
    if ((vertices_[e.v0] - vertices_[e.v1]).norm() < min_edge) return false;
  }
  return true;
}

bool ChartPolytope::HasNegativeTag() const {
  return std::any_of(faces_.begin(), faces_.end(),
                     [](const Face& f) { return f.tag < 0; });
}

bool ChartPolytope::Contains(const Vec3& k, double tol) const {
  if (faces_.empty()) return false;
  for (const Face& f : faces_) {
    if (f.normal.dot(k) - f.offset > tol) return false;
  }
  return true;
}

double ChartPolytope::MaxRadius() const {
  double r = 0;
  for (const Vec3& v : vertices_) r = std::max(r, v.norm());
  return r;
}

}  // namespace h3w
