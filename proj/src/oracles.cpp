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
#include "h3w/oracles.h"

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <numbers>
#include <set>
#include <utility>

#include "h3w/errors.h"
#include "h3w/rng.h"

namespace h3w {
namespace {

constexpr std::array<std::array<int, 2>, 6> kTetEdges = {
    {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}}};

int EdgeIndex(int a, int b) {
  if (a > b) std::swap(a, b);
  for (int e = 0; e < 6; ++e) {
    if (kTetEdges[e][0] == a && kTetEdges[e][1] == b) return e;
  }
  return -1;
}

bool Marked(int mask, int v) { return (mask >> v) & 1; }

// Normal arcs of the piece for `mask` on the face spanned by `face`, as
// unordered pairs of face-local edges (0: f0f1, 1: f0f2, 2: f1f2).
std::set<std::pair<int, int>> FaceArcs(int mask, const std::array<int, 3>& face) {
  const std::array<std::array<int, 2>, 3> local = {{{0, 1}, {0, 2}, {1, 2}}};
  std::vector<int> crossing;
  for (int k = 0; k < 3; ++k) {
    if (Marked(mask, face[local[k][0]]) != Marked(mask, face[local[k][1]])) {
      crossing.push_back(k);
    }
  }
  std::set<std::pair<int, int>> arcs;
  if (crossing.size() == 2) arcs.insert({crossing[0], crossing[1]});
  return arcs;
}

double PolytopeVolume(const ChartPolytope& p) {
  double vol = 0;
  for (const auto& f : p.faces()) {
    const Vec3& a = p.vertices()[f.vertices[0]];
    for (size_t k = 1; k + 1 < f.vertices.size(); ++k) {
      const Vec3& b = p.vertices()[f.vertices[k]];
      const Vec3& c = p.vertices()[f.vertices[k + 1]];
      vol += std::abs(a.dot(b.cross(c))) / 6.0;
    }
  }
  return vol;
}

FieldSpec XAxisSweep(const Vec3& through, double period) {
  FieldSpec fs;
  fs.kind = FieldKind::kAxisSweep;
  fs.axis_a = Vec4(0, through[0], through[1], through[2]);
  fs.axis_b = Vec4(0, through[0] + 1, through[1], through[2]);
  fs.generator = Mat4::Identity();
  fs.generator(1, 0) = period;
  return fs;
}

RunConfig FlatConfig(double eps, std::vector<Vec3> centers) {
  RunConfig cfg;
  cfg.epsilon = eps;
  cfg.centers = std::move(centers);
  cfg.field.spec = XAxisSweep(Vec3(0.1, 0.13, 0.07), 1.0);
  cfg.splitter.samples = 20000;
  return cfg;
}

}  // namespace

McEstimate McBallVolume(double r, int64_t n, uint64_t seed) {
  if (!(r > 0)) throw Error(ErrorKind::kPrecondition, "radius must be positive");
  if (n <= 0) throw Error(ErrorKind::kPrecondition, "sample count must be positive");
  Rng rng(MixSeed(seed, 0x6d63));
  const double rho = std::tanh(r);
  const double w_max = std::pow(std::cosh(r), 4);
  int64_t accepted = 0;
  for (int64_t i = 0; i < n; ++i) {
    const double s = rho * std::cbrt(rng.Uniform());
    const double w = 1.0 / ((1 - s * s) * (1 - s * s));
    if (rng.Uniform() * w_max < w) ++accepted;
  }
  const double box = 4.0 / 3.0 * std::numbers::pi * rho * rho * rho * w_max;
  const double p = static_cast<double>(accepted) / static_cast<double>(n);
  McEstimate out;
  out.estimate = box * p;
  out.sigma = box * std::sqrt(std::max(p * (1 - p), 1e-300) / static_cast<double>(n));
  out.samples = n;
  return out;
}

NormalCheck ExhaustiveNormalCheck() {
  NormalCheck out;
  auto fail = [&](std::string msg) {
    ++out.failures;
    if (out.messages.size() < 20) out.messages.push_back(std::move(msg));
  };
  for (int mask = 0; mask < 16; ++mask) {
    ++out.markings;
    std::vector<int> crossing;
    for (int e = 0; e < 6; ++e) {
      if (Marked(mask, kTetEdges[e][0]) != Marked(mask, kTetEdges[e][1])) {
        crossing.push_back(e);
      }
    }
    const Piece want = crossing.empty()        ? Piece::kEmpty
                       : crossing.size() == 3 ? Piece::kTriangle
                                              : Piece::kQuad;
    if (!crossing.empty() && crossing.size() != 3 && crossing.size() != 4) {
      fail("marking " + std::to_string(mask) + " crosses " +
           std::to_string(crossing.size()) + " edges");
      continue;
    }
    if (PieceForMarking(std::popcount(static_cast<unsigned>(mask))) != want) {
      fail("marking " + std::to_string(mask) + " has the wrong piece type");
    }
    if (want == Piece::kTriangle) {
      // The three crossing edges share the vertex cut off.
      std::array<int, 4> hits{};
      for (int e : crossing) {
        ++hits[kTetEdges[e][0]];
        ++hits[kTetEdges[e][1]];
      }
      if (std::count(hits.begin(), hits.end(), 3) != 1) {
        fail("marking " + std::to_string(mask) + " triangle does not cut a vertex");
      }
    }
    // The arcs on the four faces close up into one cycle through every
    // crossing edge.
    std::vector<int> degree(6, 0);
    int arcs = 0;
    for (int skip = 0; skip < 4; ++skip) {
      std::array<int, 3> face{};
      for (int v = 0, k = 0; v < 4; ++v) {
        if (v != skip) face[k++] = v;
      }
      for (const auto& [a, b] : FaceArcs(mask, face)) {
        const std::array<std::array<int, 2>, 3> local = {{{0, 1}, {0, 2}, {1, 2}}};
        ++degree[EdgeIndex(face[local[a][0]], face[local[a][1]])];
        ++degree[EdgeIndex(face[local[b][0]], face[local[b][1]])];
        ++arcs;
      }
    }
    if (arcs != static_cast<int>(crossing.size())) {
      fail("marking " + std::to_string(mask) + " boundary is not a single cycle");
    }
    for (int e = 0; e < 6; ++e) {
      const bool crosses = std::find(crossing.begin(), crossing.end(), e) != crossing.end();
      if (degree[e] != (crosses ? 2 : 0)) {
        fail("marking " + std::to_string(mask) + " has a broken boundary curve");
      }
    }
  }

  // Tetrahedron A glued to B along A's face {0,1,2} and B's face {0,1,2}
  // with every vertex bijection.
  const std::array<int, 3> face = {0, 1, 2};
  std::array<int, 3> perm = {0, 1, 2};
  do {
    for (int a = 0; a < 16; ++a) {
      for (int b = 0; b < 16; ++b) {
        bool agree = true;
        for (int k = 0; k < 3; ++k) agree &= Marked(a, k) == Marked(b, perm[k]);
        if (!agree) continue;
        ++out.pairs;
        const std::array<int, 3> image = {perm[0], perm[1], perm[2]};
        // Face-local edge k of A corresponds to the edge of B between the
        // images of its endpoints.
        const std::array<std::array<int, 2>, 3> local = {{{0, 1}, {0, 2}, {1, 2}}};
        auto to_b = [&](int k) {
          const int x = image[local[k][0]], y = image[local[k][1]];
          for (int j = 0; j < 3; ++j) {
            const int p = face[local[j][0]], q = face[local[j][1]];
            if ((p == x && q == y) || (p == y && q == x)) return j;
          }
          return -1;
        };
        std::set<std::pair<int, int>> mapped;
        for (const auto& [x, y] : FaceArcs(a, face)) {
          const int u = to_b(x), w = to_b(y);
          mapped.insert({std::min(u, w), std::max(u, w)});
        }
        if (mapped != FaceArcs(b, face)) {
          fail("gluing " + std::to_string(a) + "|" + std::to_string(b) +
               " arcs disagree");
        }
      }
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  return out;
}

std::vector<FlatCase> FlatCases() {
  std::vector<FlatCase> cases;
  {
    FlatCase c;
    c.name = "cube-2";
    c.config = FlatConfig(0.6, {Vec3(0, 0, 0), Vec3(0.5, 0.5, 0.5)});
    c.config.flat_torus = Vec3(1, 1, 1);
    c.expected_genus = {0, 3, 0};
    cases.push_back(c);
  }
  {
    FlatCase c;
    c.name = "slab-4";
    c.config = FlatConfig(0.6, {Vec3(0, 0, 0), Vec3(0.5, 0.5, 0.5),
                                Vec3(1, 0, 0), Vec3(-0.5, 0.5, 0.5)});
    c.config.flat_torus = Vec3(2, 1, 1);
    c.expected_genus = {0, 2, 5, 2, 0};
    cases.push_back(c);
  }
  {
    FlatCase c;
    c.name = "bcc-1";
    c.config = FlatConfig(0.6, {Vec3(0, 0, 0)});
    Eigen::Matrix3d b;
    b << -0.5, 0.5, 0.5, 0.5, -0.5, 0.5, 0.5, 0.5, -0.5;
    c.config.flat_lattice = b;
    c.expected_genus = {0, 0};
    cases.push_back(c);
  }
  return cases;
}

bool FlatCheck::pass() const {
  return genus == expected && surfaces_ok &&
         std::abs(volume - expected_volume) <= 1e-9 * expected_volume;
}

FlatCheck FlatPipelineCheck(const FlatCase& c) {
  FlatCheck out;
  out.name = c.name;
  out.expected = c.expected_genus;
  const RunResult r = RunPipeline(c.config);
  out.genus = r.report.genus;
  out.cells = r.report.cells;
  for (const LevelRecord& l : r.levels) {
    out.surfaces_ok &= l.topology.boundary == 0 && l.topology.oriented &&
                       l.topology.chi % 2 == 0;
  }
  out.surfaces_ok &= r.levels.front().topology.faces == 0 &&
                     r.levels.back().topology.faces == 0;
  const ManifoldModel m = LoadModel(c.config);
  out.expected_volume = m.volume();
  SampleSet s;
  s.epsilon = RunEpsilon(c.config);
  for (const Vec3& k : c.config.centers) s.centers.push_back(m.geometry().FromChart(k));
  const VoronoiComplex v = BuildVoronoi(m, s);
  for (const VoronoiCell& cell : v.cells) out.volume += PolytopeVolume(cell.polytope);
  return out;
}

}  // namespace h3w
