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
#include "h3w/level_area.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "h3w/errors.h"

namespace h3w {
namespace {

// Geodesic (projective) combination of points.
Vec4 Blend(const Geometry& geo, const Vec4& x) {
  if (!geo.hyperbolic()) return x / x[0];
  return x / std::sqrt(x[0] * x[0] - x.tail<3>().squaredNorm());
}

inline int Index(int n, int i, int j, int k) {
  return (i * (n + 1) + j) * (n + 1) + k;
}

Vec4 Node(const Geometry& geo, const std::array<Vec4, 4>& c, int n, int i,
          int j, int k) {
  const double s = 1.0 / n;
  return Blend(geo, (n - i) * s * c[0] + (i - j) * s * c[1] +
                        (j - k) * s * c[2] + k * s * c[3]);
}

constexpr int kPerm[6][3] = {{0, 1, 2}, {0, 2, 1}, {1, 0, 2},
                             {1, 2, 0}, {2, 0, 1}, {2, 1, 0}};

double TetVolume(const Geometry& geo, const std::array<Vec4, 4>& p) {
  // Euclidean volume in the chart; only used for mesh sanity checks.
  const Vec3 a = geo.ToChart(p[0]);
  return std::abs((geo.ToChart(p[1]) - a)
                      .dot((geo.ToChart(p[2]) - a)
                               .cross(geo.ToChart(p[3]) - a))) / 6.0;
}

}  // namespace

template <typename Fn>
void SampledField::ForEachSimplex(const Block& b, Fn&& fn) const {
  const int n = b.n;
  std::array<std::array<int, 3>, 4> v;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j <= i; ++j) {
      for (int k = 0; k <= j; ++k) {
        for (const auto& perm : kPerm) {
          v[0] = {i, j, k};
          bool ok = true;
          for (int s = 0; s < 3 && ok; ++s) {
            v[s + 1] = v[s];
            ++v[s + 1][perm[s]];
            const auto& w = v[s + 1];
            ok = w[0] <= n && w[0] >= w[1] && w[1] >= w[2];
          }
          if (ok) fn(v);
        }
      }
    }
  }
}

SampledField::SampledField(const MorseField& f, double h)
    : geo_(&f.manifold().geometry()), h_(h) {
  if (!(h > 0)) throw Error(ErrorKind::kConfig, "mesh scale must be positive");
  const Geometry& geo = *geo_;
  const ChartPolytope& dom = f.manifold().domain();
  const Vec4 o = geo.Origin();
  for (const auto& face : dom.faces()) {
    Vec3 c = Vec3::Zero();
    for (int v : face.vertices) c += dom.vertices()[v];
    c /= static_cast<double>(face.vertices.size());
    const Vec4 pc = geo.FromChart(c);
    const int k = static_cast<int>(face.vertices.size());
    for (int a = 0; a < k; ++a) {
      Block b;
      b.corners = {o, pc, geo.FromChart(dom.vertices()[face.vertices[a]]),
                   geo.FromChart(dom.vertices()[face.vertices[(a + 1) % k]])};
      double edge = 0;
      for (int p = 0; p < 4; ++p) {
        for (int q = p + 1; q < 4; ++q) {
          edge = std::max(edge, geo.Distance(b.corners[p], b.corners[q]));
        }
      }
      b.n = std::max(1, static_cast<int>(std::ceil(edge / h - 1e-9)));
      blocks_.push_back(std::move(b));
    }
  }

  min_ = std::numeric_limits<double>::infinity();
  max_ = -min_;
  for (Block& b : blocks_) {
    const Vec4 center =
        Blend(geo, b.corners[0] + b.corners[1] + b.corners[2] + b.corners[3]);
    double reach = 0;
    for (const Vec4& c : b.corners) reach = std::max(reach, geo.Distance(center, c));
    const LocalField local = f.Localize(center, reach * (1 + 1e-9) + 1e-12);
    const int n = b.n;
    b.values.assign(static_cast<size_t>(n + 1) * (n + 1) * (n + 1), 0.0);
    for (int i = 0; i <= n; ++i) {
      for (int j = 0; j <= i; ++j) {
        for (int k = 0; k <= j; ++k) {
          const double val = local(Node(geo, b.corners, n, i, j, k));
          b.values[Index(n, i, j, k)] = val;
          min_ = std::min(min_, val);
          max_ = std::max(max_, val);
        }
      }
    }
  }
}

int64_t SampledField::num_simplices() const {
  int64_t total = 0;
  for (const Block& b : blocks_) total += static_cast<int64_t>(b.n) * b.n * b.n;
  return total;
}

double SampledField::MeshVolume() const {
  double total = 0;
  for (const Block& b : blocks_) {
    ForEachSimplex(b, [&](const std::array<std::array<int, 3>, 4>& v) {
      std::array<Vec4, 4> p;
      for (int s = 0; s < 4; ++s) {
        p[s] = Node(*geo_, b.corners, b.n, v[s][0], v[s][1], v[s][2]);
      }
      total += TetVolume(*geo_, p);
    });
  }
  return total;
}

std::vector<double> SampledField::Areas(const std::vector<double>& ts) const {
  const Geometry& geo = *geo_;
  std::vector<int> order(ts.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](int a, int b) { return ts[a] < ts[b]; });
  std::vector<double> sorted(ts.size());
  for (size_t i = 0; i < ts.size(); ++i) sorted[i] = ts[order[i]];
  std::vector<double> acc(ts.size(), 0.0);

  for (const Block& b : blocks_) {
    ForEachSimplex(b, [&](const std::array<std::array<int, 3>, 4>& v) {
      std::array<double, 4> val;
      for (int s = 0; s < 4; ++s) {
        val[s] = b.values[Index(b.n, v[s][0], v[s][1], v[s][2])];
      }
      const auto [lo, hi] = std::minmax_element(val.begin(), val.end());
      auto it = std::lower_bound(sorted.begin(), sorted.end(), *lo);
      if (it == sorted.end() || !(*it < *hi)) return;
      std::array<Vec4, 4> p;
      for (int s = 0; s < 4; ++s) {
        p[s] = Node(geo, b.corners, b.n, v[s][0], v[s][1], v[s][2]);
      }
      for (; it != sorted.end() && *it < *hi; ++it) {
        const double t = *it;
        // Partition the vertices into those above t and the rest.
        int above[4], below[4], na = 0, nb = 0;
        for (int s = 0; s < 4; ++s) {
          if (val[s] > t) {
            above[na++] = s;
          } else {
            below[nb++] = s;
          }
        }
        auto cut = [&](int a, int c) {
          const double lambda = (t - val[a]) / (val[c] - val[a]);
          return Blend(geo, (1 - lambda) * p[a] + lambda * p[c]);
        };
        double area = 0;
        if (na == 1 || nb == 1) {
          const int lone = na == 1 ? above[0] : below[0];
          const int* rest = na == 1 ? below : above;
          area = geo.TriangleArea(cut(lone, rest[0]), cut(lone, rest[1]),
                                  cut(lone, rest[2]));
        } else {
          const Vec4 q0 = cut(below[0], above[0]);
          const Vec4 q1 = cut(below[0], above[1]);
          const Vec4 q2 = cut(below[1], above[1]);
          const Vec4 q3 = cut(below[1], above[0]);
          area = geo.TriangleArea(q0, q1, q2) + geo.TriangleArea(q0, q2, q3);
        }
        acc[it - sorted.begin()] += area;
      }
    });
  }
  std::vector<double> out(ts.size());
  for (size_t i = 0; i < ts.size(); ++i) out[order[i]] = acc[i];
  return out;
}

std::vector<LevelSample> LevelAreas(const MorseField& f,
                                    const std::vector<double>& ts, double h,
                                    const std::vector<double>& splitters,
                                    double tol) {
  const SampledField fine(f, h), coarse(f, 2 * h);
  const std::vector<double> a = fine.Areas(ts), c = coarse.Areas(ts);
  std::vector<double> sorted = splitters;
  std::sort(sorted.begin(), sorted.end());
  std::vector<LevelSample> out(ts.size());
  for (size_t i = 0; i < ts.size(); ++i) {
    out[i] = {ts[i], a[i], c[i], std::abs(a[i] - c[i]),
              IsGeneric(ts[i], sorted, tol)};
  }
  return out;
}

LevelSample LevelArea(const MorseField& f, double t, double h) {
  return LevelAreas(f, {t}, h).front();
}

MorseAreaEstimate EstimateMorseArea(const MorseField& f,
                                    const MorseAreaOptions& options) {
  if (options.grid < 3) throw Error(ErrorKind::kConfig, "t-grid too small");
  const SampledField fine(f, options.h), coarse(f, 2 * options.h);
  MorseAreaEstimate out;
  out.min = fine.min();
  out.max = fine.max();
  double lo = out.min, hi = out.max;
  for (int round = 0; round <= options.refinements; ++round) {
    std::vector<double> ts(options.grid);
    const double step = (hi - lo) / options.grid;
    for (int k = 0; k < options.grid; ++k) ts[k] = lo + (k + 0.5) * step;
    const std::vector<double> a = fine.Areas(ts), c = coarse.Areas(ts);
    int best = 0;
    for (int k = 0; k < options.grid; ++k) {
      out.samples.push_back({ts[k], a[k], c[k], std::abs(a[k] - c[k]), true});
      if (a[k] > a[best]) best = k;
    }
    lo = ts[best] - step;
    hi = ts[best] + step;
  }
  std::sort(out.samples.begin(), out.samples.end(),
            [](const LevelSample& x, const LevelSample& y) { return x.t < y.t; });
  for (const LevelSample& s : out.samples) {
    if (s.area > out.area) {
      out.area = s.area;
      out.t = s.t;
      out.error = s.error;
    }
  }
  return out;
}

}  // namespace h3w
