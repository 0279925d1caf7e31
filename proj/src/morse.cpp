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
#include "h3w/morse.h"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <numeric>

#include "h3w/errors.h"
#include "h3w/rng.h"

namespace h3w {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// (1 - s^2)^3 on [0, 1), zero beyond; its slope is at most 96 / (25 sqrt 5).
double Bump(double s) {
  if (s >= 1) return 0;
  const double u = 1 - s * s;
  return u * u * u;
}

uint64_t PointKey(const Vec4& x) {
  uint64_t h = 0;
  for (int i = 0; i < 4; ++i) h = MixSeed(h, std::bit_cast<uint64_t>(x[i]));
  return h;
}

}  // namespace

const char* FieldKindName(FieldKind kind) {
  switch (kind) {
    case FieldKind::kDistanceToPoint:
      return "distance_to_point";
    case FieldKind::kRadialBumpSum:
      return "radial_bump_sum";
    case FieldKind::kAxisSweep:
      return "axis_sweep";
  }
  return "?";
}

FieldKind ParseFieldKind(const std::string& name) {
  for (FieldKind k : {FieldKind::kDistanceToPoint, FieldKind::kRadialBumpSum,
                      FieldKind::kAxisSweep}) {
    if (name == FieldKindName(k)) return k;
  }
  throw Error(ErrorKind::kConfig, "unknown field kind '" + name + "'");
}

double LocalField::operator()(const Vec4& y) const {
  switch (kind_) {
    case FieldKind::kDistanceToPoint: {
      double best = kInf;
      for (const Vec4& p : points_) best = std::min(best, geo_->Distance(y, p));
      return best + offset_;
    }
    case FieldKind::kRadialBumpSum: {
      double sum = 0;
      for (size_t i = 0; i < points_.size(); ++i) {
        sum += weights_[i] * Bump(geo_->Distance(y, points_[i]) / rho_);
      }
      return sum + offset_;
    }
    case FieldKind::kAxisSweep: {
      double best = kInf;
      for (const auto& [a, b] : lines_) {
        best = std::min(best, geo_->DistanceToLine(y, a, b));
      }
      return best + offset_;
    }
  }
  return 0;
}

int LocalField::num_terms() const {
  return static_cast<int>(kind_ == FieldKind::kAxisSweep ? lines_.size()
                                                         : points_.size());
}

MorseField::MorseField(const ManifoldModel& m, FieldSpec spec)
    : m_(&m), spec_(std::move(spec)) {
  const Geometry& geo = m.geometry();
  const Vec4 o = geo.Origin();
  if (spec_.kind == FieldKind::kAxisSweep) {
    TubeSpec t;
    t.generator = spec_.generator;
    t.core_a = spec_.axis_a;
    t.core_b = spec_.axis_b;
    t.radius = 1;
    axis_ = m.MakeTube(t);
    lipschitz_ = 1;
    return;
  }
  if (spec_.points.empty()) {
    throw Error(ErrorKind::kConfig, "field needs at least one point");
  }
  if (spec_.kind == FieldKind::kDistanceToPoint) {
    spec_.points.resize(1);
    spec_.weights.assign(1, 1.0);
  } else {
    if (spec_.weights.size() != spec_.points.size()) {
      throw Error(ErrorKind::kConfig, "bump weights and points differ in size");
    }
    if (!(spec_.profile_radius > 0)) {
      throw Error(ErrorKind::kConfig, "bump profile radius must be positive");
    }
  }
  const GroupBall& ball = m.group();
  for (const Vec4& raw : spec_.points) {
    const Vec4 p = m.ReduceToDomain(geo.Normalize(raw));
    Orbit orbit;
    orbit.complete = ball.radius() - geo.Distance(o, p);
    std::vector<std::pair<double, Vec4>> lifts;
    for (int id = 0; id < ball.size(); ++id) {
      const Vec4 q = geo.Apply(ball.element(id), p);
      const double d = geo.Distance(o, q);
      if (d <= orbit.complete) lifts.push_back({d, q});
    }
    std::stable_sort(lifts.begin(), lifts.end(),
                     [](const auto& x, const auto& y) { return x.first < y.first; });
    for (const auto& [d, q] : lifts) {
      orbit.distance.push_back(d);
      orbit.lifts.push_back(q);
    }
    orbits_.push_back(std::move(orbit));
  }
  if (spec_.kind == FieldKind::kRadialBumpSum) {
    // Two lifts within rho of a point are within 2 rho of each other, so the
    // number of overlapping bumps is the lift count in B(p, 2 rho).
    const double rho = spec_.profile_radius;
    lipschitz_ = 0;
    for (size_t j = 0; j < orbits_.size(); ++j) {
      const Vec4& p = orbits_[j].lifts.front();
      int overlap = 0;
      for (const Vec4& q : orbits_[j].lifts) {
        if (geo.Distance(p, q) <= 2 * rho) ++overlap;
      }
      lipschitz_ += std::abs(spec_.weights[j]) * overlap * 96.0 /
                    (25.0 * std::sqrt(5.0) * rho);
    }
  }
}

MorseField MorseField::Shifted(double c) const {
  MorseField f = *this;
  f.spec_.offset += c;
  return f;
}

double MorseField::operator()(const Vec4& x) const {
  return Localize(x, 0)(x);
}

LocalField MorseField::Localize(const Vec4& anchor, double r) const {
  const Geometry& geo = m_->geometry();
  LocalField out;
  out.geo_ = &geo;
  out.kind_ = spec_.kind;
  out.offset_ = spec_.offset;
  out.rho_ = spec_.profile_radius;

  Mat4 g;
  const Vec4 x = m_->ReduceToDomain(geo.Normalize(anchor), &g);
  const Mat4 back = geo.Invert(g);
  const double a = geo.Distance(geo.Origin(), x);
  auto exhausted = [] {
    return Error(ErrorKind::kSearchRadiusExhausted,
                 "field orbit data does not cover the query ball");
  };

  switch (spec_.kind) {
    case FieldKind::kDistanceToPoint: {
      const Orbit& orbit = orbits_[0];
      double best = kInf;
      for (size_t k = 0; k < orbit.lifts.size(); ++k) {
        if (orbit.distance[k] - a > best) break;
        best = std::min(best, geo.Distance(x, orbit.lifts[k]));
      }
      const double reach = best + 2 * r;
      if (a + reach > orbit.complete) throw exhausted();
      for (size_t k = 0; k < orbit.lifts.size(); ++k) {
        if (orbit.distance[k] - a > reach) break;
        if (geo.Distance(x, orbit.lifts[k]) <= reach) {
          out.points_.push_back(geo.Apply(back, orbit.lifts[k]));
        }
      }
      break;
    }
    case FieldKind::kRadialBumpSum: {
      const double reach = spec_.profile_radius + r;
      for (size_t j = 0; j < orbits_.size(); ++j) {
        const Orbit& orbit = orbits_[j];
        if (a + reach > orbit.complete) throw exhausted();
        for (size_t k = 0; k < orbit.lifts.size(); ++k) {
          if (orbit.distance[k] - a > reach) break;
          if (geo.Distance(x, orbit.lifts[k]) < reach) {
            out.points_.push_back(geo.Apply(back, orbit.lifts[k]));
            out.weights_.push_back(spec_.weights[j]);
          }
        }
      }
      break;
    }
    case FieldKind::kAxisSweep: {
      double best = kInf;
      for (size_t k = 0; k < axis_.lifts.size(); ++k) {
        if (axis_.lift_distance[k] - a > best) break;
        best = std::min(best, geo.DistanceToLine(x, axis_.lifts[k].first,
                                                 axis_.lifts[k].second));
      }
      const double reach = best + 2 * r;
      if (a + reach > m_->LiftCompleteness(axis_)) throw exhausted();
      for (size_t k = 0; k < axis_.lifts.size(); ++k) {
        if (axis_.lift_distance[k] - a > reach) break;
        const auto& [p, q] = axis_.lifts[k];
        if (geo.DistanceToLine(x, p, q) <= reach) {
          out.lines_.push_back({geo.Apply(back, p), geo.Apply(back, q)});
        }
      }
      break;
    }
  }
  return out;
}

RadialSampler::RadialSampler(const Geometry& geo, double r) : r_(r) {
  if (!(r > 0)) throw Error(ErrorKind::kPrecondition, "radius must be positive");
  // Tabulated against w = u^(1/3), in which the radius is nearly linear.
  constexpr int kNodes = 4096;
  const double total = geo.BallVolume(r);
  table_.resize(kNodes + 1);
  for (int i = 0; i <= kNodes; ++i) {
    const double w = static_cast<double>(i) / kNodes;
    const double target = w * w * w * total;
    double lo = 0, hi = r;
    for (int it = 0; it < 64; ++it) {
      const double mid = 0.5 * (lo + hi);
      (geo.BallVolume(mid) < target ? lo : hi) = mid;
    }
    table_[i] = 0.5 * (lo + hi);
  }
  table_.front() = 0;
  table_.back() = r;
}

double RadialSampler::Radius(double u) const {
  const double w = std::cbrt(std::clamp(u, 0.0, 1.0));
  const double pos = w * (table_.size() - 1);
  const size_t i = std::min(static_cast<size_t>(pos), table_.size() - 2);
  const double f = pos - i;
  return (1 - f) * table_[i] + f * table_[i + 1];
}

std::vector<double> BallFieldValues(const MorseField& f, const Vec4& x,
                                    const RadialSampler& radial, int n,
                                    uint64_t seed) {
  if (n < 2 || n % 2 != 0) {
    throw Error(ErrorKind::kConfig, "ball sample count must be even and >= 2");
  }
  const Geometry& geo = f.manifold().geometry();
  const Vec4 center = geo.Normalize(x);
  const Mat4 frame = geo.CarryOriginTo(center);
  const LocalField local = f.Localize(center, radial.radius());
  Rng rng(MixSeed(seed, PointKey(center),
                  MixSeed(std::bit_cast<uint64_t>(radial.radius()),
                          static_cast<uint64_t>(n))));
  const int pairs = n / 2;
  std::vector<double> values;
  values.reserve(n);
  for (int k = 0; k < pairs; ++k) {
    const double s = radial.Radius((k + rng.Uniform()) / pairs);
    const Vec3 u = rng.UnitVector();
    values.push_back(local(geo.Apply(frame, geo.Polar(u, s))));
    values.push_back(local(geo.Apply(frame, geo.Polar(-u, s))));
  }
  std::sort(values.begin(), values.end());
  return values;
}

double SublevelBallVolume(const MorseField& f, const Vec4& x, double r,
                          double t, int n, uint64_t seed) {
  const ManifoldModel& m = f.manifold();
  if (r > m.InjectivityRadius(x)) {
    throw Error(ErrorKind::kBallNotEmbedded,
                "ball radius exceeds the injectivity radius");
  }
  const RadialSampler radial(m.geometry(), r);
  const std::vector<double> values = BallFieldValues(f, x, radial, n, seed);
  const auto below = std::upper_bound(values.begin(), values.end(), t);
  return m.geometry().BallVolume(r) * (below - values.begin()) / n;
}

namespace {

struct Split {
  double t;
  double residual;
};

Split SplitSorted(const std::vector<double>& values, double volume,
                  double tau) {
  const double n = static_cast<double>(values.size());
  auto frac = [&](double t) {
    return (std::upper_bound(values.begin(), values.end(), t) -
            values.begin()) / n;
  };
  double lo = values.front(), hi = values.back();
  if (frac(lo) >= 0.5) {
    throw Error(ErrorKind::kNonGenericField,
                "field is constant on half of the splitting ball");
  }
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    const double est = frac(mid);
    const double residual = std::abs(est - 0.5) * volume;
    if (residual <= tau * volume) return {mid, residual};
    (est < 0.5 ? lo : hi) = mid;
  }
  const double residual = std::abs(frac(hi) - 0.5) * volume;
  if (residual > tau * volume) {
    throw Error(ErrorKind::kNonGenericField,
                "splitter residual above tolerance; field has an atom at "
                "the median or too few samples");
  }
  return {hi, residual};
}

}  // namespace

CellSplitter ComputeSplitter(const MorseField& f, const VoronoiComplex& v,
                             int cell, const SplitterOptions& options) {
  const Geometry& geo = f.manifold().geometry();
  const double r = 0.5 * v.epsilon;
  const RadialSampler radial(geo, r);
  const std::vector<double> values =
      BallFieldValues(f, v.centers.at(cell), radial, options.samples,
                      MixSeed(options.seed, static_cast<uint64_t>(cell)));
  const Split s = SplitSorted(values, geo.BallVolume(r), options.tau_split);
  CellSplitter out;
  out.cell = cell;
  out.t = s.t;
  out.residual = s.residual;
  out.shallow = !v.cells.at(cell).deep;
  return out;
}

std::vector<CellSplitter> ComputeSplitters(const MorseField& f,
                                           const VoronoiComplex& v,
                                           const SplitterOptions& options) {
  const Geometry& geo = f.manifold().geometry();
  const double r = 0.5 * v.epsilon;
  const RadialSampler radial(geo, r);
  const double volume = geo.BallVolume(r);
  std::vector<CellSplitter> out(v.cells.size());
  for (size_t i = 0; i < v.cells.size(); ++i) {
    const std::vector<double> values =
        BallFieldValues(f, v.centers[i], radial, options.samples,
                        MixSeed(options.seed, static_cast<uint64_t>(i)));
    const Split s = SplitSorted(values, volume, options.tau_split);
    out[i] = {static_cast<int>(i), s.t, s.residual, !v.cells[i].deep};
  }
  return out;
}

CellOrder OrderCells(const std::vector<CellSplitter>& splitters) {
  std::vector<int> idx(splitters.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::sort(idx.begin(), idx.end(), [&](int a, int b) {
    if (splitters[a].t != splitters[b].t) return splitters[a].t < splitters[b].t;
    return splitters[a].cell < splitters[b].cell;
  });
  CellOrder out;
  for (int i : idx) {
    out.cells.push_back(splitters[i].cell);
    out.t.push_back(splitters[i].t);
  }
  for (size_t k = 1; k < out.t.size(); ++k) {
    if (out.t[k] == out.t[k - 1]) {
      out.ties.push_back({out.cells[k - 1], out.cells[k]});
    }
  }
  return out;
}

bool IsGeneric(double t, const std::vector<double>& sorted_splitters,
               double tol) {
  const auto it =
      std::lower_bound(sorted_splitters.begin(), sorted_splitters.end(), t);
  if (it != sorted_splitters.end() && *it - t <= tol) return false;
  if (it != sorted_splitters.begin() && t - *(it - 1) <= tol) return false;
  return true;
}

}  // namespace h3w
