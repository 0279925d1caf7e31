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
#include <utility>
#include <vector>

#include "h3w/quotient.h"
#include "h3w/voronoi.h"

namespace h3w {

enum class FieldKind { kDistanceToPoint, kRadialBumpSum, kAxisSweep };

const char* FieldKindName(FieldKind kind);
FieldKind ParseFieldKind(const std::string& name);

/// Parameters of a deck-invariant scalar field. Points are given in the
/// cover; the field only depends on their orbits.
struct FieldSpec {
  FieldKind kind = FieldKind::kDistanceToPoint;
  std::vector<Vec4> points;     // target point, or bump centers
  std::vector<double> weights;  // bump weights, one per point
  double profile_radius = 1.0;  // bump support radius
  // Axis sweep: distance to the closed geodesic through axis_a, axis_b
  // translated by `generator`.
  Mat4 generator = Mat4::Identity();
  Vec4 axis_a = Vec4(1, 0, 0, 0);
  Vec4 axis_b = Vec4(1, 0, 0, 0);
  double offset = 0;  // constant added to every value
};

/// Restriction of a field to a ball B(anchor, r) in the cover. Only the orbit
/// data that can influence values in the ball is kept.
class LocalField {
 public:
  double operator()(const Vec4& y) const;
  int num_terms() const;

 private:
  friend class MorseField;
  const Geometry* geo_ = nullptr;
  FieldKind kind_ = FieldKind::kDistanceToPoint;
  std::vector<Vec4> points_;
  std::vector<double> weights_;
  std::vector<std::pair<Vec4, Vec4>> lines_;
  double rho_ = 1;
  double offset_ = 0;
};

class MorseField {
 public:
  MorseField(const ManifoldModel& m, FieldSpec spec);

  const FieldSpec& spec() const { return spec_; }
  const ManifoldModel& manifold() const { return *m_; }
  /// Value at a point of the cover.
  double operator()(const Vec4& x) const;
  /// Field valid on B(anchor, r); queries outside the ball are undefined.
  LocalField Localize(const Vec4& anchor, double r) const;
  /// Lipschitz constant of the field.
  double Lipschitz() const { return lipschitz_; }
  /// The same field plus a constant.
  MorseField Shifted(double c) const;

 private:
  struct Orbit {
    std::vector<Vec4> lifts;  // nearest to the origin first
    std::vector<double> distance;
    double complete = 0;      // lifts closer than this are all present
  };

  const ManifoldModel* m_;
  FieldSpec spec_;
  std::vector<Orbit> orbits_;
  Tube axis_;
  double lipschitz_ = 1;
};

/// Inverse-CDF table for the radius of a volume-uniform point in B(o, r).
class RadialSampler {
 public:
  RadialSampler(const Geometry& geo, double r);
  double radius() const { return r_; }
  /// Radius at volume fraction u in [0, 1].
  double Radius(double u) const;

 private:
  double r_;
  std::vector<double> table_;
};

/// Field values at a fixed sample of B(x, r): n/2 antithetic pairs with
/// stratified radii, determined by (x, r, n, seed). Sorted ascending.
std::vector<double> BallFieldValues(const MorseField& f, const Vec4& x,
                                    const RadialSampler& radial, int n,
                                    uint64_t seed);

/// Monte Carlo volume of {f <= t} inside the embedded ball B(x, r).
double SublevelBallVolume(const MorseField& f, const Vec4& x, double r,
                          double t, int n, uint64_t seed);

struct SplitterOptions {
  int samples = 200000;
  double tau_split = 1e-4;
  uint64_t seed = 0;
};

struct CellSplitter {
  int cell = 0;
  double t = 0;
  double residual = 0;  // |est(t) - vol(B)/2|
  bool shallow = false;
};

/// Value t_i halving the volume of B(x_i, epsilon / 2) for the sublevel set.
CellSplitter ComputeSplitter(const MorseField& f, const VoronoiComplex& v,
                             int cell, const SplitterOptions& options = {});
std::vector<CellSplitter> ComputeSplitters(const MorseField& f,
                                           const VoronoiComplex& v,
                                           const SplitterOptions& options = {});

struct CellOrder {
  std::vector<int> cells;  // ascending splitter value
  std::vector<double> t;   // splitter value at each position
  /// Cells adjacent in the order whose splitters coincide; broken by id.
  std::vector<std::pair<int, int>> ties;
};

CellOrder OrderCells(const std::vector<CellSplitter>& splitters);

/// Generic iff t is farther than `tol` from every splitter value.
bool IsGeneric(double t, const std::vector<double>& sorted_splitters,
               double tol);

}  // namespace h3w
