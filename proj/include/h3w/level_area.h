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
#include <vector>

#include "h3w/morse.h"

namespace h3w {

/// Field values on a geodesic tetrahedralization of the fundamental domain:
/// the domain is coned from the basepoint over fanned faces, and each cone
/// tetrahedron is cut into n^3 Kuhn simplices with edges at most about h.
class SampledField {
 public:
  SampledField(const MorseField& f, double h);

  double h() const { return h_; }
  double min() const { return min_; }
  double max() const { return max_; }
  int64_t num_simplices() const;
  /// Chart volume of the simplices; the domain volume in the flat case.
  double MeshVolume() const;

  /// Areas of the piecewise-linear level sets at each t (any order).
  std::vector<double> Areas(const std::vector<double>& ts) const;

 private:
  struct Block {
    std::array<Vec4, 4> corners;
    int n;
    std::vector<double> values;  // indexed (i, j, k), n >= i >= j >= k >= 0
  };
  template <typename Fn>
  void ForEachSimplex(const Block& b, Fn&& fn) const;

  const Geometry* geo_;
  double h_;
  double min_ = 0, max_ = 0;
  std::vector<Block> blocks_;
};

struct LevelSample {
  double t = 0;
  double area = 0;         // at mesh scale h
  double coarse_area = 0;  // at 2h
  double error = 0;        // |area - coarse_area|
  bool generic = true;
};

/// Level-set areas at scale h with the 2h comparison as error estimate.
/// Values closer than `tol` to a splitter are flagged non-generic.
std::vector<LevelSample> LevelAreas(const MorseField& f,
                                    const std::vector<double>& ts, double h,
                                    const std::vector<double>& splitters = {},
                                    double tol = 0);
LevelSample LevelArea(const MorseField& f, double t, double h);

struct MorseAreaOptions {
  double h = 0.05;
  int grid = 32;
  int refinements = 2;
};

struct MorseAreaEstimate {
  double area = 0;   // largest sampled level-set area
  double t = 0;      // where it occurs
  double error = 0;  // mesh error estimate at that t
  double min = 0, max = 0;
  std::vector<LevelSample> samples;  // ascending t
};

/// Maximum level-set area over a uniform grid on [min f, max f], refined
/// around the maximum.
MorseAreaEstimate EstimateMorseArea(const MorseField& f,
                                    const MorseAreaOptions& options = {});

}  // namespace h3w
