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

#include <cmath>
#include <cstdint>
#include <unordered_map>
#include <vector>

#include "h3w/hkernel.h"

namespace h3w {

/// Uniform-grid hash of 3-vectors with box range queries.
class PointHash {
 public:
  explicit PointHash(double bin) : bin_(bin) {}

  void Insert(const Vec3& p, int id) { cells_[KeyOf(p)].push_back(id); }

  /// Calls fn(id) for every id stored in a bin meeting the cube of
  /// half-side `reach` about p.
  template <typename Fn>
  void ForEachNear(const Vec3& p, double reach, Fn&& fn) const {
    const Vec3 lo = (p.array() - reach) / bin_;
    const Vec3 hi = (p.array() + reach) / bin_;
    for (int64_t i = Floor(lo[0]); i <= Floor(hi[0]); ++i) {
      for (int64_t j = Floor(lo[1]); j <= Floor(hi[1]); ++j) {
        for (int64_t k = Floor(lo[2]); k <= Floor(hi[2]); ++k) {
          auto it = cells_.find(Pack(i, j, k));
          if (it == cells_.end()) continue;
          for (int id : it->second) fn(id);
        }
      }
    }
  }

  double bin() const { return bin_; }

 private:
  static int64_t Floor(double x) { return static_cast<int64_t>(std::floor(x)); }
  static int64_t Pack(int64_t i, int64_t j, int64_t k) {
    constexpr int64_t kOff = int64_t{1} << 20;
    return ((i + kOff) << 42) | ((j + kOff) << 21) | (k + kOff);
  }
  int64_t KeyOf(const Vec3& p) const {
    return Pack(Floor(p[0] / bin_), Floor(p[1] / bin_), Floor(p[2] / bin_));
  }

  double bin_;
  std::unordered_map<int64_t, std::vector<int>> cells_;
};

}  // namespace h3w
