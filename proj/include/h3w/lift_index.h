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

#include <optional>
#include <vector>

#include "h3w/point_hash.h"
#include "h3w/quotient.h"

namespace h3w {

/// Spatial index over the lifts of labelled points to the universal cover.
/// Every lift within `reach` of the domain is stored, so queries of radius
/// at most `reach` about points of the domain are exhaustive.
class LiftIndex {
 public:
  struct Hit {
    int label;
    int elem;
    Vec4 point;
    double distance;
  };

  LiftIndex(const ManifoldModel& m, double reach);

  void Insert(int label, const Vec4& p);
  /// All lifts within r of x, nearest first (ties by label, element).
  std::vector<Hit> Within(const Vec4& x, double r) const;
  /// True if some lift lies strictly closer than r to x.
  bool AnyCloser(const Vec4& x, double r) const;
  /// Nearest lift within r, if any.
  std::optional<Hit> Nearest(const Vec4& x, double r) const;
  double reach() const { return reach_; }
  int size() const { return static_cast<int>(points_.size()); }

 private:
  template <typename Fn>
  void Scan(const Vec4& x, double r, Fn&& fn) const;

  const ManifoldModel* m_;
  double reach_;
  double limit_;  // lifts are stored up to this distance from the origin
  PointHash hash_;
  std::vector<Vec4> points_;
  std::vector<int> labels_;
  std::vector<int> elems_;
};

}  // namespace h3w
