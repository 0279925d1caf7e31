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

#include "h3w/lift_index.h"

#include <algorithm>
#include <cmath>

#include "h3w/errors.h"

namespace h3w {

LiftIndex::LiftIndex(const ManifoldModel& m, double reach)
    : m_(&m),
      reach_(reach),
      limit_(m.circumradius() + reach + 1e-6),
      hash_(std::max(1e-3, 2.0 * reach)) {
  if (limit_ + m.circumradius() > m.search_radius()) {
    throw Error(ErrorKind::kSearchRadiusExhausted,
                "lift index reach exceeds the search radius");
  }
}

void LiftIndex::Insert(int label, const Vec4& p) {
  const Geometry& geo = m_->geometry();
  const GroupBall& ball = m_->group();
  const double a = geo.Distance(geo.Origin(), p);
  if (a + limit_ > ball.radius()) {
    throw Error(ErrorKind::kSearchRadiusExhausted,
                "indexed point lies too far from the domain");
  }
  for (int id = 0; id < ball.size(); ++id) {
    if (ball.displacement(id) > a + limit_) break;
    const Vec4 q = geo.Apply(ball.element(id), p);
    if (geo.Distance(geo.Origin(), q) > limit_) continue;
    hash_.Insert(q.tail<3>(), static_cast<int>(points_.size()));
    points_.push_back(q);
    labels_.push_back(label);
    elems_.push_back(id);
  }
}

template <typename Fn>
void LiftIndex::Scan(const Vec4& x, double r, Fn&& fn) const {
  const Geometry& geo = m_->geometry();
  if (geo.Distance(geo.Origin(), x) + r > limit_ + 1e-12) {
    throw Error(ErrorKind::kSearchRadiusExhausted,
                "lift query reaches beyond the indexed region");
  }
  const double reach = geo.SpatialReach(x, r);
  hash_.ForEachNear(x.tail<3>(), reach, [&](int k) {
    const double d = geo.Distance(x, points_[k]);
    if (d <= r) fn(k, d);
  });
}

std::vector<LiftIndex::Hit> LiftIndex::Within(const Vec4& x, double r) const {
  std::vector<Hit> out;
  Scan(x, r, [&](int k, double d) {
    out.push_back({labels_[k], elems_[k], points_[k], d});
  });
  std::sort(out.begin(), out.end(), [](const Hit& a, const Hit& b) {
    if (a.distance != b.distance) return a.distance < b.distance;
    if (a.label != b.label) return a.label < b.label;
    return a.elem < b.elem;
  });
  return out;
}

bool LiftIndex::AnyCloser(const Vec4& x, double r) const {
  bool found = false;
  Scan(x, r, [&](int, double d) { found |= d < r; });
  return found;
}

std::optional<LiftIndex::Hit> LiftIndex::Nearest(const Vec4& x,
                                                 double r) const {
  std::optional<Hit> best;
  Scan(x, r, [&](int k, double d) {
    if (!best || d < best->distance ||
        (d == best->distance &&
         std::tie(labels_[k], elems_[k]) < std::tie(best->label, best->elem))) {
      best = Hit{labels_[k], elems_[k], points_[k], d};
    }
  });
  return best;
}

}  // namespace h3w
