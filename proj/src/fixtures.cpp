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

#include "h3w/fixtures.h"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <Eigen/Eigenvalues>

#include "h3w/errors.h"
#include "h3w/point_hash.h"

namespace h3w {

ManifoldData SeifertWeberData() {
  const double phi = 0.5 * (1.0 + std::sqrt(5.0));
  std::vector<Vec3> dirs;
  for (double s1 : {1.0, -1.0}) {
    for (double s2 : {1.0, -1.0}) {
      const Vec3 v(0.0, s1, s2 * phi);
      for (int k = 0; k < 3; ++k) {
        Vec3 w;
        for (int i = 0; i < 3; ++i) w[(i + k) % 3] = v[i];
        dirs.push_back(w.normalized());
      }
    }
  }
  // Inradius of the regular dodecahedron with dihedral angle 2 pi / 5.
  const double c72 = std::cos(2.0 * std::numbers::pi / 5.0);
  const double r = std::asinh(
      std::sqrt((c72 + 1.0 / std::sqrt(5.0)) / (1.0 - 1.0 / std::sqrt(5.0))));
  const double twist = 3.0 * std::numbers::pi / 5.0;

  ManifoldData d;
  d.name = "seifert-weber";
  d.hyperbolic = true;
  // Volume of the dodecahedron by quadrature of the radial profile.
  d.volume = 11.199064;
  for (const Vec3& u : dirs) {
    Vec4 n;
    n << std::sinh(r), std::cosh(r) * u;
    d.halfspaces.push_back(n);
  }
  for (int f = 0; f < static_cast<int>(dirs.size()); ++f) {
    int opp = -1;
    for (int g = 0; g < static_cast<int>(dirs.size()); ++g) {
      if ((dirs[g] + dirs[f]).norm() < 1e-12) opp = g;
    }
    if (opp < f) continue;
    const Isometry g = Isometry::Rotation(dirs[f], twist) *
                       Isometry::Translation(dirs[f], 2.0 * r);
    d.pairings.push_back({opp, f, g.matrix()});
  }
  // Vertices: Klein radius of the face-plane triple intersections.
  const double t = std::tanh(r);
  for (size_t i = 0; i < dirs.size(); ++i) {
    for (size_t j = i + 1; j < dirs.size(); ++j) {
      for (size_t k = j + 1; k < dirs.size(); ++k) {
        Eigen::Matrix3d a;
        a.row(0) = dirs[i];
        a.row(1) = dirs[j];
        a.row(2) = dirs[k];
        if (std::abs(a.determinant()) < 1e-9) continue;
        const Vec3 kv = a.inverse() * Vec3(t, t, t);
        bool inside = true;
        for (const Vec3& u : dirs) inside &= u.dot(kv) <= t + 1e-12;
        if (inside && kv.norm() < 1.0) {
          d.vertices.push_back(HPoint::FromKlein(kv).coords());
        }
      }
    }
  }
  return d;
}

void LoxodromicInvariants(const Mat4& g, double* length, double* twist) {
  const double tr = g.trace();
  const double tr2 = (g * g).trace();
  // With a = cosh l, b = cos theta: a + b = tr / 2, a^2 + b^2 = (tr2 + 4) / 4.
  const double s = 0.5 * tr;
  const double q = 0.25 * (tr2 + 4.0);
  const double disc = std::sqrt(std::max(0.0, 2.0 * q - s * s));
  const double a = 0.5 * (s + disc), b = 0.5 * (s - disc);
  *length = std::acosh(std::max(1.0, a));
  *twist = std::acos(std::clamp(b, -1.0, 1.0));
}

std::vector<ClosedGeodesic> ShortGeodesics(const ManifoldModel& m,
                                           double max_length) {
  if (!m.hyperbolic()) {
    throw Error(ErrorKind::kPrecondition, "short geodesics need H^3");
  }
  const Geometry& geo = m.geometry();
  const Vec4 o = geo.Origin();
  const GroupBall& ball = m.group();
  const double reach = 2.0 * m.circumradius() + max_length;

  struct Candidate {
    ClosedGeodesic geo;
    double foot_dist;
  };
  std::vector<Candidate> cands;
  PointHash hash(1e-3);
  for (int id = 1; id < ball.size() && ball.displacement(id) <= reach; ++id) {
    const Mat4& g = ball.element(id);
    double len, tw;
    LoxodromicInvariants(g, &len, &tw);
    if (len > max_length + 1e-9) continue;
    Eigen::EigenSolver<Mat4> es(g);
    int ip = -1, im = -1;
    for (int i = 0; i < 4; ++i) {
      const auto lam = es.eigenvalues()[i];
      if (std::abs(lam.imag()) > 1e-9 || lam.real() <= 0) continue;
      if (ip < 0 || lam.real() > es.eigenvalues()[ip].real()) ip = i;
      if (im < 0 || lam.real() < es.eigenvalues()[im].real()) im = i;
    }
    if (ip < 0 || ip == im) continue;
    Vec4 vp = es.eigenvectors().col(ip).real();
    Vec4 vm = es.eigenvectors().col(im).real();
    if (vp[0] < 0) vp = -vp;
    if (vm[0] < 0) vm = -vm;
    vp /= vp[0];
    vm /= vm[0];
    const Vec4 p0 = geo.Normalize(vp + vm);
    const Vec4 p1 = geo.Normalize(std::exp(1.0) * vp + std::exp(-1.0) * vm);
    const Vec4 foot = geo.LineFoot(p0, p1);
    const double fd = geo.Distance(o, foot);
    if (fd > m.circumradius() + 1e-9) continue;
    bool dup = false;
    hash.ForEachNear(foot.tail<3>(), 1e-4, [&](int j) {
      dup |= geo.Distance(cands[j].geo.core_a, foot) < 1e-6;
    });
    if (dup) continue;
    // Second axis point at unit distance from the foot.
    const double s = geo.Distance(foot, p1);
    const Vec4 far = s > 1e-6 ? p1 : p0;
    hash.Insert(foot.tail<3>(), static_cast<int>(cands.size()));
    cands.push_back({{g, len, tw, foot, far}, fd});
  }
  std::stable_sort(cands.begin(), cands.end(), [](const auto& x, const auto& y) {
    return x.geo.length < y.geo.length - 1e-9 ||
           (std::abs(x.geo.length - y.geo.length) <= 1e-9 &&
            x.foot_dist < y.foot_dist);
  });

  // Group lifts into deck orbits.
  std::vector<ClosedGeodesic> reps;
  std::vector<double> rep_dist;
  for (const Candidate& c : cands) {
    bool same = false;
    for (size_t r = 0; r < reps.size() && !same; ++r) {
      if (std::abs(reps[r].length - c.geo.length) > 1e-7) continue;
      const double bound = rep_dist[r] + c.foot_dist + 0.5 * c.geo.length + 1e-6;
      for (int id = 0; id < ball.size() && ball.displacement(id) <= bound; ++id) {
        const Vec4 ga = geo.Apply(ball.element(id), reps[r].core_a);
        const Vec4 gb = geo.Apply(ball.element(id), reps[r].core_b);
        if (geo.DistanceToLine(ga, c.geo.core_a, c.geo.core_b) < 1e-6 &&
            geo.DistanceToLine(gb, c.geo.core_a, c.geo.core_b) < 1e-6) {
          same = true;
          break;
        }
      }
    }
    if (!same) {
      reps.push_back(c.geo);
      rep_dist.push_back(c.foot_dist);
    }
  }
  return reps;
}

}  // namespace h3w
