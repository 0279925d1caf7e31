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

#include "h3w/quotient.h"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <numeric>

#include "h3w/errors.h"
#include "h3w/point_hash.h"

namespace h3w {
namespace {

constexpr double kImageTol = 1e-6;

}  // namespace

int64_t GroupBall::Key(int i, int j, int k) const {
  constexpr int64_t kOff = 1 << 20;
  return ((i + kOff) << 42) | ((j + kOff) << 21) | (k + kOff);
}

void GroupBall::Index() {
  hash_.clear();
  for (int id = 0; id < size(); ++id) {
    const Vec3 s = images_[id].tail<3>() / bin_;
    hash_[Key(static_cast<int>(std::floor(s[0])),
              static_cast<int>(std::floor(s[1])),
              static_cast<int>(std::floor(s[2])))]
        .push_back(id);
  }
}

int GroupBall::FindImage(const Vec4& image) const {
  const Vec3 s = image.tail<3>() / bin_;
  const int i0 = static_cast<int>(std::floor(s[0]));
  const int j0 = static_cast<int>(std::floor(s[1]));
  const int k0 = static_cast<int>(std::floor(s[2]));
  const double tol = kImageTol * std::max(1.0, std::abs(image[0]));
  for (int i = i0 - 1; i <= i0 + 1; ++i) {
    for (int j = j0 - 1; j <= j0 + 1; ++j) {
      for (int k = k0 - 1; k <= k0 + 1; ++k) {
        auto it = hash_.find(Key(i, j, k));
        if (it == hash_.end()) continue;
        for (int id : it->second) {
          if ((images_[id] - image).cwiseAbs().maxCoeff() <= tol) return id;
        }
      }
    }
  }
  return -1;
}

int GroupBall::Find(const Mat4& m) const {
  return FindImage(geometry_->Apply(m, geometry_->Origin()));
}

int GroupBall::Compose(int a, int b) const {
  return Find(elements_[a] * elements_[b]);
}

GroupBall GroupBall::FromElements(std::shared_ptr<const Geometry> geometry,
                                  const std::vector<Mat4>& elements,
                                  double radius) {
  GroupBall ball;
  ball.geometry_ = std::move(geometry);
  ball.radius_ = radius;
  const Vec4 o = ball.geometry_->Origin();
  std::vector<std::pair<double, int>> order;
  std::vector<Vec4> images;
  for (int i = 0; i < static_cast<int>(elements.size()); ++i) {
    images.push_back(ball.geometry_->Apply(elements[i], o));
    const double d = ball.geometry_->Distance(o, images.back());
    if (d <= radius) order.emplace_back(d, i);
  }
  // Ties in displacement are broken by image coordinates so the ordering
  // does not depend on discovery order.
  std::sort(order.begin(), order.end(), [&](const auto& x, const auto& y) {
    if (x.first != y.first) return x.first < y.first;
    const Vec4& a = images[x.second];
    const Vec4& b = images[y.second];
    return std::lexicographical_compare(a.data(), a.data() + 4, b.data(),
                                        b.data() + 4);
  });
  for (const auto& [d, i] : order) {
    ball.elements_.push_back(elements[i]);
    ball.images_.push_back(images[i]);
    ball.displacement_.push_back(d);
  }
  if (ball.elements_.empty() || ball.displacement_[0] > kTauGeom) {
    throw Error(ErrorKind::kPrecondition, "group ball lacks the identity");
  }
  ball.displacement_[0] = 0;
  ball.Index();
  ball.inverse_.resize(ball.size());
  for (int id = 0; id < ball.size(); ++id) {
    ball.inverse_[id] = ball.Find(ball.geometry_->Invert(ball.elements_[id]));
    if (ball.inverse_[id] < 0) {
      throw Error(ErrorKind::kPrecondition,
                  "group ball is not closed under inverses");
    }
  }
  return ball;
}

GroupBall GroupBall::Generate(std::shared_ptr<const Geometry> geometry,
                              const std::vector<Mat4>& generators,
                              double radius) {
  GroupBall seen;
  seen.geometry_ = geometry;
  const Vec4 o = geometry->Origin();
  std::vector<Mat4> found = {Mat4::Identity()};
  seen.images_.push_back(o);
  seen.elements_.push_back(Mat4::Identity());
  seen.Index();
  std::deque<int> queue = {0};
  while (!queue.empty()) {
    const int cur = queue.front();
    queue.pop_front();
    for (const Mat4& s : generators) {
      const Mat4 m = found[cur] * s;
      const Vec4 img = geometry->Apply(m, o);
      if (geometry->Distance(o, img) > radius) continue;
      if (seen.FindImage(img) >= 0) continue;
      found.push_back(m);
      const int id = static_cast<int>(found.size()) - 1;
      seen.images_.push_back(img);
      const Vec3 k = img.tail<3>() / seen.bin_;
      seen.hash_[seen.Key(static_cast<int>(std::floor(k[0])),
                          static_cast<int>(std::floor(k[1])),
                          static_cast<int>(std::floor(k[2])))]
          .push_back(id);
      queue.push_back(id);
    }
  }
  return FromElements(std::move(geometry), found, radius);
}

bool GroupBall::ValidateClosure(const std::vector<Mat4>& generators,
                                std::string* why) const {
  const Vec4 o = geometry_->Origin();
  for (int id = 0; id < size(); ++id) {
    if (inverse_[id] < 0) {
      if (why) *why = "missing inverse";
      return false;
    }
    for (const Mat4& s : generators) {
      for (const Mat4& m : {Mat4(elements_[id] * s), Mat4(s * elements_[id])}) {
        const Vec4 img = geometry_->Apply(m, o);
        if (geometry_->Distance(o, img) <= radius_ - 1e-7 &&
            FindImage(img) < 0) {
          if (why) *why = "product with a generator missing from the ball";
          return false;
        }
      }
    }
  }
  return true;
}

ManifoldModel ManifoldModel::FromData(const ManifoldData& data) {
  ManifoldModel m;
  m.data_ = data;
  m.name_ = data.name;
  m.geometry_ = data.hyperbolic ? HyperbolicGeometry() : EuclideanGeometry();
  const Geometry& geo = *m.geometry_;
  if (data.halfspaces.empty()) {
    throw Error(ErrorKind::kPrecondition, "manifold has no domain faces");
  }

  double box = 1.0;
  if (!data.hyperbolic) {
    for (const Vec4& v : data.vertices) {
      box = std::max(box, 2.0 * geo.ToChart(v).cwiseAbs().maxCoeff() + 1.0);
    }
    box = std::max(box, 1e3);
  }
  std::vector<Vec3> normals;
  std::vector<double> offsets;
  std::vector<int> tags;
  for (int f = 0; f < static_cast<int>(data.halfspaces.size()); ++f) {
    Vec3 a;
    double c;
    geo.ChartHalfspace(data.halfspaces[f], &a, &c);
    const double s = a.norm();
    m.face_normals_.push_back(a / s);
    m.face_offsets_.push_back(c / s);
    normals.push_back(a / s);
    offsets.push_back(c / s);
    tags.push_back(f);
  }
  m.domain_ = ChartPolytope::FromHalfspaces(
      Vec3(1.0625 * box, 1.125 * box, 1.1875 * box), normals, offsets, tags,
      kTauGeom);
  if (m.domain_.empty()) {
    throw Error(ErrorKind::kEmptyIntersection, "domain is empty");
  }
  if (static_cast<int>(m.domain_.faces().size()) <
      static_cast<int>(data.halfspaces.size())) {
    bool all_box = true;
    for (const auto& face : m.domain_.faces()) all_box &= face.tag < 0;
    throw Error(all_box ? ErrorKind::kEmptyIntersection
                        : ErrorKind::kPrecondition,
                "redundant domain face");
  }
  if (m.domain_.HasNegativeTag() ||
      (data.hyperbolic && m.domain_.MaxRadius() >= 1.0 - 1e-12)) {
    throw Error(ErrorKind::kUnboundedIntersection, "domain is unbounded");
  }

  const Vec4 o = geo.Origin();
  for (const Vec3& k : m.domain_.vertices()) {
    m.circumradius_ =
        std::max(m.circumradius_, geo.Distance(o, geo.FromChart(k)));
  }
  m.inradius_ = std::numeric_limits<double>::infinity();
  for (size_t f = 0; f < m.face_normals_.size(); ++f) {
    const Vec3 foot = m.face_normals_[f] * m.face_offsets_[f];
    m.inradius_ = std::min(m.inradius_, geo.Distance(o, geo.FromChart(foot)));
  }

  // Pairings and the face elements of the Dirichlet domain.
  std::vector<Mat4> gens;
  for (const FacePairing& p : data.pairings) {
    if (p.source_face < 0 || p.target_face < 0 ||
        p.source_face >= static_cast<int>(data.halfspaces.size()) ||
        p.target_face >= static_cast<int>(data.halfspaces.size())) {
      throw Error(ErrorKind::kPrecondition, "pairing face out of range");
    }
    if (data.hyperbolic) Isometry::FromMatrix(p.matrix);
    gens.push_back(p.matrix);
    gens.push_back(geo.Invert(p.matrix));
    m.pairings_.push_back(p);
  }
  std::vector<Mat4> face_mats(data.halfspaces.size());
  std::vector<bool> have(data.halfspaces.size(), false);
  for (const Mat4& g : gens) {
    Vec3 a;
    double c;
    geo.OriginBisector(geo.Apply(g, o), &a, &c);
    const double s = a.norm();
    for (size_t f = 0; f < face_mats.size(); ++f) {
      if ((a / s - m.face_normals_[f]).norm() < 1e-7 &&
          std::abs(c / s - m.face_offsets_[f]) < 1e-7) {
        face_mats[f] = g;
        have[f] = true;
      }
    }
  }
  for (size_t f = 0; f < have.size(); ++f) {
    if (!have[f]) {
      throw Error(ErrorKind::kPrecondition,
                  "domain is not a Dirichlet domain about the basepoint");
    }
  }
  // Each pairing must carry the source face onto the target face.
  const auto vf = m.domain_.VertexFaces();
  for (const FacePairing& p : m.pairings_) {
    for (size_t v = 0; v < vf.size(); ++v) {
      bool on_source = false;
      for (int f : vf[v]) {
        on_source |= m.domain_.faces()[f].tag == p.source_face;
      }
      if (!on_source) continue;
      const Vec3 k = geo.ToChart(
          geo.Apply(p.matrix, geo.FromChart(m.domain_.vertices()[v])));
      const double off =
          m.face_normals_[p.target_face].dot(k) - m.face_offsets_[p.target_face];
      if (std::abs(off) > 1e-7 || !m.domain_.Contains(k, 1e-7)) {
        throw Error(ErrorKind::kPrecondition,
                    "pairing does not map its source face onto its target");
      }
    }
  }

  const double radius = data.search_radius > 0 ? data.search_radius
                                               : 3.0 * m.circumradius_ + 1.0;
  if (!data.group_ball.empty()) {
    m.group_ = GroupBall::FromElements(m.geometry_, data.group_ball, radius);
  } else {
    m.group_ = GroupBall::Generate(m.geometry_, face_mats, radius);
  }
  for (const Mat4& g : face_mats) {
    const int id = m.group_.Find(g);
    if (id < 0) {
      throw Error(ErrorKind::kPrecondition,
                  "search radius does not reach the face elements");
    }
    m.face_elements_.push_back(id);
  }
  m.volume_ = data.volume;
  for (const TubeSpec& t : data.tubes) m.tubes_.push_back(m.MakeTube(t));
  return m;
}

ManifoldModel ManifoldModel::FlatTorus(const Vec3& sides,
                                       double search_radius) {
  ManifoldData d;
  d.name = "flat-torus";
  d.hyperbolic = false;
  for (int axis = 0; axis < 3; ++axis) {
    for (int sgn : {1, -1}) {
      Vec4 n = Vec4::Zero();
      n[0] = -0.5 * sides[axis];
      n[axis + 1] = sgn;
      d.halfspaces.push_back(n);
    }
    Mat4 t = Mat4::Identity();
    t(axis + 1, 0) = sides[axis];
    d.pairings.push_back({2 * axis + 1, 2 * axis, t});
  }
  for (int i = 0; i < 8; ++i) {
    Vec4 v;
    v << 1.0, (i & 1 ? 0.5 : -0.5) * sides[0], (i & 2 ? 0.5 : -0.5) * sides[1],
        (i & 4 ? 0.5 : -0.5) * sides[2];
    d.vertices.push_back(v);
  }
  d.volume = sides.prod();
  d.search_radius = search_radius;
  return FromData(d);
}

ManifoldModel ManifoldModel::FlatLattice(const Eigen::Matrix3d& basis,
                                        double search_radius) {
  const double volume = std::abs(basis.determinant());
  if (!(volume > kTauGeom)) {
    throw Error(ErrorKind::kPrecondition, "lattice basis is degenerate");
  }
  // Short lattice vectors, each paired with its negative; the Dirichlet
  // faces are those whose bisector survives clipping by all the others.
  std::vector<Vec3> cand;
  for (int i = -2; i <= 2; ++i) {
    for (int j = -2; j <= 2; ++j) {
      for (int k = -2; k <= 2; ++k) {
        const Vec3 v = basis * Vec3(i, j, k);
        if (i < 0 || (i == 0 && (j < 0 || (j == 0 && k <= 0)))) continue;
        cand.push_back(v);
      }
    }
  }
  std::stable_sort(cand.begin(), cand.end(), [](const Vec3& a, const Vec3& b) {
    return a.squaredNorm() < b.squaredNorm();
  });
  const double box = 2.0 * basis.cwiseAbs().rowwise().sum().maxCoeff() + 1.0;
  std::vector<Vec3> normals;
  std::vector<double> offsets;
  std::vector<int> tags;
  for (size_t i = 0; i < cand.size(); ++i) {
    for (int sgn : {1, -1}) {
      normals.push_back(sgn * cand[i]);
      offsets.push_back(0.5 * cand[i].squaredNorm());
      tags.push_back(static_cast<int>(i));
    }
  }
  const ChartPolytope poly = ChartPolytope::FromHalfspaces(
      Vec3::Constant(box), normals, offsets, tags, 1e-12 * box);
  std::vector<char> is_face(cand.size(), 0);
  for (const auto& face : poly.faces()) {
    if (face.tag < 0) {
      throw Error(ErrorKind::kDegeneracy, "lattice domain is unbounded");
    }
    is_face[face.tag] = 1;
  }
  std::vector<Vec3> kept;
  for (size_t i = 0; i < cand.size(); ++i) {
    if (is_face[i]) kept.push_back(cand[i]);
  }
  ManifoldData d;
  d.name = "flat-lattice";
  d.hyperbolic = false;
  for (const Vec3& v : kept) {
    for (int sgn : {1, -1}) {
      Vec4 n;
      n << -0.5 * v.squaredNorm(), sgn * v;
      d.halfspaces.push_back(n);
    }
    Mat4 t = Mat4::Identity();
    t.block<3, 1>(1, 0) = v;
    const int f = static_cast<int>(d.halfspaces.size());
    d.pairings.push_back({f - 1, f - 2, t});
  }
  for (const Vec3& x : poly.vertices()) {
    Vec4 p;
    p << 1.0, x;
    d.vertices.push_back(p);
  }
  d.volume = volume;
  d.search_radius = search_radius;
  return FromData(d);
}

bool ManifoldModel::InDomain(const Vec4& p, double tol) const {
  return domain_.Contains(geometry_->ToChart(p), tol);
}

Vec4 ManifoldModel::ReduceToDomain(const Vec4& p, Mat4* g) const {
  Vec4 x = p;
  Mat4 acc = Mat4::Identity();
  for (int iter = 0; iter < 10000; ++iter) {
    const Vec3 k = geometry_->ToChart(x);
    int worst = -1;
    double excess = 0;
    for (int f = 0; f < num_faces(); ++f) {
      const double e = face_normals_[f].dot(k) - face_offsets_[f];
      if (e > excess) {
        excess = e;
        worst = f;
      }
    }
    if (worst < 0) {
      if (g) *g = acc;
      return x;
    }
    const Mat4& inv = group_.element(group_.inverse(face_elements_[worst]));
    x = geometry_->Apply(inv, x);
    acc = inv * acc;
  }
  throw Error(ErrorKind::kDomain, "point reduction did not terminate");
}

ManifoldModel::Lift ManifoldModel::NearestLift(const Vec4& p,
                                               const Vec4& q) const {
  const Geometry& geo = *geometry_;
  const Vec4 o = geo.Origin();
  const double a = geo.Distance(o, p), b = geo.Distance(o, q);
  Lift best{std::numeric_limits<double>::infinity(), -1};
  for (int id = 0; id < group_.size(); ++id) {
    if (group_.displacement(id) - a - b > best.distance) return best;
    const double d = geo.Distance(p, geo.Apply(group_.element(id), q));
    if (d < best.distance) best = {d, id};
  }
  if (group_.radius() - a - b < best.distance) {
    throw Error(ErrorKind::kSearchRadiusExhausted,
                "quotient distance not certified within the search radius");
  }
  return best;
}

double ManifoldModel::QuotientDistance(const Vec4& p, const Vec4& q) const {
  return NearestLift(p, q).distance;
}

std::vector<ManifoldModel::Lift> ManifoldModel::LiftsWithin(
    const Vec4& p, const Vec4& q, double r) const {
  const Geometry& geo = *geometry_;
  const Vec4 o = geo.Origin();
  const double a = geo.Distance(o, p), b = geo.Distance(o, q);
  if (a + b + r > group_.radius()) {
    throw Error(ErrorKind::kSearchRadiusExhausted,
                "lift query exceeds the search radius");
  }
  std::vector<Lift> out;
  for (int id = 0; id < group_.size(); ++id) {
    if (group_.displacement(id) > a + b + r) break;
    const double d = geo.Distance(p, geo.Apply(group_.element(id), q));
    if (d <= r) out.push_back({d, id});
  }
  std::sort(out.begin(), out.end(), [](const Lift& x, const Lift& y) {
    return x.distance < y.distance || (x.distance == y.distance && x.elem < y.elem);
  });
  return out;
}

double ManifoldModel::InjectivityRadius(const Vec4& p) const {
  const Geometry& geo = *geometry_;
  const double a = geo.Distance(geo.Origin(), p);
  double best = std::numeric_limits<double>::infinity();
  for (int id = 1; id < group_.size(); ++id) {
    if (group_.displacement(id) - 2 * a > best) return 0.5 * best;
    best = std::min(best, geo.Distance(p, geo.Apply(group_.element(id), p)));
  }
  if (group_.radius() - 2 * a < best) {
    throw Error(ErrorKind::kSearchRadiusExhausted,
                "injectivity radius not certified within the search radius");
  }
  return 0.5 * best;
}

Tube ManifoldModel::MakeTube(const TubeSpec& spec) const {
  const Geometry& geo = *geometry_;
  const Vec4 o = geo.Origin();
  Tube t;
  t.spec = spec;
  if (!(spec.radius > 0)) {
    throw Error(ErrorKind::kPrecondition, "tube radius must be positive");
  }
  const Vec4 a = geo.Normalize(spec.core_a), b = geo.Normalize(spec.core_b);

  const Vec4 foot = geo.LineFoot(a, b);
  Vec3 dir;
  if (geo.hyperbolic()) {
    const Mat4 back = geo.Invert(geo.CarryOriginTo(foot));
    const Vec4 pa = geo.Apply(back, a), pb = geo.Apply(back, b);
    dir = pb.tail<3>().norm() > pa.tail<3>().norm()
              ? Vec3(pb.tail<3>().normalized())
              : Vec3(-pa.tail<3>().normalized());
  } else {
    dir = (b.tail<3>() - a.tail<3>()).normalized();
  }
  auto frame_for = [&](const Vec3& u) {
    Mat4 rot = Mat4::Identity();
    rot.block<3, 3>(1, 1) =
        Eigen::Quaterniond::FromTwoVectors(Vec3::UnitX(), u).toRotationMatrix();
    return Mat4(geo.CarryOriginTo(foot) * rot);
  };
  t.frame = frame_for(dir);
  Mat4 local = geo.Invert(t.frame) * spec.generator * t.frame;
  if (local(1, 0) < 0) {
    t.frame = frame_for(-dir);
    local = geo.Invert(t.frame) * spec.generator * t.frame;
  }
  t.length = geo.hyperbolic() ? std::asinh(local(1, 0)) : local(1, 0);
  t.twist = std::atan2(local(3, 2), local(2, 2));
  Mat4 expect = Mat4::Identity();
  expect.block<3, 3>(1, 1) =
      Eigen::AngleAxisd(t.twist, Vec3::UnitX()).toRotationMatrix();
  if (geo.hyperbolic()) {
    expect = Isometry::Translation(Vec3::UnitX(), t.length).matrix() * expect;
  } else {
    expect(1, 0) = t.length;
  }
  if (!(t.length > kTauGeom) ||
      (local - expect).cwiseAbs().maxCoeff() >
          1e-7 * std::max(1.0, local.cwiseAbs().maxCoeff())) {
    throw Error(ErrorKind::kPrecondition,
                "tube generator does not translate along its core");
  }

  // All distinct lifts of the core that the group ball certifies, nearest
  // first. Lines closer than `complete` to the origin are all present.
  const double complete =
      group_.radius() - geo.Distance(o, foot) - 0.5 * t.length;
  std::vector<std::pair<double, std::pair<Vec4, Vec4>>> lines;
  std::vector<Vec4> feet;
  PointHash foot_hash(1e-3);
  const Vec4 a0 = t.frame * geo.Origin();
  const Vec4 b0 = geo.Apply(t.frame, geo.Polar(Vec3::UnitX(), 1.0));
  for (int id = 0; id < group_.size(); ++id) {
    const Mat4& g = group_.element(id);
    const Vec4 ga = geo.Apply(g, a0), gb = geo.Apply(g, b0);
    const double d = geo.DistanceToLine(o, ga, gb);
    if (d > complete) continue;
    const Vec4 f = geo.LineFoot(ga, gb);
    bool dup = false;
    foot_hash.ForEachNear(f.tail<3>(), 1e-4, [&](int j) {
      dup |= (feet[j] - f).cwiseAbs().maxCoeff() < 1e-5 * f[0];
    });
    if (dup) continue;
    foot_hash.Insert(f.tail<3>(), static_cast<int>(feet.size()));
    feet.push_back(f);
    lines.push_back({d, {ga, gb}});
  }
  std::stable_sort(lines.begin(), lines.end(),
                   [](const auto& x, const auto& y) { return x.first < y.first; });
  for (const auto& [d, ab] : lines) {
    t.lift_distance.push_back(d);
    t.lifts.push_back(ab);
  }
  return t;
}

double ManifoldModel::DistanceToCore(const Vec4& p, int tube) const {
  return DistanceToCore(p, tubes_.at(tube));
}

double ManifoldModel::LiftCompleteness(const Tube& t) const {
  const Geometry& geo = *geometry_;
  return group_.radius() -
         geo.Distance(geo.Origin(), t.frame * geo.Origin()) - 0.5 * t.length;
}

double ManifoldModel::DistanceToCore(const Vec4& p, const Tube& t) const {
  const Geometry& geo = *geometry_;
  const double a = geo.Distance(geo.Origin(), p);
  double best = std::numeric_limits<double>::infinity();
  for (size_t i = 0; i < t.lifts.size(); ++i) {
    if (t.lift_distance[i] - a > best) break;
    best = std::min(best, geo.DistanceToLine(p, t.lifts[i].first,
                                             t.lifts[i].second));
  }
  if (a + best > LiftCompleteness(t)) {
    throw Error(ErrorKind::kSearchRadiusExhausted,
                "tube core distance not certified within the search radius");
  }
  return best;
}

int ManifoldModel::TubeContaining(const Vec4& p) const {
  for (int i = 0; i < static_cast<int>(tubes_.size()); ++i) {
    if (DistanceToCore(p, i) < tubes_[i].spec.radius) return i;
  }
  return -1;
}

ThickThin ManifoldModel::Classify(const Vec4& p, double mu) const {
  if (!(mu > 0)) throw Error(ErrorKind::kPrecondition, "mu must be positive");
  if (InjectivityRadius(p) >= mu) return {Thickness::kThick, -1};
  const int tube = TubeContaining(p);
  if (tube < 0) {
    throw Error(ErrorKind::kInconsistentThinPart,
                "thin point outside every declared tube");
  }
  return {Thickness::kThin, tube};
}

Vec4 ManifoldModel::TubePoint(int tube, double s, double phi) const {
  const Tube& t = tubes_.at(tube);
  const double r = t.spec.radius;
  Vec4 x;
  if (hyperbolic()) {
    x << std::cosh(s) * std::cosh(r), std::sinh(s) * std::cosh(r),
        std::sinh(r) * std::cos(phi), std::sinh(r) * std::sin(phi);
  } else {
    x << 1.0, s, r * std::cos(phi), r * std::sin(phi);
  }
  return geometry_->Apply(t.frame, x);
}

}  // namespace h3w
