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

#include <memory>
#include <string>
#include <unordered_map>
#include <vector>

#include "h3w/geometry.h"
#include "h3w/polytope.h"

namespace h3w {

/// All deck transformations g with d(o, g o) <= radius, sorted by that
/// displacement. Id 0 is the identity.
class GroupBall {
 public:
  GroupBall() = default;

  /// Breadth-first products of `generators` (closed under inverses by the
  /// caller) truncated at `radius`. Complete when the generators are the
  /// face elements of a Dirichlet domain about the basepoint.
  static GroupBall Generate(std::shared_ptr<const Geometry> geometry,
                            const std::vector<Mat4>& generators,
                            double radius);
  static GroupBall FromElements(std::shared_ptr<const Geometry> geometry,
                                const std::vector<Mat4>& elements,
                                double radius);

  int size() const { return static_cast<int>(elements_.size()); }
  double radius() const { return radius_; }
  const Mat4& element(int id) const { return elements_[id]; }
  const Vec4& image(int id) const { return images_[id]; }
  double displacement(int id) const { return displacement_[id]; }
  int inverse(int id) const { return inverse_[id]; }

  /// Id of the element equal to m, or -1.
  int Find(const Mat4& m) const;
  /// Id of element(a) * element(b), or -1 if outside the ball.
  int Compose(int a, int b) const;
  /// Checks closure under inverse and that products with generators that
  /// land inside the ball are present.
  bool ValidateClosure(const std::vector<Mat4>& generators,
                       std::string* why) const;

 private:
  void Index();
  int FindImage(const Vec4& image) const;
  int64_t Key(int i, int j, int k) const;

  std::shared_ptr<const Geometry> geometry_;
  double radius_ = 0;
  double bin_ = 0.05;
  std::vector<Mat4> elements_;
  std::vector<Vec4> images_;
  std::vector<double> displacement_;
  std::vector<int> inverse_;
  std::unordered_map<int64_t, std::vector<int>> hash_;
};

struct FacePairing {
  int source_face;
  int target_face;
  Mat4 matrix;  // maps the source face onto the target face
};

/// Declared Margulis tube: the set of points within `radius` of the closed
/// geodesic whose lift is the axis of `generator` through core_a, core_b.
struct TubeSpec {
  Mat4 generator;
  Vec4 core_a;
  Vec4 core_b;
  double radius;
};

/// Serialized manifold description.
struct ManifoldData {
  std::string name;
  bool hyperbolic = true;
  std::vector<Vec4> vertices;
  std::vector<Vec4> halfspaces;
  std::vector<FacePairing> pairings;
  std::vector<Mat4> group_ball;
  std::vector<TubeSpec> tubes;
  double volume = 0;         // 0 when unknown
  double search_radius = 0;  // 0 selects the default
};

ManifoldData LoadManifoldJson(const std::string& path);
void SaveManifoldJson(const ManifoldData& data, const std::string& path);

struct Tube {
  TubeSpec spec;
  double length = 0;  // translation length of the generator
  double twist = 0;   // rotation angle of the generator
  Mat4 frame;         // carries the x-axis through the origin onto the core
  std::vector<std::pair<Vec4, Vec4>> lifts;  // axis lifts, nearest first
  std::vector<double> lift_distance;         // d(o, lift)
};

enum class Thickness { kThick, kThin };
struct ThickThin {
  Thickness kind;
  int tube;  // -1 when thick
};

/// Compact manifold presented by a Dirichlet fundamental domain about the
/// basepoint, its face pairings and a ball in the deck group.
class ManifoldModel {
 public:
  struct Lift {
    double distance;
    int elem;
  };

  static ManifoldModel FromData(const ManifoldData& data);
  /// Euclidean 3-torus with the given side lengths, centered cube domain.
  static ManifoldModel FlatTorus(const Vec3& sides, double search_radius = 0);
  /// Euclidean 3-torus R^3 / (lattice spanned by the columns of `basis`),
  /// presented by the Dirichlet domain of the lattice about the origin.
  static ManifoldModel FlatLattice(const Eigen::Matrix3d& basis,
                                   double search_radius = 0);

  const Geometry& geometry() const { return *geometry_; }
  std::shared_ptr<const Geometry> geometry_ptr() const { return geometry_; }
  bool hyperbolic() const { return geometry_->hyperbolic(); }
  const std::string& name() const { return name_; }
  const ChartPolytope& domain() const { return domain_; }
  int num_faces() const { return static_cast<int>(face_elements_.size()); }
  /// Element across face f: the face is the bisector of o and g o.
  int face_element(int f) const { return face_elements_[f]; }
  const std::vector<FacePairing>& pairings() const { return pairings_; }
  const GroupBall& group() const { return group_; }
  double search_radius() const { return group_.radius(); }
  double circumradius() const { return circumradius_; }
  double inradius() const { return inradius_; }
  /// Declared or computed volume of the manifold.
  double volume() const { return volume_; }
  const std::vector<Tube>& tubes() const { return tubes_; }
  const ManifoldData& data() const { return data_; }

  bool InDomain(const Vec4& p, double tol = kTauGeom) const;
  /// Image of p in the domain; *g (optional) receives the matrix applied.
  Vec4 ReduceToDomain(const Vec4& p, Mat4* g = nullptr) const;

  /// min over g of d(p, g q), with the minimizing element.
  Lift NearestLift(const Vec4& p, const Vec4& q) const;
  double QuotientDistance(const Vec4& p, const Vec4& q) const;
  /// All elements g with d(p, g q) <= r, nearest first.
  std::vector<Lift> LiftsWithin(const Vec4& p, const Vec4& q, double r) const;
  double InjectivityRadius(const Vec4& p) const;
  /// Quotient distance from p to the core geodesic of a tube.
  double DistanceToCore(const Vec4& p, int tube) const;
  /// Tube data (length, twist, certified axis lifts) for a closed geodesic
  /// that need not be declared in the manifold file.
  Tube MakeTube(const TubeSpec& spec) const;
  /// Quotient distance from p to the core of `t`.
  double DistanceToCore(const Vec4& p, const Tube& t) const;
  /// Axis lifts closer than this to the origin are all present in `t`.
  double LiftCompleteness(const Tube& t) const;
  /// Tube whose open neighborhood contains p, or -1.
  int TubeContaining(const Vec4& p) const;
  /// Thick iff InjectivityRadius(p) >= mu; thin points report their tube.
  ThickThin Classify(const Vec4& p, double mu) const;

  /// Grid point of a tube boundary: arclength s along the core and angle
  /// phi; point(s + length, phi + twist) = generator . point(s, phi).
  Vec4 TubePoint(int tube, double s, double phi) const;

 private:
  void Finish();

  ManifoldData data_;
  std::shared_ptr<const Geometry> geometry_;
  std::string name_;
  ChartPolytope domain_;
  std::vector<Vec3> face_normals_;
  std::vector<double> face_offsets_;
  std::vector<int> face_elements_;
  std::vector<FacePairing> pairings_;
  GroupBall group_;
  double circumradius_ = 0;
  double inradius_ = 0;
  double volume_ = 0;
  std::vector<Tube> tubes_;
};

}  // namespace h3w
