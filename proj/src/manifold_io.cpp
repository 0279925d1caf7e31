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

#include <fstream>

#include <nlohmann/json.hpp>

#include "h3w/errors.h"
#include "h3w/quotient.h"

namespace h3w {
namespace {

using nlohmann::json;

json VecJson(const Vec4& v) { return json::array({v[0], v[1], v[2], v[3]}); }

json MatJson(const Mat4& m) {
  json a = json::array();
  for (int r = 0; r < 4; ++r) {
    for (int c = 0; c < 4; ++c) a.push_back(m(r, c));
  }
  return a;
}

Vec4 ParseVec(const json& j) {
  if (!j.is_array() || j.size() != 4) {
    throw Error(ErrorKind::kConfig, "expected a 4-vector");
  }
  return Vec4(j[0].get<double>(), j[1].get<double>(), j[2].get<double>(),
              j[3].get<double>());
}

Mat4 ParseMat(const json& j) {
  if (!j.is_array() || j.size() != 16) {
    throw Error(ErrorKind::kConfig, "expected 16 matrix entries");
  }
  Mat4 m;
  for (int r = 0; r < 4; ++r) {
    for (int c = 0; c < 4; ++c) m(r, c) = j[4 * r + c].get<double>();
  }
  return m;
}

}  // namespace

ManifoldData LoadManifoldJson(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::kIo, "cannot open manifold file " + path);
  ManifoldData d;
  try {
    const json j = json::parse(in);
    const json& meta = j.at("meta");
    d.name = meta.at("name").get<std::string>();
    d.hyperbolic = meta.value("geometry", "hyperbolic") == "hyperbolic";
    d.volume = meta.value("volume", 0.0);
    d.search_radius = meta.value("search_radius", 0.0);
    for (const json& v : j.value("vertices", json::array())) {
      d.vertices.push_back(ParseVec(v));
    }
    for (const json& h : j.at("halfspaces")) d.halfspaces.push_back(ParseVec(h));
    for (const json& p : j.at("pairings")) {
      d.pairings.push_back({p.at("source_face").get<int>(),
                            p.at("target_face").get<int>(),
                            ParseMat(p.at("matrix"))});
    }
    for (const json& g : j.value("group_ball", json::array())) {
      d.group_ball.push_back(ParseMat(g));
    }
    for (const json& t : j.value("thin_tubes", json::array())) {
      d.tubes.push_back({ParseMat(t.at("generator")), ParseVec(t.at("core_a")),
                         ParseVec(t.at("core_b")), t.at("radius").get<double>()});
    }
  } catch (const json::exception& e) {
    throw Error(ErrorKind::kConfig,
                "malformed manifold file " + path + ": " + e.what());
  }
  return d;
}

void SaveManifoldJson(const ManifoldData& d, const std::string& path) {
  json j;
  j["meta"] = {{"name", d.name},
               {"geometry", d.hyperbolic ? "hyperbolic" : "euclidean"}};
  if (d.volume > 0) j["meta"]["volume"] = d.volume;
  if (d.search_radius > 0) j["meta"]["search_radius"] = d.search_radius;
  j["vertices"] = json::array();
  for (const Vec4& v : d.vertices) j["vertices"].push_back(VecJson(v));
  j["halfspaces"] = json::array();
  for (const Vec4& h : d.halfspaces) j["halfspaces"].push_back(VecJson(h));
  j["pairings"] = json::array();
  for (const FacePairing& p : d.pairings) {
    j["pairings"].push_back({{"source_face", p.source_face},
                             {"target_face", p.target_face},
                             {"matrix", MatJson(p.matrix)}});
  }
  if (!d.group_ball.empty()) {
    j["group_ball"] = json::array();
    for (const Mat4& g : d.group_ball) j["group_ball"].push_back(MatJson(g));
  }
  if (!d.tubes.empty()) {
    j["thin_tubes"] = json::array();
    for (const TubeSpec& t : d.tubes) {
      j["thin_tubes"].push_back({{"generator", MatJson(t.generator)},
                                 {"core_a", VecJson(t.core_a)},
                                 {"core_b", VecJson(t.core_b)},
                                 {"radius", t.radius}});
    }
  }
  std::ofstream out(path);
  if (!out) throw Error(ErrorKind::kIo, "cannot write manifold file " + path);
  out << j.dump(1) << "\n";
}

}  // namespace h3w
