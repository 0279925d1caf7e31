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
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "h3w/level_area.h"
#include "h3w/sweep.h"

namespace h3w {

/// Margulis-compatible constants; epsilon = min(mu1, delta) / 4.
struct MvBlock {
  double mu = 0;
  double mu1 = 0;
  double mu2 = 0;
  double delta = 0;
};

struct FieldConfig {
  FieldSpec spec;
  int systole = -1;  // axis sweep along the k-th shortest closed geodesic
  int tube = -1;     // axis sweep along a declared tube core
};

/// Run configuration; see README for the JSON layout.
struct RunConfig {
  std::string manifold;                   // manifold file
  std::optional<Vec3> flat_torus;         // or a rectangular flat torus
  std::optional<Eigen::Matrix3d> flat_lattice;  // or a lattice (columns)
  std::optional<double> epsilon;          // desk mode
  std::optional<MvBlock> mv;              // MV mode
  FieldConfig field;
  std::vector<Vec3> centers;  // fixed sample set in chart coordinates
  uint64_t sample_seed = 1;
  SplitterOptions splitter;
  MorseAreaOptions area;
  double schedule_h = 0.1;  // mesh scale for level areas along the schedule
  std::string report = "report.json";
  std::string census = "census.csv";
  std::string surfaces;  // optional OBJ dump
};

RunConfig ParseRunConfig(const std::string& text,
                         const std::string& base_dir = ".");
RunConfig LoadRunConfig(const std::string& path);
ManifoldModel LoadModel(const RunConfig& cfg);
double RunEpsilon(const RunConfig& cfg);

/// 66 J^2 K.
double BoundConstant(const DerivedConstants& c);
/// 4 pi g; zero for spheres.
double GaussBonnetArea(int64_t g);

struct CheckRecord {
  std::string name;
  bool applicable = true;
  int64_t checked = 0;
  int64_t violations = 0;
  int64_t skipped = 0;  // hypothesis not met
  double min_slack = 0;  // smallest bound / value over checked cases
};

struct LevelRecord {
  int index = 0;
  double u = 0;
  int cells = 0;
  int faces_in_w = 0;
  SurfaceTopology topology;
  int deep_genus = 0;
  int thick_genus = 0;
  int thick_boundary = 0;
  int capped_genus = 0;
  int caps = 0;
  double depth = 0;
  double area = 0;
  int64_t handle_bound_next = 0;
};

struct WidthReport {
  std::string manifold;
  std::string geometry;
  std::string mode;
  double epsilon = 0;
  std::optional<MvBlock> mv;
  DerivedConstants constants;
  std::string field;
  double lipschitz = 0;
  int cells = 0, faces = 0, edges = 0, vertices = 0, deep = 0;
  int thin_cells = 0;
  int retries = 0;
  int max_deep_valence = 0;
  int max_centers_in_3eps = 0;
  int shallow = 0;
  int ties = 0;
  double max_residual = 0;
  std::vector<double> splitters;  // ascending
  std::vector<int> genus;         // along the schedule
  std::vector<int> capped_genus;
  std::vector<int> faces_in_w;
  int max_capped_genus = 0;
  int64_t max_handle_bound = 0;
  int64_t width_upper = 0;
  MorseAreaEstimate morse;
  double bound_constant = 0;
  double width_bound = 0;  // bound_constant * Morse area
  double gauss_bonnet_reference = 0;
  std::vector<CheckRecord> checks;
  bool pass = true;

  std::string ToJson() const;
  static WidthReport FromJson(const std::string& text);
};

struct RunResult {
  WidthReport report;
  std::vector<LevelRecord> levels;
  std::string census_csv;
  std::string surfaces_obj;
};

using Logger = std::function<void(const std::string&)>;

/// Full run. Errors carry the failing stage.
RunResult RunPipeline(const RunConfig& cfg, const Logger& log = {});
/// Writes report, census and the optional surface dump into `dir`.
void WriteOutputs(const RunConfig& cfg, const RunResult& r,
                  const std::string& dir);

std::string CensusCsv(const std::vector<LevelRecord>& levels);

/// Number of centers (with multiplicity of lifts) within 3 epsilon of each
/// center, maximized.
int MaxCentersIn3Eps(const ManifoldModel& m, const VoronoiComplex& v);

}  // namespace h3w
