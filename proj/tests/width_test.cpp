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
#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>

#include <nlohmann/json.hpp>

#include "doctest.h"
#include "h3w/errors.h"
#include "h3w/oracles.h"
#include "h3w/width.h"

#ifndef H3W_SOURCE_DIR
#define H3W_SOURCE_DIR "."
#endif

namespace h3w {
namespace {

const char* kMinimal = R"({
  "flat_torus": [1, 1, 1],
  "epsilon": 0.6,
  "centers": [[0, 0, 0], [0.5, 0.5, 0.5]],
  "field": {"kind": "axis_sweep",
            "axis": {"a": [0.1, 0.13, 0.07], "b": [1.1, 0.13, 0.07],
                     "translation": [1,0,0,0, 1,1,0,0, 0,0,1,0, 0,0,0,1]}},
  "splitter": {"samples": 20000}
})";

ErrorKind KindOf(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("no error raised");
  return ErrorKind::kPrecondition;
}

std::string ReadFile(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Structural comparison; numbers agree to a relative 1e-9.
bool SameJson(const nlohmann::json& a, const nlohmann::json& b, std::string* where,
              const std::string& path = "") {
  if (a.is_number() && b.is_number()) {
    const double x = a.get<double>(), y = b.get<double>();
    if (std::abs(x - y) <= 1e-9 * std::max({1.0, std::abs(x), std::abs(y)})) return true;
    *where = path;
    return false;
  }
  if (a.type() != b.type() || a.size() != b.size()) {
    *where = path;
    return false;
  }
  if (a.is_object()) {
    for (auto it = a.begin(); it != a.end(); ++it) {
      if (!b.contains(it.key()) ||
          !SameJson(it.value(), b[it.key()], where, path + "/" + it.key())) {
        if (where->empty()) *where = path + "/" + it.key();
        return false;
      }
    }
    return true;
  }
  if (a.is_array()) {
    for (size_t i = 0; i < a.size(); ++i) {
      if (!SameJson(a[i], b[i], where, path + "/" + std::to_string(i))) return false;
    }
    return true;
  }
  if (a != b) *where = path;
  return a == b;
}

TEST_CASE("config parsing") {
  const RunConfig cfg = ParseRunConfig(kMinimal);
  CHECK(cfg.flat_torus.has_value());
  CHECK(RunEpsilon(cfg) == 0.6);
  CHECK(cfg.centers.size() == 2);
  CHECK(cfg.field.spec.kind == FieldKind::kAxisSweep);
  CHECK(cfg.field.spec.generator(1, 0) == 1.0);
  CHECK(cfg.splitter.samples == 20000);

  auto with = [](const std::string& extra) {
    std::string s = kMinimal;
    s.insert(s.rfind('}'), extra);
    return s;
  };
  CHECK(KindOf([&] { ParseRunConfig(with(R"(, "colour": 1)")); }) == ErrorKind::kConfig);
  CHECK(KindOf([&] {
          ParseRunConfig(with(R"(, "mv": {"mu": 0.9, "mu1": 0.8, "mu2": 0.8, "delta": 0.8})"));
        }) == ErrorKind::kConfig);
  CHECK(KindOf([&] { ParseRunConfig(with(R"(, "manifold": "x.json")")); }) ==
        ErrorKind::kConfig);
  CHECK(KindOf([] { ParseRunConfig("{"); }) == ErrorKind::kConfig);
  CHECK(KindOf([] {
          ParseRunConfig(R"({"flat_torus": [1,1,1], "epsilon": 0.2,
                             "field": {"kind": "axis_sweep"}})");
        }) == ErrorKind::kConfig);
  CHECK(KindOf([] {
          ParseRunConfig(R"({"flat_torus": [1,1,1], "epsilon": -1,
                             "field": {"kind": "distance_to_point", "points": [[0,0,0]]}})");
        }) == ErrorKind::kConfig);
  CHECK(KindOf([] {
          ParseRunConfig(R"({"flat_torus": [1,1,1], "epsilon": 0.2,
                             "field": {"kind": "distance_to_point", "points": [[0,0,0]]},
                             "splitter": {"samples": 1001}})");
        }) == ErrorKind::kConfig);

  const RunConfig mv = ParseRunConfig(R"({
    "manifold": "m.json",
    "mv": {"mu": 0.885, "mu1": 0.8, "mu2": 0.8, "delta": 0.6},
    "field": {"kind": "axis_sweep", "tube": 0}})",
                                      "/data/dir");
  CHECK(RunEpsilon(mv) == doctest::Approx(0.15));
  CHECK(mv.field.tube == 0);
  CHECK(mv.manifold == "/data/dir/m.json");
}

TEST_CASE("bound constant") {
  DerivedConstants c;
  c.j = 2;
  c.l = 10;
  c.a = 0.5;
  c.k = c.l / c.a;
  CHECK(BoundConstant(c) == doctest::Approx(5280));
  DerivedConstants more_l = c;
  more_l.l = 11;
  more_l.k = more_l.l / more_l.a;
  CHECK(BoundConstant(more_l) > BoundConstant(c));
  DerivedConstants more_a = c;
  more_a.a = 0.6;
  more_a.k = more_a.l / more_a.a;
  CHECK(BoundConstant(more_a) < BoundConstant(c));
  const DerivedConstants d = DeriveConstants(0.2);
  const double j = static_cast<double>(d.j);
  const double a = 2 * std::numbers::pi * (std::cosh(0.1) - 1);
  CHECK(BoundConstant(d) == doctest::Approx(66 * j * j * d.l / a).epsilon(1e-12));
}

TEST_CASE("gauss-bonnet reference") {
  CHECK(GaussBonnetArea(1) == doctest::Approx(4 * std::numbers::pi));
  CHECK(GaussBonnetArea(2) == doctest::Approx(8 * std::numbers::pi));
  CHECK(GaussBonnetArea(0) == 0);
  CHECK(GaussBonnetArea(2) + GaussBonnetArea(3) == doctest::Approx(GaussBonnetArea(5)));
  CHECK_THROWS_AS(GaussBonnetArea(-1), Error);
}

TEST_CASE("flat run: report round trip and determinism") {
  const RunConfig cfg = ParseRunConfig(kMinimal);
  const RunResult a = RunPipeline(cfg);
  const RunResult b = RunPipeline(cfg);
  const std::string ja = a.report.ToJson();
  CHECK(ja == b.report.ToJson());
  CHECK(a.census_csv == b.census_csv);
  CHECK(WidthReport::FromJson(ja).ToJson() == ja);
  CHECK(a.report.genus == std::vector<int>{0, 3, 0});
  CHECK(a.report.pass);
  CHECK(a.report.geometry == "euclidean");
  for (const CheckRecord& c : a.report.checks) {
    if (c.name == "width_bound" || c.name == "face_bound") CHECK_FALSE(c.applicable);
  }
  CHECK(a.census_csv.rfind("index,u,cells,faces_deep,V,E,F,chi,components,genus,", 0) == 0);
}

TEST_CASE("epsilon above the diameter gives one cell") {
  RunConfig cfg = ParseRunConfig(kMinimal);
  cfg.flat_torus.reset();
  Eigen::Matrix3d basis;
  basis << -0.5, 0.5, 0.5, 0.5, -0.5, 0.5, 0.5, 0.5, -0.5;
  cfg.flat_lattice = basis;
  cfg.centers.clear();
  const RunResult r = RunPipeline(cfg);
  CHECK(r.report.cells == 1);
  CHECK(r.report.genus == std::vector<int>{0, 0});
  CHECK(r.report.max_capped_genus == 0);
  CHECK(r.report.width_upper == 2 * DeriveConstants(0.6).j);
}

TEST_CASE("errors name the failing stage") {
  RunConfig cfg = ParseRunConfig(R"({"manifold": "/nonexistent/m.json", "epsilon": 0.2,
      "field": {"kind": "distance_to_point", "points": [[0,0,0]]}})");
  try {
    RunPipeline(cfg);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.stage() == "manifold");
    CHECK(ExitCodeFor(e.kind()) == kExitConfig);
  }
}

TEST_CASE("flat slab report matches the frozen golden file") {
  const std::vector<FlatCase> cases = FlatCases();
  const auto it = std::find_if(cases.begin(), cases.end(),
                               [](const FlatCase& c) { return c.name == "slab-4"; });
  REQUIRE(it != cases.end());
  const std::string got = RunPipeline(it->config).report.ToJson();
  const std::string path = std::string(H3W_SOURCE_DIR) + "/tests/golden/slab4_report.json";
  if (std::getenv("H3W_REGOLD")) std::ofstream(path) << got;
  const std::string want = ReadFile(path);
  REQUIRE_FALSE(want.empty());
  std::string where;
  CHECK_MESSAGE(SameJson(nlohmann::json::parse(want), nlohmann::json::parse(got), &where),
                where);
}

TEST_CASE("seifert-weber regression at epsilon 0.4") {
  const RunConfig cfg = ParseRunConfig(R"({
    "manifold": "data/seifert_weber.json",
    "epsilon": 0.4,
    "field": {"kind": "distance_to_point", "points": [[0, 0, 0]]},
    "splitter": {"samples": 20000},
    "area": {"schedule_h": 0.1}})",
                                       H3W_SOURCE_DIR);
  const WidthReport r = RunPipeline(cfg).report;
  CHECK(r.cells == 127);
  CHECK(r.faces == 1017);
  CHECK(r.vertices == 890);
  CHECK(r.deep == 0);
  CHECK(r.max_capped_genus == 7);
  CHECK(r.max_handle_bound == 46212);
  CHECK(r.width_upper == 46219);
  CHECK(r.morse.area == doctest::Approx(17.20265).epsilon(1e-5));
  CHECK(r.pass);
  CHECK(r.width_upper >= r.max_capped_genus);
  CHECK(static_cast<double>(r.width_upper) <= r.width_bound);
}

}  // namespace
}  // namespace h3w
