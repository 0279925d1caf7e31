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
#include "h3w/width.h"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <numbers>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

#include "h3w/errors.h"
#include "h3w/fixtures.h"
#include "h3w/lift_index.h"

namespace h3w {
namespace {

using json = nlohmann::ordered_json;

void AllowKeys(const json& j, const std::set<std::string>& keys,
               const std::string& where) {
  if (!j.is_object()) throw Error(ErrorKind::kConfig, where + " must be an object");
  for (const auto& [k, v] : j.items()) {
    if (!keys.count(k)) {
      throw Error(ErrorKind::kConfig, "unknown key '" + k + "' in " + where);
    }
  }
}

Vec3 ParseVec3(const json& j, const std::string& what) {
  if (!j.is_array() || j.size() != 3) {
    throw Error(ErrorKind::kConfig, what + " must be a 3-vector");
  }
  return Vec3(j[0].get<double>(), j[1].get<double>(), j[2].get<double>());
}

double Positive(const json& j, const std::string& what) {
  const double x = j.get<double>();
  if (!(x > 0) || !std::isfinite(x)) {
    throw Error(ErrorKind::kConfig, what + " must be positive");
  }
  return x;
}

json CheckJson(const CheckRecord& c) {
  json j;
  j["name"] = c.name;
  j["applicable"] = c.applicable;
  j["checked"] = c.checked;
  j["violations"] = c.violations;
  j["skipped"] = c.skipped;
  j["min_slack"] = std::isfinite(c.min_slack) ? json(c.min_slack) : json(nullptr);
  return j;
}

class Stopwatch {
 public:
  explicit Stopwatch(const Logger& log) : log_(log) {}
  void Mark(const std::string& stage, const std::string& detail = {}) {
    const auto now = std::chrono::steady_clock::now();
    const double dt = std::chrono::duration<double>(now - last_).count();
    last_ = now;
    if (!log_) return;
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.2fs", dt);
    log_("[" + stage + "] " + buf + (detail.empty() ? "" : " " + detail));
  }

 private:
  const Logger& log_;
  std::chrono::steady_clock::time_point last_ = std::chrono::steady_clock::now();
};

template <typename Fn>
auto Stage(const std::string& name, Fn&& fn) -> decltype(fn()) {
  try {
    return fn();
  } catch (const Error& e) {
    if (!e.stage().empty()) throw;
    throw e.WithStage(name);
  }
}

struct Tally {
  CheckRecord rec;
  explicit Tally(std::string name, bool applicable = true) {
    rec.name = std::move(name);
    rec.applicable = applicable;
    rec.min_slack = std::numeric_limits<double>::infinity();
  }
  // value <= bound
  void Le(double value, double bound) {
    ++rec.checked;
    if (!(value <= bound)) ++rec.violations;
    if (value > 0) rec.min_slack = std::min(rec.min_slack, bound / value);
  }
  void Holds(bool ok) {
    ++rec.checked;
    if (!ok) ++rec.violations;
  }
};

std::string ObjDump(const ManifoldModel& m, const VoronoiComplex& v,
                    const std::vector<int>& faces) {
  const Geometry& geo = m.geometry();
  std::ostringstream out;
  out.precision(9);
  out << "# faces " << faces.size() << "\n";
  int next = 1;
  for (int f : faces) {
    const VoronoiFace& face = v.faces[f];
    const VoronoiCell& cell = v.cells[face.cells[0]];
    const auto& pf = cell.polytope.faces()[face.local[0]];
    std::vector<int> ids;
    for (int k : pf.vertices) {
      const Vec4 x =
          geo.Apply(cell.frame, geo.FromChart(cell.polytope.vertices()[k]));
      const Vec3 c = geo.ToChart(x);
      out << "v " << c[0] << " " << c[1] << " " << c[2] << "\n";
      ids.push_back(next++);
    }
    out << "f";
    for (int id : ids) out << " " << id;
    out << "\n";
  }
  return out.str();
}

}  // namespace

RunConfig ParseRunConfig(const std::string& text, const std::string& base_dir) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw Error(ErrorKind::kConfig, std::string("config is not valid JSON: ") + e.what());
  }
  RunConfig cfg;
  try {
    AllowKeys(j, {"manifold", "flat_torus", "flat_lattice", "epsilon", "mv",
                  "field", "centers", "seeds", "splitter", "area", "output"},
              "config");
    int sources = 0;
    if (j.contains("manifold")) {
      std::filesystem::path p = j["manifold"].get<std::string>();
      if (p.is_relative()) p = std::filesystem::path(base_dir) / p;
      cfg.manifold = p.lexically_normal().string();
      ++sources;
    }
    if (j.contains("flat_torus")) {
      cfg.flat_torus = ParseVec3(j["flat_torus"], "flat_torus");
      ++sources;
    }
    if (j.contains("flat_lattice")) {
      const json& b = j["flat_lattice"];
      if (!b.is_array() || b.size() != 3) {
        throw Error(ErrorKind::kConfig, "flat_lattice needs 3 vectors");
      }
      Eigen::Matrix3d basis;
      for (int c = 0; c < 3; ++c) basis.col(c) = ParseVec3(b[c], "lattice vector");
      cfg.flat_lattice = basis;
      ++sources;
    }
    if (sources != 1) {
      throw Error(ErrorKind::kConfig,
                  "exactly one of manifold, flat_torus, flat_lattice required");
    }
    if (j.contains("epsilon") == j.contains("mv")) {
      throw Error(ErrorKind::kConfig, "exactly one of epsilon and mv required");
    }
    if (j.contains("epsilon")) cfg.epsilon = Positive(j["epsilon"], "epsilon");
    if (j.contains("mv")) {
      const json& mv = j["mv"];
      AllowKeys(mv, {"mu", "mu1", "mu2", "delta"}, "mv");
      MvBlock b;
      b.mu = Positive(mv.at("mu"), "mu");
      b.mu1 = Positive(mv.at("mu1"), "mu1");
      b.mu2 = Positive(mv.at("mu2"), "mu2");
      b.delta = Positive(mv.at("delta"), "delta");
      cfg.mv = b;
    }

    const json& f = j.at("field");
    AllowKeys(f, {"kind", "points", "weights", "profile_radius", "offset",
                  "systole", "tube", "axis"},
              "field");
    FieldSpec& spec = cfg.field.spec;
    spec.kind = ParseFieldKind(f.at("kind").get<std::string>());
    if (f.contains("points")) {
      for (const json& p : f["points"]) {
        const Vec3 k = ParseVec3(p, "field point");
        spec.points.push_back(Vec4(0, k[0], k[1], k[2]));  // chart, resolved later
      }
    }
    if (f.contains("weights")) spec.weights = f["weights"].get<std::vector<double>>();
    if (f.contains("profile_radius")) {
      spec.profile_radius = Positive(f["profile_radius"], "profile_radius");
    }
    if (f.contains("offset")) spec.offset = f["offset"].get<double>();
    if (f.contains("systole")) cfg.field.systole = f["systole"].get<int>();
    if (f.contains("tube")) cfg.field.tube = f["tube"].get<int>();
    if (f.contains("axis")) {
      const json& a = f["axis"];
      AllowKeys(a, {"a", "b", "translation"}, "field.axis");
      const Vec3 ka = ParseVec3(a.at("a"), "axis.a"), kb = ParseVec3(a.at("b"), "axis.b");
      spec.axis_a = Vec4(0, ka[0], ka[1], ka[2]);
      spec.axis_b = Vec4(0, kb[0], kb[1], kb[2]);
      const auto& t = a.at("translation");
      if (!t.is_array() || t.size() != 16) {
        throw Error(ErrorKind::kConfig, "axis.translation needs 16 entries");
      }
      for (int r = 0; r < 4; ++r) {
        for (int c = 0; c < 4; ++c) spec.generator(r, c) = t[4 * r + c].get<double>();
      }
    }
    if (spec.kind == FieldKind::kAxisSweep) {
      const int given = (cfg.field.systole >= 0) + (cfg.field.tube >= 0) +
                        f.contains("axis");
      if (given != 1) {
        throw Error(ErrorKind::kConfig,
                    "axis_sweep needs exactly one of systole, tube, axis");
      }
    } else if (spec.points.empty()) {
      throw Error(ErrorKind::kConfig, "field needs points");
    }

    if (j.contains("centers")) {
      for (const json& p : j["centers"]) cfg.centers.push_back(ParseVec3(p, "center"));
    }
    if (j.contains("seeds")) {
      AllowKeys(j["seeds"], {"sample", "splitter"}, "seeds");
      cfg.sample_seed = j["seeds"].value("sample", cfg.sample_seed);
      cfg.splitter.seed = j["seeds"].value("splitter", cfg.splitter.seed);
    }
    if (j.contains("splitter")) {
      AllowKeys(j["splitter"], {"samples", "tau_split"}, "splitter");
      cfg.splitter.samples = j["splitter"].value("samples", cfg.splitter.samples);
      if (j["splitter"].contains("tau_split")) {
        cfg.splitter.tau_split = Positive(j["splitter"]["tau_split"], "tau_split");
      }
      if (cfg.splitter.samples < 2 || cfg.splitter.samples % 2) {
        throw Error(ErrorKind::kConfig, "splitter.samples must be even");
      }
    }
    if (j.contains("area")) {
      const json& a = j["area"];
      AllowKeys(a, {"h", "grid", "refinements", "schedule_h"}, "area");
      if (a.contains("h")) cfg.area.h = Positive(a["h"], "area.h");
      cfg.area.grid = a.value("grid", cfg.area.grid);
      cfg.area.refinements = a.value("refinements", cfg.area.refinements);
      if (a.contains("schedule_h")) {
        cfg.schedule_h = Positive(a["schedule_h"], "area.schedule_h");
      }
    }
    if (j.contains("output")) {
      const json& o = j["output"];
      AllowKeys(o, {"report", "census", "surfaces"}, "output");
      cfg.report = o.value("report", cfg.report);
      cfg.census = o.value("census", cfg.census);
      cfg.surfaces = o.value("surfaces", cfg.surfaces);
    }
  } catch (const json::exception& e) {
    throw Error(ErrorKind::kConfig, std::string("bad config: ") + e.what());
  }
  return cfg;
}

RunConfig LoadRunConfig(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::kConfig, "cannot open config " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ParseRunConfig(ss.str(),
                        std::filesystem::path(path).parent_path().string());
}

ManifoldModel LoadModel(const RunConfig& cfg) {
  if (cfg.flat_torus) return ManifoldModel::FlatTorus(*cfg.flat_torus);
  if (cfg.flat_lattice) return ManifoldModel::FlatLattice(*cfg.flat_lattice);
  return ManifoldModel::FromData(LoadManifoldJson(cfg.manifold));
}

double RunEpsilon(const RunConfig& cfg) {
  if (cfg.epsilon) return *cfg.epsilon;
  return 0.25 * std::min(cfg.mv->mu1, cfg.mv->delta);
}

double BoundConstant(const DerivedConstants& c) {
  const double j = static_cast<double>(c.j);
  return 66.0 * j * j * c.k;
}

double GaussBonnetArea(int64_t g) {
  if (g < 0) throw Error(ErrorKind::kPrecondition, "negative genus");
  return 4.0 * std::numbers::pi * static_cast<double>(g);
}

int MaxCentersIn3Eps(const ManifoldModel& m, const VoronoiComplex& v) {
  const double r = 3 * v.epsilon;
  LiftIndex idx(m, r);
  for (int i = 0; i < static_cast<int>(v.centers.size()); ++i) {
    idx.Insert(i, v.centers[i]);
  }
  int best = 0;
  for (const Vec4& x : v.centers) {
    best = std::max(best, static_cast<int>(idx.Within(x, r).size()));
  }
  return best;
}

std::string CensusCsv(const std::vector<LevelRecord>& levels) {
  std::ostringstream out;
  out << "index,u,cells,faces_deep,V,E,F,chi,components,genus,capped_genus,"
         "handle_bound_next\n";
  char buf[64];
  for (const LevelRecord& l : levels) {
    std::snprintf(buf, sizeof(buf), "%.17g", l.u);
    out << l.index << "," << buf << "," << l.cells << "," << l.faces_in_w << ","
        << l.topology.vertices << "," << l.topology.edges << ","
        << l.topology.faces << "," << l.topology.chi << ","
        << l.topology.components << "," << l.topology.genus << ","
        << l.capped_genus << "," << l.handle_bound_next << "\n";
  }
  return out.str();
}

RunResult RunPipeline(const RunConfig& cfg, const Logger& log) {
  Stopwatch clock(log);
  RunResult res;
  WidthReport& rep = res.report;

  const ManifoldModel m = Stage("manifold", [&] { return LoadModel(cfg); });
  const Geometry& geo = m.geometry();
  const bool hyp = m.hyperbolic();
  const double eps = RunEpsilon(cfg);
  rep.manifold = m.name();
  rep.geometry = hyp ? "hyperbolic" : "euclidean";
  rep.mode = cfg.mv ? "mv" : "desk";
  rep.epsilon = eps;
  rep.mv = cfg.mv;
  rep.constants = DeriveConstants(eps);
  const DerivedConstants& c = rep.constants;
  clock.Mark("manifold", "group ball " + std::to_string(m.group().size()));

  SampleSet samples = Stage("sampling", [&] {
    if (cfg.centers.empty()) return SampleMaximal(m, eps, cfg.sample_seed);
    SampleSet s;
    s.epsilon = eps;
    s.seed = cfg.sample_seed;
    for (const Vec3& k : cfg.centers) s.centers.push_back(geo.FromChart(k));
    return s;
  });
  clock.Mark("sampling", std::to_string(samples.centers.size()) + " centers");

  VoronoiComplex v;
  DualComplex dual;
  Stage("voronoi", [&] {
    v = BuildVoronoi(m, samples);
    dual = BuildDual(v);
    return 0;
  });
  rep.cells = static_cast<int>(v.cells.size());
  rep.faces = static_cast<int>(v.faces.size());
  rep.edges = static_cast<int>(v.edges.size());
  rep.vertices = static_cast<int>(v.vertices.size());
  rep.deep = v.DeepCount();
  rep.retries = v.retries;
  rep.max_deep_valence = dual.MaxDeepValence();
  clock.Mark("voronoi", std::to_string(rep.faces) + " faces");

  Tally regular("voronoi_regular");
  regular.Holds(v.IsRegular() && v.EulerCharacteristic() == 0);
  regular.Holds(dual.tetrahedra.size() == v.vertices.size());
  Tally valence("deep_valence_le_J", hyp);
  for (int d : dual.deep_valence) valence.Le(d, static_cast<double>(c.j));
  Tally centers3("centers_in_3eps_le_L", hyp);
  try {
    rep.max_centers_in_3eps = MaxCentersIn3Eps(m, v);
    centers3.Le(rep.max_centers_in_3eps, static_cast<double>(c.l));
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::kSearchRadiusExhausted) throw;
    rep.max_centers_in_3eps = -1;
    ++centers3.rec.skipped;
  }

  const ThinPart thin = Stage("thin_part", [&] {
    if (cfg.mv && !m.tubes().empty()) return ClassifyCells(m, v, cfg.mv->mu);
    return NoThinPart(v);
  });
  rep.thin_cells = static_cast<int>(std::count(thin.thin.begin(), thin.thin.end(), 1));

  const MorseField field = Stage("field", [&] {
    FieldSpec spec = cfg.field.spec;
    for (Vec4& p : spec.points) {
      if (p[0] == 0) p = geo.FromChart(p.tail<3>());
    }
    if (spec.kind == FieldKind::kAxisSweep) {
      if (cfg.field.tube >= 0) {
        if (cfg.field.tube >= static_cast<int>(m.tubes().size())) {
          throw Error(ErrorKind::kConfig, "field tube index out of range");
        }
        const TubeSpec& t = m.tubes()[cfg.field.tube].spec;
        spec.generator = t.generator;
        spec.axis_a = t.core_a;
        spec.axis_b = t.core_b;
      } else if (cfg.field.systole >= 0) {
        const auto gs = ShortGeodesics(m, 2.0 * m.inradius());
        if (cfg.field.systole >= static_cast<int>(gs.size())) {
          throw Error(ErrorKind::kConfig, "field systole index out of range");
        }
        const ClosedGeodesic& g = gs[cfg.field.systole];
        spec.generator = g.generator;
        spec.axis_a = g.core_a;
        spec.axis_b = g.core_b;
      } else {
        spec.axis_a = geo.FromChart(spec.axis_a.tail<3>());
        spec.axis_b = geo.FromChart(spec.axis_b.tail<3>());
      }
    }
    return MorseField(m, spec);
  });
  rep.field = FieldKindName(field.spec().kind);
  rep.lipschitz = field.Lipschitz();

  const std::vector<CellSplitter> splitters =
      Stage("splitters", [&] { return ComputeSplitters(field, v, cfg.splitter); });
  const CellOrder order = OrderCells(splitters);
  rep.ties = static_cast<int>(order.ties.size());
  rep.splitters = order.t;
  Tally residual("splitter_residual");
  const double half_ball = geo.BallVolume(0.5 * eps);
  for (const CellSplitter& s : splitters) {
    rep.shallow += s.shallow;
    rep.max_residual = std::max(rep.max_residual, s.residual);
    residual.Le(s.residual, cfg.splitter.tau_split * half_ball);
  }
  clock.Mark("splitters", std::to_string(rep.ties) + " ties");

  rep.morse = Stage("morse_area", [&] { return EstimateMorseArea(field, cfg.area); });
  clock.Mark("morse_area");

  const Schedule sched = NestedSchedule(order);
  const std::vector<double> areas = Stage("level_area", [&] {
    return SampledField(field, cfg.schedule_h).Areas(sched.u);
  });
  clock.Mark("level_area", std::to_string(sched.u.size()) + " levels");

  Tally face_bound("face_bound", hyp);
  Tally deep_genus("deep_genus_bound", hyp);
  Tally capped_genus("capped_genus_bound", hyp);
  Tally step("step_handle_bound", hyp);
  Tally width("width_bound", hyp);
  Tally surface("surface_invariants");
  Tally nesting("schedule_nesting");
  Tally census("piece_census");
  Tally complement("complement_symmetry");
  Tally generic("generic_levels");

  // The capped genus bound needs the thick part inside the deep cells.
  bool thick_in_deep = true;
  for (size_t i = 0; i < v.cells.size(); ++i) {
    thick_in_deep &= v.cells[i].deep || thin.thin[i];
  }
  std::vector<char> prev_caps(v.faces.size(), 0);
  int prev_count = -1;
  Stage("surfaces", [&] {
    const int n = static_cast<int>(sched.u.size());
    for (int i = 0; i < n; ++i) {
      generic.Holds(IsGeneric(sched.u[i], order.t, kTauGeom));
      const Region r = BuildRegion(order, sched.u[i], rep.cells);
      const PolyhedralSurface s = ExtractSurface(v, dual, r);
      const SurfaceStats all = ComputeStats(v, s, Restriction::kAll, thin);
      const SurfaceStats deep = ComputeStats(v, s, Restriction::kDeep, thin);
      const SurfaceStats thick = ComputeStats(v, s, Restriction::kThick, thin);
      const CappedSurface capped = CapSurface(v, s, r, thin, i, n - 1);

      LevelRecord l;
      l.index = i;
      l.u = sched.u[i];
      l.cells = r.count;
      l.faces_in_w = all.faces_in_w;
      l.topology = all.topology;
      l.deep_genus = deep.topology.genus;
      l.thick_genus = thick.topology.genus;
      l.thick_boundary = thick.topology.boundary;
      l.capped_genus = capped.topology.genus;
      l.caps = static_cast<int>(capped.caps.size());
      l.depth = capped.depth;
      l.area = areas[i];

      surface.Holds(all.topology.chi % 2 == 0 && all.topology.genus >= 0 &&
                    all.topology.boundary == 0 && all.topology.oriented &&
                    capped.topology.boundary == 0 && capped.topology.oriented);
      census.Holds(s.triangles + s.quads == all.topology.vertices);
      Region rc = r;
      for (char& x : rc.inside) x = !x;
      complement.Holds(ExtractSurface(v, dual, rc).faces == s.faces);
      nesting.Holds(r.count > prev_count);
      prev_count = r.count;
      std::vector<char> caps(v.faces.size(), 0);
      for (size_t f = 0; f < v.faces.size(); ++f) {
        const auto& fc = v.faces[f].cells;
        for (int k = 0; k < 2; ++k) {
          const int a = fc[k], b = fc[1 - k];
          if (thin.thin[a] && r.inside[b] && !thin.thin[b]) caps[f] = 1;
        }
      }
      bool nested = true;
      for (size_t f = 0; f < caps.size(); ++f) nested &= !prev_caps[f] || caps[f];
      nesting.Holds(nested);
      prev_caps = std::move(caps);

      const FaceBoundCheck fb = CheckFaceBound(all, areas[i], c);
      face_bound.Le(fb.faces_in_w, fb.bound);
      const double w = static_cast<double>(all.faces_in_w);
      deep_genus.Le(deep.topology.genus, (1.0 + 0.5 * c.j) * w);
      if (thick_in_deep) {
        capped_genus.Le(capped.topology.genus, (5.0 * c.j + 1.0) * w);
      } else {
        ++capped_genus.rec.skipped;
      }
      res.levels.push_back(l);
    }
    nesting.Holds(res.levels.front().topology.faces == 0 &&
                  res.levels.back().topology.faces == 0);
    return 0;
  });
  clock.Mark("surfaces");

  for (size_t i = 0; i + 1 < res.levels.size(); ++i) {
    const int64_t s1 = res.levels[i].faces_in_w, s2 = res.levels[i + 1].faces_in_w;
    int64_t handles = 0;
    for (int k = sched.prefix[i]; k < sched.prefix[i + 1]; ++k) {
      const int cell = order.cells[k];
      const StepBound b = HandleBoundStep(thin.near_tube[cell], c, s1, s2);
      handles += b.handles;
      if (std::max(s1, s2) == 0) {
        ++step.rec.skipped;
      } else {
        step.Le(static_cast<double>(b.handles), static_cast<double>(b.cap));
      }
    }
    res.levels[i].handle_bound_next = handles;
  }

  for (const LevelRecord& l : res.levels) {
    rep.genus.push_back(l.topology.genus);
    rep.capped_genus.push_back(l.capped_genus);
    rep.faces_in_w.push_back(l.faces_in_w);
    rep.max_capped_genus = std::max(rep.max_capped_genus, l.capped_genus);
    rep.max_handle_bound = std::max(rep.max_handle_bound, l.handle_bound_next);
  }
  rep.width_upper = rep.max_capped_genus + rep.max_handle_bound;
  rep.bound_constant = BoundConstant(c);
  rep.width_bound = rep.bound_constant * rep.morse.area;
  width.Le(static_cast<double>(rep.width_upper), rep.width_bound);
  Tally width_vs_genus("width_ge_capped_genus");
  width_vs_genus.Holds(rep.width_upper >= rep.max_capped_genus);
  rep.gauss_bonnet_reference = GaussBonnetArea(rep.width_upper);

  for (const Tally* t : {&regular, &valence, &centers3, &residual, &generic,
                         &surface, &census, &complement, &nesting, &face_bound,
                         &deep_genus, &capped_genus, &step, &width,
                         &width_vs_genus}) {
    rep.checks.push_back(t->rec);
    if (t->rec.applicable && t->rec.violations > 0) rep.pass = false;
  }

  res.census_csv = CensusCsv(res.levels);
  if (!cfg.surfaces.empty()) {
    size_t best = 0;
    for (size_t i = 0; i < res.levels.size(); ++i) {
      if (res.levels[i].topology.genus > res.levels[best].topology.genus) best = i;
    }
    const Region r = BuildRegion(order, sched.u[best], rep.cells);
    res.surfaces_obj = ObjDump(m, v, ExtractSurface(v, dual, r).faces);
  }
  clock.Mark("report", rep.pass ? "all checks pass" : "CHECK VIOLATION");
  return res;
}

std::string WidthReport::ToJson() const {
  json j;
  j["manifold"] = manifold;
  j["geometry"] = geometry;
  j["mode"] = mode;
  j["epsilon"] = epsilon;
  if (mv) {
    j["mv"] = {{"mu", mv->mu}, {"mu1", mv->mu1}, {"mu2", mv->mu2},
               {"delta", mv->delta}};
  }
  j["constants"] = {{"epsilon", constants.epsilon}, {"J1", constants.j1},
                    {"J", constants.j},             {"L", constants.l},
                    {"A", constants.a},             {"K", constants.k},
                    {"G", constants.g}};
  j["field"] = {{"kind", field}, {"lipschitz", lipschitz}};
  j["voronoi"] = {{"cells", cells},
                  {"faces", faces},
                  {"edges", edges},
                  {"vertices", vertices},
                  {"deep", deep},
                  {"thin", thin_cells},
                  {"retries", retries},
                  {"max_deep_valence", max_deep_valence},
                  {"max_centers_in_3eps", max_centers_in_3eps}};
  j["splitters"] = {{"shallow", shallow},
                    {"ties", ties},
                    {"max_residual", max_residual},
                    {"values", splitters}};
  j["schedule"] = {{"genus", genus},
                   {"capped_genus", capped_genus},
                   {"faces_in_w", faces_in_w}};
  j["max_capped_genus"] = max_capped_genus;
  j["max_handle_bound"] = max_handle_bound;
  j["width_upper"] = width_upper;
  j["width_upper_note"] = "upper bound on Scharlemann-Thompson width";
  json samples = json::array();
  for (const LevelSample& s : morse.samples) {
    samples.push_back({s.t, s.area, s.error});
  }
  j["morse_area"] = {{"area", morse.area}, {"t", morse.t},
                     {"error", morse.error}, {"min", morse.min},
                     {"max", morse.max},     {"samples", samples}};
  j["bound_constant"] = bound_constant;
  j["width_bound"] = width_bound;
  j["gauss_bonnet"] = {{"genus", width_upper},
                       {"area_4pi_g", gauss_bonnet_reference},
                       {"certified", false}};
  json checks_j = json::array();
  for (const CheckRecord& c : checks) checks_j.push_back(CheckJson(c));
  j["checks"] = checks_j;
  j["status"] = pass ? "pass" : "violation";
  return j.dump(2) + "\n";
}

WidthReport WidthReport::FromJson(const std::string& text) {
  WidthReport r;
  try {
    const json j = json::parse(text);
    r.manifold = j.at("manifold");
    r.geometry = j.at("geometry");
    r.mode = j.at("mode");
    r.epsilon = j.at("epsilon");
    if (j.contains("mv")) {
      r.mv = MvBlock{j["mv"].at("mu"), j["mv"].at("mu1"), j["mv"].at("mu2"),
                     j["mv"].at("delta")};
    }
    const json& c = j.at("constants");
    r.constants = {c.at("epsilon"), c.at("J1"), c.at("J"), c.at("L"),
                   c.at("A"),       c.at("K"),  c.at("G")};
    r.field = j.at("field").at("kind");
    r.lipschitz = j.at("field").at("lipschitz");
    const json& v = j.at("voronoi");
    r.cells = v.at("cells");
    r.faces = v.at("faces");
    r.edges = v.at("edges");
    r.vertices = v.at("vertices");
    r.deep = v.at("deep");
    r.thin_cells = v.at("thin");
    r.retries = v.at("retries");
    r.max_deep_valence = v.at("max_deep_valence");
    r.max_centers_in_3eps = v.at("max_centers_in_3eps");
    const json& s = j.at("splitters");
    r.shallow = s.at("shallow");
    r.ties = s.at("ties");
    r.max_residual = s.at("max_residual");
    r.splitters = s.at("values").get<std::vector<double>>();
    const json& sc = j.at("schedule");
    r.genus = sc.at("genus").get<std::vector<int>>();
    r.capped_genus = sc.at("capped_genus").get<std::vector<int>>();
    r.faces_in_w = sc.at("faces_in_w").get<std::vector<int>>();
    r.max_capped_genus = j.at("max_capped_genus");
    r.max_handle_bound = j.at("max_handle_bound");
    r.width_upper = j.at("width_upper");
    const json& ma = j.at("morse_area");
    r.morse.area = ma.at("area");
    r.morse.t = ma.at("t");
    r.morse.error = ma.at("error");
    r.morse.min = ma.at("min");
    r.morse.max = ma.at("max");
    for (const json& x : ma.at("samples")) {
      LevelSample ls;
      ls.t = x[0];
      ls.area = x[1];
      ls.error = x[2];
      r.morse.samples.push_back(ls);
    }
    r.bound_constant = j.at("bound_constant");
    r.width_bound = j.at("width_bound");
    r.gauss_bonnet_reference = j.at("gauss_bonnet").at("area_4pi_g");
    for (const json& c : j.at("checks")) {
      CheckRecord rec;
      rec.name = c.at("name");
      rec.applicable = c.at("applicable");
      rec.checked = c.at("checked");
      rec.violations = c.at("violations");
      rec.skipped = c.at("skipped");
      rec.min_slack = c.at("min_slack").is_null()
                          ? std::numeric_limits<double>::infinity()
                          : c.at("min_slack").get<double>();
      r.checks.push_back(rec);
    }
    r.pass = j.at("status") == "pass";
  } catch (const json::exception& e) {
    throw Error(ErrorKind::kIo, std::string("bad report: ") + e.what());
  }
  return r;
}

void WriteOutputs(const RunConfig& cfg, const RunResult& r,
                  const std::string& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw Error(ErrorKind::kIo, "cannot create output directory " + dir);
  auto write = [&](const std::string& name, const std::string& text) {
    const std::string path = (std::filesystem::path(dir) / name).string();
    std::ofstream out(path, std::ios::binary);
    out << text;
    if (!out) throw Error(ErrorKind::kIo, "cannot write " + path);
  };
  write(cfg.report, r.report.ToJson());
  write(cfg.census, r.census_csv);
  if (!cfg.surfaces.empty()) write(cfg.surfaces, r.surfaces_obj);
}

}  // namespace h3w
