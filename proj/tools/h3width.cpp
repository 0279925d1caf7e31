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
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "h3w/errors.h"
#include "h3w/fixtures.h"
#include "h3w/oracles.h"
#include "h3w/quotient.h"
#include "h3w/voronoi.h"
#include "h3w/width.h"

namespace {

using namespace h3w;

int Fail(const Error& e) {
  std::cerr << "error";
  if (!e.stage().empty()) std::cerr << " [" << e.stage() << "]";
  std::cerr << " " << ErrorKindName(e.kind()) << ": " << e.what() << "\n";
  return ExitCodeFor(e.kind());
}

int Run(const std::string& config, const std::string& out, bool quiet) {
  const RunConfig cfg = LoadRunConfig(config);
  Logger log;
  if (!quiet) log = [](const std::string& s) { std::cerr << s << "\n"; };
  const RunResult r = RunPipeline(cfg, log);
  WriteOutputs(cfg, r, out);
  const WidthReport& rep = r.report;
  std::printf("cells %d  max capped genus %d  max handles %lld\n", rep.cells,
              rep.max_capped_genus,
              static_cast<long long>(rep.max_handle_bound));
  std::printf("width_upper %lld (upper bound on Scharlemann-Thompson width)\n",
              static_cast<long long>(rep.width_upper));
  std::printf("morse area %.6g  66 J^2 K %.6g  bound %.6g\n", rep.morse.area,
              rep.bound_constant, rep.width_bound);
  for (const CheckRecord& c : rep.checks) {
    if (!c.applicable) continue;
    std::printf("  %-24s %s  checked %lld  violations %lld\n", c.name.c_str(),
                c.violations ? "FAIL" : "ok  ", static_cast<long long>(c.checked),
                static_cast<long long>(c.violations));
  }
  return rep.pass ? kExitOk : kExitTheorem;
}

int Constants(double eps) {
  const DerivedConstants c = DeriveConstants(eps);
  std::printf("epsilon %.17g\nJ1 %lld\nJ %lld\nL %lld\nA %.17g\nK %.17g\nG %lld\n"
              "66J^2K %.17g\n",
              c.epsilon, static_cast<long long>(c.j1), static_cast<long long>(c.j),
              static_cast<long long>(c.l), c.a, c.k, static_cast<long long>(c.g),
              BoundConstant(c));
  return kExitOk;
}

int Validate(const std::string& path) {
  const ManifoldModel m = ManifoldModel::FromData(LoadManifoldJson(path));
  const Geometry& geo = m.geometry();
  int problems = 0;
  std::printf("name %s\nfaces %d  vertices %zu\n", m.name().c_str(), m.num_faces(),
              m.domain().vertices().size());
  std::printf("volume %.9g  inradius %.9g  circumradius %.9g\n", m.volume(),
              m.inradius(), m.circumradius());
  std::vector<Mat4> gens;
  for (int f = 0; f < m.num_faces(); ++f) gens.push_back(m.group().element(m.face_element(f)));
  std::string why;
  const bool closed = m.group().ValidateClosure(gens, &why);
  std::printf("group ball %d elements, radius %.4g: %s\n", m.group().size(),
              m.search_radius(), closed ? "closed" : why.c_str());
  problems += !closed;
  // Each pairing carries its source face onto the target face.
  for (const FacePairing& p : m.pairings()) {
    const auto& src = m.domain().faces()[p.source_face];
    for (int k : src.vertices) {
      const Vec4 x = geo.Apply(p.matrix, geo.FromChart(m.domain().vertices()[k]));
      double best = 1e300;
      for (int t : m.domain().faces()[p.target_face].vertices) {
        best = std::min(best, geo.Distance(x, geo.FromChart(m.domain().vertices()[t])));
      }
      if (best > 1e-7) {
        ++problems;
        std::printf("pairing %d -> %d misses a vertex by %.3g\n", p.source_face,
                    p.target_face, best);
        break;
      }
    }
  }
  for (size_t i = 0; i < m.tubes().size(); ++i) {
    const Tube& t = m.tubes()[i];
    std::printf("tube %zu: length %.6f twist %.6f radius %.4g lifts %zu\n", i,
                t.length, t.twist, t.spec.radius, t.lifts.size());
  }
  std::printf("%s\n", problems ? "INVALID" : "valid");
  return problems ? kExitDegeneracy : kExitOk;
}

int Selftest() {
  int failures = 0;
  auto line = [&](const std::string& name, bool ok, const std::string& detail) {
    failures += !ok;
    std::printf("%-28s %s  %s\n", name.c_str(), ok ? "PASS" : "FAIL", detail.c_str());
  };
  auto hyp = HyperbolicGeometry();
  for (double r : {0.25, 0.5, 1.0}) {
    const McEstimate e = McBallVolume(r, 1000000, 7);
    const double exact = hyp->BallVolume(r);
    char buf[160];
    std::snprintf(buf, sizeof(buf), "mc %.5f +- %.5f  closed form %.5f", e.estimate,
                  e.sigma, exact);
    line("ball_volume r=" + std::to_string(r).substr(0, 4),
         std::abs(e.estimate - exact) <= 3 * e.sigma, buf);
  }
  const NormalCheck n = ExhaustiveNormalCheck();
  line("normal_pieces", n.pass(),
       std::to_string(n.markings) + " markings, " + std::to_string(n.pairs) +
           " face gluings");
  for (const FlatCase& c : FlatCases()) {
    const FlatCheck f = FlatPipelineCheck(c);
    std::string seq;
    for (int g : f.genus) seq += (seq.empty() ? "" : ",") + std::to_string(g);
    line("flat " + c.name, f.pass(),
         std::to_string(f.cells) + " cells, genus [" + seq + "]");
  }
  return failures ? kExitTheorem : kExitOk;
}

int Fixture(const std::string& dir, double tube_radius) {
  std::filesystem::create_directories(dir);
  ManifoldData d = SeifertWeberData();
  SaveManifoldJson(d, (std::filesystem::path(dir) / "seifert_weber.json").string());
  const ManifoldModel m = ManifoldModel::FromData(d);
  const auto gs = ShortGeodesics(m, 2 * m.inradius());
  for (const ClosedGeodesic& g : gs) {
    if (g.length > gs.front().length + 1e-6) break;
    d.tubes.push_back({g.generator, g.core_a, g.core_b, tube_radius});
  }
  d.name += "-tubes";
  SaveManifoldJson(d, (std::filesystem::path(dir) / "seifert_weber_tubes.json").string());
  std::printf("%zu systole tubes of length %.9f, radius %g\n", d.tubes.size(),
              gs.front().length, tube_radius);
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"h3width: Voronoi sweepouts and width bounds for closed 3-manifolds"};
  app.require_subcommand(1);

  std::string config, out = "out";
  bool quiet = false;
  auto* run = app.add_subcommand("run", "run the width pipeline");
  run->add_option("--config", config, "run configuration (JSON)")->required();
  run->add_option("--out", out, "output directory");
  run->add_flag("--quiet", quiet, "suppress stage log");

  double eps = 0;
  auto* constants = app.add_subcommand("constants", "print J, L, A, K for epsilon");
  constants->add_option("--epsilon", eps)->required()->check(CLI::PositiveNumber);

  std::string manifold;
  auto* validate = app.add_subcommand("validate", "check a manifold file");
  validate->add_option("--manifold", manifold)->required();

  auto* selftest = app.add_subcommand("selftest", "run the oracle checks");

  std::string fixture_dir = "data";
  double tube_radius = 0.15;
  auto* fixture = app.add_subcommand("fixture", "write the bundled manifold files");
  fixture->add_option("--out", fixture_dir);
  fixture->add_option("--tube-radius", tube_radius)->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }
  try {
    if (*run) return Run(config, out, quiet);
    if (*constants) return Constants(eps);
    if (*validate) return Validate(manifold);
    if (*selftest) return Selftest();
    if (*fixture) return Fixture(fixture_dir, tube_radius);
  } catch (const Error& e) {
    return Fail(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitDegeneracy;
  }
  return kExitOk;
}
