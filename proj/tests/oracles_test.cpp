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

#include "doctest.h"
#include "h3w/errors.h"
#include "h3w/geometry.h"
#include "h3w/oracles.h"

namespace h3w {
namespace {

TEST_CASE("monte carlo ball volume") {
  const auto geo = HyperbolicGeometry();
  const McEstimate e = McBallVolume(1.0, 1000000, 1);
  CHECK(std::abs(e.estimate - geo->BallVolume(1.0)) <= 3 * e.sigma);
  CHECK(e.estimate == doctest::Approx(5.1113).epsilon(0.01));
  // sigma halves when n quadruples.
  const McEstimate q = McBallVolume(1.0, 4000000, 1);
  CHECK(q.sigma / e.sigma == doctest::Approx(0.5).epsilon(0.05));
  CHECK(McBallVolume(1e-3, 10000, 1).estimate < 1e-8);
  CHECK_THROWS_AS(McBallVolume(0, 10, 1), Error);
}

TEST_CASE("exhaustive normal pieces") {
  const NormalCheck c = ExhaustiveNormalCheck();
  CHECK(c.markings == 16);
  CHECK(c.pairs == 6 * 32);
  CHECK_MESSAGE(c.pass(), (c.messages.empty() ? "" : c.messages.front()));
}

TEST_CASE("flat tori match hand enumeration") {
  for (const FlatCase& fc : FlatCases()) {
    CAPTURE(fc.name);
    const FlatCheck r = FlatPipelineCheck(fc);
    CHECK(r.genus == r.expected);
    CHECK(r.surfaces_ok);
    CHECK(r.volume == doctest::Approx(r.expected_volume).epsilon(1e-9));
    CHECK(r.pass());
  }
}

}  // namespace
}  // namespace h3w
