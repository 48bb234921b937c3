// Copyright 2026 The todapin Project Developers
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <string>
#include <vector>

#include "todapin/configfile.hpp"
#include "todapin/experiment.hpp"

using namespace todapin;

namespace {

std::string lines(std::initializer_list<const char*> rows) {
  std::string out;
  for (const char* row : rows) {
    out += row;
    out += '\n';
  }
  return out;
}

void check_throws_mentioning(const std::string& text, const std::string& needle) {
  try {
    parse_config(text);
    FAIL("expected a validation error mentioning '" << needle << "'");
  } catch (const ValidationError& e) {
    CAPTURE(e.what());
    CHECK(std::string(e.what()).find(needle) != std::string::npos);
  }
}

}  // namespace

TEST_CASE("minimal steady-state config fills every default") {
  const ExperimentConfig c = parse_config(lines({
      "[experiment]",
      "kind = ness",
      "[chain]",
      "total_sites = 34",
  }));
  CHECK(c.kind == ExperimentKind::Ness);
  CHECK(c.total_sites == 34);
  CHECK(c.chain.boundary == Boundary::Fixed);
  CHECK(c.chain.n_dynamic == 32);  // two stored sites are the frozen walls
  CHECK(c.chain.a == 1.0);
  CHECK(c.chain.b == 1.0);
  CHECK(c.chain.nu == 1.0);
  CHECK(c.chain.z == 2);
  CHECK(c.baths.mu == 1.0);
  CHECK(c.baths.t_left == 4.0);
  CHECK(c.baths.t_right == 1.0);
  CHECK(c.baths.left_site == 1);
  CHECK(c.baths.right_site == 32);
  CHECK(c.ness.dt == 0.005);
  CHECK(c.ness.steps_relax == 20000000);
  CHECK(c.ness.steps_measure == 20000000);
  CHECK(c.ness.measure_stride == 1000);
  CHECK(c.ness.n_runs == 4);
  CHECK(c.master_seed == 1);

  const NessConfig nc = c.ness_config();
  CHECK(nc.chain.n_dynamic == 32);
  CHECK(nc.baths.right_site == 32);
  CHECK(nc.master_seed == 1);
}

TEST_CASE("integer fields accept scientific notation, reject fractions") {
  const ExperimentConfig c = parse_config(lines({
      "[experiment]",
      "kind = ness",
      "[chain]",
      "total_sites = 34",
      "[ness]",
      "steps_relax = 2e7",
      "steps_measure = 2e6",
      "measure_stride = 1e3",
  }));
  CHECK(c.ness.steps_relax == 20000000);
  CHECK(c.ness.steps_measure == 2000000);
  CHECK(c.ness.measure_stride == 1000);

  check_throws_mentioning(lines({
                              "[experiment]",
                              "kind = ness",
                              "[chain]",
                              "total_sites = 34",
                              "[ness]",
                              "measure_stride = 2.5",
                          }),
                          "not an integer");
}

TEST_CASE("ring defaults include the localised excitation") {
  const ExperimentConfig c = parse_config(lines({
      "[experiment]",
      "kind = ring",
  }));
  CHECK(c.chain.boundary == Boundary::Periodic);
  CHECK(c.total_sites == 200);
  CHECK(c.chain.n_dynamic == 200);
  CHECK(c.ring.dt == 1e-4);
  CHECK(c.ring.t_final == 8000.0);
  CHECK(c.ring.sample_stride == 100);
  CHECK(c.ring.envelope_window_periods == 100.0);
  const std::vector<std::pair<int, double>> q{{0, -1.0}, {2, 1.0}};
  const std::vector<std::pair<int, double>> p{{1, 1.0}};
  CHECK(c.ring.init.q == q);
  CHECK(c.ring.init.p == p);
}

TEST_CASE("explicit ring excitation replaces the default wholesale") {
  const ExperimentConfig c = parse_config(lines({
      "[experiment]",
      "kind = ring",
      "[chain]",
      "total_sites = 64",
      "[ring]",
      "initial_p = 5:-2.5 7:0.125",
  }));
  CHECK(c.ring.init.q.empty());
  const std::vector<std::pair<int, double>> p{{5, -2.5}, {7, 0.125}};
  CHECK(c.ring.init.p == p);
}

TEST_CASE("poincare defaults") {
  const ExperimentConfig c = parse_config(lines({
      "[experiment]",
      "kind = poincare",
  }));
  CHECK(c.chain.boundary == Boundary::Open);
  CHECK(c.total_sites == 3);
  CHECK(c.poincare.dt == 1e-4);
  CHECK(c.poincare.t_final == 1e5);
  CHECK(c.poincare.delta == 1e-3);
  CHECK(c.poincare.mode == DetectionMode::SignCrossing);
  CHECK(c.poincare.n_initial_conditions == 5);
  CHECK(c.poincare.state_scale == 1.0);
  CHECK(c.poincare.slice_tol == 0.01);
  CHECK(c.poincare.slice_tol_cap == 0.1);
  CHECK(c.poincare.slice_min_points == 500);
  CHECK_FALSE(c.poincare.use_explicit_init);

  const ExperimentConfig d = parse_config(lines({
      "[experiment]",
      "kind = poincare",
      "[poincare]",
      "detection = tolerance_window",
      "initial_q = 0:0.4",
      "initial_p = 0:1 2:0.1",
  }));
  CHECK(d.poincare.mode == DetectionMode::ToleranceWindow);
  CHECK(d.poincare.use_explicit_init);
  const SectionConfig sc = d.section_config();
  CHECK(sc.initial.q[0] == 0.4);
  CHECK(sc.initial.p[0] == 1.0);
  CHECK(sc.initial.p[2] == 0.1);
  CHECK(sc.initial.q[1] == 0.0);
}

TEST_CASE("sweep lists parse with commas or spaces") {
  const ExperimentConfig c = parse_config(lines({
      "[experiment]",
      "kind = sweep",
      "[sweep]",
      "total_sites_list = 34, 66 130",
      "nu_list = 0.5 1, 2",
  }));
  const std::vector<long long> sizes{34, 66, 130};
  const std::vector<double> nus{0.5, 1.0, 2.0};
  CHECK(c.sweep.total_sites_list == sizes);
  CHECK(c.sweep.nu_list == nus);

  const auto points = c.sweep_points();
  REQUIRE(points.size() == 9);
  CHECK(points[0].n_dynamic == 32);
  CHECK(points[0].nu == 0.5);
  CHECK(points[8].n_dynamic == 128);
  CHECK(points[8].nu == 2.0);

  // Without nu_list the sweep holds the chain pinning fixed.
  const ExperimentConfig d = parse_config(lines({
      "[experiment]",
      "kind = sweep",
      "[chain]",
      "nu = 1.5",
      "[sweep]",
      "total_sites_list = 34 66",
  }));
  const std::vector<double> single{1.5};
  CHECK(d.sweep.nu_list == single);
}

TEST_CASE("errors carry the offending line and key") {
  check_throws_mentioning(lines({
                              "[experiment]",
                              "kind = ness",
                              "[chain]",
                              "total_sites = 34",
                              "tuning = 3",
                          }),
                          "unknown key 'tuning' in [chain] (line 5)");
  check_throws_mentioning(lines({
                              "[experiment]",
                              "kind = ness",
                              "[chain]",
                              "total_sites = 34",
                              "[rng]",
                              "seed = 3",
                          }),
                          "unknown section [rng] (line 5)");
  check_throws_mentioning(lines({
                              "[experiment]",
                              "kind = ness",
                              "[chain]",
                              "total_sites = 34",
                              "[ring]",
                              "dt = 1e-4",
                          }),
                          "unknown section [ring]");
  check_throws_mentioning(lines({
                              "kind = ness",
                          }),
                          "outside any [section]");
  check_throws_mentioning(lines({
                              "[experiment]",
                              "kind = ness",
                              "kind = ring",
                          }),
                          "duplicate key 'kind'");
  check_throws_mentioning(lines({
                              "[experiment]",
                              "kind = ness",
                              "[chain",
                              "total_sites = 34",
                          }),
                          "malformed section header");
  check_throws_mentioning(lines({
                              "[experiment]",
                              "kind = ness",
                              "[chain]",
                              "total_sites",
                          }),
                          "expected 'key = value'");
}

TEST_CASE("domain validation happens at parse time") {
  check_throws_mentioning(lines({
                              "[experiment]",
                              "kind = warp",
                          }),
                          "expected ness, ring, poincare or sweep");
  check_throws_mentioning(lines({
                              "[experiment]",
                              "kind = ness",
                          }),
                          "total_sites is required");
  check_throws_mentioning(lines({
                              "[experiment]",
                              "kind = ness",
                              "[chain]",
                              "total_sites = 34",
                              "z = 3",
                          }),
                          "even integer");
  check_throws_mentioning(lines({
                              "[experiment]",
                              "kind = ness",
                              "[chain]",
                              "total_sites = 34",
                              "boundary = moebius",
                          }),
                          "expected fixed, periodic or open");
  check_throws_mentioning(lines({
                              "[experiment]",
                              "kind = ness",
                              "[chain]",
                              "total_sites = 2",
                          }),
                          "no dynamical sites");
  check_throws_mentioning(lines({
                              "[experiment]",
                              "kind = ring",
                              "[ring]",
                              "initial_q = 200:1",
                          }),
                          "out of range");
  check_throws_mentioning(lines({
                              "[experiment]",
                              "kind = poincare",
                              "[poincare]",
                              "detection = exact",
                          }),
                          "sign_crossing or tolerance_window");
}

TEST_CASE("canonical emission round-trips every kind") {
  std::vector<std::string> sources;
  sources.push_back(lines({
      "[experiment]",
      "kind = ness",
      "[chain]",
      "total_sites = 18",
      "nu = 0.5",
      "z = 4",
      "[baths]",
      "mu = 1.5",
      "t_left = 3.5",
      "t_right = 0.5",
      "[ness]",
      "dt = 0.002",
      "steps_relax = 1e5",
      "steps_measure = 2e5",
      "measure_stride = 100",
      "n_runs = 3",
      "[run]",
      "master_seed = 99",
  }));
  sources.push_back(lines({
      "[experiment]",
      "kind = ring",
      "[chain]",
      "total_sites = 32",
      "[ring]",
      "dt = 0.001",
      "t_final = 700",
      "initial_q = 0:-1 2:1",
      "initial_p = 1:1",
  }));
  sources.push_back(lines({
      "[experiment]",
      "kind = poincare",
      "[poincare]",
      "t_final = 500",
      "initial_p = 0:1",
  }));
  sources.push_back(lines({
      "[experiment]",
      "kind = sweep",
      "[sweep]",
      "total_sites_list = 10 18",
      "nu_list = 0.5 2",
      "[ness]",
      "steps_relax = 1e4",
      "steps_measure = 1e4",
      "measure_stride = 10",
      "n_runs = 2",
  }));
  for (const std::string& src : sources) {
    CAPTURE(src);
    const ExperimentConfig c = parse_config(src);
    const std::string canonical = emit_config(c);
    const ExperimentConfig back = parse_config(canonical);
    CHECK(back == c);
    // Emission is a fixed point.
    CHECK(emit_config(back) == canonical);
  }
}

TEST_CASE("seventeen-digit floats survive the round trip") {
  ExperimentConfig c = parse_config(lines({
      "[experiment]",
      "kind = ring",
      "[chain]",
      "total_sites = 16",
      "nu = 0.1",
      "[ring]",
      "dt = 0.0001",
      "t_final = 123.456789012345678",
  }));
  CHECK(c.chain.nu == 0.1);
  const ExperimentConfig back = parse_config(emit_config(c));
  CHECK(back.chain.nu == c.chain.nu);
  CHECK(back.ring.t_final == c.ring.t_final);
}

TEST_CASE("ini primitives") {
  IniDoc doc = IniDoc::parse(lines({
      "# comment",
      "[a]",
      "x = 7",
      "y = hello",
      "; another comment",
      "list = 1,2 3",
  }));
  doc.allow_section("a");
  CHECK(doc.take_int("a", "x") == 7);
  CHECK(doc.take("a", "y") == std::string("hello"));
  const std::vector<long long> expect{1, 2, 3};
  CHECK(doc.take_int_list("a", "list") == expect);
  CHECK_NOTHROW(doc.require_consumed());
  CHECK_FALSE(doc.take("a", "missing").has_value());
  CHECK(doc.take_int_or("a", "missing", -5) == -5);
}
