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

#include <array>
#include <cmath>
#include <numbers>
#include <vector>

#include "todapin/poincare.hpp"
#include "todapin/rng.hpp"

using namespace todapin;

namespace {

constexpr double kPi = std::numbers::pi;

ChainSpec three_sites(double a = 1.0) {
  ChainSpec spec;
  spec.n_dynamic = 3;
  spec.boundary = Boundary::Open;
  spec.a = a;
  spec.b = 1.0;
  spec.nu = 1.0;
  spec.z = 2;
  return spec;
}

// Vanishing interaction decouples the three pinned oscillators, making
// return times to the section exactly pi-periodic for a site started at
// the section with unit momentum.
SectionConfig decoupled_oscillators() {
  SectionConfig cfg;
  cfg.chain = three_sites(1e-12);
  cfg.dt = 1e-3;
  cfg.t_final = 50.0;
  cfg.delta = 1e-3;
  cfg.initial = zero_state(cfg.chain);
  cfg.initial.q = {0.0, 0.3, -0.2};
  cfg.initial.p = {1.0, 0.0, 0.1};
  return cfg;
}

std::vector<SectionEvent> ladder_events() {
  // p_0 walks 0.00 .. 0.99; the other momenta tag the index.
  std::vector<SectionEvent> events;
  for (int k = 0; k < 100; ++k) {
    SectionEvent ev;
    ev.p = {0.01 * k, static_cast<double>(k), static_cast<double>(-k)};
    events.push_back(ev);
  }
  return events;
}

}  // namespace

TEST_CASE("box counting calibrates on sets of known dimension") {
  SUBCASE("regular grid is two-dimensional") {
    std::vector<std::array<double, 2>> grid;
    for (int i = 0; i < 100; ++i) {
      for (int j = 0; j < 100; ++j) grid.push_back({0.01 * i, 0.01 * j});
    }
    CHECK(box_count_dimension(grid) == doctest::Approx(2.0).epsilon(0.03));
  }
  SUBCASE("diagonal segment is one-dimensional") {
    std::vector<std::array<double, 2>> seg;
    for (int i = 0; i < 10000; ++i) {
      seg.push_back({1e-4 * i, 0.5 + 5e-5 * i});
    }
    const double d = box_count_dimension(seg);
    CHECK(d > 0.95);
    CHECK(d < 1.05);
  }
  SUBCASE("uniform disk cloud is close to two-dimensional") {
    RngStream rng(2025);
    std::vector<std::array<double, 2>> disk;
    while (disk.size() < 10000) {
      const double x = 2.0 * rng.uniform() - 1.0;
      const double y = 2.0 * rng.uniform() - 1.0;
      if (x * x + y * y <= 1.0) disk.push_back({x, y});
    }
    const double d = box_count_dimension(disk);
    CHECK(d > 1.8);
    CHECK(d < 2.1);
  }
  SUBCASE("random circle cloud is close to one-dimensional") {
    RngStream rng(4);
    std::vector<std::array<double, 2>> circle;
    for (int k = 0; k < 10000; ++k) {
      const double ang = 2.0 * kPi * rng.uniform();
      circle.push_back({std::cos(ang), std::sin(ang)});
    }
    const double d = box_count_dimension(circle);
    CHECK(d > 0.9);
    CHECK(d < 1.1);
  }
  SUBCASE("rejects unusable point sets") {
    std::vector<std::array<double, 2>> few(499, {0.0, 0.0});
    CHECK_THROWS_AS(box_count_dimension(few), ValidationError);
    std::vector<std::array<double, 2>> coincident(600, {0.5, 0.5});
    CHECK_THROWS_AS(box_count_dimension(coincident), ValidationError);
  }
}

TEST_CASE("slice keeps matching events and projects the other momenta") {
  const auto events = ladder_events();
  const SlicedSection s0 = slice(events, 0, 0.205, 0.011);
  REQUIRE(s0.points.size() == 2);  // p_0 = 0.20 and 0.21
  CHECK(s0.points[0][0] == 20.0);
  CHECK(s0.points[0][1] == -20.0);
  CHECK(s0.points[1][0] == 21.0);

  const SlicedSection s1 = slice(events, 1, 7.0, 0.5);
  REQUIRE(s1.points.size() == 1);
  CHECK(s1.points[0][0] == doctest::Approx(0.07).epsilon(1e-12));  // p_0
  CHECK(s1.points[0][1] == -7.0);                                  // p_2

  const SlicedSection s2 = slice(events, 2, -3.0, 0.5);
  REQUIRE(s2.points.size() == 1);
  CHECK(s2.points[0][0] == doctest::Approx(0.03).epsilon(1e-12));  // p_0
  CHECK(s2.points[0][1] == 3.0);                                   // p_1

  CHECK_THROWS_AS(slice(events, 3, 0.0, 0.1), ValidationError);
  CHECK_THROWS_AS(slice(events, 0, 0.0, 0.0), ValidationError);
}

TEST_CASE("auto slice widens the window until enough points survive") {
  const auto events = ladder_events();
  const SlicedSection s = auto_slice(events, 0, 0.505, 0.01, 10, 0.1);
  CHECK(s.tol == doctest::Approx(0.08).epsilon(1e-12));
  CHECK(s.points.size() == 16);

  // The cap halts the search even while starved.
  const SlicedSection starved = auto_slice(events, 0, 0.505, 0.01, 5000, 0.1);
  CHECK(starved.tol == doctest::Approx(0.08).epsilon(1e-12));
  CHECK(starved.points.size() == 16);

  CHECK_THROWS_AS(auto_slice(events, 0, 0.5, 0.2, 10, 0.1), ValidationError);
}

TEST_CASE("median momentum") {
  std::vector<SectionEvent> events(3);
  events[0].p = {3.0, 0.0, 9.0};
  events[1].p = {1.0, 5.0, 8.0};
  events[2].p = {2.0, 4.0, 7.0};
  CHECK(median_momentum(events, 0) == 2.0);
  CHECK(median_momentum(events, 1) == 4.0);
  CHECK(median_momentum(events, 2) == 8.0);
  CHECK_THROWS_AS(median_momentum(events, 3), ValidationError);
}

TEST_CASE("decoupled oscillator returns to the section every half period") {
  const SectionConfig cfg = decoupled_oscillators();
  const SectionRun run = run_sections(cfg);
  REQUIRE(run.events.size() == 15);  // t = pi, 2 pi, ..., 15 pi < 50
  for (std::size_t k = 0; k < run.events.size(); ++k) {
    const SectionEvent& ev = run.events[k];
    CAPTURE(k);
    CHECK(std::abs(ev.t - kPi * static_cast<double>(k + 1)) < 1e-5);
    // Falling through the section first, then alternating.
    CHECK(ev.direction == (k % 2 == 0 ? -1 : 1));
    CHECK(std::abs(std::abs(ev.p[0]) - 1.0) < 1e-5);
    CHECK(ev.residual <= cfg.delta);
    CHECK(std::abs(ev.energy - run.events[0].energy) < 1e-6);
    CHECK(std::abs(ev.h_c - run.events[0].h_c) < 1e-6);
  }
  CHECK(run.energy_drift < 1e-6);
  CHECK(run.hc_drift < 1e-6);
}

TEST_CASE("tolerance-window detection finds the same crossings as interpolation") {
  const SectionConfig sc = decoupled_oscillators();
  SectionConfig tw = sc;
  tw.mode = DetectionMode::ToleranceWindow;
  const SectionRun a = run_sections(sc);
  const SectionRun b = run_sections(tw);
  REQUIRE(a.events.size() == b.events.size());
  for (std::size_t k = 0; k < a.events.size(); ++k) {
    CHECK(std::abs(a.events[k].t - b.events[k].t) <= sc.dt);
    CHECK(a.events[k].direction == b.events[k].direction);
    CHECK(b.events[k].residual < tw.delta);
  }
}

TEST_CASE("no events before the first return") {
  SectionConfig cfg = decoupled_oscillators();
  cfg.t_final = 2.0;  // first return happens at pi
  const SectionRun run = run_sections(cfg);
  CHECK(run.events.empty());
}

TEST_CASE("a fast crossing with a coarse step is rejected, not mislocated") {
  SectionConfig cfg = decoupled_oscillators();
  cfg.dt = 1e-2;
  cfg.delta = 1e-5;
  CHECK_THROWS_AS(run_sections(cfg), ValidationError);
}

TEST_CASE("coupled three-site run produces a well-conserved section") {
  SectionConfig cfg;
  cfg.chain = three_sites();
  cfg.dt = 1e-3;
  cfg.t_final = 2000.0;
  cfg.delta = 1e-3;
  RngStream rng(61);
  cfg.initial = random_initial_state(cfg.chain, 1.0, rng);
  const SectionRun run = run_sections(cfg);
  CHECK(run.events.size() > 50);
  CHECK(run.energy_drift < 1e-6);
  CHECK(run.hc_drift < 1e-6);
  double prev_t = 0.0;
  for (const SectionEvent& ev : run.events) {
    CHECK(ev.t > prev_t);
    prev_t = ev.t;
    CHECK(ev.residual <= cfg.delta);
    CHECK((ev.direction == 1 || ev.direction == -1));
  }
}

TEST_CASE("random initial states are bounded and reproducible") {
  const ChainSpec spec = three_sites();
  RngStream r1(9);
  RngStream r2(9);
  const State a = random_initial_state(spec, 0.7, r1);
  const State b = random_initial_state(spec, 0.7, r2);
  CHECK(a == b);
  for (int i = 0; i < 3; ++i) {
    CHECK(std::abs(a.q[i]) <= 0.7);
    CHECK(std::abs(a.p[i]) <= 0.7);
  }
  RngStream r3(10);
  CHECK(random_initial_state(spec, 0.7, r3) != a);
  CHECK_THROWS_AS(random_initial_state(spec, 0.0, r3), ValidationError);
}

TEST_CASE("section configuration validation") {
  SectionConfig cfg;
  cfg.chain = three_sites();
  cfg.initial = zero_state(cfg.chain);
  cfg.initial.p[0] = 0.5;
  CHECK_NOTHROW(cfg.validate());

  SectionConfig bad = cfg;
  bad.chain.n_dynamic = 4;
  CHECK_THROWS_AS(bad.validate(), ValidationError);
  bad = cfg;
  bad.chain.boundary = Boundary::Periodic;
  CHECK_THROWS_AS(bad.validate(), ValidationError);
  bad = cfg;
  bad.delta = 0.0;
  CHECK_THROWS_AS(bad.validate(), ValidationError);
  bad = cfg;
  bad.initial.q.pop_back();
  CHECK_THROWS_AS(bad.validate(), ValidationError);
}
