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

#include <cmath>
#include <utility>
#include <vector>

#include "support/fixtures.hpp"
#include "todapin/ness.hpp"

using namespace todapin;

namespace {

NessConfig fixed_chain_config(int n, double nu, double t_left, double t_right) {
  NessConfig cfg;
  cfg.chain.n_dynamic = n;
  cfg.chain.boundary = Boundary::Fixed;
  cfg.chain.nu = nu;
  cfg.chain.z = 2;
  cfg.baths.mu = 1.0;
  cfg.baths.t_left = t_left;
  cfg.baths.t_right = t_right;
  cfg.baths.left_site = 1;
  cfg.baths.right_site = n;
  return cfg;
}

}  // namespace

TEST_CASE("estimator agreement hand value") {
  NessResult r;
  r.j_bulk = 1.0;
  r.j_left = 1.0;
  r.j_right = 1.1;
  // Max pairwise difference 0.1 over mean 31/30.
  CHECK(estimator_agreement(r) == doctest::Approx(3.0 / 31.0).epsilon(1e-14));

  r.j_bulk = 1.0;
  r.j_left = -1.0;
  r.j_right = 0.0;
  CHECK_THROWS_AS(estimator_agreement(r), ValidationError);
}

TEST_CASE("scaling exponents recover a synthetic power law") {
  const double alpha = 0.88;
  std::vector<std::pair<double, double>> points;
  for (double n : {32.0, 64.0, 128.0}) {
    points.emplace_back(n, 5.0 * std::pow(n, -alpha));
  }
  CHECK(scaling_exponent_two_point(points) == doctest::Approx(alpha).epsilon(1e-12));
  CHECK(scaling_exponent_least_squares(points) == doctest::Approx(alpha).epsilon(1e-12));

  // Size-independent currents give exponent zero.
  std::vector<std::pair<double, double>> flat{{32.0, 0.3}, {64.0, 0.3}, {128.0, 0.3}};
  CHECK(scaling_exponent_two_point(flat) == doctest::Approx(0.0).epsilon(1e-14));
  CHECK(scaling_exponent_least_squares(flat) == doctest::Approx(0.0).epsilon(1e-14));

  // The two-point form uses the largest two sizes only.
  std::vector<std::pair<double, double>> scrambled{
      {128.0, 5.0 * std::pow(128.0, -alpha)},
      {32.0, 77.0},
      {64.0, 5.0 * std::pow(64.0, -alpha)}};
  CHECK(scaling_exponent_two_point(scrambled) == doctest::Approx(alpha).epsilon(1e-12));

  CHECK_THROWS_AS(scaling_exponent_two_point({{64.0, 0.5}}), ValidationError);
  CHECK_THROWS_AS(scaling_exponent_two_point({{64.0, 0.5}, {64.0, 0.4}}),
                  ValidationError);
  CHECK_THROWS_AS(scaling_exponent_two_point({{64.0, 0.5}, {128.0, -0.1}}),
                  ValidationError);
}

TEST_CASE("equal bath temperatures give zero current and a flat profile") {
  NessConfig cfg = fixed_chain_config(8, 1.0, 2.0, 2.0);
  cfg.dt = 0.005;
  cfg.steps_relax = 200000;
  cfg.steps_measure = 600000;
  cfg.measure_stride = 50;
  cfg.n_runs = 4;
  cfg.master_seed = 11;
  const NessResult r = run_ness(cfg, 2);

  CHECK(std::abs(r.j_bulk) < 3.0 * r.j_bulk_err);
  CHECK(std::abs(r.j_left) < 3.0 * r.j_left_err);
  CHECK(std::abs(r.j_right) < 3.0 * r.j_right_err);
  for (int i = 0; i < r.n; ++i) {
    CAPTURE(i);
    CHECK(std::abs(r.temp_profile[i] - 2.0) < 3.0 * r.temp_err[i]);
  }
  for (std::size_t j = 0; j < r.current_profile.size(); ++j) {
    CAPTURE(j);
    CHECK(std::abs(r.current_profile[j]) < 3.0 * r.current_err[j]);
  }
}

TEST_CASE("quadratic-bond chain carries a size-independent current") {
  // With a quadratic interaction the lattice is exactly ballistic: the
  // steady-state current does not depend on the chain length.  This pins
  // the whole measurement pipeline against a solvable reference.
  NessConfig base = fixed_chain_config(16, 0.0, 4.0, 1.0);
  base.dt = 0.005;
  base.steps_relax = 1000000;
  base.steps_measure = 1000000;
  base.measure_stride = 100;
  base.n_runs = 3;
  base.master_seed = 7;
  const std::vector<SweepPoint> points{{16, 0.0}, {32, 0.0}};
  const auto results =
      run_ness_sweep_with(base, test::HarmonicBond{1.0}, points, 2);
  REQUIRE(results.size() == 2);
  const NessResult& small = results[0];
  const NessResult& large = results[1];
  CHECK(small.n == 16);
  CHECK(large.n == 32);
  CHECK(small.j_bulk > 0.0);
  CHECK(large.j_bulk > 0.0);
  const double err =
      std::sqrt(small.j_bulk_err * small.j_bulk_err + large.j_bulk_err * large.j_bulk_err);
  CHECK(std::abs(small.j_bulk - large.j_bulk) < 3.0 * err);

  // Bulk sites equilibrate near the mean bath temperature.
  double mid = 0.0;
  for (int i = 4; i < 12; ++i) mid += small.temp_profile[i];
  mid /= 8.0;
  CHECK(std::abs(mid - 2.5) < 0.4);
}

TEST_CASE("a sweep reproduces its standalone points") {
  NessConfig base = fixed_chain_config(4, 1.0, 4.0, 1.0);
  base.dt = 0.005;
  base.steps_relax = 10000;
  base.steps_measure = 20000;
  base.measure_stride = 20;
  base.n_runs = 2;
  base.master_seed = 31;

  NessConfig standalone = fixed_chain_config(6, 0.5, 4.0, 1.0);
  standalone.dt = base.dt;
  standalone.steps_relax = base.steps_relax;
  standalone.steps_measure = base.steps_measure;
  standalone.measure_stride = base.measure_stride;
  standalone.n_runs = base.n_runs;
  standalone.master_seed = base.master_seed;

  const auto swept = run_ness_sweep(base, {{6, 0.5}}, 1);
  const NessResult direct = run_ness(standalone, 1);
  REQUIRE(swept.size() == 1);
  CHECK(swept[0].j_bulk == direct.j_bulk);
  CHECK(swept[0].j_left == direct.j_left);
  CHECK(swept[0].j_right == direct.j_right);
  CHECK(swept[0].temp_profile == direct.temp_profile);
  CHECK(swept[0].current_profile == direct.current_profile);
  CHECK(swept[0].run_seeds == direct.run_seeds);
}

TEST_CASE("results are independent of the worker count") {
  NessConfig base = fixed_chain_config(4, 1.0, 3.0, 1.0);
  base.dt = 0.005;
  base.steps_relax = 5000;
  base.steps_measure = 10000;
  base.measure_stride = 10;
  base.n_runs = 3;
  base.master_seed = 5;
  const std::vector<SweepPoint> points{{4, 1.0}, {5, 0.5}, {6, 2.0}};
  const auto serial = run_ness_sweep(base, points, 1);
  const auto parallel = run_ness_sweep(base, points, 4);
  REQUIRE(serial.size() == parallel.size());
  for (std::size_t k = 0; k < serial.size(); ++k) {
    CHECK(serial[k].j_bulk == parallel[k].j_bulk);
    CHECK(serial[k].j_left == parallel[k].j_left);
    CHECK(serial[k].j_right == parallel[k].j_right);
    CHECK(serial[k].temp_profile == parallel[k].temp_profile);
    CHECK(serial[k].current_profile == parallel[k].current_profile);
  }
}

TEST_CASE("protocol validation") {
  NessConfig cfg = fixed_chain_config(8, 1.0, 4.0, 1.0);
  CHECK_NOTHROW(cfg.validate());

  NessConfig bad = cfg;
  bad.chain.boundary = Boundary::Open;
  bad.baths.left_site = 0;
  bad.baths.right_site = 7;
  CHECK_THROWS_AS(bad.validate(), ValidationError);

  bad = cfg;
  bad.chain.n_dynamic = 3;
  bad.baths.right_site = 3;
  CHECK_THROWS_AS(bad.validate(), ValidationError);

  bad = cfg;
  bad.baths.right_site = 7;  // interior attachment
  CHECK_THROWS_AS(bad.validate(), ValidationError);

  bad = cfg;
  bad.baths.mu = 0.0;
  CHECK_THROWS_AS(bad.validate(), ValidationError);

  bad = cfg;
  bad.n_runs = 1;
  CHECK_THROWS_AS(bad.validate(), ValidationError);

  bad = cfg;
  bad.steps_measure = 500;
  bad.measure_stride = 400;
  CHECK_THROWS_AS(bad.validate(), ValidationError);

  CHECK_THROWS_AS(run_ness_sweep(cfg, {}, 1), ValidationError);
}
