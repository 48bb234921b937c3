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

#include "todapin/ness.hpp"

#include <algorithm>
#include <cmath>

namespace todapin {

void NessConfig::validate() const {
  chain.validate();
  if (chain.boundary != Boundary::Fixed) {
    throw ValidationError("steady-state protocol requires fixed ends");
  }
  if (chain.n_dynamic < 4) {
    throw ValidationError("steady-state protocol needs at least 4 dynamical sites");
  }
  baths.validate(chain);
  if (baths.left_site != chain.dyn_begin() ||
      baths.right_site != chain.dyn_end() - 1) {
    throw ValidationError("baths must attach to the two end sites");
  }
  if (!(baths.mu > 0.0)) throw ValidationError("bath coupling must be positive");
  if (!(dt > 0.0)) throw ValidationError("dt must be positive");
  if (steps_relax < 0) throw ValidationError("relaxation step count must be non-negative");
  if (steps_measure < 1) throw ValidationError("measurement step count must be positive");
  if (measure_stride < 1) throw ValidationError("measurement stride must be positive");
  if (steps_measure / measure_stride < 2) {
    throw ValidationError("measurement window must cover at least 2 samples");
  }
  if (n_runs < 2) throw ValidationError("between-run errors need at least 2 runs");
}

namespace detail {

NessResult aggregate_runs(const NessConfig& cfg, const std::vector<RunAverages>& runs,
                          const std::vector<std::uint64_t>& seeds) {
  const int n = cfg.chain.n_dynamic;
  NessResult out;
  out.n = n;
  out.nu = cfg.chain.nu;
  out.z = cfg.chain.z;
  out.run_seeds = seeds;
  out.temp_profile.resize(static_cast<std::size_t>(n));
  out.temp_err.resize(static_cast<std::size_t>(n));
  out.current_profile.resize(static_cast<std::size_t>(n - 1));
  out.current_err.resize(static_cast<std::size_t>(n - 1));

  for (int i = 0; i < n; ++i) {
    RunningMoments m;
    for (const RunAverages& run : runs) m.add(run.temp[i]);
    out.temp_profile[i] = m.mean();
    out.temp_err[i] = m.standard_error();
  }
  for (int j = 0; j + 1 < n; ++j) {
    RunningMoments m;
    for (const RunAverages& run : runs) m.add(run.bond_current[j]);
    out.current_profile[j] = m.mean();
    out.current_err[j] = m.standard_error();
  }

  // Bulk estimator: every interior bond except the one touching the hot
  // site, i.e. indices 1 .. n-2 of the interior-bond array (n-2 bonds).
  RunningMoments bulk, left, right;
  for (const RunAverages& run : runs) {
    double sum = 0.0;
    for (int j = 1; j < n - 1; ++j) sum += run.bond_current[j];
    bulk.add(sum / static_cast<double>(n - 2));
    left.add(cfg.baths.mu * (cfg.baths.t_left - run.temp.front()));
    right.add(cfg.baths.mu * (run.temp.back() - cfg.baths.t_right));
  }
  out.j_bulk = bulk.mean();
  out.j_bulk_err = bulk.standard_error();
  out.j_left = left.mean();
  out.j_left_err = left.standard_error();
  out.j_right = right.mean();
  out.j_right_err = right.standard_error();
  return out;
}

}  // namespace detail

NessResult run_ness(const NessConfig& cfg, int workers) {
  return run_ness_sweep(cfg, {SweepPoint{cfg.chain.n_dynamic, cfg.chain.nu}}, workers)
      .front();
}

std::vector<NessResult> run_ness_sweep(const NessConfig& base,
                                       const std::vector<SweepPoint>& points,
                                       int workers) {
  return run_ness_sweep_with(base, toda_bond(base.chain), points, workers);
}

double estimator_agreement(const NessResult& r) {
  const double mean = (r.j_bulk + r.j_left + r.j_right) / 3.0;
  if (mean == 0.0) throw ValidationError("estimator agreement undefined for zero current");
  const double d1 = std::abs(r.j_bulk - r.j_left);
  const double d2 = std::abs(r.j_bulk - r.j_right);
  const double d3 = std::abs(r.j_left - r.j_right);
  return std::max({d1, d2, d3}) / std::abs(mean);
}

namespace {

void check_scaling_input(const std::vector<std::pair<double, double>>& n_vs_j) {
  if (n_vs_j.size() < 2) throw ValidationError("scaling fit needs at least two sizes");
  for (const auto& [n, j] : n_vs_j) {
    if (!(n > 0.0)) throw ValidationError("scaling fit needs positive sizes");
    if (!(j > 0.0)) throw ValidationError("scaling fit needs positive currents");
  }
}

}  // namespace

double scaling_exponent_two_point(
    const std::vector<std::pair<double, double>>& n_vs_j) {
  check_scaling_input(n_vs_j);
  auto sorted = n_vs_j;
  std::sort(sorted.begin(), sorted.end());
  const auto& [n1, j1] = sorted[sorted.size() - 2];
  const auto& [n2, j2] = sorted[sorted.size() - 1];
  if (n1 == n2) throw ValidationError("scaling fit needs distinct sizes");
  return -(std::log(j2) - std::log(j1)) / (std::log(n2) - std::log(n1));
}

double scaling_exponent_least_squares(
    const std::vector<std::pair<double, double>>& n_vs_j) {
  check_scaling_input(n_vs_j);
  std::vector<double> x, y;
  x.reserve(n_vs_j.size());
  y.reserve(n_vs_j.size());
  for (const auto& [n, j] : n_vs_j) {
    x.push_back(std::log(n));
    y.push_back(std::log(j));
  }
  return -least_squares_slope(x, y);
}

}  // namespace todapin
