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

#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "todapin/chain.hpp"
#include "todapin/integrator.hpp"
#include "todapin/parallel.hpp"
#include "todapin/rng.hpp"
#include "todapin/stats.hpp"

namespace todapin {

/// Protocol for driving a fixed-end lattice to its boundary-driven steady
/// state and measuring transport there.
///
/// Each of n_runs independent trajectories starts from the all-zero state,
/// relaxes for steps_relax steps, then accumulates time averages from one
/// sample every measure_stride steps over steps_measure further steps.
/// Run r draws its noise from the stream derived from (master_seed, r), so
/// a protocol is reproducible from master_seed alone and runs may execute
/// in any order or in parallel.
struct NessConfig {
  ChainSpec chain;
  BathSpec baths;
  double dt = 0.005;
  long long steps_relax = 20'000'000;
  long long steps_measure = 20'000'000;
  long long measure_stride = 1000;
  int n_runs = 4;
  std::uint64_t master_seed = 1;

  void validate() const;
};

/// Steady-state observables for one (N, nu) point.  Profile vectors are
/// indexed by dynamical site (index 0 is the leftmost moving site) and by
/// interior bond (index 0 is the bond between the first two moving
/// sites).  Error entries are between-run standard errors of the mean.
struct NessResult {
  int n = 0;
  double nu = 0.0;
  int z = 2;

  double j_bulk = 0.0;
  double j_left = 0.0;
  double j_right = 0.0;
  double j_bulk_err = 0.0;
  double j_left_err = 0.0;
  double j_right_err = 0.0;

  std::vector<double> temp_profile;
  std::vector<double> temp_err;
  std::vector<double> current_profile;
  std::vector<double> current_err;

  std::vector<std::uint64_t> run_seeds;
};

/// One lattice size / pinning strength of a sweep.
struct SweepPoint {
  int n_dynamic = 0;
  double nu = 0.0;
};

namespace detail {

/// Per-run time averages.
struct RunAverages {
  std::vector<double> temp;
  std::vector<double> bond_current;
};

template <class Bond>
RunAverages measure_one_run_with(const NessConfig& cfg, const Bond& bond,
                                 std::uint64_t seed) {
  const ChainSpec& spec = cfg.chain;
  const int n = spec.n_dynamic;
  RngStream rng(seed);
  StepperConfig scfg;
  scfg.dt = cfg.dt;
  scfg.scheme = Scheme::Langevin;
  scfg.seed = seed;

  State s = zero_state(spec);
  s = evolve_with(std::move(s), spec, bond, cfg.baths, scfg, cfg.steps_relax, rng,
                  cfg.measure_stride);

  RunAverages avg;
  avg.temp.assign(static_cast<std::size_t>(n), 0.0);
  avg.bond_current.assign(static_cast<std::size_t>(n - 1), 0.0);
  long long samples = 0;
  const int begin = spec.dyn_begin();
  Observer sample = [&](const State& st, long long) {
    for (int i = 0; i < n; ++i) {
      const double p = st.p[begin + i];
      avg.temp[i] += p * p;
    }
    for (int j = 0; j + 1 < n; ++j) {
      // Interior bond j couples dynamical sites j and j+1; stored bond
      // index is begin + j.
      avg.bond_current[j] += local_current_with(st, spec, bond, begin + j);
    }
    ++samples;
  };
  evolve_with(std::move(s), spec, bond, cfg.baths, scfg, cfg.steps_measure, rng,
              cfg.measure_stride, sample);
  if (samples < 2) throw ValidationError("measurement window yields fewer than 2 samples");
  for (double& v : avg.temp) v /= static_cast<double>(samples);
  for (double& v : avg.bond_current) v /= static_cast<double>(samples);
  return avg;
}

/// Collapses per-run averages into a NessResult with between-run errors.
NessResult aggregate_runs(const NessConfig& cfg, const std::vector<RunAverages>& runs,
                          const std::vector<std::uint64_t>& seeds);

}  // namespace detail

/// Runs a full sweep of steady-state points under a shared protocol and
/// master seed.  Individual (point, run) jobs are independent and are
/// distributed over `workers` threads; results depend only on the
/// configuration, not on the worker count.
template <class Bond>
std::vector<NessResult> run_ness_sweep_with(const NessConfig& base, const Bond& bond,
                                            const std::vector<SweepPoint>& points,
                                            int workers) {
  base.validate();
  if (points.empty()) throw ValidationError("sweep needs at least one point");
  const auto runs_per_point = static_cast<std::size_t>(base.n_runs);
  std::vector<NessConfig> configs(points.size(), base);
  for (std::size_t k = 0; k < points.size(); ++k) {
    configs[k].chain.n_dynamic = points[k].n_dynamic;
    configs[k].chain.nu = points[k].nu;
    configs[k].baths.right_site = configs[k].chain.dyn_end() - 1;
    configs[k].validate();
  }
  std::vector<std::vector<detail::RunAverages>> all(points.size());
  std::vector<std::vector<std::uint64_t>> seeds(points.size());
  for (std::size_t k = 0; k < points.size(); ++k) {
    all[k].resize(runs_per_point);
    seeds[k].resize(runs_per_point);
    for (std::size_t r = 0; r < runs_per_point; ++r) {
      // Stream index depends on the point position and run only, so a
      // sweep reproduces the standalone runs of each of its points.
      seeds[k][r] = derive_stream_seed(base.master_seed, k * 1000 + r);
    }
  }
  parallel_for_index(points.size() * runs_per_point, workers, [&](std::size_t job) {
    const std::size_t k = job / runs_per_point;
    const std::size_t r = job % runs_per_point;
    all[k][r] = detail::measure_one_run_with(configs[k], bond, seeds[k][r]);
  });
  std::vector<NessResult> results;
  results.reserve(points.size());
  for (std::size_t k = 0; k < points.size(); ++k) {
    results.push_back(detail::aggregate_runs(configs[k], all[k], seeds[k]));
  }
  return results;
}

/// Single steady-state point with the production interaction.
NessResult run_ness(const NessConfig& cfg, int workers = 1);

/// Sweep with the production interaction.
std::vector<NessResult> run_ness_sweep(const NessConfig& base,
                                       const std::vector<SweepPoint>& points,
                                       int workers = 1);

/// Worst relative disagreement among the three current estimators:
/// max pairwise |difference| divided by |mean|.  The estimators are the
/// bulk bond average and the two boundary exchange rates
/// mu (T_hot - <p^2>_first) and mu (<p^2>_last - T_cold).
double estimator_agreement(const NessResult& r);

/// Exponent alpha in J ~ N^{-alpha} from the two largest sizes.
double scaling_exponent_two_point(const std::vector<std::pair<double, double>>& n_vs_j);

/// Exponent alpha from a least-squares fit of log J against log N.
double scaling_exponent_least_squares(
    const std::vector<std::pair<double, double>>& n_vs_j);

}  // namespace todapin
