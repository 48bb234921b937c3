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

#include <array>
#include <cstdint>
#include <vector>

#include "todapin/chain.hpp"
#include "todapin/integrator.hpp"
#include "todapin/rng.hpp"

namespace todapin {

/// How returns to the section q_0 = q_0(0) are detected.
///
/// SignCrossing (default): a sign change of g(t) = q_0(t) - q_0(0) between
/// consecutive steps brackets a crossing; the event state is the linear
/// interpolant at g = 0.  Every crossing is caught regardless of speed.
///
/// ToleranceWindow: steps with |g| < delta are recorded directly, one per
/// crossing (a new recording requires a sign change of g since the last).
/// Faithful to inspecting raw steps, but misses crossings that jump the
/// window in one step.
enum class DetectionMode { SignCrossing, ToleranceWindow };

/// Three-oscillator section experiment on an open lattice.
struct SectionConfig {
  ChainSpec chain;
  double dt = 1e-4;
  double t_final = 1e5;
  double delta = 1e-3;
  DetectionMode mode = DetectionMode::SignCrossing;
  State initial;

  void validate() const;
};

/// One recorded return to the section.
struct SectionEvent {
  double t = 0.0;
  std::array<double, 3> q{};
  std::array<double, 3> p{};
  double energy = 0.0;
  double h_c = 0.0;
  /// +1 when g was increasing through the section, -1 when decreasing.
  int direction = 0;
  /// |q_0 - q_0(0)| of the recorded state.
  double residual = 0.0;
};

/// Events plus conservation diagnostics measured along the run.
struct SectionRun {
  std::vector<SectionEvent> events;
  double energy_drift = 0.0;
  double hc_drift = 0.0;
};

SectionRun run_sections(const SectionConfig& cfg);

/// Two-dimensional cut through the recorded events: keep events with
/// |p_fixed - p_star| <= tol and project onto the remaining two momenta in
/// increasing index order.
struct SlicedSection {
  int fixed_index = 0;
  double p_star = 0.0;
  double tol = 0.0;
  std::vector<std::array<double, 2>> points;
};

SlicedSection slice(const std::vector<SectionEvent>& events, int fixed_index,
                    double p_star, double tol);

/// slice() with the tolerance doubled from tol0 until at least min_points
/// survive or tol would exceed tol_cap.  Returns the last attempt.
SlicedSection auto_slice(const std::vector<SectionEvent>& events, int fixed_index,
                         double p_star, double tol0, std::size_t min_points,
                         double tol_cap);

/// Median momentum of the events along one axis; the default slice centre.
double median_momentum(const std::vector<SectionEvent>& events, int index);

/// Box-counting dimension estimate of a planar point set: least-squares
/// slope of log(occupied boxes) against log(1/edge) over dyadic scales
/// between the set diameter and the median nearest-neighbour spacing.
/// Requires >= 500 points and >= 3 octaves of usable scales.
double box_count_dimension(const std::vector<std::array<double, 2>>& points);

/// Uniform random state: every coordinate and momentum drawn independently
/// from [-scale, scale].
State random_initial_state(const ChainSpec& spec, double scale, RngStream& rng);

}  // namespace todapin
