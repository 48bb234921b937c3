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
#include <string>
#include <vector>

#include "todapin/chain.hpp"
#include "todapin/integrator.hpp"
#include "todapin/ness.hpp"
#include "todapin/poincare.hpp"
#include "todapin/ring.hpp"

namespace todapin {

enum class ExperimentKind { Ness, Ring, Poincare, Sweep };

/// Steady-state protocol knobs (see NessConfig for semantics).
struct NessSettings {
  double dt = 0.005;
  long long steps_relax = 20'000'000;
  long long steps_measure = 20'000'000;
  long long measure_stride = 1000;
  int n_runs = 4;

  bool operator==(const NessSettings&) const = default;
};

struct RingSettings {
  double dt = 1e-4;
  double t_final = 8000.0;
  long long sample_stride = 100;
  double envelope_window_periods = 100.0;
  SparseInit init;

  bool operator==(const RingSettings&) const = default;
};

struct PoincareSettings {
  double dt = 1e-4;
  double t_final = 1e5;
  double delta = 1e-3;
  DetectionMode mode = DetectionMode::SignCrossing;
  int n_initial_conditions = 5;
  double state_scale = 1.0;
  double slice_tol = 0.01;
  double slice_tol_cap = 0.1;
  long long slice_min_points = 500;
  /// Non-empty: integrate this single state instead of random draws.
  SparseInit explicit_init;
  bool use_explicit_init = false;

  bool operator==(const PoincareSettings&) const = default;
};

struct SweepSettings {
  std::vector<long long> total_sites_list;
  std::vector<double> nu_list;

  bool operator==(const SweepSettings&) const = default;
};

/// One experiment request: exactly one kind is active; the other settings
/// blocks stay at their defaults.  The chain is described by total stored
/// sites plus boundary; with fixed ends two of those sites are the frozen
/// walls.
struct ExperimentConfig {
  ExperimentKind kind = ExperimentKind::Ness;
  long long total_sites = 0;
  ChainSpec chain;
  BathSpec baths;
  NessSettings ness;
  RingSettings ring;
  PoincareSettings poincare;
  SweepSettings sweep;
  std::uint64_t master_seed = 1;

  bool operator==(const ExperimentConfig&) const = default;

  void validate() const;

  /// Assembled per-module configurations.
  NessConfig ness_config() const;
  RingConfig ring_config() const;
  SectionConfig section_config() const;
  std::vector<SweepPoint> sweep_points() const;
};

/// Parses configuration text into a validated ExperimentConfig with all
/// defaults applied.  Unknown sections or keys are errors carrying the
/// offending line number.
ExperimentConfig parse_config(const std::string& text);

/// Canonical text form; parse_config(emit_config(c)) == c.
std::string emit_config(const ExperimentConfig& c);

const char* to_string(ExperimentKind kind);
const char* to_string(Boundary boundary);
const char* to_string(DetectionMode mode);

}  // namespace todapin
