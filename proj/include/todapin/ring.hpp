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

#include <complex>
#include <cstdint>
#include <utility>
#include <vector>

#include "todapin/chain.hpp"
#include "todapin/integrator.hpp"

namespace todapin {

/// Sparse initial condition: site/value pairs applied on top of the zero
/// state.  Sites not listed stay at zero.
struct SparseInit {
  std::vector<std::pair<int, double>> q;
  std::vector<std::pair<int, double>> p;

  bool operator==(const SparseInit&) const = default;
};

/// Isolated-ring experiment: integrate a periodic lattice from a localised
/// excitation and record the summed bond current.
///
/// The series is sampled every sample_stride steps starting at t = 0.  The
/// envelope is extracted over sliding windows of envelope_window_periods
/// pinning periods (2 pi / nu each).
struct RingConfig {
  ChainSpec chain;
  double dt = 1e-4;
  double t_final = 8000.0;
  long long sample_stride = 100;
  double envelope_window_periods = 100.0;
  SparseInit init;

  void validate() const;
};

/// Envelope of an oscillating series: per-window means of the strict local
/// maxima and minima of the sampled signal.  Windows without an extremum
/// carry NaN in the corresponding slot.
struct EnvelopeSeries {
  std::vector<double> t_center;
  std::vector<double> env_max;
  std::vector<double> env_min;
};

/// Output of one ring run.
struct RingSeries {
  double dt = 0.0;
  double sample_dt = 0.0;
  std::vector<double> t;
  std::vector<double> current;
  EnvelopeSeries envelope;
  /// Angular frequency of the dominant spectral peak and its periodogram
  /// power.
  double omega_star = 0.0;
  double peak_power = 0.0;
  /// Max relative excursion of the total energy over the run.
  double energy_drift = 0.0;
  /// Max absolute excursion of the centre-of-mass invariant, relative to
  /// the initial total energy.  Meaningful as a conservation check only
  /// for z = 2.
  double hc_drift = 0.0;
};

State apply_sparse_init(const ChainSpec& spec, const SparseInit& init);

RingSeries run_ring(const RingConfig& cfg);

/// Envelope extraction; window is a sample count >= 3.
EnvelopeSeries envelope(const std::vector<double>& t, const std::vector<double>& x,
                        long long window_samples);

/// Late-to-early amplitude ratio: mean half-spread (env_max - env_min)/2
/// over the last tenth of envelope windows divided by the same over the
/// first tenth.  Gap windows are skipped.
double persistence_ratio(const EnvelopeSeries& env);

/// Angular frequency of the strongest nonzero-frequency periodogram peak.
/// The series is mean-subtracted, Hann-tapered, zero-padded to a power of
/// two, and the peak bin is refined by parabolic interpolation of log
/// power.  A constant series has no peak and is rejected.
double dominant_frequency(const std::vector<double>& x, double sample_dt,
                          double* peak_power = nullptr);

/// In-place radix-2 decimation-in-time transform; size must be a power of
/// two.  Unnormalised; the inverse is conj-transform-conj / n.
void fft_pow2(std::vector<std::complex<double>>& a);

}  // namespace todapin
