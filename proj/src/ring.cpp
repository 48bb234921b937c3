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

#include "todapin/ring.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "todapin/stats.hpp"

namespace todapin {

void RingConfig::validate() const {
  chain.validate();
  if (chain.boundary != Boundary::Periodic) {
    throw ValidationError("ring experiment requires a periodic lattice");
  }
  if (!(dt > 0.0)) throw ValidationError("dt must be positive");
  if (!(t_final > 0.0)) throw ValidationError("t_final must be positive");
  if (sample_stride < 1) throw ValidationError("sample stride must be positive");
  if (!(envelope_window_periods > 0.0)) {
    throw ValidationError("envelope window must be positive");
  }
  if (!(chain.nu > 0.0)) {
    throw ValidationError("ring experiment requires nonzero pinning");
  }
  for (const auto& [site, value] : init.q) {
    if (site < 0 || site >= chain.total_sites()) {
      throw ValidationError("initial displacement site " + std::to_string(site) +
                            " out of range");
    }
    if (!std::isfinite(value)) throw ValidationError("initial displacement not finite");
  }
  for (const auto& [site, value] : init.p) {
    if (site < 0 || site >= chain.total_sites()) {
      throw ValidationError("initial momentum site " + std::to_string(site) +
                            " out of range");
    }
    if (!std::isfinite(value)) throw ValidationError("initial momentum not finite");
  }
}

State apply_sparse_init(const ChainSpec& spec, const SparseInit& init) {
  State s = zero_state(spec);
  auto put = [&](std::vector<double>& arr, int site, double value) {
    if (site < 0 || site >= spec.total_sites()) {
      throw ValidationError("initial-condition site " + std::to_string(site) +
                            " out of range [0, " + std::to_string(spec.total_sites()) +
                            ")");
    }
    if (!std::isfinite(value)) {
      throw ValidationError("initial-condition value must be finite");
    }
    arr[static_cast<std::size_t>(site)] = value;
  };
  for (const auto& [site, value] : init.q) put(s.q, site, value);
  for (const auto& [site, value] : init.p) put(s.p, site, value);
  return s;
}

RingSeries run_ring(const RingConfig& cfg) {
  cfg.validate();
  const ChainSpec& spec = cfg.chain;
  State s = apply_sparse_init(spec, cfg.init);

  const long long n_steps = std::llround(cfg.t_final / cfg.dt);
  const long long n_windows = n_steps / cfg.sample_stride;

  RingSeries series;
  series.dt = cfg.dt;
  series.sample_dt = cfg.dt * static_cast<double>(cfg.sample_stride);
  series.t.reserve(static_cast<std::size_t>(n_windows) + 1);
  series.current.reserve(static_cast<std::size_t>(n_windows) + 1);

  const double e0 = total_energy(s, spec);
  const double hc0 = center_of_mass_invariant(s, spec);
  const double e_scale = std::max(1.0, std::abs(e0));
  double energy_drift = 0.0;
  double hc_drift = 0.0;

  auto record = [&](const State& st, long long steps_done) {
    series.t.push_back(static_cast<double>(steps_done) * cfg.dt);
    series.current.push_back(total_current(st, spec));
    energy_drift = std::max(energy_drift, std::abs(total_energy(st, spec) - e0) / e_scale);
    hc_drift = std::max(hc_drift,
                        std::abs(center_of_mass_invariant(st, spec) - hc0) / e_scale);
  };
  record(s, 0);

  StepperConfig scfg;
  scfg.dt = cfg.dt;
  RngStream rng(0);
  evolve(std::move(s), spec, std::nullopt, scfg, n_windows * cfg.sample_stride, rng,
         cfg.sample_stride, record);

  series.energy_drift = energy_drift;
  series.hc_drift = hc_drift;

  const double window_time =
      cfg.envelope_window_periods * 2.0 * std::numbers::pi / spec.nu;
  const long long window_samples =
      std::max<long long>(3, std::llround(window_time / series.sample_dt));
  series.envelope = envelope(series.t, series.current, window_samples);
  try {
    series.omega_star = dominant_frequency(series.current, series.sample_dt,
                                           &series.peak_power);
  } catch (const ValidationError&) {
    // A flat series (e.g. the all-zero state) carries no peak; the series
    // itself is still a valid result.
    series.omega_star = std::numeric_limits<double>::quiet_NaN();
    series.peak_power = 0.0;
  }
  return series;
}

EnvelopeSeries envelope(const std::vector<double>& t, const std::vector<double>& x,
                        long long window_samples) {
  if (t.size() != x.size()) throw ValidationError("envelope needs paired series");
  if (window_samples < 3) throw ValidationError("envelope window must span >= 3 samples");
  const auto n = static_cast<long long>(x.size());
  if (n < window_samples) throw ValidationError("series shorter than one envelope window");

  EnvelopeSeries env;
  const double nan = std::numeric_limits<double>::quiet_NaN();
  for (long long start = 0; start + window_samples <= n; start += window_samples) {
    const long long stop = start + window_samples;
    RunningMoments maxima, minima;
    // Strict interior extrema only; window-edge samples never qualify.
    for (long long i = std::max<long long>(start, 1); i < std::min(stop, n - 1); ++i) {
      if (x[i] > x[i - 1] && x[i] > x[i + 1]) maxima.add(x[i]);
      if (x[i] < x[i - 1] && x[i] < x[i + 1]) minima.add(x[i]);
    }
    env.t_center.push_back(0.5 * (t[start] + t[stop - 1]));
    env.env_max.push_back(maxima.count() > 0 ? maxima.mean() : nan);
    env.env_min.push_back(minima.count() > 0 ? minima.mean() : nan);
  }
  return env;
}

double persistence_ratio(const EnvelopeSeries& env) {
  const auto n = env.t_center.size();
  if (n < 10) throw ValidationError("persistence ratio needs >= 10 envelope windows");
  const std::size_t tenth = n / 10;
  auto mean_amplitude = [&](std::size_t begin, std::size_t end) {
    RunningMoments m;
    for (std::size_t i = begin; i < end; ++i) {
      const double amp = 0.5 * (env.env_max[i] - env.env_min[i]);
      if (std::isfinite(amp)) m.add(amp);
    }
    if (m.count() == 0) throw ValidationError("no extrema in envelope tenth");
    return m.mean();
  };
  const double early = mean_amplitude(0, tenth);
  const double late = mean_amplitude(n - tenth, n);
  if (!(early > 0.0)) throw ValidationError("early envelope amplitude is not positive");
  return late / early;
}

void fft_pow2(std::vector<std::complex<double>>& a) {
  const std::size_t n = a.size();
  if (n == 0 || (n & (n - 1)) != 0) {
    throw ValidationError("transform size must be a power of two");
  }
  for (std::size_t i = 1, j = 0; i < n; ++i) {
    std::size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(a[i], a[j]);
  }
  for (std::size_t len = 2; len <= n; len <<= 1) {
    const double ang = -2.0 * std::numbers::pi / static_cast<double>(len);
    const std::complex<double> wl(std::cos(ang), std::sin(ang));
    for (std::size_t i = 0; i < n; i += len) {
      std::complex<double> w(1.0, 0.0);
      for (std::size_t k = 0; k < len / 2; ++k) {
        const std::complex<double> u = a[i + k];
        const std::complex<double> v = a[i + k + len / 2] * w;
        a[i + k] = u + v;
        a[i + k + len / 2] = u - v;
        w *= wl;
      }
    }
  }
}

double dominant_frequency(const std::vector<double>& x, double sample_dt,
                          double* peak_power) {
  if (x.size() < 8) throw ValidationError("spectrum needs at least 8 samples");
  if (!(sample_dt > 0.0)) throw ValidationError("sample spacing must be positive");
  const std::size_t n = x.size();
  // Constancy is tested on the raw values: subtracting the mean of a
  // constant series leaves rounding residue, not an exact zero.
  const auto [lo, hi] = std::minmax_element(x.begin(), x.end());
  if (*lo == *hi) throw ValidationError("series has no oscillating component");
  double mean = 0.0;
  for (double v : x) mean += v;
  mean /= static_cast<double>(n);

  std::size_t nfft = 1;
  while (nfft < n) nfft <<= 1;
  std::vector<std::complex<double>> buf(nfft, 0.0);
  bool any_signal = false;
  for (std::size_t i = 0; i < n; ++i) {
    const double w =
        0.5 - 0.5 * std::cos(2.0 * std::numbers::pi * static_cast<double>(i) /
                             static_cast<double>(n - 1));
    const double v = (x[i] - mean) * w;
    if (v != 0.0) any_signal = true;
    buf[i] = v;
  }
  if (!any_signal) throw ValidationError("series has no oscillating component");
  fft_pow2(buf);

  const std::size_t half = nfft / 2;
  std::size_t peak = 1;
  double best = -1.0;
  for (std::size_t k = 1; k <= half; ++k) {
    const double p = std::norm(buf[k]);
    if (p > best) {
      best = p;
      peak = k;
    }
  }
  if (!(best > 0.0)) throw ValidationError("series has no oscillating component");

  // Parabolic refinement on log power; degenerate neighbours leave the
  // bin centre untouched.
  double delta = 0.0;
  if (peak > 1 && peak < half) {
    const double pm = std::norm(buf[peak - 1]);
    const double pp = std::norm(buf[peak + 1]);
    if (pm > 0.0 && pp > 0.0) {
      const double lm = std::log(pm);
      const double l0 = std::log(best);
      const double lp = std::log(pp);
      const double denom = lm - 2.0 * l0 + lp;
      if (denom < 0.0) delta = 0.5 * (lm - lp) / denom;
      if (!(delta > -0.5 && delta < 0.5)) delta = 0.0;
    }
  }
  if (peak_power != nullptr) *peak_power = best;
  const double bin = 2.0 * std::numbers::pi /
                     (static_cast<double>(nfft) * sample_dt);
  return (static_cast<double>(peak) + delta) * bin;
}

}  // namespace todapin
