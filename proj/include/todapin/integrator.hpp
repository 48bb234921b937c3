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

#include <algorithm>
#include <cmath>
#include <functional>
#include <optional>
#include <vector>

#include "todapin/chain.hpp"
#include "todapin/errors.hpp"
#include "todapin/rng.hpp"

namespace todapin {

/// Langevin bath attachment.  Two thermostatted sites, one per end, with a
/// shared coupling rate mu.  Site indices refer to stored sites; with
/// fixed ends the first dynamical site is index 1.
struct BathSpec {
  double mu = 1.0;
  double t_left = 1.0;
  double t_right = 1.0;
  int left_site = 1;
  int right_site = 1;

  bool operator==(const BathSpec&) const = default;

  void validate(const ChainSpec& spec) const;
};

enum class Scheme { Deterministic, Langevin };

/// Per-trajectory integration parameters.  The seed names the RNG stream a
/// driver should construct for the trajectory; deterministic runs never
/// touch it.
struct StepperConfig {
  double dt = 1e-3;
  Scheme scheme = Scheme::Deterministic;
  std::uint64_t seed = 1;

  void validate() const {
    if (!(dt > 0.0) || !std::isfinite(dt)) throw ValidationError("dt must be positive");
  }
};

/// Time stepper for one lattice.
///
/// The deterministic core is velocity Verlet:
///
///   p += (dt/2) f(q);   q += dt p;   p += (dt/2) f(q).
///
/// Forces at the new q are cached across steps, so each step costs one
/// force evaluation.  With baths attached, the step is wrapped
/// symmetrically in exact Ornstein-Uhlenbeck half-updates on the
/// thermostatted momenta,
///
///   p <- c p + sqrt(T (1 - c^2)) xi,   c = exp(-mu dt / 2),
///
/// which samples the bath marginal exactly at any dt.  A bath with mu = 0
/// performs no update at all, so the Langevin stepper at zero coupling
/// reproduces the deterministic trajectory bit for bit.
template <class Bond>
class Stepper {
 public:
  Stepper(const ChainSpec& spec, Bond bond, double dt, const BathSpec* baths)
      : spec_(spec), dt_(dt), field_(spec, bond) {
    if (!(dt > 0.0) || !std::isfinite(dt)) throw ValidationError("dt must be positive");
    if (baths != nullptr) {
      baths->validate(spec);
      const double c = std::exp(-baths->mu * dt / 2.0);
      if (baths->mu > 0.0) {
        attach(baths->left_site, c, baths->t_left);
        if (baths->right_site != baths->left_site) {
          attach(baths->right_site, c, baths->t_right);
        } else if (baths->t_left != baths->t_right) {
          throw ValidationError("coinciding bath sites need equal temperatures");
        }
      }
    }
  }

  const ChainSpec& spec() const { return spec_; }
  double dt() const { return dt_; }

  /// Call after q was modified outside step(); invalidates the force cache.
  void invalidate_forces() { fresh_ = false; }

  /// Advances the state by one step.  rng may be null when no bath is
  /// attached.
  void step(State& s, RngStream* rng) {
    if (!fresh_) {
      field_.compute(s.q, f_);
      fresh_ = true;
    }
    if (!baths_.empty()) kick_baths(s, rng);
    const int begin = spec_.dyn_begin();
    const int end = spec_.dyn_end();
    const double h = dt_ / 2.0;
    for (int i = begin; i < end; ++i) s.p[i] += h * f_[i];
    for (int i = begin; i < end; ++i) s.q[i] += dt_ * s.p[i];
    field_.compute(s.q, f_);
    for (int i = begin; i < end; ++i) s.p[i] += h * f_[i];
    if (!baths_.empty()) kick_baths(s, rng);
    s.t += dt_;
  }

 private:
  struct Attachment {
    int site;
    double decay;
    double temperature;
  };

  void attach(int site, double decay, double temperature) {
    baths_.push_back(Attachment{site, decay, temperature});
  }

  void kick_baths(State& s, RngStream* rng) {
    if (rng == nullptr) throw ValidationError("bath update needs an RNG stream");
    for (const Attachment& at : baths_) {
      const double c = at.decay;
      s.p[at.site] = c * s.p[at.site] +
                     std::sqrt(at.temperature * (1.0 - c * c)) * rng->gaussian();
    }
  }

  ChainSpec spec_;
  double dt_;
  ForceField<Bond> field_;
  std::vector<double> f_;
  bool fresh_ = false;
  std::vector<Attachment> baths_;
};

/// Observer invoked at step-count multiples of the observer stride.  The
/// second argument is the number of steps taken so far.
using Observer = std::function<void(const State&, long long)>;

namespace detail {

inline void check_finite(const State& s, long long step) {
  for (double q : s.q) {
    if (!std::isfinite(q)) throw BlowUpError("non-finite displacement", step);
  }
  for (double p : s.p) {
    if (!std::isfinite(p)) throw BlowUpError("non-finite momentum", step);
  }
}

}  // namespace detail

/// Integrates n_steps steps and returns the final state.
///
/// The trajectory is a pure function of (state, spec, bond, baths, cfg,
/// rng state); the observer stride alters only when the observer fires and
/// when finiteness is checked, never the trajectory itself.  Non-finite
/// values raise BlowUpError carrying the step count at detection.
template <class Bond>
State evolve_with(State state, const ChainSpec& spec, const Bond& bond,
                  const std::optional<BathSpec>& baths, const StepperConfig& cfg,
                  long long n_steps, RngStream& rng, long long observer_stride = 0,
                  const Observer& observer = {}) {
  cfg.validate();
  validate_state(state, spec);
  if (n_steps < 0) throw ValidationError("step count must be non-negative");
  if (observer_stride < 0) throw ValidationError("observer stride must be non-negative");
  const bool use_baths = cfg.scheme == Scheme::Langevin;
  if (use_baths && !baths.has_value()) {
    throw ValidationError("Langevin scheme requires a bath specification");
  }
  Stepper<Bond> stepper(spec, bond, cfg.dt, use_baths ? &*baths : nullptr);
  const long long stride = observer_stride > 0 ? observer_stride : 65536;
  long long done = 0;
  while (done < n_steps) {
    const long long chunk = std::min(stride, n_steps - done);
    for (long long i = 0; i < chunk; ++i) stepper.step(state, &rng);
    done += chunk;
    detail::check_finite(state, done);
    if (observer && observer_stride > 0 && done % observer_stride == 0) {
      observer(state, done);
    }
  }
  return state;
}

/// evolve_with specialised to the production interaction.
State evolve(State state, const ChainSpec& spec, const std::optional<BathSpec>& baths,
             const StepperConfig& cfg, long long n_steps, RngStream& rng,
             long long observer_stride = 0, const Observer& observer = {});

/// Single velocity-Verlet step without baths.
void deterministic_step(State& s, const ChainSpec& spec, double dt);

/// Single bath-wrapped step.
void langevin_step(State& s, const ChainSpec& spec, const BathSpec& baths, double dt,
                   RngStream& rng);

}  // namespace todapin
