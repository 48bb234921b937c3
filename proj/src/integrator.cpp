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

#include "todapin/integrator.hpp"

namespace todapin {

void BathSpec::validate(const ChainSpec& spec) const {
  if (!(mu >= 0.0) || !std::isfinite(mu)) {
    throw ValidationError("bath coupling mu must be non-negative");
  }
  if (!(t_left > 0.0) || !(t_right > 0.0)) {
    throw ValidationError("bath temperatures must be positive");
  }
  const int begin = spec.dyn_begin();
  const int end = spec.dyn_end();
  for (int site : {left_site, right_site}) {
    if (site < begin || site >= end) {
      throw ValidationError("bath site " + std::to_string(site) +
                            " is not a dynamical site");
    }
  }
}

State evolve(State state, const ChainSpec& spec, const std::optional<BathSpec>& baths,
             const StepperConfig& cfg, long long n_steps, RngStream& rng,
             long long observer_stride, const Observer& observer) {
  return evolve_with(std::move(state), spec, toda_bond(spec), baths, cfg, n_steps, rng,
                     observer_stride, observer);
}

void deterministic_step(State& s, const ChainSpec& spec, double dt) {
  validate_state(s, spec);
  Stepper<TodaBond> stepper(spec, toda_bond(spec), dt, nullptr);
  stepper.step(s, nullptr);
}

void langevin_step(State& s, const ChainSpec& spec, const BathSpec& baths, double dt,
                   RngStream& rng) {
  validate_state(s, spec);
  Stepper<TodaBond> stepper(spec, toda_bond(spec), dt, &baths);
  stepper.step(s, &rng);
}

}  // namespace todapin
