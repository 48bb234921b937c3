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

#include <vector>

#include "todapin/chain.hpp"
#include "todapin/rng.hpp"

namespace todapin::test {

/// Quadratic bond, 0.5 k r^2.  Test-only stand-in for the production
/// kernel: the resulting chain is exactly solvable, which pins down the
/// measurement pipeline independently of the exponential interaction.
struct HarmonicBond {
  double k = 1.0;
  double energy(double r) const { return 0.5 * k * r * r; }
  double derivative(double r) const { return k * r; }
};

/// Random state with every dynamical coordinate uniform in [-amp, amp];
/// frozen sites stay zero.
inline State random_state(const ChainSpec& spec, double amp, RngStream& rng) {
  State s = zero_state(spec);
  for (int i = spec.dyn_begin(); i < spec.dyn_end(); ++i) {
    s.q[i] = amp * (2.0 * rng.uniform() - 1.0);
    s.p[i] = amp * (2.0 * rng.uniform() - 1.0);
  }
  return s;
}

}  // namespace todapin::test
