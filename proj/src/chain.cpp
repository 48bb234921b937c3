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

#include "todapin/chain.hpp"

namespace todapin {

void ChainSpec::validate() const {
  if (n_dynamic < 1) throw ValidationError("n_dynamic must be at least 1");
  if (boundary == Boundary::Periodic && n_dynamic < 3) {
    throw ValidationError("periodic boundary requires at least 3 sites");
  }
  if (!(a > 0.0)) throw ValidationError("interaction amplitude a must be positive");
  if (!(b > 0.0)) throw ValidationError("interaction range b must be positive");
  if (!(nu >= 0.0)) throw ValidationError("pinning strength nu must be non-negative");
  if (z < 2 || z % 2 != 0) {
    throw ValidationError("pinning exponent z must be an even integer >= 2");
  }
}

State zero_state(const ChainSpec& spec) {
  spec.validate();
  State s;
  s.q.assign(static_cast<std::size_t>(spec.total_sites()), 0.0);
  s.p.assign(static_cast<std::size_t>(spec.total_sites()), 0.0);
  s.t = 0.0;
  return s;
}

void validate_state(const State& s, const ChainSpec& spec) {
  const auto t = static_cast<std::size_t>(spec.total_sites());
  if (s.q.size() != t || s.p.size() != t) {
    throw ValidationError("state arrays must both have length " + std::to_string(t));
  }
}

std::vector<double> forces(const State& s, const ChainSpec& spec) {
  validate_state(s, spec);
  ForceField<TodaBond> field(spec, toda_bond(spec));
  std::vector<double> f;
  field.compute(s.q, f);
  return f;
}

double total_energy(const State& s, const ChainSpec& spec) {
  return total_energy_with(s, spec, toda_bond(spec));
}

double center_of_mass_invariant(const State& s, const ChainSpec& spec) {
  if (spec.boundary == Boundary::Fixed) {
    throw ValidationError("centre-of-mass invariant is undefined with fixed ends");
  }
  validate_state(s, spec);
  double sq = 0.0;
  double sp = 0.0;
  const int t = spec.total_sites();
  for (int i = 0; i < t; ++i) {
    sq += s.q[i];
    sp += s.p[i];
  }
  return 0.5 * sp * sp + 0.5 * spec.nu * spec.nu * sq * sq;
}

double local_current(const State& s, const ChainSpec& spec, int bond_index) {
  validate_state(s, spec);
  return local_current_with(s, spec, toda_bond(spec), bond_index);
}

double total_current(const State& s, const ChainSpec& spec) {
  validate_state(s, spec);
  const TodaBond bond = toda_bond(spec);
  const int nb = spec.n_bonds();
  double j = 0.0;
  for (int k = 0; k < nb; ++k) j += local_current_with(s, spec, bond, k);
  return j;
}

}  // namespace todapin
