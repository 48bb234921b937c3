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

#include <cmath>
#include <string>
#include <vector>

#include "todapin/errors.hpp"

namespace todapin {

/// Boundary handling for the one-dimensional lattice.
///
/// Fixed:    two extra frozen sites clamp the ends; bonds couple every
///           adjacent pair including frozen-dynamic pairs.
/// Periodic: every site is dynamical and the last site bonds back to the
///           first.
/// Open:     every site is dynamical and the end sites have one bond each.
enum class Boundary { Fixed, Periodic, Open };

/// Static description of a pinned lattice.
///
/// `n_dynamic` counts the sites that actually move.  With fixed ends the
/// stored arrays carry two additional frozen sites (index 0 and index
/// total_sites()-1) held at q = p = 0.  Exponential-interaction parameters
/// are (a, b); on-site pinning has strength nu and even exponent z, with
/// site energy (nu^2 / z) q^z.  All masses are 1.
struct ChainSpec {
  int n_dynamic = 0;
  Boundary boundary = Boundary::Fixed;
  double a = 1.0;
  double b = 1.0;
  double nu = 0.0;
  int z = 2;

  bool operator==(const ChainSpec&) const = default;

  /// Number of stored sites (dynamical plus frozen).
  int total_sites() const {
    return boundary == Boundary::Fixed ? n_dynamic + 2 : n_dynamic;
  }

  /// Number of interaction bonds.
  int n_bonds() const {
    return boundary == Boundary::Periodic ? total_sites() : total_sites() - 1;
  }

  /// First dynamical site index.
  int dyn_begin() const { return boundary == Boundary::Fixed ? 1 : 0; }

  /// One past the last dynamical site index.
  int dyn_end() const {
    return boundary == Boundary::Fixed ? total_sites() - 1 : total_sites();
  }

  /// Throws ValidationError unless every parameter is in range.
  void validate() const;
};

/// Phase-space snapshot.  q and p are indexed by stored site and must both
/// have length ChainSpec::total_sites().
struct State {
  std::vector<double> q;
  std::vector<double> p;
  double t = 0.0;

  bool operator==(const State&) const = default;
};

/// All-zero state of the correct size, t = 0.
State zero_state(const ChainSpec& spec);

/// Throws ValidationError if the state arrays do not match the spec.
void validate_state(const State& s, const ChainSpec& spec);

/// Exponential nearest-neighbour interaction, V(r) = (a/b) e^{-b r}.
///
/// The force kernel V'(r) = -a e^{-b r} is strictly negative: the bond
/// always pushes neighbours apart, hard for r < 0 and exponentially weakly
/// for r > 0.
struct TodaBond {
  double a = 1.0;
  double b = 1.0;

  double energy(double r) const { return (a / b) * std::exp(-b * r); }
  double derivative(double r) const { return -a * std::exp(-b * r); }
};

inline TodaBond toda_bond(const ChainSpec& spec) { return TodaBond{spec.a, spec.b}; }

inline double toda_potential(double r, const ChainSpec& spec) {
  return toda_bond(spec).energy(r);
}

inline double toda_potential_derivative(double r, const ChainSpec& spec) {
  return toda_bond(spec).derivative(r);
}

/// q^k for small non-negative integer k.
inline double pow_int(double q, int k) {
  double y = 1.0;
  for (int i = 0; i < k; ++i) y *= q;
  return y;
}

/// On-site pinning energy (nu^2 / z) q^z.
inline double pinning_energy(double q, const ChainSpec& spec) {
  return spec.nu * spec.nu / spec.z * pow_int(q, spec.z);
}

/// Pinning contribution to the force, -nu^2 q^{z-1}.
inline double pinning_force(double q, const ChainSpec& spec) {
  return -spec.nu * spec.nu * pow_int(q, spec.z - 1);
}

/// Stretch r_j = q_{j+1} - q_j of bond j, with the periodic wrap bond
/// (j = total_sites - 1) closing back to site 0.
inline double bond_stretch(const State& s, const ChainSpec& spec, int bond) {
  const int t = spec.total_sites();
  const int right = bond + 1 == t ? 0 : bond + 1;
  return s.q[right] - s.q[bond];
}

/// Force evaluator over a full displacement array.  Templated on the bond
/// kernel so alternative interactions reuse the same lattice bookkeeping;
/// production code always instantiates TodaBond.
///
/// Holds a scratch buffer of per-bond derivatives so repeated evaluation
/// does not allocate.
template <class Bond>
class ForceField {
 public:
  ForceField(const ChainSpec& spec, Bond bond)
      : spec_(spec), bond_(bond), dv_(static_cast<std::size_t>(spec.n_bonds())) {
    spec_.validate();
  }

  const ChainSpec& spec() const { return spec_; }
  const Bond& bond() const { return bond_; }

  /// Fills f with dp_i/dt for every site.  Frozen sites get exactly 0.
  void compute(const std::vector<double>& q, std::vector<double>& f) {
    const int t = spec_.total_sites();
    const int nb = spec_.n_bonds();
    f.resize(static_cast<std::size_t>(t));
    for (int j = 0; j + 1 < t; ++j) dv_[j] = bond_.derivative(q[j + 1] - q[j]);
    if (nb == t) dv_[t - 1] = bond_.derivative(q[0] - q[t - 1]);
    const bool periodic = spec_.boundary == Boundary::Periodic;
    const double nu2 = spec_.nu * spec_.nu;
    const int zm1 = spec_.z - 1;
    const int begin = spec_.dyn_begin();
    const int end = spec_.dyn_end();
    if (spec_.boundary == Boundary::Fixed) {
      f[0] = 0.0;
      f[t - 1] = 0.0;
    }
    for (int i = begin; i < end; ++i) {
      const double right = i < nb ? dv_[i] : 0.0;
      const double left = i > 0 ? dv_[i - 1] : (periodic ? dv_[t - 1] : 0.0);
      f[i] = right - left - nu2 * pow_int(q[i], zm1);
    }
  }

 private:
  ChainSpec spec_;
  Bond bond_;
  std::vector<double> dv_;
};

/// One-shot force evaluation with the production bond kernel.
std::vector<double> forces(const State& s, const ChainSpec& spec);

/// Total energy: kinetic + pinning over all sites, interaction over all
/// bonds.  Frozen sites contribute only through their bonds.
template <class Bond>
double total_energy_with(const State& s, const ChainSpec& spec, const Bond& bond) {
  validate_state(s, spec);
  const int t = spec.total_sites();
  double e = 0.0;
  for (int i = 0; i < t; ++i) {
    e += 0.5 * s.p[i] * s.p[i] + pinning_energy(s.q[i], spec);
  }
  const int nb = spec.n_bonds();
  for (int j = 0; j < nb; ++j) e += bond.energy(bond_stretch(s, spec, j));
  return e;
}

double total_energy(const State& s, const ChainSpec& spec);

/// Centre-of-mass invariant
///   h_c = (Sigma_i p_i)^2 / 2 + (nu^2 / 2) (Sigma_i q_i)^2.
/// A constant of the motion for harmonic pinning (z = 2) on open and
/// periodic lattices, where the summed coordinate decouples into a free
/// oscillator of frequency nu; not conserved for z != 2.  Undefined with
/// fixed ends (the frozen sites absorb momentum), which is rejected.
double center_of_mass_invariant(const State& s, const ChainSpec& spec);

/// Energy flux through bond j, defined as
///   J_j = -(p_j + p_{j+1}) V'(r_j) / 2,
/// positive for flow in the direction of increasing site index.
template <class Bond>
double local_current_with(const State& s, const ChainSpec& spec, const Bond& bond,
                          int bond_index) {
  if (bond_index < 0 || bond_index >= spec.n_bonds()) {
    throw ValidationError("bond index " + std::to_string(bond_index) +
                          " out of range [0, " + std::to_string(spec.n_bonds()) + ")");
  }
  const int t = spec.total_sites();
  const int right = bond_index + 1 == t ? 0 : bond_index + 1;
  const double r = s.q[right] - s.q[bond_index];
  return -0.5 * (s.p[bond_index] + s.p[right]) * bond.derivative(r);
}

double local_current(const State& s, const ChainSpec& spec, int bond_index);

/// Sum of the local current over every bond.  On a periodic lattice this is
/// the observable whose persistent oscillation distinguishes harmonic from
/// quartic pinning.
double total_current(const State& s, const ChainSpec& spec);

}  // namespace todapin
