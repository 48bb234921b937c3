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

#include "todapin/experiment.hpp"

#include <sstream>

#include "todapin/configfile.hpp"
#include "todapin/format.hpp"

namespace todapin {

const char* to_string(ExperimentKind kind) {
  switch (kind) {
    case ExperimentKind::Ness: return "ness";
    case ExperimentKind::Ring: return "ring";
    case ExperimentKind::Poincare: return "poincare";
    case ExperimentKind::Sweep: return "sweep";
  }
  return "?";
}

const char* to_string(Boundary boundary) {
  switch (boundary) {
    case Boundary::Fixed: return "fixed";
    case Boundary::Periodic: return "periodic";
    case Boundary::Open: return "open";
  }
  return "?";
}

const char* to_string(DetectionMode mode) {
  switch (mode) {
    case DetectionMode::SignCrossing: return "sign_crossing";
    case DetectionMode::ToleranceWindow: return "tolerance_window";
  }
  return "?";
}

namespace {

ExperimentKind parse_kind(const std::string& s) {
  if (s == "ness") return ExperimentKind::Ness;
  if (s == "ring") return ExperimentKind::Ring;
  if (s == "poincare") return ExperimentKind::Poincare;
  if (s == "sweep") return ExperimentKind::Sweep;
  throw ValidationError("[experiment] kind: expected ness, ring, poincare or sweep, got '" +
                        s + "'");
}

Boundary parse_boundary(const std::string& s) {
  if (s == "fixed") return Boundary::Fixed;
  if (s == "periodic") return Boundary::Periodic;
  if (s == "open") return Boundary::Open;
  throw ValidationError("[chain] boundary: expected fixed, periodic or open, got '" + s +
                        "'");
}

DetectionMode parse_detection(const std::string& s) {
  if (s == "sign_crossing") return DetectionMode::SignCrossing;
  if (s == "tolerance_window") return DetectionMode::ToleranceWindow;
  throw ValidationError(
      "[poincare] detection: expected sign_crossing or tolerance_window, got '" + s +
      "'");
}

int checked_int(long long v, const char* what) {
  if (v < -2'000'000'000LL || v > 2'000'000'000LL) {
    throw ValidationError(std::string(what) + " out of range");
  }
  return static_cast<int>(v);
}

std::string format_site_values(const std::vector<std::pair<int, double>>& pairs) {
  std::string out;
  for (const auto& [site, value] : pairs) {
    if (!out.empty()) out += ' ';
    out += std::to_string(site) + ':' + format_g17(value);
  }
  return out;
}

}  // namespace

void ExperimentConfig::validate() const {
  switch (kind) {
    case ExperimentKind::Ness:
      ness_config().validate();
      break;
    case ExperimentKind::Sweep: {
      if (sweep.total_sites_list.size() < 1) {
        throw ValidationError("[sweep] total_sites_list must not be empty");
      }
      if (sweep.nu_list.empty()) {
        throw ValidationError("[sweep] nu_list must not be empty");
      }
      NessConfig base = ness_config();
      for (const SweepPoint& pt : sweep_points()) {
        base.chain.n_dynamic = pt.n_dynamic;
        base.chain.nu = pt.nu;
        base.baths.right_site = base.chain.dyn_end() - 1;
        base.validate();
      }
      break;
    }
    case ExperimentKind::Ring:
      ring_config().validate();
      break;
    case ExperimentKind::Poincare: {
      section_config().validate();
      if (poincare.n_initial_conditions < 1 && !poincare.use_explicit_init) {
        throw ValidationError("[poincare] n_initial_conditions must be at least 1");
      }
      if (!(poincare.state_scale > 0.0)) {
        throw ValidationError("[poincare] state_scale must be positive");
      }
      if (!(poincare.slice_tol > 0.0) || !(poincare.slice_tol_cap >= poincare.slice_tol)) {
        throw ValidationError("[poincare] slice tolerances must satisfy 0 < tol <= cap");
      }
      if (poincare.slice_min_points < 1) {
        throw ValidationError("[poincare] slice_min_points must be positive");
      }
      break;
    }
  }
}

NessConfig ExperimentConfig::ness_config() const {
  NessConfig cfg;
  cfg.chain = chain;
  if (kind == ExperimentKind::Sweep && !sweep.total_sites_list.empty()) {
    cfg.chain.n_dynamic = checked_int(sweep.total_sites_list.front() - 2, "total_sites");
    if (!sweep.nu_list.empty()) cfg.chain.nu = sweep.nu_list.front();
  }
  cfg.baths = baths;
  cfg.baths.left_site = cfg.chain.dyn_begin();
  cfg.baths.right_site = cfg.chain.dyn_end() - 1;
  cfg.dt = ness.dt;
  cfg.steps_relax = ness.steps_relax;
  cfg.steps_measure = ness.steps_measure;
  cfg.measure_stride = ness.measure_stride;
  cfg.n_runs = ness.n_runs;
  cfg.master_seed = master_seed;
  return cfg;
}

RingConfig ExperimentConfig::ring_config() const {
  RingConfig cfg;
  cfg.chain = chain;
  cfg.dt = ring.dt;
  cfg.t_final = ring.t_final;
  cfg.sample_stride = ring.sample_stride;
  cfg.envelope_window_periods = ring.envelope_window_periods;
  cfg.init = ring.init;
  return cfg;
}

SectionConfig ExperimentConfig::section_config() const {
  SectionConfig cfg;
  cfg.chain = chain;
  cfg.dt = poincare.dt;
  cfg.t_final = poincare.t_final;
  cfg.delta = poincare.delta;
  cfg.mode = poincare.mode;
  cfg.initial = poincare.use_explicit_init
                    ? apply_sparse_init(chain, poincare.explicit_init)
                    : zero_state(chain);
  return cfg;
}

std::vector<SweepPoint> ExperimentConfig::sweep_points() const {
  std::vector<SweepPoint> points;
  for (long long sites : sweep.total_sites_list) {
    const int n_dynamic = checked_int(sites, "total_sites") -
                          (chain.boundary == Boundary::Fixed ? 2 : 0);
    for (double nu : sweep.nu_list) points.push_back(SweepPoint{n_dynamic, nu});
  }
  return points;
}

ExperimentConfig parse_config(const std::string& text) {
  IniDoc doc = IniDoc::parse(text);
  ExperimentConfig c;

  doc.allow_section("experiment");
  doc.allow_section("chain");
  doc.allow_section("run");
  const auto kind_str = doc.take("experiment", "kind");
  if (!kind_str) throw ValidationError("[experiment] kind is required");
  c.kind = parse_kind(*kind_str);

  switch (c.kind) {
    case ExperimentKind::Ness:
      doc.allow_section("baths");
      doc.allow_section("ness");
      break;
    case ExperimentKind::Sweep:
      doc.allow_section("baths");
      doc.allow_section("ness");
      doc.allow_section("sweep");
      break;
    case ExperimentKind::Ring:
      doc.allow_section("ring");
      break;
    case ExperimentKind::Poincare:
      doc.allow_section("poincare");
      break;
  }

  // Lattice.  total_sites counts stored sites; the frozen walls of a fixed
  // chain are included.
  Boundary default_boundary = Boundary::Fixed;
  long long default_sites = 0;
  switch (c.kind) {
    case ExperimentKind::Ness:
    case ExperimentKind::Sweep:
      default_boundary = Boundary::Fixed;
      break;
    case ExperimentKind::Ring:
      default_boundary = Boundary::Periodic;
      default_sites = 200;
      break;
    case ExperimentKind::Poincare:
      default_boundary = Boundary::Open;
      default_sites = 3;
      break;
  }
  c.chain.boundary = parse_boundary(
      doc.take_string_or("chain", "boundary", to_string(default_boundary)));
  c.total_sites = doc.take_int_or("chain", "total_sites", default_sites);
  if (c.kind != ExperimentKind::Sweep) {
    if (c.total_sites == 0) throw ValidationError("[chain] total_sites is required");
    const long long frozen = c.chain.boundary == Boundary::Fixed ? 2 : 0;
    if (c.total_sites <= frozen) {
      throw ValidationError("[chain] total_sites leaves no dynamical sites");
    }
    c.chain.n_dynamic = checked_int(c.total_sites - frozen, "total_sites");
  } else {
    c.chain.n_dynamic = 1;  // placeholder; sizes come from the sweep list
  }
  c.chain.a = doc.take_double_or("chain", "a", 1.0);
  c.chain.b = doc.take_double_or("chain", "b", 1.0);
  c.chain.nu = doc.take_double_or("chain", "nu", 1.0);
  c.chain.z = checked_int(doc.take_int_or("chain", "z", 2), "z");

  if (c.kind == ExperimentKind::Ness || c.kind == ExperimentKind::Sweep) {
    c.baths.mu = doc.take_double_or("baths", "mu", 1.0);
    c.baths.t_left = doc.take_double_or("baths", "t_left", 4.0);
    c.baths.t_right = doc.take_double_or("baths", "t_right", 1.0);
    c.baths.left_site = c.chain.dyn_begin();
    c.baths.right_site = c.chain.dyn_end() - 1;

    c.ness.dt = doc.take_double_or("ness", "dt", c.ness.dt);
    c.ness.steps_relax = doc.take_int_or("ness", "steps_relax", c.ness.steps_relax);
    c.ness.steps_measure = doc.take_int_or("ness", "steps_measure", c.ness.steps_measure);
    c.ness.measure_stride =
        doc.take_int_or("ness", "measure_stride", c.ness.measure_stride);
    c.ness.n_runs = checked_int(doc.take_int_or("ness", "n_runs", c.ness.n_runs),
                                "n_runs");
  }

  if (c.kind == ExperimentKind::Sweep) {
    const auto sizes = doc.take_int_list("sweep", "total_sites_list");
    if (!sizes) throw ValidationError("[sweep] total_sites_list is required");
    c.sweep.total_sites_list = *sizes;
    const auto nus = doc.take_double_list("sweep", "nu_list");
    c.sweep.nu_list = nus ? *nus : std::vector<double>{c.chain.nu};
  }

  if (c.kind == ExperimentKind::Ring) {
    c.ring.dt = doc.take_double_or("ring", "dt", c.ring.dt);
    c.ring.t_final = doc.take_double_or("ring", "t_final", c.ring.t_final);
    c.ring.sample_stride =
        doc.take_int_or("ring", "sample_stride", c.ring.sample_stride);
    c.ring.envelope_window_periods = doc.take_double_or(
        "ring", "envelope_window_periods", c.ring.envelope_window_periods);
    const auto q = doc.take_site_values("ring", "initial_q");
    const auto p = doc.take_site_values("ring", "initial_p");
    if (q || p) {
      c.ring.init.q = q ? *q : std::vector<std::pair<int, double>>{};
      c.ring.init.p = p ? *p : std::vector<std::pair<int, double>>{};
    } else {
      // Localised three-site excitation on lattice labels 0, 1, 2.
      c.ring.init.q = {{0, -1.0}, {2, 1.0}};
      c.ring.init.p = {{1, 1.0}};
    }
  }

  if (c.kind == ExperimentKind::Poincare) {
    c.poincare.dt = doc.take_double_or("poincare", "dt", c.poincare.dt);
    c.poincare.t_final = doc.take_double_or("poincare", "t_final", c.poincare.t_final);
    c.poincare.delta = doc.take_double_or("poincare", "delta", c.poincare.delta);
    c.poincare.mode = parse_detection(
        doc.take_string_or("poincare", "detection", to_string(c.poincare.mode)));
    c.poincare.n_initial_conditions =
        checked_int(doc.take_int_or("poincare", "n_initial_conditions",
                                    c.poincare.n_initial_conditions),
                    "n_initial_conditions");
    c.poincare.state_scale =
        doc.take_double_or("poincare", "state_scale", c.poincare.state_scale);
    c.poincare.slice_tol =
        doc.take_double_or("poincare", "slice_tolerance", c.poincare.slice_tol);
    c.poincare.slice_tol_cap =
        doc.take_double_or("poincare", "slice_tolerance_cap", c.poincare.slice_tol_cap);
    c.poincare.slice_min_points =
        doc.take_int_or("poincare", "slice_min_points", c.poincare.slice_min_points);
    const auto q = doc.take_site_values("poincare", "initial_q");
    const auto p = doc.take_site_values("poincare", "initial_p");
    if (q || p) {
      c.poincare.use_explicit_init = true;
      c.poincare.explicit_init.q = q ? *q : std::vector<std::pair<int, double>>{};
      c.poincare.explicit_init.p = p ? *p : std::vector<std::pair<int, double>>{};
    }
  }

  c.master_seed = doc.take_uint64_or("run", "master_seed", 1);

  doc.require_consumed();
  c.validate();
  return c;
}

std::string emit_config(const ExperimentConfig& c) {
  std::ostringstream out;
  out << "[experiment]\n";
  out << "kind = " << to_string(c.kind) << "\n\n";

  out << "[chain]\n";
  if (c.kind != ExperimentKind::Sweep) {
    out << "total_sites = " << c.total_sites << "\n";
  }
  out << "boundary = " << to_string(c.chain.boundary) << "\n";
  out << "a = " << format_g17(c.chain.a) << "\n";
  out << "b = " << format_g17(c.chain.b) << "\n";
  out << "nu = " << format_g17(c.chain.nu) << "\n";
  out << "z = " << c.chain.z << "\n\n";

  if (c.kind == ExperimentKind::Ness || c.kind == ExperimentKind::Sweep) {
    out << "[baths]\n";
    out << "mu = " << format_g17(c.baths.mu) << "\n";
    out << "t_left = " << format_g17(c.baths.t_left) << "\n";
    out << "t_right = " << format_g17(c.baths.t_right) << "\n\n";
    out << "[ness]\n";
    out << "dt = " << format_g17(c.ness.dt) << "\n";
    out << "steps_relax = " << c.ness.steps_relax << "\n";
    out << "steps_measure = " << c.ness.steps_measure << "\n";
    out << "measure_stride = " << c.ness.measure_stride << "\n";
    out << "n_runs = " << c.ness.n_runs << "\n\n";
  }

  if (c.kind == ExperimentKind::Sweep) {
    out << "[sweep]\n";
    out << "total_sites_list =";
    for (long long v : c.sweep.total_sites_list) out << ' ' << v;
    out << "\n";
    out << "nu_list =";
    for (double v : c.sweep.nu_list) out << ' ' << format_g17(v);
    out << "\n\n";
  }

  if (c.kind == ExperimentKind::Ring) {
    out << "[ring]\n";
    out << "dt = " << format_g17(c.ring.dt) << "\n";
    out << "t_final = " << format_g17(c.ring.t_final) << "\n";
    out << "sample_stride = " << c.ring.sample_stride << "\n";
    out << "envelope_window_periods = " << format_g17(c.ring.envelope_window_periods)
        << "\n";
    out << "initial_q = " << format_site_values(c.ring.init.q) << "\n";
    out << "initial_p = " << format_site_values(c.ring.init.p) << "\n\n";
  }

  if (c.kind == ExperimentKind::Poincare) {
    out << "[poincare]\n";
    out << "dt = " << format_g17(c.poincare.dt) << "\n";
    out << "t_final = " << format_g17(c.poincare.t_final) << "\n";
    out << "delta = " << format_g17(c.poincare.delta) << "\n";
    out << "detection = " << to_string(c.poincare.mode) << "\n";
    out << "n_initial_conditions = " << c.poincare.n_initial_conditions << "\n";
    out << "state_scale = " << format_g17(c.poincare.state_scale) << "\n";
    out << "slice_tolerance = " << format_g17(c.poincare.slice_tol) << "\n";
    out << "slice_tolerance_cap = " << format_g17(c.poincare.slice_tol_cap) << "\n";
    out << "slice_min_points = " << c.poincare.slice_min_points << "\n";
    if (c.poincare.use_explicit_init) {
      out << "initial_q = " << format_site_values(c.poincare.explicit_init.q) << "\n";
      out << "initial_p = " << format_site_values(c.poincare.explicit_init.p) << "\n";
    }
    out << "\n";
  }

  out << "[run]\n";
  out << "master_seed = " << c.master_seed << "\n";
  return out.str();
}

}  // namespace todapin
