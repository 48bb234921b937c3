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

#include "todapin/driver.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <iostream>
#include <map>

#include <json.hpp>

#include "todapin/parallel.hpp"
#include "todapin/sim_io.hpp"
#include "todapin/version.hpp"

namespace todapin {

namespace {

using njson = nlohmann::ordered_json;

struct Planned {
  std::string name;
  std::string body;
};

std::string format_short(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

/// NaN is not representable in JSON; emit null instead.
njson json_number(double v) {
  if (std::isfinite(v)) return v;
  return nullptr;
}

void stamp_common(CsvBuilder& csv, const ExperimentConfig& cfg) {
  csv.meta("generator", std::string("todapin ") + kVersion);
  csv.meta("experiment", to_string(cfg.kind));
  csv.meta("rng", RngStream::generator_name());
  csv.meta("master_seed", std::to_string(cfg.master_seed));
}

void stamp_chain(CsvBuilder& csv, const ChainSpec& chain) {
  csv.meta("boundary", to_string(chain.boundary));
  csv.meta("n_dynamic", static_cast<long long>(chain.n_dynamic));
  csv.meta("a", chain.a);
  csv.meta("b", chain.b);
  csv.meta("nu", chain.nu);
  csv.meta("z", static_cast<long long>(chain.z));
}

Planned profile_csv(const std::string& name, const ExperimentConfig& cfg,
                    const NessConfig& ncfg, const NessResult& r) {
  CsvBuilder csv({"site_index", "x", "T_j", "T_j_stderr", "J_bond", "J_bond_stderr"});
  stamp_common(csv, cfg);
  stamp_chain(csv, ncfg.chain);
  csv.meta("mu", ncfg.baths.mu);
  csv.meta("t_left", ncfg.baths.t_left);
  csv.meta("t_right", ncfg.baths.t_right);
  csv.meta("dt", ncfg.dt);
  csv.meta("steps_relax", ncfg.steps_relax);
  csv.meta("steps_measure", ncfg.steps_measure);
  csv.meta("measure_stride", ncfg.measure_stride);
  csv.meta("n_runs", static_cast<long long>(ncfg.n_runs));
  const int n = r.n;
  for (int j = 1; j <= n; ++j) {
    std::vector<std::string> cells;
    cells.push_back(CsvBuilder::cell(static_cast<long long>(j)));
    cells.push_back(CsvBuilder::cell(static_cast<double>(j) / n));
    cells.push_back(CsvBuilder::cell(r.temp_profile[j - 1]));
    cells.push_back(CsvBuilder::cell(r.temp_err[j - 1]));
    if (j < n) {
      cells.push_back(CsvBuilder::cell(r.current_profile[j - 1]));
      cells.push_back(CsvBuilder::cell(r.current_err[j - 1]));
    } else {
      cells.push_back("");
      cells.push_back("");
    }
    csv.row(cells);
  }
  return Planned{name, csv.build()};
}

void currents_row(CsvBuilder& csv, const NessResult& r) {
  csv.row({CsvBuilder::cell(static_cast<long long>(r.n)), CsvBuilder::cell(r.nu),
           CsvBuilder::cell(static_cast<long long>(r.z)), CsvBuilder::cell(r.j_bulk),
           CsvBuilder::cell(r.j_left), CsvBuilder::cell(r.j_right),
           CsvBuilder::cell(r.j_bulk_err), CsvBuilder::cell(r.j_left_err),
           CsvBuilder::cell(r.j_right_err)});
}

CsvBuilder currents_builder(const ExperimentConfig& cfg) {
  CsvBuilder csv({"N", "nu", "z", "J_bulk", "J_left", "J_right", "J_bulk_stderr",
                  "J_left_stderr", "J_right_stderr"});
  stamp_common(csv, cfg);
  return csv;
}

njson currents_json(const NessResult& r) {
  njson j;
  j["n_dynamic"] = r.n;
  j["nu"] = r.nu;
  j["z"] = r.z;
  j["j_bulk"] = json_number(r.j_bulk);
  j["j_left"] = json_number(r.j_left);
  j["j_right"] = json_number(r.j_right);
  j["j_bulk_stderr"] = json_number(r.j_bulk_err);
  j["j_left_stderr"] = json_number(r.j_left_err);
  j["j_right_stderr"] = json_number(r.j_right_err);
  try {
    j["estimator_agreement"] = estimator_agreement(r);
  } catch (const ValidationError&) {
    j["estimator_agreement"] = nullptr;
  }
  j["run_seeds"] = r.run_seeds;
  return j;
}

/// Per-nu scaling fits over the sizes of a sweep; null when undefined.
njson scaling_json(const std::vector<NessResult>& results) {
  std::map<double, std::vector<std::pair<double, double>>> by_nu;
  for (const NessResult& r : results) {
    by_nu[r.nu].push_back({static_cast<double>(r.n), r.j_bulk});
  }
  njson out = njson::array();
  for (const auto& [nu, points] : by_nu) {
    njson entry;
    entry["nu"] = nu;
    bool usable = points.size() >= 2;
    for (const auto& [n, jv] : points) usable = usable && jv > 0.0;
    if (usable) {
      entry["alpha_two_point"] = scaling_exponent_two_point(points);
      entry["alpha_least_squares"] = scaling_exponent_least_squares(points);
      auto sorted = points;
      std::sort(sorted.begin(), sorted.end());
      entry["j_ratio_largest_to_smallest"] = sorted.back().second / sorted.front().second;
    } else {
      entry["alpha_two_point"] = nullptr;
      entry["alpha_least_squares"] = nullptr;
      entry["j_ratio_largest_to_smallest"] = nullptr;
    }
    out.push_back(entry);
  }
  return out;
}

std::vector<Planned> plan_ness(const ExperimentConfig& cfg, const RunOptions& opts,
                               njson& summary) {
  const NessConfig ncfg = cfg.ness_config();
  const NessResult r = run_ness(ncfg, opts.workers);
  std::vector<Planned> files;
  files.push_back(profile_csv("profile.csv", cfg, ncfg, r));
  CsvBuilder cur = currents_builder(cfg);
  currents_row(cur, r);
  files.push_back(Planned{"currents.csv", cur.build()});
  summary["result"] = currents_json(r);
  return files;
}

std::vector<Planned> plan_sweep(const ExperimentConfig& cfg, const RunOptions& opts,
                                njson& summary) {
  const NessConfig base = cfg.ness_config();
  const std::vector<SweepPoint> points = cfg.sweep_points();
  const std::vector<NessResult> results = run_ness_sweep(base, points, opts.workers);
  std::vector<Planned> files;
  CsvBuilder cur = currents_builder(cfg);
  njson per_point = njson::array();
  for (std::size_t k = 0; k < results.size(); ++k) {
    const NessResult& r = results[k];
    NessConfig ncfg = base;
    ncfg.chain.n_dynamic = r.n;
    ncfg.chain.nu = r.nu;
    ncfg.baths.right_site = ncfg.chain.dyn_end() - 1;
    const std::string name =
        "profile_n" + std::to_string(r.n) + "_nu" + format_short(r.nu) + ".csv";
    files.push_back(profile_csv(name, cfg, ncfg, r));
    currents_row(cur, r);
    per_point.push_back(currents_json(r));
  }
  files.push_back(Planned{"currents.csv", cur.build()});
  summary["results"] = per_point;
  summary["scaling"] = scaling_json(results);
  return files;
}

std::vector<Planned> plan_ring(const ExperimentConfig& cfg, njson& summary) {
  const RingConfig rcfg = cfg.ring_config();
  const RingSeries series = run_ring(rcfg);
  std::vector<Planned> files;

  CsvBuilder main({"t", "total_current"});
  stamp_common(main, cfg);
  stamp_chain(main, rcfg.chain);
  main.meta("dt", rcfg.dt);
  main.meta("t_final", rcfg.t_final);
  main.meta("sample_stride", rcfg.sample_stride);
  for (std::size_t i = 0; i < series.t.size(); ++i) {
    main.row({CsvBuilder::cell(series.t[i]), CsvBuilder::cell(series.current[i])});
  }
  files.push_back(Planned{"ring.csv", main.build()});

  CsvBuilder env({"t_center", "env_max", "env_min"});
  stamp_common(env, cfg);
  env.meta("envelope_window_periods", rcfg.envelope_window_periods);
  for (std::size_t i = 0; i < series.envelope.t_center.size(); ++i) {
    env.row({CsvBuilder::cell(series.envelope.t_center[i]),
             CsvBuilder::cell(series.envelope.env_max[i]),
             CsvBuilder::cell(series.envelope.env_min[i])});
  }
  files.push_back(Planned{"ring_envelope.csv", env.build()});

  njson res;
  res["omega_star"] = json_number(series.omega_star);
  res["omega_star_convention"] =
      "angular frequency of the dominant spectral peak; compare to nu";
  res["nu"] = rcfg.chain.nu;
  res["peak_power"] = json_number(series.peak_power);
  try {
    res["persistence_ratio"] = persistence_ratio(series.envelope);
  } catch (const ValidationError&) {
    res["persistence_ratio"] = nullptr;
  }
  res["energy_drift"] = json_number(series.energy_drift);
  res["hc_drift"] = json_number(series.hc_drift);
  res["hc_is_invariant"] = rcfg.chain.z == 2;
  res["n_samples"] = series.t.size();
  res["sample_dt"] = series.sample_dt;
  summary["result"] = res;
  return files;
}

struct IcOutcome {
  std::uint64_t seed = 0;
  bool seeded = false;
  State initial;
  SectionRun run;
  std::vector<SlicedSection> slices;
};

std::vector<Planned> plan_poincare(const ExperimentConfig& cfg, const RunOptions& opts,
                                   njson& summary) {
  const PoincareSettings& ps = cfg.poincare;
  const std::size_t n_ics =
      ps.use_explicit_init ? 1 : static_cast<std::size_t>(ps.n_initial_conditions);
  std::vector<IcOutcome> outcomes(n_ics);
  parallel_for_index(n_ics, opts.workers, [&](std::size_t k) {
    SectionConfig scfg = cfg.section_config();
    IcOutcome& oc = outcomes[k];
    if (!ps.use_explicit_init) {
      oc.seed = derive_stream_seed(cfg.master_seed, k);
      oc.seeded = true;
      RngStream rng(oc.seed);
      scfg.initial = random_initial_state(scfg.chain, ps.state_scale, rng);
    }
    oc.initial = scfg.initial;
    oc.run = run_sections(scfg);
    if (!oc.run.events.empty()) {
      for (int axis = 0; axis < 3; ++axis) {
        const double p_star = median_momentum(oc.run.events, axis);
        oc.slices.push_back(auto_slice(oc.run.events, axis, p_star, ps.slice_tol,
                                       static_cast<std::size_t>(ps.slice_min_points),
                                       ps.slice_tol_cap));
      }
    }
  });

  std::vector<Planned> files;
  njson per_ic = njson::array();
  for (std::size_t k = 0; k < n_ics; ++k) {
    const IcOutcome& oc = outcomes[k];
    const std::string prefix = "ic" + std::to_string(k) + "_";

    CsvBuilder sec({"t", "direction", "q0", "q1", "q2", "p0", "p1", "p2", "H", "h_c"});
    stamp_common(sec, cfg);
    stamp_chain(sec, cfg.chain);
    sec.meta("dt", ps.dt);
    sec.meta("t_final", ps.t_final);
    sec.meta("delta", ps.delta);
    sec.meta("detection", to_string(ps.mode));
    if (oc.seeded) sec.meta("ic_seed", std::to_string(oc.seed));
    for (int i = 0; i < 3; ++i) {
      sec.meta("q" + std::to_string(i) + "_init", oc.initial.q[i]);
      sec.meta("p" + std::to_string(i) + "_init", oc.initial.p[i]);
    }
    for (const SectionEvent& ev : oc.run.events) {
      sec.row({CsvBuilder::cell(ev.t),
               CsvBuilder::cell(static_cast<long long>(ev.direction)),
               CsvBuilder::cell(ev.q[0]), CsvBuilder::cell(ev.q[1]),
               CsvBuilder::cell(ev.q[2]), CsvBuilder::cell(ev.p[0]),
               CsvBuilder::cell(ev.p[1]), CsvBuilder::cell(ev.p[2]),
               CsvBuilder::cell(ev.energy), CsvBuilder::cell(ev.h_c)});
    }
    files.push_back(Planned{prefix + "sections.csv", sec.build()});

    njson ic;
    ic["index"] = k;
    ic["seed"] = oc.seeded ? njson(oc.seed) : njson(nullptr);
    ic["n_events"] = oc.run.events.size();
    ic["energy_drift"] = json_number(oc.run.energy_drift);
    ic["hc_drift"] = json_number(oc.run.hc_drift);
    if (oc.run.events.empty()) {
      // Zero-event runs are reported explicitly rather than failing.
      ic["note"] = "no section crossings recorded";
    }
    njson slice_list = njson::array();
    static constexpr std::array<std::array<const char*, 2>, 3> kAxes{
        {{"p1", "p2"}, {"p0", "p2"}, {"p0", "p1"}}};
    for (const SlicedSection& sl : oc.slices) {
      CsvBuilder scsv({kAxes[sl.fixed_index][0], kAxes[sl.fixed_index][1]});
      stamp_common(scsv, cfg);
      scsv.meta("fixed_index", static_cast<long long>(sl.fixed_index));
      scsv.meta("p_star", sl.p_star);
      scsv.meta("tolerance", sl.tol);
      for (const auto& pt : sl.points) {
        scsv.row({CsvBuilder::cell(pt[0]), CsvBuilder::cell(pt[1])});
      }
      const std::string name = prefix + "slice_" + std::to_string(sl.fixed_index) + "_" +
                               format_short(sl.p_star) + ".csv";
      files.push_back(Planned{name, scsv.build()});

      njson sj;
      sj["fixed_index"] = sl.fixed_index;
      sj["p_star"] = sl.p_star;
      sj["tolerance"] = sl.tol;
      sj["n_points"] = sl.points.size();
      try {
        sj["dimension"] = box_count_dimension(sl.points);
      } catch (const ValidationError& e) {
        sj["dimension"] = nullptr;
        sj["dimension_note"] = e.what();
      }
      sj["file"] = name;
      slice_list.push_back(sj);
    }
    ic["slices"] = slice_list;
    per_ic.push_back(ic);
  }
  summary["initial_conditions"] = per_ic;
  return files;
}

}  // namespace

RunOutput run_experiment(const ExperimentConfig& cfg, const RunOptions& opts) {
  ExperimentConfig run_cfg = cfg;
  if (opts.seed_override) run_cfg.master_seed = *opts.seed_override;
  if (opts.workers < 1) throw ValidationError("worker count must be at least 1");
  run_cfg.validate();
  if (opts.out_dir.empty()) throw ValidationError("output directory must be given");

  const auto t0 = std::chrono::steady_clock::now();
  const std::string started_at = iso8601_now();

  njson summary;
  summary["generator"] = std::string("todapin ") + kVersion;
  summary["experiment"] = to_string(run_cfg.kind);
  summary["rng"] = RngStream::generator_name();
  summary["master_seed"] = run_cfg.master_seed;
  summary["config"] = emit_config(run_cfg);

  std::vector<Planned> files;
  switch (run_cfg.kind) {
    case ExperimentKind::Ness:
      files = plan_ness(run_cfg, opts, summary);
      break;
    case ExperimentKind::Sweep:
      files = plan_sweep(run_cfg, opts, summary);
      break;
    case ExperimentKind::Ring:
      files = plan_ring(run_cfg, summary);
      break;
    case ExperimentKind::Poincare:
      files = plan_poincare(run_cfg, opts, summary);
      break;
  }

  const auto t1 = std::chrono::steady_clock::now();
  summary["wall_clock_seconds"] =
      std::chrono::duration<double>(t1 - t0).count();
  files.push_back(Planned{"summary.json", summary.dump(2) + "\n"});

  std::error_code ec;
  std::filesystem::create_directories(opts.out_dir, ec);
  if (ec) {
    throw IoError("cannot create output directory " + opts.out_dir.string() + ": " +
                  ec.message());
  }

  RunOutput out;
  njson manifest;
  manifest["generator"] = std::string("todapin ") + kVersion;
  manifest["experiment"] = to_string(run_cfg.kind);
  manifest["rng"] = RngStream::generator_name();
  manifest["master_seed"] = run_cfg.master_seed;
  manifest["config"] = emit_config(run_cfg);
  manifest["started_at"] = started_at;
  njson flist = njson::array();
  for (const Planned& f : files) {
    write_file(opts.out_dir / f.name, f.body);
    out.files.push_back(f.name);
    njson entry;
    entry["name"] = f.name;
    entry["bytes"] = f.body.size();
    entry["fnv1a64"] = fnv1a64_hex(f.body);
    flist.push_back(entry);
  }
  manifest["files"] = flist;
  manifest["finished_at"] = iso8601_now();
  manifest["wall_clock_seconds"] =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  write_file(opts.out_dir / "manifest.json", manifest.dump(2) + "\n");
  out.files.push_back("manifest.json");
  return out;
}

int run_experiment_exit_code(const ExperimentConfig& cfg, const RunOptions& opts) {
  try {
    run_experiment(cfg, opts);
    return kExitOk;
  } catch (const ValidationError& e) {
    std::cerr << "validation error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const BlowUpError& e) {
    std::cerr << "blow-up: " << e.what() << "\n";
    return kExitBlowUp;
  } catch (const IoError& e) {
    std::cerr << "i/o error: " << e.what() << "\n";
    return kExitIo;
  } catch (const std::filesystem::filesystem_error& e) {
    std::cerr << "i/o error: " << e.what() << "\n";
    return kExitIo;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  }
}

}  // namespace todapin
