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

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "todapin/driver.hpp"
#include "todapin/version.hpp"

namespace {

int default_workers() {
  if (const char* env = std::getenv("TODAPIN_WORKERS")) {
    try {
      const int v = std::stoi(env);
      if (v >= 1) return v;
    } catch (...) {
    }
    std::cerr << "warning: ignoring invalid TODAPIN_WORKERS='" << env << "'\n";
  }
  return 1;
}

struct SubArgs {
  std::string config_path;
  std::string out_dir;
  std::uint64_t seed = 0;
  bool seed_given = false;
  int workers = default_workers();
};

void add_common(CLI::App* sub, SubArgs& args) {
  sub->add_option("--config", args.config_path, "experiment configuration file")
      ->required();
  sub->add_option("--out", args.out_dir, "output directory")->required();
  sub->add_option("--seed", args.seed, "override the master seed")
      ->each([&args](const std::string&) { args.seed_given = true; });
  sub->add_option("--workers", args.workers,
                  "worker threads (default: TODAPIN_WORKERS or 1)");
}

int run_kind(todapin::ExperimentKind kind, const SubArgs& args) {
  std::ifstream in(args.config_path, std::ios::binary);
  if (!in) {
    std::cerr << "i/o error: cannot read " << args.config_path << "\n";
    return todapin::kExitIo;
  }
  std::ostringstream buf;
  buf << in.rdbuf();

  todapin::ExperimentConfig cfg;
  try {
    cfg = todapin::parse_config(buf.str());
    if (cfg.kind != kind) {
      throw todapin::ValidationError(
          std::string("config declares kind '") + todapin::to_string(cfg.kind) +
          "' but the subcommand is '" + todapin::to_string(kind) + "'");
    }
  } catch (const todapin::ValidationError& e) {
    std::cerr << "validation error: " << e.what() << "\n";
    return todapin::kExitValidation;
  }

  todapin::RunOptions opts;
  opts.out_dir = args.out_dir;
  opts.workers = args.workers;
  if (args.seed_given) opts.seed_override = args.seed;
  return todapin::run_experiment_exit_code(cfg, opts);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"pinned-lattice transport simulator"};
  app.set_version_flag("--version", std::string("todapin ") + todapin::kVersion);
  app.require_subcommand(1);

  SubArgs ness_args, ring_args, poincare_args, sweep_args;
  CLI::App* ness = app.add_subcommand("ness", "boundary-driven steady-state run");
  add_common(ness, ness_args);
  CLI::App* ring = app.add_subcommand("ring", "isolated periodic-ring run");
  add_common(ring, ring_args);
  CLI::App* poincare = app.add_subcommand("poincare", "three-site section run");
  add_common(poincare, poincare_args);
  CLI::App* sweep = app.add_subcommand("sweep", "steady-state size/pinning sweep");
  add_common(sweep, sweep_args);

  CLI11_PARSE(app, argc, argv);

  if (ness->parsed()) return run_kind(todapin::ExperimentKind::Ness, ness_args);
  if (ring->parsed()) return run_kind(todapin::ExperimentKind::Ring, ring_args);
  if (poincare->parsed()) {
    return run_kind(todapin::ExperimentKind::Poincare, poincare_args);
  }
  return run_kind(todapin::ExperimentKind::Sweep, sweep_args);
}
