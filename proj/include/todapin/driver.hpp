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

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "todapin/experiment.hpp"

namespace todapin {

inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 1;
inline constexpr int kExitBlowUp = 2;
inline constexpr int kExitIo = 3;

struct RunOptions {
  std::filesystem::path out_dir;
  int workers = 1;
  std::optional<std::uint64_t> seed_override;
};

struct RunOutput {
  /// Names relative to out_dir, in write order; the manifest is last.
  std::vector<std::string> files;
};

/// Executes the experiment and writes its outputs.
///
/// Every data file is written before manifest.json, so the presence of a
/// manifest marks a completed run and its digests cover exactly the files
/// listed.  All result bytes are determined by (config, seed, version);
/// wall-clock metadata appears only in the manifest and summary.  Throws
/// ValidationError, BlowUpError or IoError.
RunOutput run_experiment(const ExperimentConfig& cfg, const RunOptions& opts);

/// run_experiment with exceptions mapped to process exit codes; the error
/// text is printed to stderr.
int run_experiment_exit_code(const ExperimentConfig& cfg, const RunOptions& opts);

}  // namespace todapin
