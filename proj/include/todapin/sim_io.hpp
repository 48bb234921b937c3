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
#include <string>
#include <vector>

#include "todapin/errors.hpp"
#include "todapin/format.hpp"

namespace todapin {

/// Builds one CSV body: `#`-prefixed metadata lines, a column-name line,
/// then data rows.  Metadata carries the parameters a file needs to be
/// interpreted on its own; it never includes timestamps, so identical runs
/// produce byte-identical bodies.
class CsvBuilder {
 public:
  explicit CsvBuilder(std::vector<std::string> columns);

  void meta(const std::string& key, const std::string& value);
  void meta(const std::string& key, double value) { meta(key, format_g17(value)); }
  void meta(const std::string& key, long long value) {
    meta(key, std::to_string(value));
  }

  /// One data row; cell count must match the column count.  Empty cells
  /// are allowed (trailing columns without a value on that row).
  void row(const std::vector<std::string>& cells);

  static std::string cell(double v) { return format_g17(v); }
  static std::string cell(long long v) { return std::to_string(v); }

  std::string build() const;

 private:
  std::vector<std::string> columns_;
  std::vector<std::string> meta_;
  std::vector<std::string> rows_;
};

/// FNV-1a 64-bit content digest, reported in manifests as hex.
std::uint64_t fnv1a64(const std::string& bytes);
std::string fnv1a64_hex(const std::string& bytes);

/// Writes contents atomically enough for our purposes (truncate +
/// write + close), raising IoError on any failure.
void write_file(const std::filesystem::path& path, const std::string& contents);

/// UTC wall-clock instant, ISO 8601.  Manifest-only: anything that feeds
/// CSV bodies must not call this.
std::string iso8601_now();

}  // namespace todapin
