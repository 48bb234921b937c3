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

#include "todapin/sim_io.hpp"

#include <cstdio>
#include <ctime>
#include <fstream>
#include <sstream>

namespace todapin {

CsvBuilder::CsvBuilder(std::vector<std::string> columns) : columns_(std::move(columns)) {
  if (columns_.empty()) throw ValidationError("CSV needs at least one column");
}

void CsvBuilder::meta(const std::string& key, const std::string& value) {
  meta_.push_back("# " + key + " = " + value);
}

void CsvBuilder::row(const std::vector<std::string>& cells) {
  if (cells.size() != columns_.size()) {
    throw ValidationError("CSV row has " + std::to_string(cells.size()) +
                          " cells, expected " + std::to_string(columns_.size()));
  }
  std::string line;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i > 0) line += ',';
    line += cells[i];
  }
  rows_.push_back(std::move(line));
}

std::string CsvBuilder::build() const {
  std::ostringstream out;
  for (const std::string& m : meta_) out << m << '\n';
  for (std::size_t i = 0; i < columns_.size(); ++i) {
    if (i > 0) out << ',';
    out << columns_[i];
  }
  out << '\n';
  for (const std::string& r : rows_) out << r << '\n';
  return out.str();
}

std::uint64_t fnv1a64(const std::string& bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string fnv1a64_hex(const std::string& bytes) {
  char buf[20];
  std::snprintf(buf, sizeof buf, "%016llx",
                static_cast<unsigned long long>(fnv1a64(bytes)));
  return buf;
}

void write_file(const std::filesystem::path& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
  out.flush();
  if (!out) throw IoError("write failed for " + path.string());
}

std::string iso8601_now() {
  const std::time_t now = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

}  // namespace todapin
