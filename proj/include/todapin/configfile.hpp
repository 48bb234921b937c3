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
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "todapin/errors.hpp"

namespace todapin {

/// Parsed key-value configuration text: `[section]` headers, `key = value`
/// lines, `#` or `;` comments.  Lookups mark entries consumed so that
/// leftover (misspelled or misplaced) keys can be reported with their line
/// number instead of being silently ignored.
class IniDoc {
 public:
  static IniDoc parse(const std::string& text);

  /// Declares a legal section name; undeclared sections fail
  /// require_consumed().
  void allow_section(const std::string& name);

  bool has(const std::string& section, const std::string& key) const;

  std::optional<std::string> take(const std::string& section, const std::string& key);

  std::string take_string_or(const std::string& section, const std::string& key,
                             const std::string& fallback);

  double take_double_or(const std::string& section, const std::string& key,
                        double fallback);
  std::optional<double> take_double(const std::string& section, const std::string& key);

  /// Integer fields accept scientific notation (2e7) as long as the value
  /// is exactly integral and within the 53-bit safe range.
  long long take_int_or(const std::string& section, const std::string& key,
                        long long fallback);
  std::optional<long long> take_int(const std::string& section, const std::string& key);

  std::uint64_t take_uint64_or(const std::string& section, const std::string& key,
                               std::uint64_t fallback);

  /// Whitespace- or comma-separated lists.
  std::optional<std::vector<long long>> take_int_list(const std::string& section,
                                                      const std::string& key);
  std::optional<std::vector<double>> take_double_list(const std::string& section,
                                                      const std::string& key);

  /// `site:value` pairs, whitespace- or comma-separated.
  std::optional<std::vector<std::pair<int, double>>> take_site_values(
      const std::string& section, const std::string& key);

  /// Throws ValidationError naming the first unconsumed key or undeclared
  /// section, with its line number.
  void require_consumed() const;

 private:
  struct Entry {
    std::string value;
    int line = 0;
    bool consumed = false;
  };

  std::string context(const std::string& section, const std::string& key) const;

  std::map<std::string, std::map<std::string, Entry>> sections_;
  std::map<std::string, int> section_lines_;
  std::set<std::string> allowed_;
};

}  // namespace todapin
