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

#include "todapin/configfile.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <sstream>

namespace todapin {

namespace {

std::string trim(const std::string& s) {
  std::size_t b = 0;
  std::size_t e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

double parse_double_token(const std::string& token, const std::string& ctx) {
  double v = 0.0;
  const char* first = token.data();
  const char* last = token.data() + token.size();
  const auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc{} || ptr != last) {
    throw ValidationError(ctx + ": not a number '" + token + "'");
  }
  return v;
}

long long parse_int_token(const std::string& token, const std::string& ctx) {
  const double v = parse_double_token(token, ctx);
  if (!std::isfinite(v) || v != std::floor(v) || std::abs(v) > 9.0e15) {
    throw ValidationError(ctx + ": not an integer '" + token + "'");
  }
  return static_cast<long long>(v);
}

std::vector<std::string> split_list(const std::string& value) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : value) {
    if (std::isspace(static_cast<unsigned char>(c)) || c == ',') {
      if (!cur.empty()) out.push_back(std::move(cur));
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  if (!cur.empty()) out.push_back(std::move(cur));
  return out;
}

}  // namespace

IniDoc IniDoc::parse(const std::string& text) {
  IniDoc doc;
  std::istringstream in(text);
  std::string raw;
  std::string section;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    const std::string s = trim(raw);
    if (s.empty() || s[0] == '#' || s[0] == ';') continue;
    if (s.front() == '[') {
      if (s.back() != ']' || s.size() < 3) {
        throw ValidationError("line " + std::to_string(line) +
                              ": malformed section header '" + s + "'");
      }
      section = trim(s.substr(1, s.size() - 2));
      if (section.empty()) {
        throw ValidationError("line " + std::to_string(line) + ": empty section name");
      }
      doc.sections_[section];
      if (doc.section_lines_.find(section) == doc.section_lines_.end()) {
        doc.section_lines_[section] = line;
      }
      continue;
    }
    const std::size_t eq = s.find('=');
    if (eq == std::string::npos) {
      throw ValidationError("line " + std::to_string(line) +
                            ": expected 'key = value', got '" + s + "'");
    }
    if (section.empty()) {
      throw ValidationError("line " + std::to_string(line) +
                            ": key outside any [section]");
    }
    const std::string key = trim(s.substr(0, eq));
    const std::string value = trim(s.substr(eq + 1));
    if (key.empty()) {
      throw ValidationError("line " + std::to_string(line) + ": empty key");
    }
    auto& slot = doc.sections_[section];
    if (slot.find(key) != slot.end()) {
      throw ValidationError("line " + std::to_string(line) + ": duplicate key '" + key +
                            "' in [" + section + "]");
    }
    slot[key] = Entry{value, line, false};
  }
  return doc;
}

void IniDoc::allow_section(const std::string& name) { allowed_.insert(name); }

bool IniDoc::has(const std::string& section, const std::string& key) const {
  const auto sec = sections_.find(section);
  if (sec == sections_.end()) return false;
  return sec->second.find(key) != sec->second.end();
}

std::string IniDoc::context(const std::string& section, const std::string& key) const {
  std::string ctx = "[" + section + "] " + key;
  const auto sec = sections_.find(section);
  if (sec != sections_.end()) {
    const auto it = sec->second.find(key);
    if (it != sec->second.end()) ctx += " (line " + std::to_string(it->second.line) + ")";
  }
  return ctx;
}

std::optional<std::string> IniDoc::take(const std::string& section,
                                        const std::string& key) {
  const auto sec = sections_.find(section);
  if (sec == sections_.end()) return std::nullopt;
  const auto it = sec->second.find(key);
  if (it == sec->second.end()) return std::nullopt;
  it->second.consumed = true;
  return it->second.value;
}

std::string IniDoc::take_string_or(const std::string& section, const std::string& key,
                                   const std::string& fallback) {
  const auto v = take(section, key);
  return v ? *v : fallback;
}

std::optional<double> IniDoc::take_double(const std::string& section,
                                          const std::string& key) {
  const auto v = take(section, key);
  if (!v) return std::nullopt;
  return parse_double_token(*v, context(section, key));
}

double IniDoc::take_double_or(const std::string& section, const std::string& key,
                              double fallback) {
  const auto v = take_double(section, key);
  return v ? *v : fallback;
}

std::optional<long long> IniDoc::take_int(const std::string& section,
                                          const std::string& key) {
  const auto v = take(section, key);
  if (!v) return std::nullopt;
  return parse_int_token(*v, context(section, key));
}

long long IniDoc::take_int_or(const std::string& section, const std::string& key,
                              long long fallback) {
  const auto v = take_int(section, key);
  return v ? *v : fallback;
}

std::uint64_t IniDoc::take_uint64_or(const std::string& section, const std::string& key,
                                     std::uint64_t fallback) {
  const auto v = take(section, key);
  if (!v) return fallback;
  const std::string ctx = context(section, key);
  std::uint64_t out = 0;
  const char* first = v->data();
  const char* last = v->data() + v->size();
  const auto [ptr, ec] = std::from_chars(first, last, out);
  if (ec != std::errc{} || ptr != last) {
    throw ValidationError(ctx + ": not an unsigned integer '" + *v + "'");
  }
  return out;
}

std::optional<std::vector<long long>> IniDoc::take_int_list(const std::string& section,
                                                            const std::string& key) {
  const auto v = take(section, key);
  if (!v) return std::nullopt;
  const std::string ctx = context(section, key);
  std::vector<long long> out;
  for (const std::string& token : split_list(*v)) {
    out.push_back(parse_int_token(token, ctx));
  }
  if (out.empty()) throw ValidationError(ctx + ": empty list");
  return out;
}

std::optional<std::vector<double>> IniDoc::take_double_list(const std::string& section,
                                                            const std::string& key) {
  const auto v = take(section, key);
  if (!v) return std::nullopt;
  const std::string ctx = context(section, key);
  std::vector<double> out;
  for (const std::string& token : split_list(*v)) {
    out.push_back(parse_double_token(token, ctx));
  }
  if (out.empty()) throw ValidationError(ctx + ": empty list");
  return out;
}

std::optional<std::vector<std::pair<int, double>>> IniDoc::take_site_values(
    const std::string& section, const std::string& key) {
  const auto v = take(section, key);
  if (!v) return std::nullopt;
  const std::string ctx = context(section, key);
  std::vector<std::pair<int, double>> out;
  for (const std::string& token : split_list(*v)) {
    const std::size_t colon = token.find(':');
    if (colon == std::string::npos) {
      throw ValidationError(ctx + ": expected site:value, got '" + token + "'");
    }
    const long long site = parse_int_token(token.substr(0, colon), ctx);
    const double value = parse_double_token(token.substr(colon + 1), ctx);
    out.emplace_back(static_cast<int>(site), value);
  }
  return out;
}

void IniDoc::require_consumed() const {
  for (const auto& [section, entries] : sections_) {
    if (allowed_.find(section) == allowed_.end()) {
      throw ValidationError("unknown section [" + section + "] (line " +
                            std::to_string(section_lines_.at(section)) + ")");
    }
    for (const auto& [key, entry] : entries) {
      if (!entry.consumed) {
        throw ValidationError("unknown key '" + key + "' in [" + section + "] (line " +
                              std::to_string(entry.line) + ")");
      }
    }
  }
}

}  // namespace todapin
