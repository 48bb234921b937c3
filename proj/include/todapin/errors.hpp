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
#include <stdexcept>
#include <string>

namespace todapin {

/// Raised when inputs violate a documented precondition (bad parameters,
/// malformed configuration, inconsistent state sizes).
class ValidationError : public std::invalid_argument {
 public:
  explicit ValidationError(const std::string& what) : std::invalid_argument(what) {}
};

/// Raised when a trajectory leaves the representable range.  Carries the
/// step index at which the non-finite value was first observed.
class BlowUpError : public std::runtime_error {
 public:
  BlowUpError(const std::string& what, long long step)
      : std::runtime_error(what + " at step " + std::to_string(step)), step_(step) {}

  long long step() const { return step_; }

 private:
  long long step_;
};

/// Raised on filesystem failures while writing experiment output.
class IoError : public std::runtime_error {
 public:
  explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace todapin
