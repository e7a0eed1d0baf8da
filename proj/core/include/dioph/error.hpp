// Copyright 2026 The dioph Authors
//
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

#include <stdexcept>
#include <string>

namespace dioph {

// Bad input: unknown constant, malformed config, a recurrence pair that
// violates the structural conditions.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Interval arithmetic precondition violated (division by an interval that
// contains zero, log of a non-positive interval).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// A certified decision could not be made before the precision cap, or a
// search/extension budget was exhausted.
class PrecisionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace dioph
