// Copyright 2026 The lambdadet Authors
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

namespace lambdadet {

// Argument-contract violations use std::invalid_argument directly. The types
// below mark failures that callers (mostly the CLI) need to tell apart.

/// Bisection bracket without a sign change; no impedance-matching drive exists.
class NoMatchError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Non-finite values appeared during time integration.
class DivergenceError : public std::runtime_error {
 public:
  DivergenceError(const std::string& what, double time_ns)
      : std::runtime_error(what), time_ns_(time_ns) {}
  double time_ns() const noexcept { return time_ns_; }

 private:
  double time_ns_;
};

/// A linear system that should be regular turned out singular.
class SolverError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed or non-physical run configuration.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace lambdadet
