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


// Command dispatch for the command-line tool: each command turns a RunConfig
// into one or more result tables, each with optional plots.

#pragma once

#include "lambdadet/config.hpp"
#include "lambdadet/plot.hpp"
#include "lambdadet/table.hpp"

#include <filesystem>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace lambdadet {

struct NamedPlot {
  std::string stem;
  PlotRequest request;
};

struct CommandOutput {
  std::string stem;  // file name without extension
  ResultTable table;
  std::vector<NamedPlot> plots;
};

/// rates, match, reflection, capture, sweep-length, sweep-map, reset,
/// sweep-reset, audit
const std::vector<std::string>& command_names();

/// Runs a command. Output is independent of `jobs`. Throws
/// std::invalid_argument for an unknown name, ConfigError when the config
/// does not suit the command, and propagates numerical errors.
std::vector<CommandOutput> run_command(std::string_view name, const RunConfig& config, int jobs);

/// Writes <stem>.csv for every table and, when `plots` is set, <stem>.svg for
/// every plot into `dir` (created if missing). Returns the written paths.
std::vector<std::filesystem::path> write_outputs(const std::vector<CommandOutput>& outputs,
                                                 const std::filesystem::path& dir, bool plots);

inline constexpr double kAuditDtThreshold = 1e-4;
inline constexpr double kAuditCaptureNmaxThreshold = 1e-3;
inline constexpr double kAuditResetNmaxThreshold = 5e-3;

struct AuditEntry {
  int photons = 0;  // capture: Fock input; reset: 0
  double base = 0.0;
  double dt_half = 0.0;
  double n_max_plus = 0.0;
  double delta_dt = 0.0;
  double delta_n_max = 0.0;
  bool flag_dt = false;
  bool flag_n_max = false;
};

struct AuditReport {
  AuditStage stage = AuditStage::kCapture;
  double dt = 0.0;
  int n_max = 0;
  std::vector<AuditEntry> entries;

  bool flagged() const;
};

/// Reruns the configured stage with dt/2 and with n_max + 1 and compares
/// every end-of-stage probability against the baseline.
AuditReport convergence_audit(const RunConfig& config, int jobs);

}  // namespace lambdadet
