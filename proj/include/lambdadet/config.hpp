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

// Run configuration: a flat `key = value` document. Units are part of the key
// name (`_GHz`, `_MHz`, `_kHz`, `_ns`); frequencies are converted to rad/ns on
// ingestion. Lines starting with '#' are comments. Unknown keys are errors.

#pragma once

#include "lambdadet/protocols.hpp"
#include "lambdadet/pulses.hpp"
#include "lambdadet/system_model.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace lambdadet {

struct FrequencyGrid {
  double start;  // rad/ns
  double stop;
  double step;
  std::vector<double> values() const { return linear_grid(start, stop, step); }
};

enum class AuditStage { kCapture, kReset };

struct RunConfig {
  /// Physical parameters; n_max is resolved per command (capture_params,
  /// reset_params).
  SystemParams params = SystemParams::reference();
  /// Explicit n_max from the document, if any.
  std::optional<int> n_max;

  // capture
  PulseShape shape = PulseShape::kGaussian;
  double pulse_length = 100.0;
  std::optional<double> beta;
  double smoothing_width = 30.0;
  std::optional<double> drive;  // rad/ns; impedance-matched when unset
  double omega_s = units::from_GHz(10.007);
  std::vector<int> photons{0, 1};

  // reset
  double omega_reset = units::from_GHz(9.860);
  double reset_photons = 10.0;
  Qubit initial = Qubit::kExcited;
  std::optional<double> reset_drive;  // defaults to 44 MHz

  // sweeps
  FrequencyGrid drive_grid{0.0, units::from_MHz(30.0), units::from_MHz(0.5)};
  FrequencyGrid signal_grid{units::from_GHz(9.97), units::from_GHz(10.03), units::from_MHz(0.5)};
  FrequencyGrid reset_drive_grid{0.0, units::from_MHz(60.0), units::from_MHz(2.0)};
  FrequencyGrid reset_grid{units::from_GHz(9.80), units::from_GHz(9.95), units::from_MHz(2.5)};
  std::vector<double> lengths{20, 40, 60, 80, 100, 120, 140, 160, 180, 200, 240, 280, 320, 360, 400};
  std::vector<double> gammas{units::from_MHz(0.0), units::from_MHz(0.02), units::from_MHz(0.1)};
  std::vector<PulseShape> shapes{PulseShape::kGaussian};

  // output and numerics
  double record_every = 1.0;  // ns between trajectory rows
  AuditStage audit_stage = AuditStage::kCapture;
  std::optional<int> jobs;

  /// Canonical `key = value` listing of every field, defaults included.
  std::string canonical() const;
  /// FNV-1a 64 of canonical().
  std::uint64_t hash() const;

  /// params with n_max resolved: explicit value, else 2 for capture-type
  /// runs (raised to order + 1 when two-photon inputs are requested), 4 for
  /// reset-type runs.
  SystemParams capture_params(int order) const;
  SystemParams reset_params() const;

  CaptureConfig capture_config() const;
  ResetConfig reset_config() const;
};

/// Parses and validates a configuration document. Throws ConfigError whose
/// message names the line and key.
RunConfig parse_config(std::string_view text);

/// Reads `path` and parses it.
RunConfig load_config(const std::string& path);

/// Every accepted key, in canonical order.
const std::vector<std::string>& config_keys();

}  // namespace lambdadet
