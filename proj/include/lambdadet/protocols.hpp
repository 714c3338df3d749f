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

// Detector stages (photon capture, microwave reset) and the parameter sweeps
// built on them.
//
// Both stages run on t in [-beta l/2 - 50, beta l/2 + 50] ns with the drive
// plateau centred on t = 0. Capture runs use a resonator frame at the signal
// carrier; reset runs use the reset carrier.

#pragma once

#include "lambdadet/dynamics.hpp"
#include "lambdadet/pulses.hpp"
#include "lambdadet/system_model.hpp"

#include <cstddef>
#include <exception>
#include <functional>
#include <optional>
#include <span>
#include <vector>

namespace lambdadet {

/// Beta that makes the drive plateau cover the signal: 2 for gaussian,
/// 1 for square, 3 for exponential.
double default_beta(PulseShape shape);

inline constexpr double kStageMargin = 50.0;  // ns before and after the plateau

struct CaptureConfig {
  SystemParams params = SystemParams::reference();
  PulseShape shape = PulseShape::kGaussian;
  double length = 100.0;           // ns
  std::optional<double> beta;      // default_beta(shape) when unset
  double smoothing_width = 30.0;   // ns
  std::optional<double> drive;     // impedance-matched drive when unset
  double omega_s = units::from_GHz(10.007);
  std::vector<int> photon_numbers{0, 1};
  int record_stride = 1;

  double resolved_beta() const { return beta.value_or(default_beta(shape)); }
  double t_initial() const { return -0.5 * resolved_beta() * length - kStageMargin; }
  double t_final() const { return 0.5 * resolved_beta() * length + kStageMargin; }
  /// Throws std::invalid_argument on inconsistent fields.
  void validate() const;
};

struct ResetConfig {
  SystemParams params = SystemParams::reference();
  double drive = units::from_MHz(44.0);
  double omega_reset = units::from_GHz(9.860);
  double n_mean = 10.0;
  Qubit initial = Qubit::kExcited;
  double length = 100.0;
  double beta = 2.0;
  double smoothing_width = 30.0;
  int record_stride = 1;

  double t_initial() const { return -0.5 * beta * length - kStageMargin; }
  double t_final() const { return 0.5 * beta * length + kStageMargin; }
  void validate() const;
};

struct StageCurve {
  /// Photon number of the signal for capture; 0 for reset.
  int photons = 0;
  std::vector<double> values;
  double final_value = 0.0;
};

struct StageResult {
  std::vector<double> times;
  std::vector<StageCurve> curves;
  /// Capture: adiabatic ground-state excitation sin^2(theta(t)).
  /// Reset: natural decay of the initial population without any pulse.
  std::vector<double> reference;

  /// End-of-stage probability for the given photon number. Throws
  /// std::out_of_range when it was not simulated.
  double probability(int photons) const;
  const StageCurve& curve(int photons) const;
};

/// sin^2(mixing_angle(sqrt(gamma') |f_d(t)|, omega_q - omega_d)) at each time.
std::vector<double> adiabatic_reference(const PulseEnvelope& drive, const SystemParams& params,
                                        std::span<const double> times);

StageResult run_capture(const CaptureConfig& config);
StageResult run_reset(const ResetConfig& config);

/// Runs task(i) for i in [0, count) on up to `jobs` threads. Every index runs
/// exactly once; if any task throws, the exception of the lowest failing
/// index is rethrown after all threads join.
void parallel_for(std::size_t count, int jobs, const std::function<void(std::size_t)>& task);

/// Inclusive arithmetic grid start, start + step, ..., stop.
std::vector<double> linear_grid(double start, double stop, double step);

struct PulseLengthPoint {
  double gamma;   // rad/ns
  double length;  // ns
  double p1;
};

struct PulseLengthOptimum {
  double gamma;
  double length;  // grid argmax
  double p1;
};

struct PulseLengthSweep {
  std::vector<PulseLengthPoint> points;  // sorted by (gamma, length)
  std::vector<PulseLengthOptimum> optima;
};

/// Total qubit decay rates below gamma' are raised to gamma', the radiative
/// floor; points and optima report the rate actually simulated.
PulseLengthSweep sweep_pulse_length(const CaptureConfig& templ, std::span<const double> lengths,
                                    std::span<const double> gammas, int jobs);

struct DriveMapPoint {
  double drive;    // rad/ns
  double omega_s;  // rad/ns
  double p1;
  std::optional<double> p2;
  std::optional<double> ratio;  // p2 / p1
};

/// Rows sorted by (drive, omega_s).
std::vector<DriveMapPoint> sweep_drive_map(const CaptureConfig& templ, std::span<const double> drives,
                                           std::span<const double> signal_freqs, bool two_photon,
                                           int jobs);

struct ResetMapPoint {
  double drive;
  double omega_reset;
  double p_excited;
};

/// Reset from |e,0> at every grid point; rows sorted by (drive, omega_reset).
std::vector<ResetMapPoint> sweep_reset_map(const ResetConfig& templ, std::span<const double> drives,
                                           std::span<const double> reset_freqs, int jobs);

struct RateRow {
  double drive;
  double k31, k32, k41, k42;
  double w31, w32, w41, w42;
};

std::vector<RateRow> rate_sweep(const SystemParams& params, std::span<const double> drives);

struct ReflectionPoint {
  double drive;
  double omega_s;
  Complex r;
};

std::vector<ReflectionPoint> reflection_map(const SystemParams& params,
                                            std::span<const double> drives,
                                            std::span<const double> signal_freqs, int jobs);

}  // namespace lambdadet
