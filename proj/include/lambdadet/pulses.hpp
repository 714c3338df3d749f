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

// Complex time envelopes for the signal photon, the qubit drive, and the
// classical reset pulse.
//
// Gaussian-type profiles are written in base 2, 2^(-x^2), which equals
// exp(-x^2 ln 2). Evaluation uses std::exp2 so the half-amplitude points fall
// exactly at x = 1 without a rounded ln 2 factor.

#pragma once

#include <complex>
#include <optional>
#include <string_view>

namespace lambdadet {

enum class PulseShape { kGaussian, kSquare, kExponential, kFlatTopDrive, kResetGaussian };

std::string_view to_string(PulseShape shape);
/// Accepts "gaussian", "square", "exponential". Throws std::invalid_argument.
PulseShape parse_signal_shape(std::string_view name);

/// Envelope value f(t) = amplitude_scale * profile(t) * exp(-i carrier_detuning t),
/// zero outside [support_start, support_end]. Profiles are normalized so that
/// signal shapes carry unit norm and the reset pulse carries <n> photons.
class PulseEnvelope {
 public:
  PulseShape shape() const noexcept { return shape_; }
  double length() const noexcept { return length_; }
  double beta() const noexcept { return beta_; }
  double width() const noexcept { return width_; }
  double carrier_detuning() const noexcept { return carrier_detuning_; }
  double amplitude_scale() const noexcept { return amplitude_scale_; }
  double support_start() const noexcept { return support_start_; }
  double support_end() const noexcept { return support_end_; }

  std::complex<double> operator()(double t) const;
  /// |f(t)|; skips the carrier phase.
  double magnitude(double t) const;

  /// Copy with a different carrier detuning.
  PulseEnvelope with_detuning(double detuning) const;

  bool is_zero() const noexcept { return amplitude_scale_ == 0.0; }

 private:
  friend PulseEnvelope signal_envelope(PulseShape, double, double, double);
  friend PulseEnvelope drive_envelope(double, double, double, double, double, double);
  friend PulseEnvelope reset_envelope(double, double, double);

  double profile(double t) const;

  PulseShape shape_ = PulseShape::kGaussian;
  double length_ = 0.0;
  double beta_ = 0.0;
  double width_ = 0.0;
  double carrier_detuning_ = 0.0;
  double amplitude_scale_ = 0.0;
  double support_start_ = 0.0;
  double support_end_ = 0.0;
};

/// Normalized single-photon wavefunction of length l (ns).
///   gaussian:    (8 ln2 / pi l^2)^(1/4) 2^(-t^2/(l/2)^2)
///   square:      1/sqrt(l) on |t| <= l/2
///   exponential: sqrt(2 ln2 / l) 2^(-(t/l + beta/2)) for t >= -beta l/2
/// Exactly at a jump, |f|^2 is half its one-sided value.
/// Throws std::invalid_argument for l <= 0 or a non-signal shape.
PulseEnvelope signal_envelope(PulseShape shape, double length, double beta, double detuning);

/// Flat-top qubit drive: plateau of length beta*l with base-2 Gaussian
/// shoulders of width w. Scaled by drive / sqrt(gamma_prime) so that
/// sqrt(gamma_prime) |f_d| equals the Rabi drive on the plateau.
PulseEnvelope drive_envelope(double drive, double length, double beta, double width,
                             double detuning, double gamma_prime);

/// sqrt(<n>) times the normalized Gaussian of length l.
PulseEnvelope reset_envelope(double n_mean, double length, double detuning);

/// Trapezoid integral of |f|^2 on t0, t0 + dt, ..., t1.
double trapezoid_norm(const PulseEnvelope& f, double t0, double t1, double dt);

}  // namespace lambdadet
