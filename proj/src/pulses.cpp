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

#include "lambdadet/pulses.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace lambdadet {

namespace {

// Profiles below this fraction of their peak are treated as zero.
constexpr double kSupportCutoff = 1e-8;

// x at which 2^(-x^2) drops to the cutoff.
double gaussian_reach() { return std::sqrt(-std::log2(kSupportCutoff)); }

double gaussian_peak(double length) {
  return std::pow(8.0 * std::numbers::ln2 / (std::numbers::pi * length * length), 0.25);
}

}  // namespace

std::string_view to_string(PulseShape shape) {
  switch (shape) {
    case PulseShape::kGaussian:
      return "gaussian";
    case PulseShape::kSquare:
      return "square";
    case PulseShape::kExponential:
      return "exponential";
    case PulseShape::kFlatTopDrive:
      return "flat_top_drive";
    case PulseShape::kResetGaussian:
      return "reset_gaussian";
  }
  return "unknown";
}

PulseShape parse_signal_shape(std::string_view name) {
  if (name == "gaussian") return PulseShape::kGaussian;
  if (name == "square") return PulseShape::kSquare;
  if (name == "exponential") return PulseShape::kExponential;
  throw std::invalid_argument("unknown signal shape '" + std::string(name) +
                              "' (expected gaussian, square or exponential)");
}

namespace {

// At a jump |f|^2 takes the mean of its one-sided limits, which keeps the
// trapezoid rule second order when the jump sits on a grid point.
bool on_jump(double t, double edge) { return std::abs(t - edge) <= 1e-9 * (1.0 + std::abs(edge)); }

}  // namespace

double PulseEnvelope::profile(double t) const {
  if (t < support_start_ || t > support_end_) return 0.0;
  switch (shape_) {
    case PulseShape::kGaussian:
    case PulseShape::kResetGaussian: {
      const double x = t / (0.5 * length_);
      return gaussian_peak(length_) * std::exp2(-x * x);
    }
    case PulseShape::kSquare: {
      const double v = 1.0 / std::sqrt(length_);
      const bool jump = on_jump(t, -0.5 * length_) || on_jump(t, 0.5 * length_);
      return jump ? v * (1.0 / std::numbers::sqrt2) : v;
    }
    case PulseShape::kExponential: {
      const double v = std::sqrt(2.0 * std::numbers::ln2 / length_) *
                       std::exp2(-(t / length_ + 0.5 * beta_));
      return on_jump(t, support_start_) ? v * (1.0 / std::numbers::sqrt2) : v;
    }
    case PulseShape::kFlatTopDrive: {
      const double edge = 0.5 * beta_ * length_;
      const double over = std::abs(t) - edge;
      if (over <= 0.0) return 1.0;
      const double x = over / (0.5 * width_);
      return std::exp2(-x * x);
    }
  }
  return 0.0;
}

double PulseEnvelope::magnitude(double t) const {
  return std::abs(amplitude_scale_) * profile(t);
}

std::complex<double> PulseEnvelope::operator()(double t) const {
  const double value = amplitude_scale_ * profile(t);
  if (value == 0.0) return {0.0, 0.0};
  if (carrier_detuning_ == 0.0) return {value, 0.0};
  return std::polar(value, -carrier_detuning_ * t);
}

PulseEnvelope PulseEnvelope::with_detuning(double detuning) const {
  PulseEnvelope out = *this;
  out.carrier_detuning_ = detuning;
  return out;
}

PulseEnvelope signal_envelope(PulseShape shape, double length, double beta, double detuning) {
  if (!(length > 0.0)) {
    throw std::invalid_argument("signal_envelope: length must be positive, got " +
                                std::to_string(length));
  }
  PulseEnvelope f;
  f.shape_ = shape;
  f.length_ = length;
  f.beta_ = beta;
  f.carrier_detuning_ = detuning;
  f.amplitude_scale_ = 1.0;
  switch (shape) {
    case PulseShape::kGaussian: {
      const double reach = 0.5 * length * gaussian_reach();
      f.support_start_ = -reach;
      f.support_end_ = reach;
      break;
    }
    case PulseShape::kSquare:
      f.support_start_ = -0.5 * length;
      f.support_end_ = 0.5 * length;
      break;
    case PulseShape::kExponential:
      f.support_start_ = -0.5 * beta * length;
      f.support_end_ = f.support_start_ - length * std::log2(kSupportCutoff);
      break;
    default:
      throw std::invalid_argument("signal_envelope: shape " + std::string(to_string(shape)) +
                                  " is not a signal shape");
  }
  return f;
}

PulseEnvelope drive_envelope(double drive, double length, double beta, double width,
                             double detuning, double gamma_prime) {
  if (!(width > 0.0) || !(beta > 0.0) || !(length > 0.0)) {
    throw std::invalid_argument("drive_envelope: length, beta and width must be positive");
  }
  if (!(gamma_prime > 0.0) && drive != 0.0) {
    throw std::invalid_argument("drive_envelope: gamma_prime must be positive for a nonzero drive");
  }
  PulseEnvelope f;
  f.shape_ = PulseShape::kFlatTopDrive;
  f.length_ = length;
  f.beta_ = beta;
  f.width_ = width;
  f.carrier_detuning_ = detuning;
  f.amplitude_scale_ = drive == 0.0 ? 0.0 : drive / std::sqrt(gamma_prime);
  const double reach = 0.5 * beta * length + 0.5 * width * gaussian_reach();
  f.support_start_ = -reach;
  f.support_end_ = reach;
  return f;
}

PulseEnvelope reset_envelope(double n_mean, double length, double detuning) {
  if (n_mean < 0.0) {
    throw std::invalid_argument("reset_envelope: mean photon number must be >= 0, got " +
                                std::to_string(n_mean));
  }
  PulseEnvelope f = signal_envelope(PulseShape::kGaussian, length, 0.0, detuning);
  f.shape_ = PulseShape::kResetGaussian;
  f.amplitude_scale_ = std::sqrt(n_mean);
  return f;
}

double trapezoid_norm(const PulseEnvelope& f, double t0, double t1, double dt) {
  const long steps = std::lround((t1 - t0) / dt);
  double sum = 0.0;
  for (long k = 0; k <= steps; ++k) {
    const double w = (k == 0 || k == steps) ? 0.5 : 1.0;
    sum += w * std::norm(f(t0 + k * dt));
  }
  return sum * dt;
}

}  // namespace lambdadet
