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

// Physical parameters of the driven qubit-resonator circuit, its Hamiltonian
// in the qubit-drive frame, and the dressed four-level manifold.
//
// Units: every frequency and rate is an angular frequency in rad/ns and every
// time is in ns. Linear frequencies are converted with the helpers in
// `units` (a value in GHz is multiplied by 2*pi).

#pragma once

#include "lambdadet/quantum_core.hpp"

#include <array>
#include <numbers>

namespace lambdadet {

namespace units {
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double from_GHz(double f) { return kTwoPi * f; }
constexpr double from_MHz(double f) { return kTwoPi * f * 1e-3; }
constexpr double from_kHz(double f) { return kTwoPi * f * 1e-6; }
constexpr double to_GHz(double w) { return w / kTwoPi; }
constexpr double to_MHz(double w) { return w / kTwoPi * 1e3; }
constexpr double to_kHz(double w) { return w / kTwoPi * 1e6; }
}  // namespace units

struct SystemParams {
  double omega_q = 0.0;      // renormalized qubit frequency
  double omega_r = 0.0;      // renormalized resonator frequency
  double chi = 0.0;          // dispersive shift
  double kappa = 0.0;        // total resonator decay
  double kappa_prime = 0.0;  // resonator decay into the signal waveguide
  double gamma = 0.0;        // total qubit decay
  double gamma_prime = 0.0;  // qubit decay into the drive waveguide
  double omega_d = 0.0;      // qubit drive carrier
  int n_max = 2;             // resonator Fock cutoff
  double dt = 0.02;          // integrator step, ns

  /// Reference device: qubit 5 GHz, resonator 10 GHz, chi 40 MHz,
  /// kappa = kappa' = 20 MHz, gamma 0.1 MHz, gamma' 0.1 kHz, drive 70 MHz
  /// below the qubit (all values divided by 2*pi).
  static SystemParams reference();

  double drive_detuning() const noexcept { return omega_q - omega_d; }

  /// Rates non-negative, kappa' <= kappa, gamma' <= gamma, and
  /// omega_q - 2 chi < omega_d < omega_q. Throws std::invalid_argument.
  void validate() const;
  bool nested() const noexcept;
};

/// Drive-frame Hamiltonian on the full truncated space:
///   omega_r a'a s s' + [(omega_q - omega_d) + (omega_r - 2 chi) a'a] s's
///   + drive (s' + s)
/// The resonator stays at its lab frequency.
OperatorMatrix hamiltonian_driven(const SystemParams& params, double drive);

/// Same Hamiltonian with resonator_frame * a'a subtracted and no drive term.
/// Diagonal in the |q,n> basis.
OperatorMatrix hamiltonian_frame(const SystemParams& params, double resonator_frame);

/// 1/2 atan2(2 drive, detuning): continuous in drive >= 0, pi/4 at zero
/// detuning, pi/2 for drive -> 0 with negative detuning.
double mixing_angle(double drive_magnitude, double detuning);

/// Dressed states of the n <= 1 manifold, labelled 1..4 by ascending energy
/// inside the zero- and one-photon blocks.
struct DressedSpectrum {
  double drive_amplitude = 0.0;
  /// Energies of |1~> .. |4~>.
  std::array<double, 4> energies{};
  /// Components in the n_max = 1 ordering (g0, g1, e0, e1). The |g,n>
  /// component of every vector is real and non-negative.
  std::array<Eigen::Vector4d, 4> vectors{};
  /// True when a block had zero gap and zero drive; bare states are used.
  bool degenerate = false;

  /// kappa'|<u~|a'|j~>|^2 for u in {3,4}, j in {1,2}.
  double rate(int upper, int lower) const;
  /// energies[i-1] - energies[j-1]
  double transition(int i, int j) const;

  std::array<std::array<double, 2>, 2> rates{};  // [u-3][j-1]
};

DressedSpectrum dressed_spectrum(const SystemParams& params, double drive);

/// Smallest drive > 0 with kappa~31 = kappa~32, located by a forward scan of
/// (0, 10 |chi|] followed by bisection down to `tolerance` (rad/ns).
/// Throws NoMatchError when no sign change exists.
double find_impedance_match(const SystemParams& params,
                            double tolerance = units::from_kHz(1.0));

struct RenormalizedFrequencies {
  double omega_r;
  double omega_q;
  double chi;
  /// |bare_r - bare_q| >= 10 g
  bool dispersive;
};

/// Dispersive renormalization of the Jaynes-Cummings frequencies:
/// chi = g^2 / (bare_r - bare_q), omega_r = bare_r + chi, omega_q = bare_q - chi.
/// Throws std::domain_error when bare_r == bare_q.
RenormalizedFrequencies renormalized_frequencies(double bare_omega_r, double bare_omega_q,
                                                 double g);

}  // namespace lambdadet
