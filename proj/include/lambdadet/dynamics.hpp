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

// Time evolution under a weak coherent signal expanded in powers of its
// amplitude alpha.
//
// The coherent-input density matrix is written as
//     rho_c = sum_{m,n} conj(alpha)^m alpha^n rho^{mn}
// and each component obeys the master equation of the driven system plus
// source terms from its neighbours:
//     d rho^{mn}/dt = L(t) rho^{mn}
//                     - i sqrt(kappa') f_s(t)       [a', rho^{m,n-1}]
//                     - i sqrt(kappa') conj(f_s(t)) [a,  rho^{m-1,n}]
// with rho^{mn} = 0 for negative indices. Fock-state inputs follow from
//     rho_1 = rho^{00} + rho^{11},  rho_2 = rho^{00} + 2 rho^{11} + 2 rho^{22}.
//
// Simulation frame: the qubit rotates at the drive carrier omega_d and the
// resonator at `resonator_frame`. Every envelope passed in carries its own
// residual detuning relative to that frame.

#pragma once

#include "lambdadet/pulses.hpp"
#include "lambdadet/quantum_core.hpp"
#include "lambdadet/system_model.hpp"

#include <optional>
#include <span>
#include <utility>
#include <vector>

namespace lambdadet {

/// One rho^{mn}. Components (m,n) and (n,m) are Hermitian conjugates.
struct DensityComponent {
  HilbertSpace space;
  Matrix matrix;
  int m = 0;
  int n = 0;
};

/// Components rho^{mn} for 0 <= m <= n <= order; the (n,m) partners are
/// derived by conjugate transpose.
class HierarchyState {
 public:
  HierarchyState(HilbertSpace space, int order, double time);

  const HilbertSpace& space() const noexcept { return space_; }
  int order() const noexcept { return order_; }
  double time() const noexcept { return time_; }
  void set_time(double t) noexcept { time_ = t; }

  /// rho^{mn} for any 0 <= m, n <= order.
  Matrix component(int m, int n) const;
  const std::vector<DensityComponent>& stored() const noexcept { return stored_; }
  std::vector<DensityComponent>& stored() noexcept { return stored_; }

  static int stored_count(int order) { return (order + 1) * (order + 2) / 2; }
  /// Position of (m,n), m <= n, in stored().
  static int stored_index(int order, int m, int n);

 private:
  HilbertSpace space_;
  int order_;
  double time_;
  std::vector<DensityComponent> stored_;
};

struct EvolveSpec {
  double resonator_frame = 0.0;
  std::optional<PulseEnvelope> signal;
  std::optional<PulseEnvelope> drive;
  /// Classical field on the resonator port, e.g. a reset pulse.
  std::optional<PulseEnvelope> classical;
  int order = 1;  // 0, 1 or 2
  double t_initial = 0.0;
  double t_final = 0.0;
  BasisLabel initial{Qubit::kGround, 0};
  /// Keep every k-th step in the trajectory. t_initial and t_final are
  /// always kept.
  int record_stride = 1;
};

struct TrajectoryRecord {
  /// <s's> of the Fock-state input with k photons, k = 0..order.
  std::vector<double> excitation;
  /// <a'a> of the Fock-state input with k photons.
  std::vector<double> photons;
  /// <a>^{0n}, n = 0..order.
  std::vector<Complex> field;
};

struct Trajectory {
  std::vector<double> times;
  std::vector<TrajectoryRecord> records;
  HierarchyState final_state;
};

/// Fixed-step RK4 over [t_initial, t_final] with step params.dt (shrunk
/// slightly if needed so the grid lands on t_final). Throws
/// std::invalid_argument for an order outside {0,1,2} or t_initial >= t_final,
/// DivergenceError when non-finite values appear.
Trajectory evolve_hierarchy(const SystemParams& params, const EvolveSpec& spec);

/// Density matrix seen by a Fock-state input with k photons. Requires
/// k <= state.order().
Matrix reconstruct_fock(const HierarchyState& state, int photons);

/// Stationary rho of the constantly driven system in the given frame.
/// Throws SolverError when the stationary state is not unique.
Matrix steady_state(const SystemParams& params, double drive, double resonator_frame);

/// Weak-field reflection coefficient 1 - i sqrt(kappa') <a>^{01}_ss for a
/// unit-amplitude tone at omega_s and a constant drive of Rabi amplitude
/// `drive` (linear response about the driven steady state).
Complex steady_reflection(const SystemParams& params, double drive, double omega_s);

struct AlphaExpansion {
  Complex c00;
  Complex c11;
  Complex c22;
};

/// Brute-force check of the hierarchy: runs the full master equation with a
/// classical signal alpha * f_s for each alpha (averaged over four global
/// phases of alpha), then fits c00 + c11 |alpha|^2 + c22 |alpha|^4 to
/// <S>(t_final). Uses dense operators throughout. Requires at least three
/// distinct alphas.
AlphaExpansion small_alpha_oracle(const SystemParams& params, const EvolveSpec& spec,
                                  std::span<const double> alphas,
                                  const OperatorMatrix& observable);

/// Dense full master-equation evolution of a single density matrix; returns
/// rho(t_final). The signal, if present, is treated as a classical field.
Matrix evolve_master_equation(const SystemParams& params, const EvolveSpec& spec,
                              Complex signal_amplitude);

}  // namespace lambdadet
