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


#include "lambdadet/dynamics.hpp"
#include "lambdadet/errors.hpp"
#include "lambdadet/pulses.hpp"
#include "lambdadet/system_model.hpp"

#include <gtest/gtest.h>

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <vector>

namespace lambdadet {
namespace {

using units::from_GHz;
using units::from_MHz;

// Single-photon capture with the reference device: gaussian l = 100 ns,
// beta = 2, w = 30 ns, matched drive, signal at 10.007 GHz.
EvolveSpec capture_spec(const SystemParams& p, int order, double l = 100.0) {
  EvolveSpec spec;
  spec.resonator_frame = from_GHz(10.007);
  spec.order = order;
  spec.t_initial = -l - 50.0;
  spec.t_final = l + 50.0;
  spec.record_stride = 50;
  spec.drive = drive_envelope(find_impedance_match(p), l, 2.0, 30.0, 0.0, p.gamma_prime);
  if (order > 0) spec.signal = signal_envelope(PulseShape::kGaussian, l, 2.0, 0.0);
  return spec;
}

double final_excitation(const SystemParams& p, const EvolveSpec& spec, int k) {
  return evolve_hierarchy(p, spec).records.back().excitation[k];
}

TEST(HierarchyState, StorageLayout) {
  EXPECT_EQ(HierarchyState::stored_count(0), 1);
  EXPECT_EQ(HierarchyState::stored_count(1), 3);
  EXPECT_EQ(HierarchyState::stored_count(2), 6);
  std::vector<int> seen;
  for (int m = 0; m <= 2; ++m) {
    for (int n = m; n <= 2; ++n) seen.push_back(HierarchyState::stored_index(2, m, n));
  }
  std::sort(seen.begin(), seen.end());
  for (int i = 0; i < 6; ++i) EXPECT_EQ(seen[i], i);

  HierarchyState s(build_space(2), 1, 0.0);
  EXPECT_EQ(s.stored().size(), 3u);
  s.stored()[HierarchyState::stored_index(1, 0, 1)].matrix(0, 3) = Complex(0.5, 0.25);
  EXPECT_EQ(s.component(1, 0)(3, 0), Complex(0.5, -0.25));
  EXPECT_THROW(s.component(2, 0), std::invalid_argument);
  EXPECT_THROW(HierarchyState(build_space(2), 3, 0.0), std::invalid_argument);
  EXPECT_THROW(reconstruct_fock(s, 2), std::invalid_argument);
}

TEST(EvolveHierarchy, RejectsBadSpecs) {
  const SystemParams p = SystemParams::reference();
  EvolveSpec spec = capture_spec(p, 1);
  spec.order = 3;
  EXPECT_THROW(evolve_hierarchy(p, spec), std::invalid_argument);
  spec = capture_spec(p, 1);
  spec.t_final = spec.t_initial;
  EXPECT_THROW(evolve_hierarchy(p, spec), std::invalid_argument);
  spec = capture_spec(p, 1);
  spec.record_stride = 0;
  EXPECT_THROW(evolve_hierarchy(p, spec), std::invalid_argument);
}

TEST(EvolveHierarchy, RecordsEndpoints) {
  const SystemParams p = SystemParams::reference();
  EvolveSpec spec = capture_spec(p, 1);
  spec.record_stride = 777;
  const Trajectory tr = evolve_hierarchy(p, spec);
  EXPECT_EQ(tr.times.front(), spec.t_initial);
  EXPECT_NEAR(tr.times.back(), spec.t_final, 1e-12);
  EXPECT_EQ(tr.times.size(), tr.records.size());
  EXPECT_NEAR(tr.final_state.time(), spec.t_final, 1e-12);
}

// Trace pattern, Hermitian pairing and positivity of every reconstructed Fock
// state, checked at several stopping times of a two-photon run.
TEST(EvolveHierarchy, TracePatternPairingAndPositivity) {
  SystemParams p = SystemParams::reference();
  p.n_max = 3;
  for (double t_final : {-20.0, 40.0, 150.0}) {
    EvolveSpec spec = capture_spec(p, 2);
    spec.t_final = t_final;
    const HierarchyState st = evolve_hierarchy(p, spec).final_state;
    for (int m = 0; m <= 2; ++m) {
      for (int n = 0; n <= 2; ++n) {
        const Matrix c = st.component(m, n);
        const Complex tr = c.trace();
        EXPECT_NEAR(std::abs(tr - Complex(m == 0 && n == 0 ? 1.0 : 0.0)), 0.0, 1e-9)
            << "rho^" << m << n << " at t=" << t_final;
        const Matrix partner = st.component(n, m);
        if (m != n) {
          EXPECT_EQ((partner - c.adjoint()).norm(), 0.0);
        } else {
          EXPECT_LT((c - c.adjoint()).norm(), 1e-14);
        }
      }
    }
    for (int k = 0; k <= 2; ++k) {
      const Matrix rho = reconstruct_fock(st, k);
      EXPECT_LT(relative_hermiticity_error(rho), 1e-12);
      Eigen::SelfAdjointEigenSolver<Matrix> eig(0.5 * (rho + rho.adjoint()));
      EXPECT_GE(eig.eigenvalues().minCoeff(), -1e-7) << "k=" << k << " t=" << t_final;
      EXPECT_NEAR(rho.trace().real(), 1.0, 1e-9);
    }
  }
}

TEST(EvolveHierarchy, StepAndCutoffConvergence) {
  SystemParams p = SystemParams::reference();
  const EvolveSpec spec = capture_spec(p, 2);
  p.n_max = 3;
  const auto base = evolve_hierarchy(p, spec).records.back().excitation;
  SystemParams half = p;
  half.dt *= 0.5;
  const auto fine = evolve_hierarchy(half, spec).records.back().excitation;
  SystemParams bigger = p;
  bigger.n_max += 1;
  const auto wide = evolve_hierarchy(bigger, spec).records.back().excitation;
  for (int k = 0; k <= 2; ++k) {
    EXPECT_LT(std::abs(fine[k] - base[k]), 1e-4) << k;
    EXPECT_LT(std::abs(wide[k] - base[k]), 1e-3) << k;
  }
}

// The hierarchy's rho^{11} against a brute-force fit of the classical-field
// master equation in powers of |alpha|^2.
TEST(EvolveHierarchy, MatchesSmallAlphaOracle) {
  const SystemParams p = SystemParams::reference();
  const EvolveSpec spec = capture_spec(p, 1);
  const HierarchyState st = evolve_hierarchy(p, spec).final_state;
  const LadderOperators ops = embed_operators(st.space());
  const OperatorMatrix excited(st.space(), ops.sigma.entries().adjoint() * ops.sigma.entries(), true);
  const double s00 = expectation(excited, st.component(0, 0)).real();
  const double s11 = expectation(excited, st.component(1, 1)).real();

  const std::vector<double> alphas{0.02, 0.04, 0.06, 0.08};
  const AlphaExpansion fit = small_alpha_oracle(p, spec, alphas, excited);
  EXPECT_NEAR(fit.c00.real(), s00, 1e-6);
  EXPECT_NEAR(fit.c11.real(), s11, 1e-3);
  EXPECT_NEAR(s11, 0.8916, 0.01);

  EXPECT_THROW(small_alpha_oracle(p, spec, std::vector<double>{0.1, 0.1, 0.2}, excited),
               std::invalid_argument);
}

TEST(EvolveHierarchy, DensePathAgreesWithoutSignal) {
  const SystemParams p = SystemParams::reference();
  EvolveSpec spec = capture_spec(p, 0);
  spec.initial = {Qubit::kExcited, 0};
  const Matrix sparse = evolve_hierarchy(p, spec).final_state.component(0, 0);
  const Matrix dense = evolve_master_equation(p, spec, 0.0);
  EXPECT_LT((sparse - dense).norm(), 1e-10);
}

// Moving the resonator frame by delta while moving every resonator-side
// carrier with it leaves all observables unchanged.
TEST(EvolveHierarchy, FrameShiftInvariance) {
  const SystemParams p = SystemParams::reference();
  const EvolveSpec base = capture_spec(p, 1);
  const Trajectory a = evolve_hierarchy(p, base);
  for (double delta : {from_MHz(1.0), from_MHz(-5.0)}) {
    EvolveSpec shifted = base;
    shifted.resonator_frame += delta;
    shifted.signal = base.signal->with_detuning(-delta);
    const Trajectory b = evolve_hierarchy(p, shifted);
    for (int k = 0; k <= 1; ++k) {
      EXPECT_NEAR(b.records.back().excitation[k], a.records.back().excitation[k], 1e-9);
      EXPECT_NEAR(b.records.back().photons[k], a.records.back().photons[k], 1e-9);
    }
  }
}

TEST(EvolveHierarchy, UndrivenDecay) {
  const SystemParams p = SystemParams::reference();
  EvolveSpec spec;
  spec.order = 0;
  spec.t_initial = -150.0;
  spec.t_final = 150.0;
  spec.initial = {Qubit::kExcited, 0};
  spec.resonator_frame = from_GHz(9.86);
  const double pe = evolve_hierarchy(p, spec).records.back().excitation[0];
  EXPECT_NEAR(pe, std::exp(-p.gamma * 300.0), 1e-9);
  EXPECT_NEAR(pe, 0.829, 0.005);
}

TEST(EvolveHierarchy, CoarseStepDiverges) {
  SystemParams p = SystemParams::reference();
  p.n_max = 4;
  p.dt = 2.0;
  EvolveSpec spec;
  spec.order = 0;
  spec.t_initial = -150.0;
  spec.t_final = 150.0;
  spec.initial = {Qubit::kExcited, 0};
  spec.resonator_frame = from_GHz(9.86);
  spec.classical = reset_envelope(10.0, 100.0, 0.0);
  try {
    evolve_hierarchy(p, spec);
    FAIL() << "expected divergence";
  } catch (const DivergenceError& e) {
    EXPECT_GT(e.time_ns(), spec.t_initial);
    EXPECT_LE(e.time_ns(), spec.t_final);
  }
}

TEST(SteadyState, PhysicalAndMatchesLongRun) {
  SystemParams p = SystemParams::reference();
  p.gamma = from_MHz(5.0);
  const double drive = from_MHz(13.2);
  const Matrix ss = steady_state(p, drive, from_GHz(10.0));
  EXPECT_NEAR(ss.trace().real(), 1.0, 1e-12);
  EXPECT_LT(relative_hermiticity_error(ss), 1e-10);

  EvolveSpec spec;
  spec.order = 0;
  spec.t_initial = -1200.0;
  spec.t_final = 0.0;
  spec.resonator_frame = from_GHz(10.0);
  spec.drive = drive_envelope(drive, 1e4, 1.0, 10.0, 0.0, p.gamma_prime);
  spec.record_stride = 1 << 30;
  const Matrix late = evolve_hierarchy(p, spec).final_state.component(0, 0);
  EXPECT_LT((late - ss).norm(), 1e-6);
}

// Empty-cavity oracle: with the qubit in |g> the resonator alone reflects
// r = 1 - kappa' / (kappa/2 + i (omega_r - omega_s)).
TEST(SteadyReflection, EmptyCavity) {
  SystemParams p = SystemParams::reference();
  for (double ws : {9.97, 9.99, 10.0, 10.007, 10.03}) {
    EXPECT_NEAR(std::abs(steady_reflection(p, 0.0, from_GHz(ws))), 1.0, 1e-6) << ws;
  }
  p.kappa = from_MHz(30.0);
  for (double ws : {9.98, 10.0, 10.012}) {
    const Complex expected =
        1.0 - p.kappa_prime / Complex(0.5 * p.kappa, p.omega_r - from_GHz(ws));
    EXPECT_LT(std::abs(steady_reflection(p, 0.0, from_GHz(ws)) - expected), 1e-9) << ws;
  }
}

TEST(SteadyReflection, DipsAtMatchedDrive) {
  const SystemParams p = SystemParams::reference();
  const double drive = find_impedance_match(p);
  EXPECT_LT(std::abs(steady_reflection(p, drive, from_GHz(10.007))), 0.05);
  EXPECT_LT(std::abs(steady_reflection(p, drive, from_GHz(9.9875))), 0.05);
  EXPECT_GT(std::abs(steady_reflection(p, drive, from_GHz(9.997))), 0.3);
}

}  // namespace
}  // namespace lambdadet
