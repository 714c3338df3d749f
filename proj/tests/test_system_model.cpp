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


#include "lambdadet/errors.hpp"
#include "lambdadet/system_model.hpp"

#include <gtest/gtest.h>

#include <Eigen/Eigenvalues>

#include <cmath>
#include <numbers>
#include <random>

namespace lambdadet {
namespace {

using units::from_GHz;
using units::from_kHz;
using units::from_MHz;

constexpr double kPi = std::numbers::pi;

TEST(Units, ConversionsAreInverse) {
  EXPECT_DOUBLE_EQ(from_GHz(1.0), 2.0 * kPi);
  EXPECT_DOUBLE_EQ(from_MHz(1000.0), from_GHz(1.0));
  EXPECT_DOUBLE_EQ(from_kHz(1000.0), from_MHz(1.0));
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-50.0, 50.0);
  for (int i = 0; i < 200; ++i) {
    const double f = u(rng);
    EXPECT_NEAR(units::to_GHz(from_GHz(f)), f, 1e-14 * (1 + std::abs(f)));
    EXPECT_NEAR(units::to_MHz(from_MHz(f)), f, 1e-14 * (1 + std::abs(f)));
    EXPECT_NEAR(units::to_kHz(from_kHz(f)), f, 1e-14 * (1 + std::abs(f)));
  }
}

TEST(SystemParams, ReferenceValues) {
  const SystemParams p = SystemParams::reference();
  EXPECT_DOUBLE_EQ(p.omega_q, 2 * kPi * 5.0);
  EXPECT_DOUBLE_EQ(p.omega_r, 2 * kPi * 10.0);
  EXPECT_DOUBLE_EQ(p.chi, 2 * kPi * 0.040);
  EXPECT_DOUBLE_EQ(p.kappa, 2 * kPi * 0.020);
  EXPECT_DOUBLE_EQ(p.kappa_prime, 2 * kPi * 0.020);
  EXPECT_DOUBLE_EQ(p.gamma, 2 * kPi * 1e-4);
  EXPECT_DOUBLE_EQ(p.gamma_prime, 2 * kPi * 1e-7);
  EXPECT_NEAR(p.drive_detuning(), 2 * kPi * 0.070, 1e-12);
  EXPECT_TRUE(p.nested());
  EXPECT_NO_THROW(p.validate());
}

TEST(SystemParams, ValidationFailures) {
  SystemParams p = SystemParams::reference();
  p.kappa_prime = 2 * p.kappa;
  EXPECT_THROW(p.validate(), std::invalid_argument);
  p = SystemParams::reference();
  p.gamma_prime = 2 * p.gamma;
  EXPECT_THROW(p.validate(), std::invalid_argument);
  p = SystemParams::reference();
  p.omega_d = from_GHz(5.1);
  EXPECT_FALSE(p.nested());
  EXPECT_THROW(p.validate(), std::invalid_argument);
  p.omega_d = from_GHz(4.91);
  EXPECT_THROW(p.validate(), std::invalid_argument);
  p = SystemParams::reference();
  p.kappa = -1.0;
  EXPECT_THROW(p.validate(), std::invalid_argument);
}

TEST(Hamiltonian, UndrivenDiagonal) {
  const SystemParams p = SystemParams::reference();
  const OperatorMatrix h = hamiltonian_driven(p, 0.0);
  const HilbertSpace& s = h.space();
  const Matrix& m = h.entries();
  EXPECT_NEAR(m(s.index(Qubit::kGround, 0), s.index(Qubit::kGround, 0)).real(), 0.0, 1e-12);
  EXPECT_NEAR(m(s.index(Qubit::kExcited, 0), s.index(Qubit::kExcited, 0)).real(), from_MHz(70), 1e-9);
  EXPECT_NEAR(m(s.index(Qubit::kGround, 1), s.index(Qubit::kGround, 1)).real(), from_GHz(10.0), 1e-9);
  EXPECT_NEAR(m(s.index(Qubit::kExcited, 1), s.index(Qubit::kExcited, 1)).real(), from_GHz(9.990),
              1e-9);
  EXPECT_LT((m - Matrix(m.diagonal().asDiagonal())).norm(), 1e-15);

  const LadderOperators ops = embed_operators(s);
  const Matrix number = ops.a.entries().adjoint() * ops.a.entries();
  EXPECT_LT((m * number - number * m).norm(), 1e-12);
}

TEST(Hamiltonian, HermitianForAnyDrive) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(0.0, 0.5);
  for (int i = 0; i < 20; ++i) {
    const OperatorMatrix h = hamiltonian_driven(SystemParams::reference(), u(rng));
    EXPECT_TRUE(h.hermitian());
    EXPECT_EQ(relative_hermiticity_error(h.entries()), 0.0);
  }
}

TEST(MixingAngle, Values) {
  EXPECT_EQ(mixing_angle(0.0, from_MHz(70)), 0.0);
  EXPECT_NEAR(mixing_angle(from_MHz(13.2), from_MHz(70)), 0.5 * std::atan(26.4 / 70.0), 1e-15);
  EXPECT_NEAR(mixing_angle(from_MHz(13.2), from_MHz(70)), 0.1803, 1e-4);
  EXPECT_NEAR(mixing_angle(1.0, 1e-12), kPi / 4, 1e-9);
  EXPECT_NEAR(mixing_angle(1.0, 0.0), kPi / 4, 1e-15);
  // negative detuning continues past pi/4
  EXPECT_GT(mixing_angle(1.0, -0.5), kPi / 4);
}

TEST(DressedSpectrum, UndrivenRatesAndTransitions) {
  const SystemParams p = SystemParams::reference();
  const DressedSpectrum s = dressed_spectrum(p, 0.0);
  EXPECT_NEAR(s.rate(3, 1), 0.0, 1e-15);
  EXPECT_NEAR(s.rate(3, 2), p.kappa_prime, 1e-15);
  EXPECT_NEAR(s.rate(4, 1), p.kappa_prime, 1e-15);
  EXPECT_NEAR(s.rate(4, 2), 0.0, 1e-15);
  EXPECT_NEAR(units::to_GHz(s.transition(4, 1)), 10.000, 1e-12);
  EXPECT_NEAR(units::to_GHz(s.transition(3, 1)), 9.990, 1e-12);
  EXPECT_NEAR(units::to_GHz(s.transition(3, 2)), 9.920, 1e-12);
  EXPECT_FALSE(s.degenerate);
}

TEST(DressedSpectrum, DegenerateBlockFallsBackToBareStates) {
  SystemParams p = SystemParams::reference();
  // omega_q - omega_d = 2 chi closes the gap of the one-photon block. Values
  // are exact binary fractions so the gap is exactly zero.
  p.omega_q = 1.0;
  p.omega_r = 4.0;
  p.chi = 0.25;
  p.omega_d = 0.5;
  const DressedSpectrum s = dressed_spectrum(p, 0.0);
  EXPECT_TRUE(s.degenerate);
  for (const auto& v : s.vectors) EXPECT_NEAR(v.norm(), 1.0, 1e-15);
}

TEST(ImpedanceMatch, ReferenceDrive) {
  const SystemParams p = SystemParams::reference();
  const double drive = find_impedance_match(p);
  EXPECT_NEAR(units::to_MHz(drive), 13.2, 0.1);
  const DressedSpectrum s = dressed_spectrum(p, drive);
  for (int u : {3, 4}) {
    for (int j : {1, 2}) EXPECT_NEAR(s.rate(u, j), 0.5 * p.kappa_prime, 1e-3 * p.kappa_prime);
  }
  // Equal rates mean the two blocks are mixed 45 degrees apart.
  const double det = p.drive_detuning();
  const double t0 = mixing_angle(drive, det);
  const double t1 = mixing_angle(drive, det - 2.0 * p.chi);
  EXPECT_NEAR(std::abs(t1 - t0), kPi / 4, 1e-3);
}

TEST(ImpedanceMatch, ZeroChiHasNoMatch) {
  SystemParams p = SystemParams::reference();
  p.chi = 0.0;
  EXPECT_THROW(find_impedance_match(p), NoMatchError);
}

// Properties over random drives: completeness, pairwise symmetry,
// orthonormality, agreement with full diagonalization.
TEST(DressedSpectrum, Invariants) {
  const SystemParams p = SystemParams::reference();
  SystemParams p1 = p;
  p1.n_max = 1;
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> u(0.0, from_MHz(60.0));
  for (int trial = 0; trial < 100; ++trial) {
    const double drive = u(rng);
    const DressedSpectrum s = dressed_spectrum(p, drive);
    EXPECT_NEAR(s.rate(3, 1) + s.rate(3, 2), p.kappa_prime, 1e-12 * p.kappa_prime);
    EXPECT_NEAR(s.rate(4, 1) + s.rate(4, 2), p.kappa_prime, 1e-12 * p.kappa_prime);
    EXPECT_NEAR(s.rate(3, 1), s.rate(4, 2), 1e-12 * p.kappa_prime);
    EXPECT_NEAR(s.rate(3, 2), s.rate(4, 1), 1e-12 * p.kappa_prime);
    for (int i = 0; i < 4; ++i) {
      for (int j = 0; j < 4; ++j) {
        EXPECT_NEAR(s.vectors[i].dot(s.vectors[j]), i == j ? 1.0 : 0.0, 1e-12);
      }
    }
    const Matrix h = hamiltonian_driven(p1, drive).entries();
    Eigen::SelfAdjointEigenSolver<Matrix> full(h);
    std::array<double, 4> e = s.energies;
    std::sort(e.begin(), e.end());
    for (int i = 0; i < 4; ++i) EXPECT_NEAR(full.eigenvalues()(i), e[i], 1e-10 * from_GHz(10));
    // energies ascend within each manifold
    EXPECT_LE(s.energies[0], s.energies[1]);
    EXPECT_LE(s.energies[2], s.energies[3]);
  }
  const DressedSpectrum s = dressed_spectrum(p, 0.0);
  EXPECT_THROW(s.rate(2, 1), std::invalid_argument);
  EXPECT_THROW(s.rate(3, 3), std::invalid_argument);
  EXPECT_THROW(s.transition(0, 1), std::invalid_argument);
}

TEST(DressedSpectrum, MonotoneCrossingAndContinuity) {
  const SystemParams p = SystemParams::reference();
  const double match = find_impedance_match(p);
  const double step = from_MHz(0.1);
  DressedSpectrum prev = dressed_spectrum(p, 0.0);
  for (double d = step; d <= from_MHz(30.0); d += step) {
    const DressedSpectrum s = dressed_spectrum(p, d);
    if (d <= match) {
      EXPECT_GE(s.rate(3, 1), prev.rate(3, 1) - 1e-15);
      EXPECT_LE(s.rate(3, 2), prev.rate(3, 2) + 1e-15);
    }
    for (int i = 0; i < 4; ++i) EXPECT_GT(std::abs(s.vectors[i].dot(prev.vectors[i])), 0.99);
    prev = s;
  }
}

TEST(Renormalization, Values) {
  const auto zero = renormalized_frequencies(from_GHz(10), from_GHz(5), 0.0);
  EXPECT_EQ(zero.omega_r, from_GHz(10));
  EXPECT_EQ(zero.omega_q, from_GHz(5));
  EXPECT_EQ(zero.chi, 0.0);

  const double delta = from_GHz(5.0);
  const double g = std::sqrt(from_MHz(40.0) * delta);
  EXPECT_NEAR(units::to_MHz(g), 447.2, 0.05);
  const auto r = renormalized_frequencies(from_GHz(10), from_GHz(5), g);
  EXPECT_NEAR(units::to_MHz(r.chi), 40.0, 1e-9);
  EXPECT_NEAR(units::to_GHz(r.omega_r), 10.040, 1e-12);
  EXPECT_NEAR(units::to_GHz(r.omega_q), 4.960, 1e-12);
  EXPECT_TRUE(r.dispersive);

  EXPECT_LT(renormalized_frequencies(from_GHz(5), from_GHz(10), g).chi, 0.0);
  EXPECT_FALSE(renormalized_frequencies(from_GHz(5), from_GHz(5.1), from_GHz(0.05)).dispersive);
  EXPECT_THROW(renormalized_frequencies(from_GHz(5), from_GHz(5), g), std::domain_error);
}

}  // namespace
}  // namespace lambdadet
