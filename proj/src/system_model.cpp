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

#include "lambdadet/system_model.hpp"

#include "lambdadet/errors.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace lambdadet {

SystemParams SystemParams::reference() {
  SystemParams p;
  p.omega_q = units::from_GHz(5.0);
  p.omega_r = units::from_GHz(10.0);
  p.chi = units::from_MHz(40.0);
  p.kappa = units::from_MHz(20.0);
  p.kappa_prime = units::from_MHz(20.0);
  p.gamma = units::from_MHz(0.1);
  p.gamma_prime = units::from_kHz(0.1);
  p.omega_d = p.omega_q - units::from_MHz(70.0);
  return p;
}

bool SystemParams::nested() const noexcept {
  return omega_q - 2.0 * chi < omega_d && omega_d < omega_q;
}

void SystemParams::validate() const {
  std::ostringstream err;
  if (kappa < 0 || kappa_prime < 0 || gamma < 0 || gamma_prime < 0) {
    err << "decay rates must be non-negative";
  } else if (kappa_prime > kappa) {
    err << "kappa_prime (" << units::to_MHz(kappa_prime) << " MHz) exceeds kappa ("
        << units::to_MHz(kappa) << " MHz)";
  } else if (gamma_prime > gamma) {
    err << "gamma_prime (" << units::to_MHz(gamma_prime) << " MHz) exceeds gamma ("
        << units::to_MHz(gamma) << " MHz)";
  } else if (!nested()) {
    err << "drive frequency " << units::to_GHz(omega_d) << " GHz outside the nesting window ("
        << units::to_GHz(omega_q - 2.0 * chi) << ", " << units::to_GHz(omega_q) << ") GHz";
  } else if (n_max < 1) {
    err << "n_max must be >= 1";
  } else if (!(dt > 0.0)) {
    err << "dt must be positive";
  } else {
    return;
  }
  throw std::invalid_argument(err.str());
}

namespace {

// Bare level energies in the qubit-drive frame, resonator at lab frequency.
double level_energy(const SystemParams& p, Qubit q, int n, double resonator_frame) {
  if (q == Qubit::kGround) {
    return (p.omega_r - resonator_frame) * n;
  }
  return p.drive_detuning() + (p.omega_r - 2.0 * p.chi - resonator_frame) * n;
}

}  // namespace

OperatorMatrix hamiltonian_frame(const SystemParams& params, double resonator_frame) {
  const HilbertSpace space = build_space(params.n_max);
  Matrix h = Matrix::Zero(space.dim(), space.dim());
  for (int i = 0; i < space.dim(); ++i) {
    const BasisLabel l = space.label(i);
    h(i, i) = level_energy(params, l.qubit, l.photons, resonator_frame);
  }
  return OperatorMatrix(space, std::move(h), true);
}

OperatorMatrix hamiltonian_driven(const SystemParams& params, double drive) {
  const OperatorMatrix bare = hamiltonian_frame(params, 0.0);
  const LadderOperators ops = embed_operators(bare.space());
  const Matrix& s = ops.sigma.entries();
  return OperatorMatrix(bare.space(), bare.entries() + drive * (s + s.adjoint()), true);
}

double mixing_angle(double drive_magnitude, double detuning) {
  return 0.5 * std::atan2(2.0 * drive_magnitude, detuning);
}

double DressedSpectrum::rate(int upper, int lower) const {
  if (upper < 3 || upper > 4 || lower < 1 || lower > 2) {
    throw std::invalid_argument("DressedSpectrum::rate: need upper in {3,4}, lower in {1,2}");
  }
  return rates[upper - 3][lower - 1];
}

double DressedSpectrum::transition(int i, int j) const {
  if (i < 1 || i > 4 || j < 1 || j > 4) {
    throw std::invalid_argument("DressedSpectrum::transition: labels are 1..4");
  }
  return energies[i - 1] - energies[j - 1];
}

DressedSpectrum dressed_spectrum(const SystemParams& params, double drive) {
  DressedSpectrum out;
  out.drive_amplitude = drive;

  // n <= 1 ordering (g0, g1, e0, e1)
  constexpr int kG[2] = {0, 1};
  constexpr int kE[2] = {2, 3};

  for (int n = 0; n <= 1; ++n) {
    const double eg = level_energy(params, Qubit::kGround, n, 0.0);
    const double ee = level_energy(params, Qubit::kExcited, n, 0.0);
    Eigen::Vector2d lower, upper;
    double e_low, e_high;
    if (eg == ee && drive == 0.0) {
      out.degenerate = true;
      lower << 1.0, 0.0;
      upper << 0.0, 1.0;
      e_low = e_high = eg;
    } else {
      Eigen::Matrix2d block;
      block << eg, drive, drive, ee;
      Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> solver;
      solver.computeDirect(block);
      e_low = solver.eigenvalues()(0);
      e_high = solver.eigenvalues()(1);
      lower = solver.eigenvectors().col(0);
      upper = solver.eigenvectors().col(1);
    }
    // Fix the |g,n> component to be non-negative. When it vanishes, the
    // orthonormal partner determines the sign so that the pair stays a
    // proper rotation (cos, -sin), (sin, cos).
    if (lower(0) < 0.0 || (lower(0) == 0.0 && lower(1) > 0.0)) lower = -lower;
    if (upper(0) < 0.0 || (upper(0) == 0.0 && upper(1) < 0.0)) upper = -upper;

    const int lo = 2 * n;  // labels 1,3 -> index 0,2
    out.energies[lo] = e_low;
    out.energies[lo + 1] = e_high;
    for (int k = 0; k < 2; ++k) {
      Eigen::Vector4d& v = out.vectors[lo + k];
      const Eigen::Vector2d& src = k == 0 ? lower : upper;
      v.setZero();
      v(kG[n]) = src(0);
      v(kE[n]) = src(1);
    }
  }

  // a' maps |q,0> to |q,1>, so <u~|a'|j~> = g_u g_j + e_u e_j.
  for (int u = 0; u < 2; ++u) {
    const Eigen::Vector4d& vu = out.vectors[2 + u];
    for (int j = 0; j < 2; ++j) {
      const Eigen::Vector4d& vj = out.vectors[j];
      const double amp = vu(kG[1]) * vj(kG[0]) + vu(kE[1]) * vj(kE[0]);
      out.rates[u][j] = params.kappa_prime * amp * amp;
    }
  }
  return out;
}

double find_impedance_match(const SystemParams& params, double tolerance) {
  if (params.chi == 0.0) {
    throw NoMatchError("find_impedance_match: chi = 0, cross decay rates vanish identically");
  }
  const auto imbalance = [&](double drive) {
    const DressedSpectrum s = dressed_spectrum(params, drive);
    return s.rate(3, 1) - s.rate(3, 2);
  };

  const double upper = 10.0 * std::abs(params.chi);
  constexpr int kScanSteps = 400;
  const double step = upper / kScanSteps;
  double lo = step * 1e-6;
  double g_lo = imbalance(lo);
  for (int i = 1; i <= kScanSteps; ++i) {
    const double hi = step * i;
    const double g_hi = imbalance(hi);
    if (g_lo == 0.0) return lo;
    if ((g_lo < 0.0) != (g_hi < 0.0) || g_hi == 0.0) {
      double a = lo, b = hi;
      double ga = g_lo;
      while (b - a > tolerance) {
        const double mid = 0.5 * (a + b);
        const double gm = imbalance(mid);
        if (gm == 0.0) return mid;
        if ((gm < 0.0) == (ga < 0.0)) {
          a = mid;
          ga = gm;
        } else {
          b = mid;
        }
      }
      return 0.5 * (a + b);
    }
    lo = hi;
    g_lo = g_hi;
  }
  throw NoMatchError("find_impedance_match: kappa~31 - kappa~32 keeps its sign on (0, " +
                     std::to_string(units::to_MHz(upper)) + "] MHz");
}

RenormalizedFrequencies renormalized_frequencies(double bare_omega_r, double bare_omega_q,
                                                 double g) {
  const double delta = bare_omega_r - bare_omega_q;
  if (delta == 0.0) {
    throw std::domain_error("renormalized_frequencies: resonant bare frequencies");
  }
  const double chi = g * g / delta;
  return {bare_omega_r + chi, bare_omega_q - chi, chi, std::abs(delta) >= 10.0 * std::abs(g)};
}

}  // namespace lambdadet
