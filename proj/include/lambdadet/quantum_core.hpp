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

// Hilbert space of a two-level qubit coupled to a truncated resonator, the
// ladder operators on it, and the Liouvillian building blocks.
//
// Basis ordering: index = q * (n_max + 1) + n, with q = 0 for |g>, q = 1 for
// |e>, and n = 0..n_max the resonator photon number.

#pragma once

#include <Eigen/Dense>

#include <complex>
#include <utility>
#include <vector>

namespace lambdadet {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;

enum class Qubit : int { kGround = 0, kExcited = 1 };

struct BasisLabel {
  Qubit qubit;
  int photons;
  bool operator==(const BasisLabel&) const = default;
};

class HilbertSpace {
 public:
  HilbertSpace() = default;

  int n_max() const noexcept { return n_max_; }
  int dim() const noexcept { return 2 * (n_max_ + 1); }

  int index(Qubit q, int n) const;
  int index(BasisLabel label) const { return index(label.qubit, label.photons); }
  BasisLabel label(int index) const;

  bool operator==(const HilbertSpace&) const = default;

 private:
  friend HilbertSpace build_space(int n_max);
  explicit HilbertSpace(int n_max) : n_max_(n_max) {}
  int n_max_ = 1;
};

/// Throws std::invalid_argument for n_max < 1.
HilbertSpace build_space(int n_max);

/// Dense operator tied to a space. Construction checks the shape and, when
/// flagged Hermitian, that M = M^dagger to 1e-12 relative.
class OperatorMatrix {
 public:
  OperatorMatrix(HilbertSpace space, Matrix entries, bool hermitian = false);

  const HilbertSpace& space() const noexcept { return space_; }
  const Matrix& entries() const noexcept { return entries_; }
  bool hermitian() const noexcept { return hermitian_; }

  OperatorMatrix adjoint() const;

 private:
  HilbertSpace space_;
  Matrix entries_;
  bool hermitian_;
};

struct LadderOperators {
  OperatorMatrix a;      // I_qubit (x) a_res
  OperatorMatrix sigma;  // |g><e| (x) I_res
};

LadderOperators embed_operators(const HilbertSpace& space);

Matrix identity(const HilbertSpace& space);
/// |q,n><q,n|
Matrix basis_projector(const HilbertSpace& space, BasisLabel label);

/// rate * (L rho L^dagger - 1/2 L^dagger L rho - 1/2 rho L^dagger L)
Matrix apply_lindblad_term(const OperatorMatrix& jump, double rate, const Matrix& rho);

/// -i [H, rho]
Matrix apply_commutator(const OperatorMatrix& hamiltonian, const Matrix& rho);

/// tr(S rho)
Complex expectation(const OperatorMatrix& observable, const Matrix& rho);

double relative_hermiticity_error(const Matrix& m);

/// Coordinate-list operator for the integrator hot loop. The ladder and
/// number operators carry O(dim) nonzeros, so products with a density
/// matrix cost O(dim^2) instead of O(dim^3).
class SparseOperator {
 public:
  struct Entry {
    int row;
    int col;
    Complex value;
  };

  SparseOperator() = default;
  explicit SparseOperator(const Matrix& dense, double drop_below = 0.0);

  int dim() const noexcept { return dim_; }
  const std::vector<Entry>& entries() const noexcept { return entries_; }
  SparseOperator adjoint() const;

  /// out += coeff * op * rho
  void add_left(Matrix& out, Complex coeff, const Matrix& rho) const;
  /// out += coeff * rho * op
  void add_right(Matrix& out, Complex coeff, const Matrix& rho) const;
  /// out += coeff * (op rho - rho op)
  void add_commutator(Matrix& out, Complex coeff, const Matrix& rho) const;
  /// out += coeff * op * rho * op^dagger
  void add_sandwich(Matrix& out, Complex coeff, const Matrix& rho) const;

 private:
  int dim_ = 0;
  std::vector<Entry> entries_;
};

}  // namespace lambdadet
