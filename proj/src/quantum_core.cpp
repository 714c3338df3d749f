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

#include "lambdadet/quantum_core.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace lambdadet {

int HilbertSpace::index(Qubit q, int n) const {
  if (n < 0 || n > n_max_) {
    throw std::invalid_argument("HilbertSpace::index: photon number " + std::to_string(n) +
                                " outside 0.." + std::to_string(n_max_));
  }
  return static_cast<int>(q) * (n_max_ + 1) + n;
}

BasisLabel HilbertSpace::label(int index) const {
  if (index < 0 || index >= dim()) {
    throw std::invalid_argument("HilbertSpace::label: index out of range");
  }
  return {static_cast<Qubit>(index / (n_max_ + 1)), index % (n_max_ + 1)};
}

HilbertSpace build_space(int n_max) {
  if (n_max < 1) {
    throw std::invalid_argument("build_space: n_max must be >= 1, got " + std::to_string(n_max));
  }
  return HilbertSpace(n_max);
}

double relative_hermiticity_error(const Matrix& m) {
  const double scale = std::max(1.0, m.norm());
  return (m - m.adjoint()).norm() / scale;
}

OperatorMatrix::OperatorMatrix(HilbertSpace space, Matrix entries, bool hermitian)
    : space_(space), entries_(std::move(entries)), hermitian_(hermitian) {
  if (entries_.rows() != space_.dim() || entries_.cols() != space_.dim()) {
    throw std::invalid_argument("OperatorMatrix: entries are " + std::to_string(entries_.rows()) +
                                "x" + std::to_string(entries_.cols()) + ", space dim is " +
                                std::to_string(space_.dim()));
  }
  if (hermitian_ && relative_hermiticity_error(entries_) > 1e-12) {
    throw std::invalid_argument("OperatorMatrix: flagged Hermitian but M != M^dagger");
  }
}

OperatorMatrix OperatorMatrix::adjoint() const {
  return OperatorMatrix(space_, entries_.adjoint(), hermitian_);
}

LadderOperators embed_operators(const HilbertSpace& space) {
  const int dim = space.dim();
  Matrix a = Matrix::Zero(dim, dim);
  Matrix sigma = Matrix::Zero(dim, dim);
  for (int n = 1; n <= space.n_max(); ++n) {
    const double amp = std::sqrt(static_cast<double>(n));
    for (Qubit q : {Qubit::kGround, Qubit::kExcited}) {
      a(space.index(q, n - 1), space.index(q, n)) = amp;
    }
  }
  for (int n = 0; n <= space.n_max(); ++n) {
    sigma(space.index(Qubit::kGround, n), space.index(Qubit::kExcited, n)) = 1.0;
  }
  return {OperatorMatrix(space, std::move(a)), OperatorMatrix(space, std::move(sigma))};
}

Matrix identity(const HilbertSpace& space) { return Matrix::Identity(space.dim(), space.dim()); }

Matrix basis_projector(const HilbertSpace& space, BasisLabel label) {
  Matrix p = Matrix::Zero(space.dim(), space.dim());
  const int i = space.index(label);
  p(i, i) = 1.0;
  return p;
}

namespace {

void require_shape(const OperatorMatrix& op, const Matrix& rho, const char* who) {
  const int dim = op.space().dim();
  if (rho.rows() != dim || rho.cols() != dim) {
    throw std::invalid_argument(std::string(who) + ": operand is " + std::to_string(rho.rows()) +
                                "x" + std::to_string(rho.cols()) + ", operator dim is " +
                                std::to_string(dim));
  }
}

}  // namespace

Matrix apply_lindblad_term(const OperatorMatrix& jump, double rate, const Matrix& rho) {
  require_shape(jump, rho, "apply_lindblad_term");
  const Matrix& l = jump.entries();
  const Matrix ldl = l.adjoint() * l;
  return rate * (l * rho * l.adjoint() - 0.5 * (ldl * rho + rho * ldl));
}

Matrix apply_commutator(const OperatorMatrix& hamiltonian, const Matrix& rho) {
  require_shape(hamiltonian, rho, "apply_commutator");
  const Matrix& h = hamiltonian.entries();
  return Complex(0.0, -1.0) * (h * rho - rho * h);
}

Complex expectation(const OperatorMatrix& observable, const Matrix& rho) {
  require_shape(observable, rho, "expectation");
  return (observable.entries() * rho).trace();
}

SparseOperator::SparseOperator(const Matrix& dense, double drop_below)
    : dim_(static_cast<int>(dense.rows())) {
  if (dense.rows() != dense.cols()) {
    throw std::invalid_argument("SparseOperator: matrix must be square");
  }
  for (int c = 0; c < dense.cols(); ++c) {
    for (int r = 0; r < dense.rows(); ++r) {
      if (std::abs(dense(r, c)) > drop_below) {
        entries_.push_back({r, c, dense(r, c)});
      }
    }
  }
}

SparseOperator SparseOperator::adjoint() const {
  SparseOperator out;
  out.dim_ = dim_;
  out.entries_.reserve(entries_.size());
  for (const Entry& e : entries_) {
    out.entries_.push_back({e.col, e.row, std::conj(e.value)});
  }
  return out;
}

void SparseOperator::add_left(Matrix& out, Complex coeff, const Matrix& rho) const {
  for (const Entry& e : entries_) {
    out.row(e.row) += (coeff * e.value) * rho.row(e.col);
  }
}

void SparseOperator::add_right(Matrix& out, Complex coeff, const Matrix& rho) const {
  for (const Entry& e : entries_) {
    out.col(e.col) += (coeff * e.value) * rho.col(e.row);
  }
}

void SparseOperator::add_commutator(Matrix& out, Complex coeff, const Matrix& rho) const {
  add_left(out, coeff, rho);
  add_right(out, -coeff, rho);
}

void SparseOperator::add_sandwich(Matrix& out, Complex coeff, const Matrix& rho) const {
  // (O rho O^dagger)_{ij} = sum O_{ik} rho_{kl} conj(O_{jl})
  for (const Entry& left : entries_) {
    const Complex cl = coeff * left.value;
    for (const Entry& right : entries_) {
      out(left.row, right.row) += cl * rho(left.col, right.col) * std::conj(right.value);
    }
  }
}

}  // namespace lambdadet
