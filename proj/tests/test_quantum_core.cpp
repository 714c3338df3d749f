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

#include <gtest/gtest.h>

#include <random>
#include <stdexcept>

namespace lambdadet {
namespace {

Matrix random_matrix(std::mt19937_64& rng, int dim) {
  std::normal_distribution<double> n;
  Matrix m(dim, dim);
  for (int i = 0; i < dim; ++i) {
    for (int j = 0; j < dim; ++j) m(i, j) = {n(rng), n(rng)};
  }
  return m;
}

// Random positive matrix with unit trace.
Matrix random_density(std::mt19937_64& rng, int dim) {
  const Matrix b = random_matrix(rng, dim);
  Matrix rho = b * b.adjoint();
  return rho / rho.trace();
}

TEST(HilbertSpace, DimensionAndIndexRoundTrip) {
  for (int n_max = 1; n_max <= 5; ++n_max) {
    const HilbertSpace s = build_space(n_max);
    EXPECT_EQ(s.dim(), 2 * (n_max + 1));
    for (int i = 0; i < s.dim(); ++i) EXPECT_EQ(s.index(s.label(i)), i);
  }
  const HilbertSpace s = build_space(2);
  EXPECT_EQ(s.index(Qubit::kGround, 0), 0);
  EXPECT_EQ(s.index(Qubit::kGround, 2), 2);
  EXPECT_EQ(s.index(Qubit::kExcited, 0), 3);
  EXPECT_EQ(s.index(Qubit::kExcited, 1), 4);
}

TEST(HilbertSpace, RejectsBadCutoffAndLabels) {
  EXPECT_THROW(build_space(0), std::invalid_argument);
  EXPECT_THROW(build_space(-3), std::invalid_argument);
  const HilbertSpace s = build_space(2);
  EXPECT_THROW(s.index(Qubit::kGround, 3), std::invalid_argument);
  EXPECT_THROW(s.index(Qubit::kGround, -1), std::invalid_argument);
  EXPECT_THROW(s.label(6), std::invalid_argument);
}

TEST(Ladder, TruncatedCommutatorIsIdentityExceptTopLevel) {
  for (int n_max = 1; n_max <= 4; ++n_max) {
    const HilbertSpace s = build_space(n_max);
    const LadderOperators ops = embed_operators(s);
    const Matrix& a = ops.a.entries();
    const Matrix comm = a * a.adjoint() - a.adjoint() * a;
    for (int i = 0; i < s.dim(); ++i) {
      const double expected = s.label(i).photons == n_max ? -n_max : 1.0;
      for (int j = 0; j < s.dim(); ++j) {
        EXPECT_NEAR(std::abs(comm(i, j) - (i == j ? expected : 0.0)), 0.0, 1e-14) << i << "," << j;
      }
    }
  }
}

TEST(Ladder, MatrixElements) {
  const HilbertSpace s = build_space(3);
  const LadderOperators ops = embed_operators(s);
  const Matrix& a = ops.a.entries();
  const Matrix& sg = ops.sigma.entries();
  for (Qubit q : {Qubit::kGround, Qubit::kExcited}) {
    for (int n = 1; n <= 3; ++n) {
      EXPECT_DOUBLE_EQ(a(s.index(q, n - 1), s.index(q, n)).real(), std::sqrt(n));
    }
  }
  for (int n = 0; n <= 3; ++n) {
    EXPECT_EQ(sg(s.index(Qubit::kGround, n), s.index(Qubit::kExcited, n)), Complex(1.0));
  }
  // sigma sigma' projects on the qubit ground state.
  const Matrix ssd = sg * sg.adjoint();
  for (int i = 0; i < s.dim(); ++i) {
    EXPECT_EQ(ssd(i, i).real(), s.label(i).qubit == Qubit::kGround ? 1.0 : 0.0);
  }
  EXPECT_EQ(a.rows(), s.dim());
}

TEST(OperatorMatrix, ValidatesShapeAndHermiticity) {
  const HilbertSpace s = build_space(1);
  EXPECT_THROW(OperatorMatrix(s, Matrix::Zero(3, 3)), std::invalid_argument);
  Matrix m = Matrix::Zero(4, 4);
  m(0, 1) = 1.0;
  EXPECT_THROW(OperatorMatrix(s, m, true), std::invalid_argument);
  EXPECT_NO_THROW(OperatorMatrix(s, m, false));
  m(1, 0) = 1.0;
  EXPECT_NO_THROW(OperatorMatrix(s, m, true));
  const OperatorMatrix op(s, m * Complex(0.0, 1.0));
  EXPECT_TRUE(op.adjoint().entries().isApprox(op.entries().adjoint()));
}

TEST(Liouvillian, QubitDecayOfExcitedState) {
  const HilbertSpace s = build_space(1);
  const LadderOperators ops = embed_operators(s);
  const Matrix rho = basis_projector(s, {Qubit::kExcited, 0});
  const Matrix d = apply_lindblad_term(ops.sigma, 0.3, rho);
  // d rho/dt = gamma (|g><g| - |e><e|) for a pure excited state
  Matrix expected = 0.3 * (basis_projector(s, {Qubit::kGround, 0}) - rho);
  EXPECT_LT((d - expected).norm(), 1e-15);
}

TEST(Liouvillian, ShapeMismatchThrows) {
  const LadderOperators ops = embed_operators(build_space(2));
  const Matrix wrong = Matrix::Identity(4, 4);
  EXPECT_THROW(apply_lindblad_term(ops.a, 1.0, wrong), std::invalid_argument);
  EXPECT_THROW(apply_commutator(ops.a, wrong), std::invalid_argument);
  EXPECT_THROW(expectation(ops.a, wrong), std::invalid_argument);
}

TEST(Liouvillian, ExpectationOfNumberOperator) {
  const HilbertSpace s = build_space(3);
  const LadderOperators ops = embed_operators(s);
  const OperatorMatrix number(s, ops.a.entries().adjoint() * ops.a.entries(), true);
  for (int n = 0; n <= 3; ++n) {
    EXPECT_NEAR(expectation(number, basis_projector(s, {Qubit::kExcited, n})).real(), n, 1e-14);
  }
}

// Property: every generator term keeps trace zero and maps Hermitian to
// Hermitian.
TEST(Liouvillian, TracelessAndHermiticityPreserving) {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 50; ++trial) {
    const int n_max = 1 + trial % 4;
    const HilbertSpace s = build_space(n_max);
    const LadderOperators ops = embed_operators(s);
    const Matrix rho = random_density(rng, s.dim());
    const Matrix h = random_matrix(rng, s.dim());
    const OperatorMatrix ham(s, h + h.adjoint(), true);

    const Matrix d = apply_commutator(ham, rho) + apply_lindblad_term(ops.a, 0.7, rho) +
                     apply_lindblad_term(ops.sigma, 0.2, rho);
    EXPECT_LT(std::abs(d.trace()), 1e-12);
    EXPECT_LT((d - d.adjoint()).norm(), 1e-12 * (1.0 + d.norm()));
  }
}

// Property: the sparse operator reproduces dense products on random inputs.
TEST(SparseOperator, MatchesDenseProducts) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 40; ++trial) {
    const int dim = 2 + trial % 9;
    Matrix op = random_matrix(rng, dim);
    for (int i = 0; i < dim; ++i) {
      for (int j = 0; j < dim; ++j) {
        if ((i + 2 * j + trial) % 3 == 0) op(i, j) = 0.0;
      }
    }
    const Matrix rho = random_matrix(rng, dim);
    const SparseOperator sp(op);
    const Complex c(0.3, -1.1);

    Matrix out = Matrix::Zero(dim, dim);
    sp.add_left(out, c, rho);
    EXPECT_LT((out - c * op * rho).norm(), 1e-12);
    out.setZero();
    sp.add_right(out, c, rho);
    EXPECT_LT((out - c * rho * op).norm(), 1e-12);
    out.setZero();
    sp.add_commutator(out, c, rho);
    EXPECT_LT((out - c * (op * rho - rho * op)).norm(), 1e-12);
    out.setZero();
    sp.add_sandwich(out, c, rho);
    EXPECT_LT((out - c * op * rho * op.adjoint()).norm(), 1e-11);

    Matrix adj = Matrix::Zero(dim, dim);
    sp.adjoint().add_left(adj, 1.0, Matrix::Identity(dim, dim));
    EXPECT_LT((adj - op.adjoint()).norm(), 1e-14);
  }
}

TEST(SparseOperator, DropsSmallEntries) {
  Matrix m = Matrix::Zero(3, 3);
  m(0, 1) = 1.0;
  m(2, 2) = 1e-20;
  EXPECT_EQ(SparseOperator(m, 1e-15).entries().size(), 1u);
  EXPECT_EQ(SparseOperator(m).entries().size(), 2u);
}

TEST(Hermiticity, RelativeError) {
  Matrix m = Matrix::Identity(3, 3);
  EXPECT_EQ(relative_hermiticity_error(m), 0.0);
  m(0, 1) = 1.0;
  EXPECT_GT(relative_hermiticity_error(m), 0.1);
}

}  // namespace
}  // namespace lambdadet
