// Copyright 2026 The qmaxent Authors
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

#include <cmath>

#include <gtest/gtest.h>

#include "qmaxent/errors.hpp"
#include "qmaxent/operator_core.hpp"
#include "random.hpp"

namespace qmaxent {
namespace {

Matrix diag2(double a, double b) {
  Matrix m = Matrix::Zero(2, 2);
  m(0, 0) = a;
  m(1, 1) = b;
  return m;
}

TEST(HermitianOperator, RejectsSkewPart) {
  Matrix m = Matrix::Zero(2, 2);
  m(0, 1) = 1.0;
  EXPECT_THROW(HermitianOperator{m}, InvariantViolation);
}

TEST(HermitianOperator, RejectsDimensionOne) {
  EXPECT_THROW(HermitianOperator(Matrix::Identity(1, 1)), InvalidDimension);
}

TEST(HermitianOperator, StoresExactlyHermitianPart) {
  Matrix m = pauli_x().matrix();
  m(0, 1) += Complex(0.0, 1e-14);
  const HermitianOperator h(m);
  EXPECT_EQ((h.matrix() - h.matrix().adjoint()).norm(), 0.0);
}

TEST(DensityMatrix, ValidatesTraceAndPositivity) {
  EXPECT_THROW(DensityMatrix(Matrix(Matrix::Identity(2, 2))), InvariantViolation);
  EXPECT_THROW(DensityMatrix(diag2(1.5, -0.5)), InvariantViolation);
  EXPECT_NO_THROW(DensityMatrix(diag2(1.0, 0.0)));
}

TEST(BlochVector, QubitRoundTrip) {
  const BlochVector r = BlochVector::qubit(0.1, -0.4, 0.7);
  const BlochVector back = BlochVector::of(r.to_density());
  for (int k = 0; k < 3; ++k) EXPECT_NEAR(back[k], r[k], 1e-14);
  EXPECT_THROW(BlochVector::qubit(1.0, 0.1, 0.0), InvariantViolation);
}

TEST(BlochVector, QutritRoundTrip) {
  testing::Random rng(11);
  const DensityMatrix rho = rng.state(3);
  const BlochVector r = BlochVector::of(rho);
  EXPECT_EQ(r.size(), 8);
  EXPECT_EQ(r.system_dim(), 3);
  EXPECT_LT((r.to_density().matrix() - rho.matrix()).norm(), 1e-13);
}

TEST(HermitianBasis, QubitIsPauli) {
  const auto b = hermitian_basis(2);
  ASSERT_EQ(b.size(), 3u);
  Matrix x(2, 2), y(2, 2), z(2, 2);
  x << 0, 1, 1, 0;
  y << 0, Complex(0, -1), Complex(0, 1), 0;
  z << 1, 0, 0, -1;
  EXPECT_EQ(b[0].matrix(), x);
  EXPECT_EQ(b[1].matrix(), y);
  EXPECT_EQ(b[2].matrix(), z);
  for (const auto& l : b) {
    EXPECT_NEAR(std::abs(l.matrix().trace()), 0.0, 1e-15);
    EXPECT_NEAR(hs_inner(l, l), 2.0, 1e-15);
  }
}

TEST(HermitianBasis, GramIsTwiceIdentity) {
  for (int d : {3, 4, 5}) {
    const auto b = hermitian_basis(d);
    ASSERT_EQ(static_cast<int>(b.size()), d * d - 1);
    for (std::size_t i = 0; i < b.size(); ++i) {
      EXPECT_NEAR(std::abs(b[i].matrix().trace()), 0.0, 1e-14);
      for (std::size_t k = 0; k < b.size(); ++k) EXPECT_NEAR(hs_inner(b[i], b[k]), i == k ? 2.0 : 0.0, 1e-14);
    }
  }
  EXPECT_THROW(hermitian_basis(1), InvalidDimension);
}

TEST(HermitianBasis, SpansTracelessOperators) {
  testing::Random rng(3);
  for (int d : {2, 3, 4}) {
    const auto b = hermitian_basis(d);
    const Matrix h = rng.hermitian(d).matrix();
    const Matrix a = h - (h.trace() / static_cast<double>(d)) * Matrix::Identity(d, d);
    Matrix sum = Matrix::Zero(d, d);
    for (const auto& l : b) sum += ((a * l.matrix()).trace().real() / 2.0) * l.matrix();
    EXPECT_LT((sum - a).norm(), 1e-10);
  }
}

TEST(MatrixExp, Examples) {
  EXPECT_LT((matrix_exp(HermitianOperator::zero(2)).matrix() - Matrix::Identity(2, 2)).norm(), 1e-15);
  const Matrix e = matrix_exp(HermitianOperator(diag2(std::log(2.0), std::log(3.0)))).matrix();
  EXPECT_LT((e - diag2(2.0, 3.0)).norm(), 1e-14);
  const Matrix ex = matrix_exp(pauli_x()).matrix();
  const Matrix expected = std::cosh(1.0) * Matrix::Identity(2, 2) + std::sinh(1.0) * pauli_x().matrix();
  EXPECT_LT((ex - expected).norm(), 1e-14);
}

TEST(MatrixExp, LogInvertsOnFullSupport) {
  testing::Random rng(5);
  for (int trial = 0; trial < 20; ++trial) {
    const int d = rng.integer(2, 5);
    const HermitianOperator h = rng.hermitian(d);
    const Matrix e = matrix_exp(h).matrix();
    const Spectrum sh = eigh(h);
    const Spectrum se = eigh(HermitianOperator(e));
    for (int k = 0; k < d; ++k) EXPECT_NEAR(se.values(k), std::exp(sh.values(k)), 1e-12 * std::exp(sh.values(k)));
    const double tr = e.trace().real();
    const SupportLog sl = matrix_log(DensityMatrix(Matrix(e / tr)));
    EXPECT_EQ(sl.rank, d);
    const Matrix recovered = sl.log.matrix() + std::log(tr) * Matrix::Identity(d, d);
    EXPECT_LT((recovered - h.matrix()).norm(), 1e-9);
  }
}

TEST(MatrixLog, MaximallyMixed) {
  const SupportLog sl = matrix_log(DensityMatrix::maximally_mixed(2));
  EXPECT_LT((sl.log.matrix() + std::log(2.0) * Matrix::Identity(2, 2)).norm(), 1e-15);
  EXPECT_EQ(sl.rank, 2);
}

TEST(MatrixLog, PureStateSupport) {
  const SupportLog sl = matrix_log(DensityMatrix(diag2(1.0, 0.0)));
  EXPECT_EQ(sl.rank, 1);
  EXPECT_LT(sl.log.matrix().norm(), 1e-15);
  EXPECT_LT((sl.support.matrix() - diag2(1.0, 0.0)).norm(), 1e-15);
}

TEST(MatrixLog, Diagonal) {
  const SupportLog sl = matrix_log(DensityMatrix(diag2(0.75, 0.25)));
  EXPECT_LT((sl.log.matrix() - diag2(std::log(0.75), std::log(0.25))).norm(), 1e-14);
}

TEST(Entropy, Examples) {
  testing::Random rng(9);
  EXPECT_NEAR(von_neumann_entropy(DensityMatrix::pure(rng.ket(3))), 0.0, 1e-12);
  EXPECT_NEAR(von_neumann_entropy(DensityMatrix::maximally_mixed(4)), 2.0, 1e-14);
  Matrix half = Matrix::Zero(4, 4);
  half(0, 0) = half(1, 1) = 0.5;
  EXPECT_NEAR(von_neumann_entropy(DensityMatrix(half)), 1.0, 1e-14);
}

TEST(Entropy, UnitaryInvariance) {
  testing::Random rng(21);
  for (int trial = 0; trial < 20; ++trial) {
    const int d = rng.integer(2, 6);
    const DensityMatrix rho = rng.state(d, rng.integer(1, d));
    const Matrix u = rng.unitary(d);
    const DensityMatrix rotated(Matrix(u * rho.matrix() * u.adjoint()));
    EXPECT_NEAR(von_neumann_entropy(rotated), von_neumann_entropy(rho), 1e-9);
  }
}

TEST(PartialTrace, MaximallyEntangledMarginal) {
  Matrix psi = Matrix::Zero(4, 4);
  psi(0, 0) = psi(0, 3) = psi(3, 0) = psi(3, 3) = 0.5;
  EXPECT_LT((partial_trace(psi, {2, 2}, Subsystem::Second) - 0.5 * Matrix::Identity(2, 2)).norm(), 1e-15);
  EXPECT_LT((partial_trace(psi, {2, 2}, Subsystem::First) - 0.5 * Matrix::Identity(2, 2)).norm(), 1e-15);
}

TEST(PartialTrace, ProductOperator) {
  testing::Random rng(2);
  const Matrix a = rng.hermitian(3).matrix();
  const Matrix b = rng.hermitian(2).matrix();
  EXPECT_LT((partial_trace(kron(a, b), {3, 2}, Subsystem::First) - a.trace() * b).norm(), 1e-13);
  EXPECT_LT((partial_trace(kron(a, b), {3, 2}, Subsystem::Second) - b.trace() * a).norm(), 1e-13);
}

TEST(PartialTrace, TraceLinearityPositivity) {
  testing::Random rng(4);
  for (int trial = 0; trial < 20; ++trial) {
    const Matrix w = rng.hermitian(4).matrix();
    const Matrix v = rng.hermitian(4).matrix();
    const Matrix tw = partial_trace(w, {2, 2}, Subsystem::Second);
    EXPECT_NEAR(std::abs(tw.trace() - w.trace()), 0.0, 1e-13);
    const Matrix lin = partial_trace(Matrix(0.3 * w - 1.7 * v), {2, 2}, Subsystem::Second);
    EXPECT_LT((lin - (0.3 * tw - 1.7 * partial_trace(v, {2, 2}, Subsystem::Second))).norm(), 1e-13);
    const DensityMatrix rho = rng.state(6);
    const Spectrum s = eigh(HermitianOperator(partial_trace(rho.matrix(), {2, 3}, Subsystem::First)));
    EXPECT_GE(s.values(0), -1e-14);
  }
}

TEST(PartialTrace, RejectsBadSplit) {
  EXPECT_THROW(partial_trace(Matrix(Matrix::Identity(4, 4)), {3, 2}, Subsystem::First), InvalidSplit);
}

TEST(Expectation, Examples) {
  EXPECT_NEAR(expectation(DensityMatrix::maximally_mixed(2), pauli_z()), 0.0, 1e-15);
  EXPECT_NEAR(expectation(DensityMatrix(diag2(1.0, 0.0)), pauli_z()), 1.0, 1e-15);
  EXPECT_NEAR(expectation(BlochVector::qubit(0.0, 0.0, 0.3).to_density(), pauli_z()), 0.3, 1e-15);
  EXPECT_THROW(expectation(DensityMatrix::maximally_mixed(3), pauli_z()), DimensionMismatch);
}

TEST(Transpose, QubitBlochFlipsY) {
  const BlochVector r = BlochVector::qubit(0.2, 0.5, -0.3);
  const BlochVector t = BlochVector::of(DensityMatrix(transpose(r.to_density().op())));
  EXPECT_NEAR(t[0], 0.2, 1e-15);
  EXPECT_NEAR(t[1], -0.5, 1e-15);
  EXPECT_NEAR(t[2], -0.3, 1e-15);
}

}  // namespace
}  // namespace qmaxent
