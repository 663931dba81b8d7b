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

#include "qmaxent/operator_core.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <string>

namespace qmaxent {
namespace {

void require_dim(int dim, const char* what) {
  if (dim < 2) {
    std::ostringstream msg;
    msg << what << ": dimension " << dim << " < 2";
    throw InvalidDimension(msg.str());
  }
}

int isqrt_exact(int n) {
  const int r = static_cast<int>(std::lround(std::sqrt(static_cast<double>(n))));
  return r * r == n ? r : -1;
}

}  // namespace

HermitianOperator::HermitianOperator(const Matrix& entries) {
  if (entries.rows() != entries.cols()) {
    throw InvariantViolation("HermitianOperator: matrix is not square");
  }
  require_dim(static_cast<int>(entries.rows()), "HermitianOperator");
  if (!entries.allFinite()) {
    throw InvariantViolation("HermitianOperator: non-finite entries");
  }
  const double skew = (entries - entries.adjoint()).norm();
  if (skew > kHermitianTol * std::max(1.0, entries.norm())) {
    std::ostringstream msg;
    msg << "HermitianOperator: ||A - A^dagger||_F = " << skew;
    throw InvariantViolation(msg.str());
  }
  m_ = 0.5 * (entries + entries.adjoint());
}

HermitianOperator HermitianOperator::zero(int dim) {
  require_dim(dim, "HermitianOperator::zero");
  return HermitianOperator(Matrix::Zero(dim, dim));
}

HermitianOperator HermitianOperator::identity(int dim) {
  require_dim(dim, "HermitianOperator::identity");
  return HermitianOperator(Matrix::Identity(dim, dim));
}

HermitianOperator HermitianOperator::operator+(const HermitianOperator& other) const {
  if (other.dim() != dim()) throw DimensionMismatch("HermitianOperator::operator+");
  return HermitianOperator(Matrix(m_ + other.m_));
}

HermitianOperator HermitianOperator::operator-(const HermitianOperator& other) const {
  if (other.dim() != dim()) throw DimensionMismatch("HermitianOperator::operator-");
  return HermitianOperator(Matrix(m_ - other.m_));
}

HermitianOperator HermitianOperator::operator*(double scale) const {
  return HermitianOperator(Matrix(scale * m_));
}

DensityMatrix::DensityMatrix(const HermitianOperator& op) : op_(op) {
  const Complex tr = op_.matrix().trace();
  if (std::abs(tr.real() - 1.0) > kDensityTol) {
    std::ostringstream msg;
    msg << "DensityMatrix: trace " << tr.real() << " != 1";
    throw InvariantViolation(msg.str());
  }
  const double lmin = eigh(op_).values(0);
  if (lmin < -kDensityTol) {
    std::ostringstream msg;
    msg << "DensityMatrix: smallest eigenvalue " << lmin << " < 0";
    throw InvariantViolation(msg.str());
  }
}

DensityMatrix DensityMatrix::maximally_mixed(int dim) {
  require_dim(dim, "DensityMatrix::maximally_mixed");
  return DensityMatrix(Matrix(Matrix::Identity(dim, dim) / static_cast<double>(dim)));
}

DensityMatrix DensityMatrix::pure(const Vector& ket) {
  const double n = ket.norm();
  if (!(n > 0.0)) throw InvariantViolation("DensityMatrix::pure: zero vector");
  const Vector psi = ket / n;
  return DensityMatrix(Matrix(psi * psi.adjoint()));
}

BlochVector::BlochVector(RealVector components) : r_(std::move(components)) {
  (void)system_dim();
  if (r_.size() == 3 && r_.norm() > 1.0 + 1e-10) {
    std::ostringstream msg;
    msg << "BlochVector: qubit Bloch vector norm " << r_.norm() << " > 1";
    throw InvariantViolation(msg.str());
  }
}

BlochVector::BlochVector(std::initializer_list<double> components)
    : BlochVector(RealVector::Map(components.begin(), static_cast<Eigen::Index>(components.size()))) {}

int BlochVector::system_dim() const {
  const int d = isqrt_exact(static_cast<int>(r_.size()) + 1);
  if (d < 2) {
    std::ostringstream msg;
    msg << "BlochVector: length " << r_.size() << " is not d^2 - 1";
    throw InvalidDimension(msg.str());
  }
  return d;
}

BlochVector BlochVector::of(const DensityMatrix& rho) {
  const int d = rho.dim();
  const auto basis = hermitian_basis(d);
  RealVector r(static_cast<Eigen::Index>(basis.size()));
  for (std::size_t k = 0; k < basis.size(); ++k) {
    r(static_cast<Eigen::Index>(k)) = 0.5 * d * hs_inner(rho.op(), basis[k]);
  }
  return BlochVector(std::move(r));
}

DensityMatrix BlochVector::to_density() const {
  const int d = system_dim();
  const auto basis = hermitian_basis(d);
  Matrix m = Matrix::Identity(d, d);
  for (std::size_t k = 0; k < basis.size(); ++k) m += r_(static_cast<Eigen::Index>(k)) * basis[k].matrix();
  return DensityMatrix(Matrix(m / static_cast<double>(d)));
}

Spectrum eigh(const HermitianOperator& op) {
  Eigen::SelfAdjointEigenSolver<Matrix> solver(op.matrix());
  if (solver.info() != Eigen::Success) {
    throw InvariantViolation("eigh: eigensolver failed");
  }
  return {solver.eigenvalues(), solver.eigenvectors()};
}

std::vector<HermitianOperator> hermitian_basis(int d) {
  require_dim(d, "hermitian_basis");
  std::vector<HermitianOperator> basis;
  basis.reserve(static_cast<std::size_t>(d * d - 1));
  const Complex i(0.0, 1.0);
  for (int j = 0; j < d; ++j) {
    for (int k = j + 1; k < d; ++k) {
      Matrix sym = Matrix::Zero(d, d);
      sym(j, k) = 1.0;
      sym(k, j) = 1.0;
      basis.emplace_back(sym);
      Matrix anti = Matrix::Zero(d, d);
      anti(j, k) = -i;
      anti(k, j) = i;
      basis.emplace_back(anti);
    }
  }
  for (int l = 1; l < d; ++l) {
    Matrix diag = Matrix::Zero(d, d);
    const double scale = std::sqrt(2.0 / (l * (l + 1.0)));
    for (int j = 0; j < l; ++j) diag(j, j) = scale;
    diag(l, l) = -l * scale;
    basis.emplace_back(diag);
  }
  return basis;
}

HermitianOperator pauli_x() { return hermitian_basis(2)[0]; }
HermitianOperator pauli_y() { return hermitian_basis(2)[1]; }
HermitianOperator pauli_z() { return hermitian_basis(2)[2]; }

HermitianOperator pauli(char name) {
  switch (name) {
    case 'I': return HermitianOperator::identity(2);
    case 'X': return pauli_x();
    case 'Y': return pauli_y();
    case 'Z': return pauli_z();
    default: throw InvariantViolation(std::string("pauli: unknown label '") + name + "'");
  }
}

HermitianOperator matrix_exp(const HermitianOperator& h) {
  const Spectrum s = eigh(h);
  const RealVector e = s.values.array().exp();
  return HermitianOperator(Matrix(s.vectors * e.cast<Complex>().asDiagonal() * s.vectors.adjoint()));
}

SupportLog matrix_log(const DensityMatrix& rho, double support_tol) {
  const Spectrum s = eigh(rho.op());
  const int n = rho.dim();
  const double cutoff = support_tol * std::max(s.values(n - 1), 0.0);
  RealVector logs = RealVector::Zero(n);
  RealVector proj = RealVector::Zero(n);
  int rank = 0;
  for (int k = 0; k < n; ++k) {
    if (s.values(k) > cutoff) {
      logs(k) = std::log(s.values(k));
      proj(k) = 1.0;
      ++rank;
    }
  }
  const Matrix& u = s.vectors;
  return {HermitianOperator(Matrix(u * logs.cast<Complex>().asDiagonal() * u.adjoint())),
          HermitianOperator(Matrix(u * proj.cast<Complex>().asDiagonal() * u.adjoint())), rank};
}

double von_neumann_entropy(const DensityMatrix& rho, double support_tol) {
  const RealVector p = eigh(rho.op()).values;
  const double cutoff = support_tol * std::max(p.maxCoeff(), 0.0);
  double s = 0.0;
  for (Eigen::Index k = 0; k < p.size(); ++k) {
    if (p(k) > cutoff) s -= p(k) * std::log2(p(k));
  }
  return s;
}

Matrix partial_trace(const Matrix& op, TensorSplit split, Subsystem traced) {
  if (split.first < 1 || split.second < 1 || op.rows() != op.cols() ||
      op.rows() != static_cast<Eigen::Index>(split.first) * split.second) {
    std::ostringstream msg;
    msg << "partial_trace: dimension " << op.rows() << " does not factor as " << split.first << " x "
        << split.second;
    throw InvalidSplit(msg.str());
  }
  const int da = split.first;
  const int db = split.second;
  if (traced == Subsystem::First) {
    Matrix out = Matrix::Zero(db, db);
    for (int a = 0; a < da; ++a) out += op.block(a * db, a * db, db, db);
    return out;
  }
  Matrix out(da, da);
  for (int a = 0; a < da; ++a) {
    for (int b = 0; b < da; ++b) out(a, b) = op.block(a * db, b * db, db, db).trace();
  }
  return out;
}

HermitianOperator partial_trace(const HermitianOperator& op, TensorSplit split, Subsystem traced) {
  return HermitianOperator(partial_trace(op.matrix(), split, traced));
}

double expectation(const DensityMatrix& rho, const HermitianOperator& f) {
  if (rho.dim() != f.dim()) {
    std::ostringstream msg;
    msg << "expectation: state dimension " << rho.dim() << " vs observable dimension " << f.dim();
    throw DimensionMismatch(msg.str());
  }
  const Complex v = (rho.matrix() * f.matrix()).trace();
  if (std::abs(v.imag()) > 1e-10) throw InvariantViolation("expectation: imaginary part above 1e-10");
  return v.real();
}

Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

HermitianOperator kron(const HermitianOperator& a, const HermitianOperator& b) {
  return HermitianOperator(kron(a.matrix(), b.matrix()));
}

double hs_inner(const HermitianOperator& a, const HermitianOperator& b) {
  if (a.dim() != b.dim()) throw DimensionMismatch("hs_inner");
  // Tr(AB) = sum_ij A_ij B_ji = sum_ij A_ij conj(B_ij) for Hermitian B.
  return (a.matrix().array() * b.matrix().conjugate().array()).sum().real();
}

HermitianOperator transpose(const HermitianOperator& op) {
  return HermitianOperator(Matrix(op.matrix().transpose()));
}

}  // namespace qmaxent
