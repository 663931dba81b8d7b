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

#ifndef QMAXENT_OPERATOR_CORE_HPP
#define QMAXENT_OPERATOR_CORE_HPP

#include <complex>
#include <initializer_list>
#include <vector>

#include <Eigen/Dense>

#include "qmaxent/errors.hpp"

namespace qmaxent {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;

inline constexpr double kHermitianTol = 1e-12;
inline constexpr double kDensityTol = 1e-10;
inline constexpr double kDefaultSupportTol = 1e-12;
inline constexpr double kLn2 = 0.693147180559945309417232121458176568;

/// Self-adjoint complex matrix of dimension at least 2.
///
/// Construction checks ||A - A^dagger||_F <= 1e-12 * max(1, ||A||_F) and stores
/// the exactly Hermitian part, so downstream spectral routines never see the
/// rounding-level skew part.
class HermitianOperator {
 public:
  explicit HermitianOperator(const Matrix& entries);

  static HermitianOperator zero(int dim);
  static HermitianOperator identity(int dim);

  int dim() const noexcept { return static_cast<int>(m_.rows()); }
  const Matrix& matrix() const noexcept { return m_; }

  HermitianOperator operator+(const HermitianOperator& other) const;
  HermitianOperator operator-(const HermitianOperator& other) const;
  HermitianOperator operator*(double scale) const;

 private:
  Matrix m_;
};

inline HermitianOperator operator*(double scale, const HermitianOperator& op) { return op * scale; }

/// Unit-trace positive semidefinite operator.
class DensityMatrix {
 public:
  explicit DensityMatrix(const HermitianOperator& op);
  explicit DensityMatrix(const Matrix& entries) : DensityMatrix(HermitianOperator(entries)) {}

  static DensityMatrix maximally_mixed(int dim);
  // |psi><psi| for a nonzero ket, normalized internally.
  static DensityMatrix pure(const Vector& ket);

  int dim() const noexcept { return op_.dim(); }
  const HermitianOperator& op() const noexcept { return op_; }
  const Matrix& matrix() const noexcept { return op_.matrix(); }

 private:
  HermitianOperator op_;
};

/// Generalized Bloch coordinates r_k with rho = (I + sum_k r_k Lambda_k) / d.
class BlochVector {
 public:
  explicit BlochVector(RealVector components);
  BlochVector(std::initializer_list<double> components);

  static BlochVector qubit(double x, double y, double z) { return BlochVector{x, y, z}; }
  // Coordinates of rho; inverse of to_density.
  static BlochVector of(const DensityMatrix& rho);

  int size() const noexcept { return static_cast<int>(r_.size()); }
  // System dimension d with d^2 - 1 == size().
  int system_dim() const;
  double operator[](int k) const { return r_(k); }
  const RealVector& components() const noexcept { return r_; }
  double norm() const { return r_.norm(); }

  DensityMatrix to_density() const;

 private:
  RealVector r_;
};

struct Spectrum {
  RealVector values;  // ascending
  Matrix vectors;     // columns are orthonormal eigenvectors
};

Spectrum eigh(const HermitianOperator& op);

/// Traceless Hermitian basis with Tr(L_j L_k) = 2 delta_jk.
///
/// Generalized Gell-Mann ordering: for each pair j < k the symmetric then the
/// antisymmetric element, followed by the d - 1 diagonal elements. For d = 2
/// this is exactly (sigma_x, sigma_y, sigma_z).
std::vector<HermitianOperator> hermitian_basis(int d);

HermitianOperator pauli_x();
HermitianOperator pauli_y();
HermitianOperator pauli_z();
// 'I', 'X', 'Y' or 'Z'.
HermitianOperator pauli(char name);

HermitianOperator matrix_exp(const HermitianOperator& h);

struct SupportLog {
  HermitianOperator log;      // zero outside the support
  HermitianOperator support;  // orthogonal projector onto the support
  int rank;
};

// Eigenvalues below support_tol * lambda_max are treated as outside the support.
SupportLog matrix_log(const DensityMatrix& rho, double support_tol = kDefaultSupportTol);

// In bits.
double von_neumann_entropy(const DensityMatrix& rho, double support_tol = kDefaultSupportTol);

enum class Subsystem { First, Second };

struct TensorSplit {
  int first;
  int second;
};

// Traces out `traced` from an operator on first (x) second.
Matrix partial_trace(const Matrix& op, TensorSplit split, Subsystem traced);
HermitianOperator partial_trace(const HermitianOperator& op, TensorSplit split, Subsystem traced);

// Tr(rho F); throws if the imaginary part exceeds 1e-10.
double expectation(const DensityMatrix& rho, const HermitianOperator& f);

Matrix kron(const Matrix& a, const Matrix& b);
HermitianOperator kron(const HermitianOperator& a, const HermitianOperator& b);

// Real part of Tr(A B).
double hs_inner(const HermitianOperator& a, const HermitianOperator& b);

// Plain transpose in the computational basis.
HermitianOperator transpose(const HermitianOperator& op);

}  // namespace qmaxent

#endif  // QMAXENT_OPERATOR_CORE_HPP
