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

#include "qmaxent/channel.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace qmaxent {
namespace {

int square_root_dim(Eigen::Index n, const char* what) {
  const int d = static_cast<int>(std::lround(std::sqrt(static_cast<double>(n))));
  if (d < 2 || static_cast<Eigen::Index>(d) * d != n) {
    std::ostringstream msg;
    msg << what << ": dimension " << n << " is not a perfect square >= 4";
    throw InvalidDimension(msg.str());
  }
  return d;
}

Vector unit(int d, int j) {
  Vector v = Vector::Zero(d);
  v(j) = 1.0;
  return v;
}

DensityMatrix validated_choi(int d, const HermitianOperator& state, double cptp_tol) {
  if (d < 2) throw InvalidDimension("ChoiState: d < 2");
  if (state.dim() != d * d) {
    std::ostringstream msg;
    msg << "ChoiState: state dimension " << state.dim() << " != d^2 = " << d * d;
    throw DimensionMismatch(msg.str());
  }
  const CptpReport report = is_cptp(state, cptp_tol);
  if (!report.ok()) {
    std::ostringstream msg;
    msg << "not a channel: min eigenvalue " << report.min_eigenvalue << ", trace-preservation deficit "
        << report.tp_deficit;
    throw NotAChannel(msg.str());
  }
  // Positivity and marginal hold at cptp_tol; clip the rounding-level
  // negative part and renormalize the trace exactly.
  Matrix m = state.matrix();
  if (report.min_eigenvalue < 0.0) {
    const Spectrum s = eigh(state);
    m = s.vectors * s.values.cwiseMax(0.0).cast<Complex>().asDiagonal() * s.vectors.adjoint();
  }
  return DensityMatrix(Matrix(m / m.trace().real()));
}

}  // namespace

ChoiState::ChoiState(int d, const HermitianOperator& state, double cptp_tol)
    : d_(d), state_(validated_choi(d, state, cptp_tol)) {}

KrausSet::KrausSet(std::vector<Matrix> operators, double tol) : ops_(std::move(operators)) {
  if (ops_.empty()) throw InvariantViolation("KrausSet: empty");
  const Eigen::Index d = ops_.front().rows();
  Matrix sum = Matrix::Zero(d, d);
  for (const Matrix& a : ops_) {
    if (a.rows() != d || a.cols() != d) throw DimensionMismatch("KrausSet: operators of unequal shape");
    sum += a.adjoint() * a;
  }
  const double err = (sum - Matrix::Identity(d, d)).norm();
  if (err > tol) {
    std::ostringstream msg;
    msg << "KrausSet: ||sum A^dagger A - I||_F = " << err;
    throw NotAChannel(msg.str());
  }
}

Matrix KrausSet::apply(const Matrix& x) const {
  Matrix out = Matrix::Zero(x.rows(), x.cols());
  for (const Matrix& a : ops_) out += a * x * a.adjoint();
  return out;
}

DensityMatrix KrausSet::apply(const DensityMatrix& rho) const {
  if (rho.dim() != dim()) throw DimensionMismatch("KrausSet::apply");
  return DensityMatrix(apply(rho.matrix()));
}

QubitAffineMap::QubitAffineMap(const Eigen::Matrix3d& linear, const Eigen::Vector3d& translation)
    : linear_(linear), translation_(translation) {
  // Fibonacci sphere plus the centre.
  constexpr int kPoints = 256;
  const double golden = std::numbers::pi * (3.0 - std::sqrt(5.0));
  double worst = apply(Eigen::Vector3d::Zero()).norm();
  for (int k = 0; k < kPoints; ++k) {
    const double z = 1.0 - 2.0 * (k + 0.5) / kPoints;
    const double rho = std::sqrt(1.0 - z * z);
    const Eigen::Vector3d p(rho * std::cos(golden * k), rho * std::sin(golden * k), z);
    worst = std::max(worst, apply(p).norm());
  }
  if (worst > 1.0 + 1e-8) {
    std::ostringstream msg;
    msg << "QubitAffineMap: image leaves the Bloch ball (norm " << worst << ")";
    throw InvariantViolation(msg.str());
  }
}

DensityMatrix maximally_entangled_state(int d) {
  if (d < 2) throw InvalidDimension("maximally_entangled_state: d < 2");
  Vector psi = Vector::Zero(d * d);
  for (int j = 0; j < d; ++j) psi(j * d + j) = 1.0;
  return DensityMatrix::pure(psi);
}

ChoiState choi_from_apply(const ChannelFn& apply, int d) {
  if (d < 2) throw InvalidDimension("choi_from_apply: d < 2");
  // E on every matrix unit |j><k|, from E on |j>, (|j>+|k>)/sqrt2, (|j>+i|k>)/sqrt2.
  std::vector<Matrix> diag(static_cast<std::size_t>(d));
  for (int j = 0; j < d; ++j) diag[j] = apply(DensityMatrix::pure(unit(d, j))).matrix();
  Matrix omega = Matrix::Zero(d * d, d * d);
  const Complex i(0.0, 1.0);
  for (int j = 0; j < d; ++j) {
    omega.block(j * d, j * d, d, d) = diag[j];
    for (int k = j + 1; k < d; ++k) {
      const Matrix plus = apply(DensityMatrix::pure(unit(d, j) + unit(d, k))).matrix();
      const Matrix phase = apply(DensityMatrix::pure(unit(d, j) + i * unit(d, k))).matrix();
      // 2|+><+| - P_j - P_k = |j><k| + |k><j|,  2|i><i| - P_j - P_k = -i|j><k| + i|k><j|.
      const Matrix sym = 2.0 * plus - diag[j] - diag[k];
      const Matrix anti = 2.0 * phase - diag[j] - diag[k];
      const Matrix jk = 0.5 * (sym + i * anti);
      omega.block(j * d, k * d, d, d) = jk;
      omega.block(k * d, j * d, d, d) = jk.adjoint();
    }
  }
  omega /= static_cast<double>(d);
  return ChoiState(d, HermitianOperator(omega));
}

ChoiState choi_from_kraus(const KrausSet& kraus) {
  return choi_from_apply([&kraus](const DensityMatrix& rho) { return kraus.apply(rho); }, kraus.dim());
}

ChoiState unitary_choi(const Matrix& u) { return choi_from_kraus(KrausSet({u})); }

ChoiState preparator_choi(const DensityMatrix& xi) {
  const int d = xi.dim();
  return ChoiState(d, HermitianOperator(kron(Matrix(Matrix::Identity(d, d) / static_cast<double>(d)), xi.matrix())));
}

Matrix apply_linear(const ChoiState& omega, const Matrix& x) {
  const int d = omega.d();
  if (x.rows() != d || x.cols() != d) throw DimensionMismatch("apply_from_choi: operator dimension");
  const Matrix lifted = kron(Matrix(x.transpose()), Matrix(Matrix::Identity(d, d))) * omega.matrix();
  return static_cast<double>(d) * partial_trace(lifted, {d, d}, Subsystem::First);
}

DensityMatrix apply_from_choi(const ChoiState& omega, const DensityMatrix& rho) {
  if (rho.dim() != omega.d()) throw DimensionMismatch("apply_from_choi: state dimension");
  return DensityMatrix(apply_linear(omega, rho.matrix()));
}

double process_entropy(const ChoiState& omega) { return von_neumann_entropy(omega.state()); }

double choi_purity(const ChoiState& omega) { return (omega.matrix() * omega.matrix()).trace().real(); }

CptpReport is_cptp(const HermitianOperator& omega, double tol) {
  const int d = square_root_dim(omega.dim(), "is_cptp");
  const double lmin = eigh(omega).values(0);
  const Matrix marginal = partial_trace(omega.matrix(), {d, d}, Subsystem::Second);
  const double deficit = (marginal - Matrix::Identity(d, d) / static_cast<double>(d)).norm();
  return {lmin >= -tol, deficit <= tol, lmin, deficit};
}

KrausSet kraus_from_choi(const ChoiState& omega) {
  const int d = omega.d();
  const Spectrum s = eigh(omega.state().op());
  const double cutoff = kDefaultSupportTol * s.values.maxCoeff();
  std::vector<Matrix> ops;
  for (Eigen::Index k = s.values.size() - 1; k >= 0; --k) {
    const double p = s.values(k);
    if (p <= cutoff) continue;
    Matrix a(d, d);
    // phi index = anc * d + out; A[out][anc] = sqrt(d p) phi(anc, out).
    for (int anc = 0; anc < d; ++anc) {
      for (int out = 0; out < d; ++out) a(out, anc) = std::sqrt(d * p) * s.vectors(anc * d + out, k);
    }
    ops.push_back(std::move(a));
  }
  return KrausSet(std::move(ops), d * kDefaultCptpTol);
}

QubitAffineMap bloch_affine_map(const ChoiState& omega) {
  if (omega.d() != 2) {
    std::ostringstream msg;
    msg << "bloch_affine_map: unsupported dimension d = " << omega.d();
    throw InvalidDimension(msg.str());
  }
  const auto sigma = hermitian_basis(2);
  Eigen::Matrix3d m;
  Eigen::Vector3d v;
  const Matrix half_identity = Matrix::Identity(2, 2) / 2.0;
  const Matrix center = apply_linear(omega, half_identity);
  for (int a = 0; a < 3; ++a) {
    v(a) = (sigma[a].matrix() * center).trace().real();
    for (int b = 0; b < 3; ++b) {
      m(a, b) = 0.5 * (sigma[a].matrix() * apply_linear(omega, sigma[b].matrix())).trace().real();
    }
  }
  return QubitAffineMap(m, v);
}

}  // namespace qmaxent
