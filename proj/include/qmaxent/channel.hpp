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

#ifndef QMAXENT_CHANNEL_HPP
#define QMAXENT_CHANNEL_HPP

#include <functional>
#include <vector>

#include <Eigen/Dense>

#include "qmaxent/operator_core.hpp"

// Tensor factor order throughout: (ancilla, system). A channel E acts on the
// second factor, omega_E = (I (x) E)[Psi+], and transposes are taken in the
// computational basis that defines Psi+.

namespace qmaxent {

inline constexpr double kDefaultCptpTol = 1e-8;

/// Choi state omega_E on d (x) d with Tr_2 omega = I/d.
class ChoiState {
 public:
  // Throws NotAChannel when `state` is not positive or its ancilla marginal
  // differs from I/d by more than cptp_tol (Frobenius).
  ChoiState(int d, const HermitianOperator& state, double cptp_tol = kDefaultCptpTol);
  ChoiState(int d, const Matrix& state, double cptp_tol = kDefaultCptpTol)
      : ChoiState(d, HermitianOperator(state), cptp_tol) {}

  int d() const noexcept { return d_; }
  const DensityMatrix& state() const noexcept { return state_; }
  const Matrix& matrix() const noexcept { return state_.matrix(); }

 private:
  int d_;
  DensityMatrix state_;
};

class KrausSet {
 public:
  // Requires ||sum_k A_k^dagger A_k - I||_F <= tol.
  explicit KrausSet(std::vector<Matrix> operators, double tol = 1e-9);

  int dim() const noexcept { return static_cast<int>(ops_.front().rows()); }
  const std::vector<Matrix>& operators() const noexcept { return ops_; }

  Matrix apply(const Matrix& x) const;
  DensityMatrix apply(const DensityMatrix& rho) const;

 private:
  std::vector<Matrix> ops_;
};

/// Qubit channel in Bloch form r -> M r + v.
class QubitAffineMap {
 public:
  // Throws InvariantViolation if a sampled point of the Bloch ball leaves it
  // by more than 1e-8.
  QubitAffineMap(const Eigen::Matrix3d& linear, const Eigen::Vector3d& translation);

  const Eigen::Matrix3d& linear() const noexcept { return linear_; }
  const Eigen::Vector3d& translation() const noexcept { return translation_; }
  Eigen::Vector3d apply(const Eigen::Vector3d& r) const { return linear_ * r + translation_; }

 private:
  Eigen::Matrix3d linear_;
  Eigen::Vector3d translation_;
};

struct CptpReport {
  bool positive;
  bool trace_preserving;
  double min_eigenvalue;
  double tp_deficit;  // ||Tr_2 omega - I/d||_F

  bool ok() const noexcept { return positive && trace_preserving; }
};

using ChannelFn = std::function<DensityMatrix(const DensityMatrix&)>;

DensityMatrix maximally_entangled_state(int d);

// Evaluates E on density matrices only; off-diagonal matrix units are reached
// through linear combinations of pure states.
ChoiState choi_from_apply(const ChannelFn& apply, int d);
ChoiState choi_from_kraus(const KrausSet& kraus);
ChoiState unitary_choi(const Matrix& u);
// Constant channel rho -> xi.
ChoiState preparator_choi(const DensityMatrix& xi);

// d Tr_anc[(x^T (x) I) omega], valid for any operator x.
Matrix apply_linear(const ChoiState& omega, const Matrix& x);
DensityMatrix apply_from_choi(const ChoiState& omega, const DensityMatrix& rho);

// Von Neumann entropy of the Choi state, in bits.
double process_entropy(const ChoiState& omega);
double choi_purity(const ChoiState& omega);

// Throws InvalidDimension if the dimension is not a perfect square.
CptpReport is_cptp(const HermitianOperator& omega, double tol = kDefaultCptpTol);

// Eigen-decomposition Kraus form; the completeness check is relaxed to the
// Choi state's own trace-preservation tolerance, scaled by d.
KrausSet kraus_from_choi(const ChoiState& omega);

// Requires d = 2. M[a][b] = Tr(s_a E[s_b]) / 2, v[a] = Tr(s_a E[I/2]).
QubitAffineMap bloch_affine_map(const ChoiState& omega);

}  // namespace qmaxent

#endif  // QMAXENT_CHANNEL_HPP
