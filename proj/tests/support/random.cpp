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

#include "random.hpp"

#include <cmath>

namespace qmaxent::testing {

double Random::uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(engine_); }

int Random::integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(engine_); }

Matrix Random::ginibre(int rows, int cols) {
  Matrix g(rows, cols);
  for (int i = 0; i < rows; ++i) {
    for (int k = 0; k < cols; ++k) g(i, k) = Complex(normal(), normal()) / std::sqrt(2.0);
  }
  return g;
}

Matrix Random::unitary(int d) {
  Eigen::HouseholderQR<Matrix> qr(ginibre(d, d));
  Matrix q = qr.householderQ();
  const Matrix r = qr.matrixQR();
  for (int k = 0; k < d; ++k) {
    const Complex diag = r(k, k);
    if (std::abs(diag) > 0.0) q.col(k) *= diag / std::abs(diag);
  }
  return q;
}

Vector Random::ket(int d) {
  Vector v = ginibre(d, 1).col(0);
  return v / v.norm();
}

DensityMatrix Random::state(int d, int rank) {
  if (rank < 1) rank = d;
  const Matrix g = ginibre(d, rank);
  Matrix rho = g * g.adjoint();
  rho /= rho.trace().real();
  return DensityMatrix(Matrix(0.5 * (rho + rho.adjoint())));
}

HermitianOperator Random::hermitian(int d) {
  const Matrix g = ginibre(d, d);
  return HermitianOperator(Matrix(0.5 * (g + g.adjoint())));
}

KrausSet Random::kraus(int d, int kraus_count) {
  // Columns of a d*k x d isometry, split into k blocks.
  const Matrix v = unitary(d * kraus_count).leftCols(d);
  std::vector<Matrix> ops;
  for (int k = 0; k < kraus_count; ++k) ops.push_back(v.block(k * d, 0, d, d));
  return KrausSet(std::move(ops));
}

ChoiState Random::channel(int d, int kraus_count) {
  if (kraus_count < 1) kraus_count = integer(1, d * d);
  return choi_from_kraus(kraus(d, kraus_count));
}

Eigen::Vector3d Random::unit_vector() {
  Eigen::Vector3d v(normal(), normal(), normal());
  return v / v.norm();
}

Eigen::Vector3d Random::ball(double radius) { return radius * std::cbrt(uniform()) * unit_vector(); }

}  // namespace qmaxent::testing
