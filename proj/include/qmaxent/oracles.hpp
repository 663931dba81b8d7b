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

#ifndef QMAXENT_ORACLES_HPP
#define QMAXENT_ORACLES_HPP

#include <optional>

#include "qmaxent/channel.hpp"
#include "qmaxent/observation.hpp"
#include "qmaxent/operator_core.hpp"
#include "qmaxent/solver.hpp"

// Closed-form and root-finder reference solutions for qubit observation
// levels, independent of the dual optimizer.
namespace qmaxent::oracles {

// Multipliers of the collinear ansatz
//   omega ~ exp(-lambda (r_T . sigma) (x) I - d (2 rho^T (x) sigma_z)),
// with r_T = (r_x, -r_y, r_z) the Bloch vector of rho^T.
struct CollinearMultipliers {
  double lambda;
  double d;
};

struct OracleResult {
  ChoiState choi;
  std::optional<CollinearMultipliers> collinear;
  // Recovered output-state multipliers mu with m = -tanh|mu| mu/|mu|, total-mixture probe only.
  std::optional<Eigen::Vector3d> output_multipliers;
  QubitAffineMap bloch_map;
  int roots_found = 1;
};

// Probe rho = I/2, measured <sigma_z> of the output equal to m, |m| <= 1.
OracleResult o1_mixed(double m);

// Pure probe with unit Bloch vector r_hat, |m| < 1. At |m| = 1 throws
// OracleFailure; use o1_pure_limit_map for that case.
OracleResult o1_pure(double m, const Eigen::Vector3d& r_hat);

// t -> (0, 0, sign (1 + t . r_hat) / 2), the |m| = 1 face solution.
QubitAffineMap o1_pure_limit_map(int sign, const Eigen::Vector3d& r_hat);

// Mixed probe with Bloch vector r * direction, 0 < r < 1. lambda is
// eliminated exactly from the trace-preservation equation and the remaining
// equation in d is solved by bracketing. Throws OracleFailure when no root is
// bracketed; roots_found > 1 reports a non-unique solution.
OracleResult o1_transcendental(double r, double m, const Eigen::Vector3d& direction = Eigen::Vector3d::UnitZ());

// Total-mixture probe with full output tomography m_vec, |m_vec| <= 1.
OracleResult o3(const Eigen::Vector3d& m_vec);

// Total mixture plus the +1 eigenstates of sigma_x, sigma_y, sigma_z as
// probes, only <sigma_z> measured. Throws Infeasible when omega would not be
// positive.
OracleResult o4(double z, const Eigen::Vector3d& zeta);

// Observation levels the oracles solve, TP constraints included.
ObservationLevel o1_level(const Eigen::Vector3d& r, double m);
ObservationLevel o3_level(const Eigen::Vector3d& m_vec);
ObservationLevel o4_level(double z, const Eigen::Vector3d& zeta);

// Projects solver multipliers of an o1_level problem onto the collinear frame:
// d is the single user multiplier, lambda the TP multipliers along r_T / |r|^2.
CollinearMultipliers collinear_projection(const MaxEntSolution& solution, const Eigen::Vector3d& r);

}  // namespace qmaxent::oracles

#endif  // QMAXENT_ORACLES_HPP
