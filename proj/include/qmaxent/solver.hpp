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

#ifndef QMAXENT_SOLVER_HPP
#define QMAXENT_SOLVER_HPP

#include <string>
#include <vector>

#include "qmaxent/channel.hpp"
#include "qmaxent/observation.hpp"
#include "qmaxent/operator_core.hpp"

namespace qmaxent {

struct LineSearchOptions {
  double armijo = 1e-4;
  double shrink = 0.5;
  int max_backtracks = 60;
  double max_step = 5.0;  // infinity-norm cap on a single multiplier update
};

struct SolverOptions {
  double grad_tol = 1e-10;       // on the dual gradient, infinity norm
  int max_iter = 500;
  double multiplier_cap = 50.0;  // |lambda|_inf beyond this flags a boundary solution
  double boundary_tol = 1e-9;    // |target - bound| below this pins a face up front
  double cptp_tol = kDefaultCptpTol;
  LineSearchOptions line_search;

  // Throws InvariantViolation on non-positive tolerances or iteration limits.
  void validate() const;
};

/// Estimated channel together with the dual certificate.
///
/// omega = exp(-sum_j lambda_j X_j) / Z; for biased and face solutions the
/// exponent is restricted to the support, see solve_biased and
/// boundary_resolve. Multipliers and residuals are indexed like
/// ObservationLevel::all_constraints().
struct MaxEntSolution {
  ChoiState choi;
  RealVector multipliers;
  std::vector<std::string> labels;
  double log_partition;  // natural log
  double entropy_bits;
  RealVector residuals;  // |Tr(omega X_j) - x_j|
  int iterations;
  bool boundary_flag;

  double max_residual() const { return residuals.size() ? residuals.maxCoeff() : 0.0; }
};

class PriorChannel {
 public:
  explicit PriorChannel(ChoiState choi, double support_tol = kDefaultSupportTol);

  const ChoiState& choi() const noexcept { return choi_; }
  const HermitianOperator& support() const noexcept { return support_; }
  const HermitianOperator& log_on_support() const noexcept { return log_; }
  int rank() const noexcept { return rank_; }
  // Orthonormal basis of the support, d^2 x rank.
  const Matrix& support_basis() const noexcept { return basis_; }

 private:
  ChoiState choi_;
  HermitianOperator support_;
  HermitianOperator log_;
  Matrix basis_;
  int rank_;
};

struct DualValue {
  double value;         // ln Z + lambda . x
  RealVector gradient;  // x_j - Tr(omega X_j)
  DensityMatrix omega;
  double log_partition;
};

// One eigendecomposition of -sum_j lambda_j X_j, shifted by its largest
// eigenvalue before exponentiating.
DualValue dual_eval(const RealVector& lambda, const std::vector<Constraint>& constraints);

// Entropy maximizer over Choi states; the TP constraints of `obs` are
// included as ordinary dual variables. Targets within boundary_tol of an
// attainable bound are routed through boundary_resolve, as are runs whose
// multipliers cross multiplier_cap.
//
// Throws Infeasible, NonConvergence or NotAChannel.
MaxEntSolution solve_maxent(const ObservationLevel& obs, const SolverOptions& opts = {});

// Minimizes S(omega || omega_0) = Tr[omega (log omega - log omega_0)] over
// states supported on supp(omega_0). Throws Infeasible naming the violated
// constraint when the support admits no feasible state.
MaxEntSolution solve_biased(const ObservationLevel& obs, const PriorChannel& prior,
                            const SolverOptions& opts = {});

// Restricts the problem to the face cut out by targets sitting on their
// attainable bounds (and, failing that, to the numerical support of a
// diverging dual iterate), then maximizes entropy on that face.
MaxEntSolution boundary_resolve(const ObservationLevel& obs, const SolverOptions& opts = {});

// Necessary feasibility conditions checked without solving: every face pinned
// by an at-bound target meets the prior support (the whole space when
// `prior` is null), and no combination of the restricted constraints equals
// the identity there. Throws Infeasible naming a constraint.
void check_feasibility(const ObservationLevel& obs, const PriorChannel* prior = nullptr,
                       const SolverOptions& opts = {});

struct StateMaxEntSolution {
  DensityMatrix state;
  RealVector multipliers;
  double log_partition;
  double entropy_bits;
  int iterations;
};

// Plain state-level MaxEnt: rho = exp(-sum_j mu_j F_j)/Z with Tr(rho F_j) = f_j.
// Interior problems only; throws Infeasible on divergence.
StateMaxEntSolution maximize_state_entropy(const std::vector<HermitianOperator>& observables,
                                           const std::vector<double>& targets,
                                           const SolverOptions& opts = {});

}  // namespace qmaxent

#endif  // QMAXENT_SOLVER_HPP
