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

#ifndef QMAXENT_OBSERVATION_HPP
#define QMAXENT_OBSERVATION_HPP

#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <variant>
#include <vector>

#include "qmaxent/channel.hpp"
#include "qmaxent/operator_core.hpp"

namespace qmaxent {

/// Linear constraint Tr(omega X) = target on a Choi state.
///
/// Every constraint also records the observable's attainable range
/// [lower, upper] over all channels together with the reduced identity
/// N = R(I) of the measurement it came from. Both upper*N - X and
/// X - lower*N are positive semidefinite, so a target sitting on a bound pins
/// the Choi state to the kernel of the corresponding operator.
class Constraint {
 public:
  // Raw constraint: N = I and the bounds are the spectral range of X.
  Constraint(HermitianOperator op, double target, std::string label);
  Constraint(HermitianOperator op, double target, std::string label, HermitianOperator normalizer,
             double lower, double upper);

  const HermitianOperator& op() const noexcept { return op_; }
  double target() const noexcept { return target_; }
  const std::string& label() const noexcept { return label_; }
  const HermitianOperator& normalizer() const noexcept { return normalizer_; }
  double lower() const noexcept { return lower_; }
  double upper() const noexcept { return upper_; }

  Constraint with_target(double target) const;

 private:
  HermitianOperator op_;
  double target_;
  std::string label_;
  HermitianOperator normalizer_;
  double lower_;
  double upper_;
};

struct AncillaFree {
  DensityMatrix state;  // dim d
  HermitianOperator observable;  // dim d
};

struct AncillaAssisted {
  DensityMatrix state;  // dim D*d, ancilla first
  HermitianOperator observable;  // dim D*d
  int ancilla_dim;
};

struct RawOperator {
  HermitianOperator op;  // dim d^2
};

struct ProcessMeasurementSpec {
  std::variant<AncillaFree, AncillaAssisted, RawOperator> kind;
  std::optional<double> mean;
  std::string label;
};

struct ReducedMeasurement {
  HermitianOperator op;
  HermitianOperator normalizer;
  double lower;
  double upper;
};

// d rho^T (x) F.
HermitianOperator reduce_ancilla_free(const DensityMatrix& rho, const HermitianOperator& f);

// sum_k (A_k (x) I)^dagger F (A_k (x) I) with Omega = sum_k (A_k (x) I) Psi+ (A_k (x) I)^dagger.
HermitianOperator reduce_ancilla_assisted(const DensityMatrix& omega, const HermitianOperator& f,
                                          int ancilla_dim);

ReducedMeasurement reduce(const ProcessMeasurementSpec& spec, int d);

// Requires spec.mean.
Constraint to_constraint(const ProcessMeasurementSpec& spec, int d);

// {Lambda_k (x) I : 0}, equivalent to Tr_2 omega = I/d given unit trace.
std::vector<Constraint> tp_constraints(int d);

// Returns the positions (in `ops`) taking part in the first linear dependence
// found among {I} + ops, or nullopt when the set is independent.
std::optional<std::vector<std::size_t>> find_dependence(const std::vector<HermitianOperator>& ops,
                                                        double tol = 1e-10);

class ObservationLevel {
 public:
  // Throws DependentConstraints when user + TP + identity are linearly dependent.
  ObservationLevel(int d, std::vector<Constraint> constraints, bool include_tp = true);

  int d() const noexcept { return d_; }
  bool include_tp() const noexcept { return include_tp_; }
  const std::vector<Constraint>& user_constraints() const noexcept { return user_; }
  // User constraints followed by the TP constraints (when enabled).
  std::vector<Constraint> all_constraints() const;

 private:
  int d_;
  std::vector<Constraint> user_;
  bool include_tp_;
};

// Fills each spec's mean with the exact Born-rule value Tr[X omega_E].
ObservationLevel simulate_means(const ChoiState& channel, const std::vector<ProcessMeasurementSpec>& specs);

// Empirical mean of +/-1 outcomes; the generator is owned by value.
class ShotSampler {
 public:
  explicit ShotSampler(std::uint64_t seed) : engine_(seed) {}
  double sample(double mean, long long shots);

 private:
  std::mt19937_64 engine_;
};

double sample_shots(double mean, long long shots, std::uint64_t seed);

}  // namespace qmaxent

#endif  // QMAXENT_OBSERVATION_HPP
