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

#ifndef QMAXENT_ERRORS_HPP
#define QMAXENT_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

namespace qmaxent {

// Root of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidDimension : public Error {
 public:
  using Error::Error;
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

// A tensor product split that does not factor the operator dimension.
class InvalidSplit : public Error {
 public:
  using Error::Error;
};

// A value violates a type invariant (non-Hermitian, not a state, ...).
class InvariantViolation : public Error {
 public:
  using Error::Error;
};

// A candidate Choi matrix is not completely positive and trace preserving.
class NotAChannel : public Error {
 public:
  using Error::Error;
};

class DependentConstraints : public Error {
 public:
  DependentConstraints(const std::string& what, std::vector<std::size_t> indices)
      : Error(what), indices_(std::move(indices)) {}

  // Positions of the constraints taking part in the linear dependence.
  const std::vector<std::size_t>& indices() const noexcept { return indices_; }

 private:
  std::vector<std::size_t> indices_;
};

class Infeasible : public Error {
 public:
  Infeasible(const std::string& what, std::string constraint_label = {})
      : Error(what), label_(std::move(constraint_label)) {}

  // Label of the offending constraint, empty when no single one is to blame.
  const std::string& constraint_label() const noexcept { return label_; }

 private:
  std::string label_;
};

class NonConvergence : public Error {
 public:
  NonConvergence(const std::string& what, Eigen::VectorXd last_multipliers,
                 double last_gradient_norm, int iterations)
      : Error(what),
        multipliers_(std::move(last_multipliers)),
        gradient_norm_(last_gradient_norm),
        iterations_(iterations) {}

  const Eigen::VectorXd& last_multipliers() const noexcept { return multipliers_; }
  double last_gradient_norm() const noexcept { return gradient_norm_; }
  int iterations() const noexcept { return iterations_; }

 private:
  Eigen::VectorXd multipliers_;
  double gradient_norm_;
  int iterations_;
};

class OracleFailure : public Error {
 public:
  using Error::Error;
};

}  // namespace qmaxent

#endif  // QMAXENT_ERRORS_HPP
