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

#ifndef QMAXENT_CLI_PROBLEM_IO_HPP
#define QMAXENT_CLI_PROBLEM_IO_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "qmaxent/channel.hpp"
#include "qmaxent/errors.hpp"
#include "qmaxent/observation.hpp"
#include "qmaxent/solver.hpp"

namespace qmaxent::cli {

using nlohmann::json;

inline constexpr const char* kToolName = "qmaxent";
inline constexpr const char* kToolVersion = "0.1.0";

// Malformed or schema-violating input file.
class ParseError : public Error {
 public:
  using Error::Error;
};

struct ProblemFile {
  int dimension = 0;
  std::vector<ProcessMeasurementSpec> specs;  // means may be absent in design files
  bool include_tp = true;
  std::optional<ChoiState> prior;
  SolverOptions solver;
  std::optional<std::uint64_t> seed;
};

// Complex matrix as {"re": [[..]], "im": [[..]]} or a plain real [[..]].
Matrix parse_matrix(const json& j);
json matrix_to_json(const Matrix& m);

// Sum of terms like "2*rhoT(x)Z", "-0.5*XY", "I(x)rho". A factor is a Pauli
// string over {I, X, Y, Z} (one letter per qubit) or rho / rhoT, which refer
// to `state` and need it to be given.
HermitianOperator parse_operator_expression(const std::string& text, const DensityMatrix* state = nullptr);

// Observable as a matrix (real or {re, im}) or an expression string; the
// result must have dimension `dim`.
HermitianOperator parse_observable(const json& j, int dim, const DensityMatrix* state = nullptr);

// {"bloch": [..]}, {"ket": ..}, or a density matrix.
DensityMatrix parse_state(const json& j, int dim);

// {"choi": matrix} or {"kraus": [matrix, ..]}, dimension from "dimension"
// or inferred.
ChoiState parse_channel(const json& j, int dimension_hint = 0);

ProblemFile parse_problem(const json& j);
json read_json_file(const std::string& path);
void write_json_file(const std::string& path, const json& j);

// User constraints from a problem with every mean present.
std::vector<Constraint> build_constraints(const ProblemFile& problem);
ObservationLevel build_level(const ProblemFile& problem);

json solution_to_json(const MaxEntSolution& solution, const std::string& mode);

}  // namespace qmaxent::cli

#endif  // QMAXENT_CLI_PROBLEM_IO_HPP
