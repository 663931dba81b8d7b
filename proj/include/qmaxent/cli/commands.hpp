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

#ifndef QMAXENT_CLI_COMMANDS_HPP
#define QMAXENT_CLI_COMMANDS_HPP

#include <cstdint>
#include <functional>
#include <optional>
#include <ostream>
#include <string>

namespace qmaxent::cli {

// Process exit statuses; mutually exclusive.
enum ExitCode : int {
  kExitOk = 0,
  kExitInternal = 1,        // unexpected failure
  kExitUsage = 2,           // unreadable or malformed input, bad arguments
  kExitInfeasible = 3,      // infeasible data, invalid channel
  kExitNonConvergence = 4,  // dual iteration limit
  kExitDependent = 5,       // linearly dependent constraints
};

// Runs `body`, mapping library exceptions to exit codes with a one-line
// diagnostic on `err`.
int run_guarded(const std::function<int()>& body, std::ostream& err);

// Writes a result file; a prior from `prior_path` overrides the problem's own.
int cmd_estimate(const std::string& problem_path, const std::string& output_path,
                 const std::optional<std::string>& prior_path, std::ostream& out, std::ostream& err);

// Writes the design back as a problem file with means filled in, exact or
// from `shots` two-outcome samples per constraint. The seed falls back to the
// design's own, then to 0.
int cmd_simulate(const std::string& channel_path, const std::string& design_path, const std::string& output_path,
                 std::optional<long long> shots, std::optional<std::uint64_t> seed, std::ostream& out,
                 std::ostream& err);

int cmd_entropy(const std::string& channel_path, std::ostream& out, std::ostream& err);

// Validation without solving; prints one table row per stage.
int cmd_check(const std::string& problem_path, std::ostream& out, std::ostream& err);

}  // namespace qmaxent::cli

#endif  // QMAXENT_CLI_COMMANDS_HPP
